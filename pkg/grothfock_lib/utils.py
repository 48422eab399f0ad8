import logging

from rich.console import Console
from rich.logging import RichHandler

from .errors import ParseError
from .symfunc import Partition


def setup_logging(verbose: bool = False):
    """Routes package logs to stderr through rich."""
    handler = RichHandler(console=Console(stderr=True), show_path=False, markup=False)
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[handler],
        force=True,
    )


def parse_shape(text: str | None) -> Partition:
    """Parses "2,1" into a partition; the empty string is the empty partition."""
    text = (text or "").strip()
    if not text:
        return Partition()
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError:
        raise ParseError(f"shape must be comma-separated integers, got {text!r}") from None
    try:
        return Partition(parts)
    except Exception as e:
        raise ParseError(str(e)) from None
