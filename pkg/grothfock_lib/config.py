import logging
import os
from typing import Optional

from . import constants
from .errors import ParseError
from .kpoly import default_caps
from .symfunc import Partition, TruncationCaps

logger = logging.getLogger(__name__)


def parse_caps(text: str) -> TruncationCaps:
    """Parses an "n,D" pair into TruncationCaps."""
    try:
        n, d = (int(part) for part in text.split(","))
    except ValueError:
        raise ParseError(f"caps must look like 'n,D', got {text!r}") from None
    try:
        return TruncationCaps(n, d)
    except Exception as e:
        raise ParseError(str(e)) from None


def save_conf(caps: TruncationCaps):
    """Saves default caps to the config file."""
    with open(constants.CONF_FILE, "w", encoding="utf-8") as f:
        f.write(f"{caps.n_vars}\n{caps.max_degree}\n")
    try:
        os.chmod(constants.CONF_FILE, 0o600)
    except Exception:
        pass


def load_conf() -> Optional[TruncationCaps]:
    """Loads default caps from the config file."""
    if not os.path.exists(constants.CONF_FILE):
        return None
    try:
        with open(constants.CONF_FILE, encoding="utf-8") as f:
            n, d, *_ = [l.strip() for l in f.readlines()]
        return TruncationCaps(int(n), int(d))
    except Exception as e:
        logger.warning("ignoring unreadable config file %s: %s", constants.CONF_FILE, e)
        return None


def reset_conf() -> bool:
    """Removes the config file. Returns True if one existed."""
    if not os.path.exists(constants.CONF_FILE):
        return False
    os.remove(constants.CONF_FILE)
    return True


def caps_override() -> Optional[TruncationCaps]:
    """Caps from the environment, if set."""
    raw = os.environ.get(constants.CAPS_ENV_VAR)
    if not raw:
        return None
    return parse_caps(raw)


def resolve_caps(shape: Partition, n_vars: Optional[int] = None, max_degree: Optional[int] = None) -> TruncationCaps:
    """Flags beat the environment, which beats the config file, which beats the shape-based default."""
    base = caps_override() or load_conf()
    if base is None:
        base = default_caps(shape)
        source = "shape default"
    else:
        source = "environment" if os.environ.get(constants.CAPS_ENV_VAR) else "config file"
    caps = TruncationCaps(n_vars if n_vars is not None else base.n_vars,
                          max_degree if max_degree is not None else base.max_degree)
    logger.debug("caps %s (base from %s)", caps, source)
    return caps
