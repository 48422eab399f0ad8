"""Text, LaTeX and JSON renderings, plus the rich verification report."""
import json
from typing import Sequence

from rich.panel import Panel
from rich.text import Text

from .algebra import BetaScalar, MultiPoly, join_terms
from .constants import BETA_LATEX, BETA_TEXT
from .errors import ParseError, PreconditionError
from .pieri import PartitionCombo
from .symfunc import Basis, Partition, SymmetricElement, TruncationCaps

BASIS_SYMBOLS = {Basis.MONOMIAL: "m", Basis.COMPLETE_H: "h", Basis.SCHUR: "s"}

FORMATS = ("text", "latex", "json")


def partition_label(lam: Partition, latex: bool = False) -> str:
    if latex:
        return r"\emptyset" if not lam else "(" + ",".join(str(p) for p in lam) + ")"
    return str(lam)


def _symbol(letter: str, lam: Partition, latex: bool) -> str:
    label = partition_label(lam, latex)
    return f"{letter}_{{{label}}}" if latex else f"{letter}_{label}"


def element_text(f: SymmetricElement, latex: bool = False) -> str:
    """The unit basis element renders as its bare coefficient."""
    letter = BASIS_SYMBOLS[f.basis]
    terms = [(c, _symbol(letter, lam, latex) if lam else "") for lam, c in f.items()]
    return join_terms(terms, BETA_LATEX if latex else BETA_TEXT, latex)


def combo_text(c: PartitionCombo, family: str, latex: bool = False) -> str:
    terms = [(coeff, _symbol(family, lam, latex)) for lam, coeff in c.items()]
    return join_terms(terms, BETA_LATEX if latex else BETA_TEXT, latex)


def series_text(series: Sequence[PartitionCombo], family: str, latex: bool = False) -> str:
    lines = []
    for power, c in enumerate(series):
        label = f"t^{{{power}}}" if latex else f"t^{power}"
        lines.append(f"{label}: {combo_text(c, family, latex)}")
    return "\n".join(lines)


def poly_text(p: MultiPoly, latex: bool = False) -> str:
    return p.to_text(BETA_LATEX if latex else BETA_TEXT, latex)


# -- JSON ----------------------------------------------------------------

def scalar_to_json(c: BetaScalar) -> list[list[int]]:
    return [[exp, coeff] for exp, coeff in c.items()]


def scalar_from_json(pairs) -> BetaScalar:
    try:
        return BetaScalar({int(exp): int(coeff) for exp, coeff in pairs})
    except (TypeError, ValueError):
        raise ParseError(f"malformed coefficient {pairs!r}") from None


def _terms_to_json(items) -> list[dict]:
    return [{"partition": list(lam), "coeff": scalar_to_json(c)} for lam, c in items]


def _terms_from_json(terms) -> dict[Partition, BetaScalar]:
    try:
        return {Partition(t["partition"]): scalar_from_json(t["coeff"]) for t in terms}
    except (KeyError, TypeError):
        raise ParseError("every term needs 'partition' and 'coeff'") from None
    except PreconditionError as e:
        raise ParseError(str(e)) from None


def element_document(f: SymmetricElement, family: str, shape: Partition, method: str) -> dict:
    return {
        "family": family,
        "shape": list(shape),
        "method": method,
        "basis": f.basis.value,
        "terms": f,
        "caps": {"n_vars": f.caps.n_vars, "max_degree": f.caps.max_degree},
    }


def combo_document(value, family: str, operation: str, arguments: dict) -> dict:
    """value is one PartitionCombo or a list of them, indexed by the power of t."""
    doc = {"family": family, "operation": operation, "arguments": arguments}
    if isinstance(value, PartitionCombo):
        doc["terms"] = value
    else:
        doc["series"] = [{"power": i, "terms": c} for i, c in enumerate(value)]
    return doc


def _encode(value):
    if isinstance(value, (SymmetricElement, PartitionCombo)):
        return _terms_to_json(value.items())
    if isinstance(value, dict):
        return {k: _encode(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_encode(v) for v in value]
    return value


def render_json(document: dict) -> str:
    return json.dumps(_encode(document), indent=2)


def parse_json(text: str) -> dict:
    """Inverse of render_json: term lists come back as SymmetricElement or PartitionCombo."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise ParseError("expected a JSON object")
    if "basis" in doc:
        try:
            caps = TruncationCaps(doc["caps"]["n_vars"], doc["caps"]["max_degree"])
            basis = Basis(doc["basis"])
        except (KeyError, TypeError, ValueError, PreconditionError) as e:
            raise ParseError(f"bad element header: {e}") from None
        doc["terms"] = SymmetricElement(basis, _terms_from_json(doc.get("terms", [])), caps)
    elif "series" in doc:
        for entry in doc["series"]:
            entry["terms"] = PartitionCombo(_terms_from_json(entry["terms"]))
    else:
        doc["terms"] = PartitionCombo(_terms_from_json(doc.get("terms", [])))
    return doc


# -- verification report ---------------------------------------------------

def report_lines(results) -> list[str]:
    """One line per check: "name: PASS (n cases)", with the first counterexample on failure."""
    lines = []
    for r in results:
        if r.passed:
            lines.append(f"{r.name}: PASS ({r.cases} cases)")
        else:
            lines.append(f"{r.name}: FAIL after {r.cases} cases, first counterexample {r.counterexample}")
    return lines


def report_summary(results) -> Panel:
    failed = [r for r in results if not r.passed]
    if failed:
        body = Text(f"{len(failed)} of {len(results)} checks failed", style="bold red")
        return Panel(body, title="[bold red]verify[/]", border_style="red")
    body = Text(f"All {len(results)} checks passed", style="bold green")
    return Panel(body, title="[bold green]verify[/]", border_style="green")
