"""Operators on the free module spanned by partitions.

u_i adds a box to row i and rounds the result up to a partition, paying
(-b) per extra box; d_i adds a box to row i when that yields a partition
and multiplies by -b otherwise. Non-commutative Schur functions in either
family expand products s_lam * G_mu and s_lam * g_mu in G and g bases.
"""
import enum
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .algebra import BetaScalar, integer_binomial
from .errors import PreconditionError
from .kpoly import G_jacobi_trudi, g_determinant
from .symfunc import Partition, SymmetricElement, TruncationCaps, canonical_key, restrict

logger = logging.getLogger(__name__)


class OperatorFamily(enum.Enum):
    U = "u"
    D = "d"


class PartitionCombo:
    """Finite Z[b]-combination of partitions."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | None = None):
        data: dict[Partition, BetaScalar] = {}
        for lam, c in (terms or {}).items():
            lam = lam if isinstance(lam, Partition) else Partition(lam)
            c = c if isinstance(c, BetaScalar) else BetaScalar(c)
            if c:
                _accumulate(data, lam, c)
        self._terms = data

    @classmethod
    def _wrap(cls, data: dict) -> "PartitionCombo":
        obj = cls.__new__(cls)
        obj._terms = data
        return obj

    @classmethod
    def of(cls, lam, coeff=1) -> "PartitionCombo":
        return cls({Partition(lam): coeff})

    @property
    def terms(self) -> Mapping[Partition, BetaScalar]:
        return MappingProxyType(self._terms)

    def items(self) -> list[tuple[Partition, BetaScalar]]:
        """Graded-lex descending."""
        return sorted(self._terms.items(), key=lambda t: canonical_key(t[0]), reverse=True)

    def coefficient(self, lam) -> BetaScalar:
        return self._terms.get(Partition(lam), BetaScalar())

    def at_beta_zero(self) -> "PartitionCombo":
        return PartitionCombo({lam: c.at_beta_zero() for lam, c in self._terms.items()})

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PartitionCombo):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def __add__(self, other: "PartitionCombo") -> "PartitionCombo":
        data = dict(self._terms)
        for lam, c in other._terms.items():
            _accumulate(data, lam, c)
        return PartitionCombo._wrap(data)

    def __neg__(self) -> "PartitionCombo":
        return PartitionCombo._wrap({lam: -c for lam, c in self._terms.items()})

    def __sub__(self, other: "PartitionCombo") -> "PartitionCombo":
        return self + (-other)

    def __mul__(self, scalar) -> "PartitionCombo":
        if not isinstance(scalar, (int, BetaScalar)):
            return NotImplemented
        if not scalar:
            return PartitionCombo()
        return PartitionCombo._wrap({lam: c * scalar for lam, c in self._terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        body = " + ".join(f"({c}){lam}" for lam, c in self.items())
        return f"PartitionCombo({body or '0'})"


def _accumulate(acc: dict, key, coeff: BetaScalar):
    old = acc.get(key)
    new = coeff if old is None else old + coeff
    if new:
        acc[key] = new
    else:
        acc.pop(key, None)


def _minus_beta(k: int) -> BetaScalar:
    return BetaScalar.monomial(k, (-1) ** k)


@lru_cache(maxsize=None)
def _u_single(i: int, lam: Partition) -> tuple[BetaScalar, Partition]:
    n = list(lam.padded(max(i, lam.length)))
    n[i - 1] += 1
    bar = list(n)
    for j in range(len(bar) - 2, -1, -1):
        bar[j] = max(bar[j], bar[j + 1])
    return _minus_beta(sum(bar) - sum(n)), Partition.from_sequence(bar)


@lru_cache(maxsize=None)
def _d_single(i: int, lam: Partition) -> tuple[BetaScalar, Partition]:
    ell = lam.length
    if i == 1 or (i <= ell + 1 and lam[i - 2] > (lam[i - 1] if i <= ell else 0)):
        parts = list(lam.padded(max(i, ell)))
        parts[i - 1] += 1
        return BetaScalar(1), Partition.from_sequence(parts)
    return _minus_beta(1), lam


def _apply_single(single, i: int, c: PartitionCombo) -> PartitionCombo:
    if i < 1:
        raise PreconditionError(f"operator index must be positive, got {i}")
    out: dict[Partition, BetaScalar] = {}
    for lam, coeff in c._terms.items():
        factor, mu = single(i, lam)
        _accumulate(out, mu, coeff * factor)
    return PartitionCombo._wrap(out)


def u_apply(i: int, c: PartitionCombo) -> PartitionCombo:
    return _apply_single(_u_single, i, c)


def d_apply(i: int, c: PartitionCombo) -> PartitionCombo:
    return _apply_single(_d_single, i, c)


OPERATORS = {OperatorFamily.U: u_apply, OperatorFamily.D: d_apply}


def apply_word(word: Sequence[int], family: OperatorFamily, c: PartitionCombo) -> PartitionCombo:
    """The monomial x_{w_1} ... x_{w_N} applied to c, rightmost letter first."""
    op = OPERATORS[family]
    for letter in reversed(word):
        c = op(letter, c)
    return c


@dataclass(frozen=True)
class Tableau:
    rows: tuple[tuple[int, ...], ...]
    max_entry: int | None = None

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if any(not r for r in rows):
            raise PreconditionError("tableau rows must be non-empty")
        Partition(len(r) for r in rows)
        for r in rows:
            if any(v < 1 for v in r) or any(a > b for a, b in zip(r, r[1:])):
                raise PreconditionError(f"row {r} is not weakly increasing in positive entries")
        for upper, lower in zip(rows, rows[1:]):
            if any(lower[c] <= upper[c] for c in range(len(lower))):
                raise PreconditionError(f"columns of {rows} are not strictly increasing")
        if self.max_entry is not None and any(v > self.max_entry for r in rows for v in r):
            raise PreconditionError(f"entries exceed {self.max_entry}")

    @property
    def shape(self) -> Partition:
        return Partition(len(r) for r in self.rows)


def column_word(T: Tableau) -> tuple[int, ...]:
    """Columns left to right, each read bottom to top."""
    word = []
    for col in range(len(T.rows[0]) if T.rows else 0):
        word.extend(row[col] for row in reversed(T.rows) if col < len(row))
    return tuple(word)


def ssyt_enumerate(lam: Partition, n: int) -> list[Tableau]:
    lam = Partition(lam)
    cells = [(i, j) for i, length in enumerate(lam) for j in range(length)]
    found = []

    def fill(k, grid):
        if k == len(cells):
            rows = tuple(tuple(grid[i][:lam[i]]) for i in range(lam.length))
            found.append(Tableau(rows, n))
            return
        i, j = cells[k]
        low = 1
        if j:
            low = max(low, grid[i][j - 1])
        if i:
            low = max(low, grid[i - 1][j] + 1)
        for v in range(low, n + 1):
            grid[i][j] = v
            fill(k + 1, grid)
        grid[i][j] = 0

    fill(0, [[0] * length for length in lam])
    return found


def noncomm_schur_apply(lam: Partition, n: int, family: OperatorFamily, c: PartitionCombo) -> PartitionCombo:
    """s_lam(x_1, ..., x_n) c as a sum of tableau monomials."""
    total = PartitionCombo()
    for T in ssyt_enumerate(lam, n):
        total = total + apply_word(column_word(T), family, c)
    return total


@lru_cache(maxsize=None)
def _elementary_on(k: int, n: int, family: OperatorFamily, lam: Partition) -> tuple[tuple[Partition, BetaScalar], ...]:
    total = PartitionCombo()
    start = PartitionCombo.of(lam)
    for subset in itertools.combinations(range(1, n + 1), k):
        total = total + apply_word(subset[::-1], family, start)
    return tuple(total._terms.items())


def elementary_apply(k: int, n: int, family: OperatorFamily, c: PartitionCombo) -> PartitionCombo:
    """e_k(x_1, ..., x_n) = sum_{a_1 < ... < a_k} x_{a_k} ... x_{a_1}."""
    if k < 0 or k > n:
        return PartitionCombo()
    out: dict[Partition, BetaScalar] = {}
    for lam, coeff in c._terms.items():
        for mu, v in _elementary_on(k, n, family, lam):
            _accumulate(out, mu, coeff * v)
    return PartitionCombo._wrap(out)


def noncomm_schur_via_jt(lam: Partition, n: int, family: OperatorFamily, c: PartitionCombo) -> PartitionCombo:
    """s_lam = det(e_{lam'_i - i + j}) over the conjugate shape; the e's commute."""
    conj = Partition(lam).conjugate()
    r = conj.length
    total = PartitionCombo()
    for perm in itertools.permutations(range(r)):
        degrees = [conj[i] - i + perm[i] for i in range(r)]
        if any(d < 0 or d > n for d in degrees):
            continue
        term = c
        for d in reversed(degrees):
            term = elementary_apply(d, n, family, term)
            if not term:
                break
        total = total + term * _permutation_sign(perm)
    return total


def _permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inversions % 2 else 1


def knuth_holds(family: OperatorFamily, i: int, j: int, k: int, lam: Partition) -> bool:
    """x_i x_k x_j = x_k x_i x_j when i <= j < k, and x_j x_i x_k = x_j x_k x_i when i < j <= k, on lam."""
    start = PartitionCombo.of(lam)
    if i <= j < k and apply_word((i, k, j), family, start) != apply_word((k, i, j), family, start):
        return False
    if i < j <= k and apply_word((j, i, k), family, start) != apply_word((j, k, i), family, start):
        return False
    return True


def knuth_violations(family: OperatorFamily, lam: Partition, max_index: int) -> list[tuple[int, int, int]]:
    """Index triples up to max_index where knuth_holds fails on lam."""
    return [t for t in itertools.product(range(1, max_index + 1), repeat=3) if not knuth_holds(family, *t, lam)]


def expand_sG(lam: Partition, mu: Partition, r: int) -> PartitionCombo:
    """c with sum_nu c_nu G_nu = s_lam G_mu in at most r variables."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.length > r or mu.length > r:
        raise PreconditionError(f"{lam} and {mu} must have at most {r} parts")
    return noncomm_schur_apply(lam, r, OperatorFamily.U, PartitionCombo.of(mu))


def expand_sg(lam: Partition, mu: Partition, r: int, s: int) -> PartitionCombo:
    """c with sum_nu c_nu g_nu = s_lam(-b, ..., -b, x) g_mu, with r + s - 1 entries -b."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.length > s or mu.length > r:
        raise PreconditionError(f"need l({lam}) <= {s} and l({mu}) <= {r}")
    return noncomm_schur_apply(lam, r + s, OperatorFamily.D, PartitionCombo.of(mu))


def _scalar_series(max_i: int, exponent: int, sign: int) -> list[BetaScalar]:
    """Coefficients of (1 + sign * b t)^exponent through t^max_i."""
    return [BetaScalar.monomial(k, integer_binomial(exponent, k) * sign ** k) for k in range(max_i + 1)]


def _times_series(series: list[PartitionCombo], scalars: list[BetaScalar]) -> list[PartitionCombo]:
    out = []
    for i in range(len(series)):
        acc = PartitionCombo()
        for k in range(i + 1):
            if scalars[k]:
                acc = acc + series[i - k] * scalars[k]
        out.append(acc)
    return out


def pieri_e_g(max_i: int, lam: Partition) -> list[PartitionCombo]:
    """[c_0, ..., c_max_i] with e_i g_lam = sum_nu c_i[nu] g_nu."""
    lam = Partition(lam)
    factors = lam.length + max_i
    series = [PartitionCombo.of(lam)] + [PartitionCombo() for _ in range(max_i)]
    for j in range(1, factors + 1):
        series = [series[0]] + [series[k] + d_apply(j, series[k - 1]) for k in range(1, max_i + 1)]
    return _times_series(series, _scalar_series(max_i, 1 - factors, -1))


def pieri_h_g(max_i: int, lam: Partition) -> list[PartitionCombo]:
    """[c_0, ..., c_max_i] with h_i g_lam = sum_nu c_i[nu] g_nu."""
    lam = Partition(lam)
    factors = lam.length + max_i + 1
    series = [PartitionCombo.of(lam)] + [PartitionCombo() for _ in range(max_i)]
    for j in range(factors, 0, -1):
        geometric = [series[0]]
        for k in range(1, max_i + 1):
            geometric.append(series[k] + d_apply(j, geometric[k - 1]))
        series = geometric
    return _times_series(series, _scalar_series(max_i, factors - 1, 1))


def interpret_G(c: PartitionCombo, caps: TruncationCaps) -> SymmetricElement:
    """sum_nu c_nu G_nu restricted to caps.n_vars variables."""
    total = SymmetricElement.zero(caps)
    for nu, coeff in c._terms.items():
        if nu.length <= caps.n_vars:
            total = total + G_jacobi_trudi(nu, caps.n_vars, caps) * coeff
    return restrict(total)


def interpret_g(c: PartitionCombo, caps: TruncationCaps) -> SymmetricElement:
    """sum_nu c_nu g_nu."""
    total = SymmetricElement.zero(caps)
    for nu, coeff in c._terms.items():
        total = total + g_determinant(nu, nu.length, caps) * coeff
    return total


def combos_from(pairs: Iterable[tuple[Sequence[int], BetaScalar | int]]) -> PartitionCombo:
    return PartitionCombo({Partition(lam): c for lam, c in pairs})
