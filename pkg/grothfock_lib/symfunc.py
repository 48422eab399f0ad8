"""Symmetric functions over Z[b] with explicit truncation caps.

A SymmetricElement is a partition-indexed coefficient map in one of three
bases (monomial, complete homogeneous, Schur). Elements are truncated at
total degree caps.max_degree; the monomial basis additionally drops
partitions longer than caps.n_vars, which is exactly specialisation to
n variables.
"""
import enum
import itertools
import logging
from dataclasses import dataclass, replace
from functools import lru_cache
from types import MappingProxyType
from typing import Iterator, Mapping

from .algebra import BetaScalar, MultiPoly, RingMatrix, det_exact, integer_binomial
from .errors import CapsError, NonSymmetricError, PreconditionError

logger = logging.getLogger(__name__)


class Partition(tuple):
    """Weakly decreasing tuple of positive integers; () is the empty partition."""

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise PreconditionError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts) -> "Partition":
        return tuple.__new__(cls, parts)

    @classmethod
    def from_sequence(cls, seq) -> "Partition":
        """Accepts trailing zeros, as produced by padded index arithmetic."""
        parts = list(seq)
        while parts and parts[-1] == 0:
            parts.pop()
        return cls(parts)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def weight(self) -> int:
        return sum(self)

    def padded(self, r: int) -> tuple[int, ...]:
        return tuple(self) + (0,) * (r - len(self))

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition._trusted(tuple(sum(1 for p in self if p > c) for c in range(self[0])))

    def union(self, other: "Partition") -> "Partition":
        return Partition._trusted(tuple(sorted(tuple(self) + tuple(other), reverse=True)))

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self) + ")"

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"


def canonical_key(lam: Partition) -> tuple:
    """Sort key; sort with reverse=True for graded-lex descending order."""
    return lam.weight, tuple(lam)


@lru_cache(maxsize=None)
def _partitions_tuple(k: int, max_part: int) -> tuple[Partition, ...]:
    if k == 0:
        return (Partition(),)
    out = []
    for first in range(min(k, max_part), 0, -1):
        for rest in _partitions_tuple(k - first, first):
            out.append(Partition._trusted((first,) + tuple(rest)))
    return tuple(out)


def partitions_of(k: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """Partitions of k in lexicographically descending order."""
    if k < 0:
        return ()
    return _partitions_tuple(k, k if max_part is None else max_part)


def partitions_up_to(max_weight: int, max_length: int | None = None) -> Iterator[Partition]:
    for k in range(max_weight + 1):
        for lam in partitions_of(k):
            if max_length is None or lam.length <= max_length:
                yield lam


@dataclass(frozen=True)
class TruncationCaps:
    n_vars: int
    max_degree: int

    def __post_init__(self):
        if self.n_vars < 1:
            raise CapsError(f"n_vars must be positive, got {self.n_vars}")
        if self.max_degree < 0:
            raise CapsError(f"max_degree must be non-negative, got {self.max_degree}")

    @property
    def injective(self) -> bool:
        return self.n_vars >= self.max_degree

    def require_injective(self, what: str):
        if not self.injective:
            raise CapsError(f"{what} needs n_vars >= max_degree, got {self}")

    def with_degree(self, max_degree: int) -> "TruncationCaps":
        return replace(self, max_degree=max_degree)

    def with_vars(self, n_vars: int) -> "TruncationCaps":
        return replace(self, n_vars=n_vars)

    def __str__(self) -> str:
        return f"(n={self.n_vars}, D={self.max_degree})"


class Basis(enum.Enum):
    MONOMIAL = "monomial"
    COMPLETE_H = "complete_h"
    SCHUR = "schur"


def _scalar(value) -> BetaScalar:
    return value if isinstance(value, BetaScalar) else BetaScalar(value)


def _add_into(acc: dict, key, coeff: BetaScalar):
    old = acc.get(key)
    new = coeff if old is None else old + coeff
    if new:
        acc[key] = new
    else:
        acc.pop(key, None)


class SymmetricElement:
    __slots__ = ("basis", "caps", "_coeffs")

    def __init__(self, basis: Basis, coeffs: Mapping, caps: TruncationCaps):
        data: dict[Partition, BetaScalar] = {}
        for lam, c in coeffs.items():
            lam = lam if isinstance(lam, Partition) else Partition(lam)
            if lam.weight > caps.max_degree:
                continue
            if basis is Basis.MONOMIAL and lam.length > caps.n_vars:
                continue
            c = _scalar(c)
            if c:
                _add_into(data, lam, c)
        self.basis = basis
        self.caps = caps
        self._coeffs = data

    @classmethod
    def _wrap(cls, basis: Basis, data: dict, caps: TruncationCaps) -> "SymmetricElement":
        obj = cls.__new__(cls)
        obj.basis = basis
        obj.caps = caps
        obj._coeffs = data
        return obj

    @classmethod
    def zero(cls, caps: TruncationCaps, basis: Basis = Basis.COMPLETE_H) -> "SymmetricElement":
        return cls._wrap(basis, {}, caps)

    @classmethod
    def one(cls, caps: TruncationCaps, basis: Basis = Basis.COMPLETE_H) -> "SymmetricElement":
        return cls._wrap(basis, {Partition(): BetaScalar(1)}, caps)

    @classmethod
    def basis_element(cls, basis: Basis, lam, caps: TruncationCaps, coeff=1) -> "SymmetricElement":
        return cls(basis, {Partition(lam): coeff}, caps)

    @property
    def coeffs(self) -> Mapping[Partition, BetaScalar]:
        return MappingProxyType(self._coeffs)

    def coefficient(self, lam) -> BetaScalar:
        return self._coeffs.get(Partition(lam), BetaScalar())

    def items(self) -> list[tuple[Partition, BetaScalar]]:
        """Terms in graded-lex descending order."""
        return sorted(self._coeffs.items(), key=lambda t: canonical_key(t[0]), reverse=True)

    def max_weight(self) -> int:
        return max((lam.weight for lam in self._coeffs), default=-1)

    def homogeneous_component(self, k: int) -> "SymmetricElement":
        return SymmetricElement._wrap(self.basis, {l: c for l, c in self._coeffs.items() if l.weight == k}, self.caps)

    def truncate(self, max_degree: int) -> "SymmetricElement":
        caps = self.caps.with_degree(max_degree)
        return SymmetricElement(self.basis, self._coeffs, caps)

    def with_caps(self, caps: TruncationCaps) -> "SymmetricElement":
        return SymmetricElement(self.basis, self._coeffs, caps)

    def at_beta_zero(self) -> "SymmetricElement":
        return SymmetricElement(self.basis, {l: c.at_beta_zero() for l, c in self._coeffs.items()}, self.caps)

    def _aligned(self, other: "SymmetricElement") -> "SymmetricElement":
        if other.caps != self.caps:
            raise CapsError(f"caps disagree: {self.caps} vs {other.caps}")
        return other if other.basis is self.basis else to_basis(other, self.basis)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymmetricElement):
            return NotImplemented
        return self.basis is other.basis and self.caps == other.caps and self._coeffs == other._coeffs

    __hash__ = None

    def __add__(self, other) -> "SymmetricElement":
        if isinstance(other, (int, BetaScalar)):
            other = SymmetricElement.one(self.caps, self.basis) * other
        if not isinstance(other, SymmetricElement):
            return NotImplemented
        other = self._aligned(other)
        data = dict(self._coeffs)
        for lam, c in other._coeffs.items():
            _add_into(data, lam, c)
        return SymmetricElement._wrap(self.basis, data, self.caps)

    __radd__ = __add__

    def __neg__(self) -> "SymmetricElement":
        return SymmetricElement._wrap(self.basis, {l: -c for l, c in self._coeffs.items()}, self.caps)

    def __sub__(self, other) -> "SymmetricElement":
        return self + (-other)

    def __rsub__(self, other) -> "SymmetricElement":
        return (-self) + other

    def __mul__(self, other) -> "SymmetricElement":
        if isinstance(other, (int, BetaScalar)):
            if not other:
                return SymmetricElement.zero(self.caps, self.basis)
            return SymmetricElement._wrap(self.basis, {l: c * other for l, c in self._coeffs.items()}, self.caps)
        if not isinstance(other, SymmetricElement):
            return NotImplemented
        if other.caps != self.caps:
            raise CapsError(f"caps disagree: {self.caps} vs {other.caps}")
        left = to_basis(self, Basis.COMPLETE_H)._coeffs
        right = to_basis(other, Basis.COMPLETE_H)._coeffs
        cap = self.caps.max_degree
        data: dict[Partition, BetaScalar] = {}
        for la, ca in left.items():
            wa = la.weight
            for lb, cb in right.items():
                if wa + lb.weight <= cap:
                    _add_into(data, la.union(lb), ca * cb)
        return SymmetricElement._wrap(Basis.COMPLETE_H, data, self.caps)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        terms = ", ".join(f"{lam}: {c}" for lam, c in self.items())
        return f"SymmetricElement({self.basis.value}, {{{terms}}}, {self.caps})"


# -- transition data -------------------------------------------------------

def _bounded_compositions(total: int, bounds: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    if not bounds:
        if total == 0:
            yield ()
        return
    if total > sum(bounds):
        return
    for x in range(min(total, bounds[0]), -1, -1):
        for rest in _bounded_compositions(total - x, bounds[1:]):
            yield (x,) + rest


@lru_cache(maxsize=None)
def _matrix_count(rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
    """Number of non-negative integer matrices with these row and column sums."""
    if not rows:
        return 0 if any(cols) else 1
    total = 0
    for comp in _bounded_compositions(rows[0], cols):
        remaining = tuple(sorted((c - x for c, x in zip(cols, comp) if c - x), reverse=True))
        total += _matrix_count(rows[1:], remaining)
    return total


@lru_cache(maxsize=None)
def _h_in_m(lam: Partition) -> tuple[tuple[Partition, int], ...]:
    out = []
    for mu in partitions_of(lam.weight):
        count = _matrix_count(tuple(lam), tuple(mu))
        if count:
            out.append((mu, count))
    return tuple(out)


@lru_cache(maxsize=None)
def _schur_in_h(lam: Partition) -> tuple[tuple[Partition, int], ...]:
    caps = TruncationCaps(max(lam.weight, 1), lam.weight)
    element = _jt_determinant(lam.padded(lam.length), caps)
    return tuple((mu, c.at_beta_zero()) for mu, c in element._coeffs.items())


@lru_cache(maxsize=None)
def _schur_in_m(lam: Partition) -> tuple[tuple[Partition, int], ...]:
    acc: dict[Partition, int] = {}
    for nu, c in _schur_in_h(lam):
        for mu, k in _h_in_m(nu):
            acc[mu] = acc.get(mu, 0) + c * k
    return tuple((mu, c) for mu, c in acc.items() if c)


def _expand(coeffs: Mapping[Partition, BetaScalar], table) -> dict[Partition, BetaScalar]:
    out: dict[Partition, BetaScalar] = {}
    for lam, c in coeffs.items():
        for mu, k in table(lam):
            _add_into(out, mu, c * k)
    return out


def _monomial_to_schur(coeffs: Mapping[Partition, BetaScalar]) -> dict[Partition, BetaScalar]:
    # s_lam = m_lam + (terms lower in dominance), and lex order refines dominance
    rem = dict(coeffs)
    out: dict[Partition, BetaScalar] = {}
    while rem:
        lam = max(rem, key=canonical_key)
        c = rem[lam]
        out[lam] = c
        for mu, k in _schur_in_m(lam):
            _add_into(rem, mu, c * (-k))
    return out


def to_basis(f: SymmetricElement, target: Basis) -> SymmetricElement:
    if f.basis is target:
        return f
    caps = f.caps
    if f.basis is Basis.MONOMIAL:
        caps.require_injective("conversion out of the monomial basis")
        schur = _monomial_to_schur(f._coeffs)
        if target is Basis.SCHUR:
            return SymmetricElement._wrap(Basis.SCHUR, schur, caps)
        return SymmetricElement._wrap(Basis.COMPLETE_H, _expand(schur, _schur_in_h), caps)
    if f.basis is Basis.COMPLETE_H:
        monomial = _expand(f._coeffs, _h_in_m)
        if target is Basis.MONOMIAL:
            return SymmetricElement(Basis.MONOMIAL, monomial, caps)
        return SymmetricElement._wrap(Basis.SCHUR, _monomial_to_schur(monomial), caps)
    if target is Basis.COMPLETE_H:
        return SymmetricElement._wrap(Basis.COMPLETE_H, _expand(f._coeffs, _schur_in_h), caps)
    return SymmetricElement(Basis.MONOMIAL, _expand(f._coeffs, _schur_in_m), caps)


def restrict(f: SymmetricElement) -> SymmetricElement:
    """Specialise to caps.n_vars variables, expressed in the monomial basis."""
    return to_basis(f, Basis.MONOMIAL)


def evaluate(f: SymmetricElement) -> MultiPoly:
    """The n-variable polynomial of f, n = caps.n_vars."""
    n = f.caps.n_vars
    flat = {}
    for lam, c in restrict(f)._coeffs.items():
        for exps in set(itertools.permutations(lam.padded(n))):
            flat[exps] = c
    return MultiPoly(n, flat)


def from_polynomial(p: MultiPoly, caps: TruncationCaps) -> SymmetricElement:
    if p.n_vars != caps.n_vars:
        raise CapsError(f"polynomial in {p.n_vars} variables, caps {caps}")
    if not p.is_symmetric():
        raise NonSymmetricError("polynomial is not symmetric under variable transpositions")
    coeffs = {}
    for exps, c in p.terms.items():
        if sum(exps) <= caps.max_degree and all(a >= b for a, b in zip(exps, exps[1:])):
            coeffs[Partition.from_sequence(exps)] = c
    return SymmetricElement(Basis.MONOMIAL, coeffs, caps)


def hall_pair(f: SymmetricElement, g: SymmetricElement) -> BetaScalar:
    """<f, g> via <h_lam, m_mu> = delta."""
    if f.caps != g.caps:
        raise CapsError(f"caps disagree: {f.caps} vs {g.caps}")
    f.caps.require_injective("the Hall pairing")
    left = to_basis(f, Basis.COMPLETE_H)._coeffs
    right = to_basis(g, Basis.MONOMIAL)._coeffs
    total = BetaScalar()
    for lam, c in left.items():
        d = right.get(lam)
        if d:
            total = total + c * d
    return total


# -- polynomials in n variables -------------------------------------------

def h_poly(k: int, n: int) -> MultiPoly:
    if k < 0:
        return MultiPoly(n)
    terms = {}
    for combo in itertools.combinations_with_replacement(range(n), k):
        exps = [0] * n
        for i in combo:
            exps[i] += 1
        terms[tuple(exps)] = 1
    return MultiPoly(n, terms)


def e_poly(k: int, n: int) -> MultiPoly:
    if k < 0 or k > n:
        return MultiPoly(n)
    terms = {}
    for combo in itertools.combinations(range(n), k):
        terms[tuple(1 if i in combo else 0 for i in range(n))] = 1
    return MultiPoly(n, terms)


def p_poly(k: int, n: int) -> MultiPoly:
    if k < 0:
        return MultiPoly(n)
    if k == 0:
        return MultiPoly.constant(n, n)
    return MultiPoly(n, {tuple(k if i == j else 0 for j in range(n)): 1 for i in range(n)})


# -- partition-indexed constructors -----------------------------------------

def complete(k: int, caps: TruncationCaps, coeff=1) -> SymmetricElement:
    """h_k in the CompleteH basis; zero for k < 0."""
    if k < 0:
        return SymmetricElement.zero(caps)
    return SymmetricElement.basis_element(Basis.COMPLETE_H, (k,) if k else (), caps, coeff)


def elementary(k: int, caps: TruncationCaps) -> SymmetricElement:
    if k < 0 or k > caps.max_degree:
        return SymmetricElement.zero(caps)
    return SymmetricElement(Basis.COMPLETE_H, dict(_schur_in_h(Partition._trusted((1,) * k))), caps)


def schur_jt(lam: Partition, r: int | None = None, caps: TruncationCaps | None = None) -> SymmetricElement:
    """s_lam = det(h_{lam_i - i + j}), r x r."""
    lam = Partition(lam)
    r = lam.length if r is None else r
    if r < lam.length:
        raise PreconditionError(f"r = {r} is shorter than {lam}")
    caps = caps or TruncationCaps(max(lam.weight, 1), lam.weight)
    if r == lam.length and lam.weight <= caps.max_degree:
        return SymmetricElement(Basis.COMPLETE_H, dict(_schur_in_h(lam)), caps)
    return _jt_determinant(lam.padded(r), caps)


def _jt_determinant(parts: tuple[int, ...], caps: TruncationCaps) -> SymmetricElement:
    r = len(parts)
    if r == 0:
        return SymmetricElement.one(caps)
    rows = [[complete(parts[i] - i + j, caps) for j in range(r)] for i in range(r)]
    return det_exact(RingMatrix(rows))


def beta_prefix_h(i: int, p: int, caps: TruncationCaps) -> SymmetricElement:
    """Coefficient of t^i in (1 + b t)^{-p} H(t)."""
    total = SymmetricElement.zero(caps)
    for k in range(max(i, -1) + 1):
        coeff = BetaScalar.monomial(k, integer_binomial(-p, k))
        total = total + complete(i - k, caps, coeff)
    return total


def beta_prefix_e(i: int, p: int, caps: TruncationCaps) -> SymmetricElement:
    """Coefficient of t^i in (1 - b t)^p E(t)."""
    total = SymmetricElement.zero(caps)
    for k in range(min(i, p) + 1):
        coeff = BetaScalar.monomial(k, integer_binomial(p, k) * (-1) ** k)
        total = total + elementary(i - k, caps) * coeff
    return total


def beta_prefix_schur(lam: Partition, p: int, caps: TruncationCaps) -> SymmetricElement:
    """s_lam with p extra variables specialised to -b, via Jacobi-Trudi."""
    lam = Partition(lam)
    if not lam:
        return SymmetricElement.one(caps)
    r = lam.length
    rows = [[beta_prefix_h(lam[i] - i + j, p, caps) for j in range(r)] for i in range(r)]
    return det_exact(RingMatrix(rows))


__all__ = [
    "Basis", "Partition", "SymmetricElement", "TruncationCaps",
    "beta_prefix_e", "beta_prefix_h", "beta_prefix_schur", "canonical_key", "complete",
    "e_poly", "elementary", "evaluate", "from_polynomial", "h_poly", "hall_pair",
    "p_poly", "partitions_of", "partitions_up_to", "restrict", "schur_jt", "to_basis",
]
