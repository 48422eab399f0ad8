"""Charged free-fermion Fock space.

A basis ket |m, lam> is the semi-infinite wedge v_{i_1} ^ v_{i_2} ^ ...
with i_k = lam_k - k + m. psi_j wedges v_j on the left, psi*_j contracts
it out, a_m hops occupied indices by -m. Vacuum expectations of operator
words are paired against <0| e^{H(x)}, which sends |0, lam> to s_lam.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence, Union

from .algebra import BetaScalar, MultiPoly, RingMatrix, det_exact, integer_binomial
from .errors import CapsError, DimensionError, GrothError, PreconditionError, UnsupportedWordError
from .symfunc import Basis, Partition, SymmetricElement, TruncationCaps, canonical_key, elementary, to_basis

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MayaKet:
    charge: int
    shape: Partition = Partition()

    def __post_init__(self):
        if not isinstance(self.shape, Partition):
            object.__setattr__(self, "shape", Partition(self.shape))

    @property
    def length(self) -> int:
        return self.shape.length

    @property
    def energy2(self) -> int:
        """Twice the energy |lam| + m^2 / 2."""
        return 2 * self.shape.weight + self.charge * self.charge

    @property
    def sea_top(self) -> int:
        """Every index at or below this one is occupied."""
        return self.charge - self.shape.length - 1

    def indices(self, count: int) -> list[int]:
        parts = self.shape.padded(max(count, self.length))
        return [parts[k] - (k + 1) + self.charge for k in range(count)]

    def occupied(self, j: int) -> bool:
        return j <= self.sea_top or j in self.indices(self.length)

    def __str__(self) -> str:
        return f"|{self.charge}, {self.shape}>"


def _ket_from_indices(charge: int, indices: Sequence[int]) -> MayaKet:
    return MayaKet(charge, Partition.from_sequence(i + k + 1 - charge for k, i in enumerate(indices)))


def _insert(j: int, ket: MayaKet) -> tuple[int, MayaKet] | None:
    if j <= ket.sea_top:
        return None
    head = ket.indices(ket.length)
    pos = sum(1 for i in head if i > j)
    if pos < len(head) and head[pos] == j:
        return None
    new = head[:pos] + [j] + head[pos:]
    return (-1) ** pos, _ket_from_indices(ket.charge + 1, new)


def _remove(j: int, ket: MayaKet) -> tuple[int, MayaKet] | None:
    ell = ket.length
    if j <= ket.sea_top:
        pos = ell + (ket.sea_top - j)
        head = ket.indices(pos + 1)
    else:
        head = ket.indices(ell)
        if j not in head:
            return None
        pos = head.index(j)
    del head[pos]
    return (-1) ** pos, _ket_from_indices(ket.charge - 1, head)


class FockVector:
    """Finite combination of Maya kets over Z[b]."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[MayaKet, "BetaScalar | int"] | None = None):
        data: dict[MayaKet, BetaScalar] = {}
        for ket, c in (terms or {}).items():
            c = c if isinstance(c, BetaScalar) else BetaScalar(c)
            if c:
                _accumulate(data, ket, c)
        self._terms = data

    @classmethod
    def _wrap(cls, data: dict) -> "FockVector":
        obj = cls.__new__(cls)
        obj._terms = data
        return obj

    @classmethod
    def vacuum(cls, charge: int = 0) -> "FockVector":
        return cls({MayaKet(charge): 1})

    @classmethod
    def basis(cls, charge: int, shape, coeff=1) -> "FockVector":
        return cls({MayaKet(charge, Partition(shape)): coeff})

    @property
    def terms(self) -> dict[MayaKet, BetaScalar]:
        return dict(self._terms)

    def items(self) -> list[tuple[MayaKet, BetaScalar]]:
        return sorted(self._terms.items(), key=lambda t: (t[0].charge, canonical_key(t[0].shape)))

    def coefficient(self, ket: MayaKet) -> BetaScalar:
        return self._terms.get(ket, BetaScalar())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def __add__(self, other: "FockVector") -> "FockVector":
        data = dict(self._terms)
        for ket, c in other._terms.items():
            _accumulate(data, ket, c)
        return FockVector._wrap(data)

    def __neg__(self) -> "FockVector":
        return FockVector._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def __mul__(self, scalar) -> "FockVector":
        if not isinstance(scalar, (int, BetaScalar)):
            return NotImplemented
        if not scalar:
            return FockVector()
        return FockVector._wrap({k: c * scalar for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        body = " + ".join(f"({c}){k}" for k, c in self.items())
        return f"FockVector({body or '0'})"


def _accumulate(acc: dict, key, coeff: BetaScalar):
    old = acc.get(key)
    new = coeff if old is None else old + coeff
    if new:
        acc[key] = new
    else:
        acc.pop(key, None)


def _act(v: FockVector, step) -> FockVector:
    out: dict[MayaKet, BetaScalar] = {}
    for ket, c in v._terms.items():
        hit = step(ket)
        if hit is not None:
            sign, new = hit
            _accumulate(out, new, c if sign > 0 else -c)
    return FockVector._wrap(out)


def apply_psi(j: int, v: FockVector) -> FockVector:
    return _act(v, lambda ket: _insert(j, ket))


def apply_psi_star(j: int, v: FockVector) -> FockVector:
    return _act(v, lambda ket: _remove(j, ket))


def anticommutator_check(m: int, n: int, v: FockVector) -> bool:
    """(psi_m psi*_n + psi*_n psi_m) v == delta_{mn} v."""
    lhs = apply_psi(m, apply_psi_star(n, v)) + apply_psi_star(n, apply_psi(m, v))
    rhs = v if m == n else FockVector()
    return lhs == rhs


def apply_boson(m: int, v: FockVector) -> FockVector:
    """a_m = sum_k psi_{k} psi*_{k+m}, for m != 0."""
    if m == 0:
        raise PreconditionError("a_0 is not supported, boson modes must be nonzero")
    out = FockVector()
    for ket, c in v._terms.items():
        single = FockVector._wrap({ket: c})
        for i in ket.indices(ket.length + abs(m)):
            if ket.occupied(i - m):
                continue
            out = out + apply_psi(i - m, apply_psi_star(i, single))
    return out


def vacuum_coefficient(v: FockVector, charge: int = 0) -> BetaScalar:
    """<charge| v."""
    return v.coefficient(MayaKet(charge))


def wick_expectation(m_list: Sequence[int], n_list: Sequence[int]) -> BetaScalar:
    """<0| psi_{m_1} ... psi_{m_r} psi*_{n_r} ... psi*_{n_1} |0> as det(<psi_{m_i} psi*_{n_j}>)."""
    if len(m_list) != len(n_list):
        raise DimensionError(f"{len(m_list)} creators against {len(n_list)} annihilators")
    if not m_list:
        return BetaScalar(1)
    rows = [[BetaScalar(1 if m == n and m < 0 else 0) for n in n_list] for m in m_list]
    return det_exact(RingMatrix(rows))


def conjugate_psi_by_exp_theta(k: int, j: int) -> Iterator[tuple[int, BetaScalar]]:
    """e^{k Theta} psi_j e^{-k Theta} = sum_m binom(k, m) b^m psi_{j+m}.

    Finite for k >= 0; for k < 0 the series never ends and the caller cuts it.
    """
    for m in itertools.count():
        if k >= 0 and m > k:
            return
        coeff = integer_binomial(k, m)
        if coeff:
            yield j + m, BetaScalar.monomial(m, coeff)


def conjugate_psi_by_exp_theta_lower(k: int, j: int) -> Iterator[tuple[int, BetaScalar]]:
    """e^{k theta} psi_j e^{-k theta} = sum_m binom(k, m) b^m psi_{j-m}."""
    for m in itertools.count():
        if k >= 0 and m > k:
            return
        coeff = integer_binomial(k, m)
        if coeff:
            yield j - m, BetaScalar.monomial(m, coeff)


@dataclass(frozen=True)
class Psi:
    index: int


@dataclass(frozen=True)
class PsiStar:
    index: int


@dataclass(frozen=True)
class Boson:
    mode: int

    def __post_init__(self):
        if self.mode == 0:
            raise PreconditionError("boson modes must be nonzero")


@dataclass(frozen=True)
class ExpTheta:
    k: int


@dataclass(frozen=True)
class ExpThetaLower:
    k: int


OperatorAtom = Union[Psi, PsiStar, Boson, ExpTheta, ExpThetaLower]
OperatorWord = tuple[OperatorAtom, ...]


def schur_word(parts: Sequence[int], r: int | None = None) -> OperatorWord:
    """psi_{n_1 - 1} ... psi_{n_r - r}; pair with the vacuum of charge -r."""
    r = len(parts) if r is None else r
    padded = tuple(parts) + (0,) * (r - len(parts))
    return tuple(Psi(p - i) for i, p in enumerate(padded, start=1))


def grothendieck_word(parts: Sequence[int], r: int | None = None) -> OperatorWord:
    """psi_{n_1 - 1} e^Theta ... psi_{n_r - r} e^Theta, followed by e^{-r Theta} when r is given."""
    tail = r is not None
    r = len(parts) if r is None else r
    if r < len(parts):
        raise PreconditionError(f"r = {r} is shorter than {tuple(parts)}")
    word = []
    for atom in schur_word(parts, r):
        word += [atom, ExpTheta(1)]
    if tail and r:
        word.append(ExpTheta(-r))
    return tuple(word)


def dual_grothendieck_word(parts: Sequence[int], r: int | None = None) -> OperatorWord:
    """psi_{n_1 - 1} e^{-theta} ... psi_{n_r - r} e^{-theta}."""
    r = len(parts) if r is None else r
    if r < len(parts):
        raise PreconditionError(f"r = {r} is shorter than {tuple(parts)}")
    word = []
    for atom in schur_word(parts, r):
        word += [atom, ExpThetaLower(-1)]
    return tuple(word)


def word_charge(word: OperatorWord) -> int:
    return sum(1 if isinstance(a, Psi) else -1 if isinstance(a, PsiStar) else 0 for a in word)


def _check_word(word: OperatorWord):
    kinds = {type(a) for a in word}
    unknown = kinds - {Psi, PsiStar, Boson, ExpTheta, ExpThetaLower}
    if unknown:
        raise UnsupportedWordError(f"unknown operator atoms: {sorted(k.__name__ for k in unknown)}")
    if ExpTheta in kinds and ExpThetaLower in kinds:
        raise UnsupportedWordError("words mixing e^Theta and e^theta are not supported")
    if kinds & {ExpTheta, ExpThetaLower} and kinds & {PsiStar, Boson}:
        raise UnsupportedWordError("exponential atoms only combine with psi atoms")


def theta_boundary_polynomial(k: int, n: int) -> MultiPoly:
    """prod_{i <= n} (1 + b x_i)^k."""
    if k < 0:
        raise PreconditionError("the boundary factor needs a non-negative power")
    one = MultiPoly.constant(n, 1)
    factor = one
    for i in range(1, n + 1):
        factor = factor * (one + MultiPoly.beta(n) * MultiPoly.variable(n, i))
    return factor ** k


def theta_boundary_factor(k: int, caps: TruncationCaps) -> SymmetricElement:
    """(sum_t b^t e_t)^k, the image of prod_i (1 + b x_i)^k."""
    if k < 0:
        raise PreconditionError("the boundary factor needs a non-negative power")
    series = SymmetricElement.zero(caps)
    for t in range(caps.max_degree + 1):
        series = series + elementary(t, caps) * BetaScalar.monomial(t)
    result = SymmetricElement.one(caps)
    for _ in range(k):
        result = result * series
    return result


def _pair_with_schur(v: FockVector, caps: TruncationCaps) -> SymmetricElement:
    coeffs = {}
    for ket, c in v._terms.items():
        if ket.charge == 0 and ket.shape.weight <= caps.max_degree:
            coeffs[ket.shape] = c
    return to_basis(SymmetricElement(Basis.SCHUR, coeffs, caps), Basis.COMPLETE_H)


def _leading_weight(word: OperatorWord, charge: int) -> int | None:
    # weight of the bare psi word on the vacuum; exp(Theta) only adds higher degrees
    state = FockVector.vacuum(charge)
    for atom in reversed(word):
        if isinstance(atom, Psi):
            state = apply_psi(atom.index, state)
    weights = [ket.shape.weight for ket in state.terms if ket.charge == 0]
    return min(weights) if weights else None


def vacuum_expectation(word: OperatorWord, charge: int, caps: TruncationCaps) -> SymmetricElement:
    """<0| e^{H(x)} word |charge>, truncated to caps, in the CompleteH basis."""
    word = tuple(word)
    _check_word(word)
    if word_charge(word) + charge != 0:
        logger.debug("net charge %d, expectation vanishes", word_charge(word) + charge)
        return SymmetricElement.zero(caps)
    total_theta = sum(a.k for a in word if isinstance(a, ExpTheta))
    if total_theta < 0:
        raise UnsupportedWordError(f"net e^Theta weight {total_theta} lies outside the completed ring")
    if {type(a) for a in word} <= {Psi, ExpTheta}:
        leading = _leading_weight(word, charge)
        if leading is not None and leading > caps.max_degree:
            raise CapsError(f"caps {caps} cut below the leading degree {leading} of the word")

    # every e^Theta moves to the left boundary, every e^theta to the right vacuum
    channels = []
    theta_right = total_theta
    lower_left = 0
    for atom in word:
        if isinstance(atom, ExpTheta):
            theta_right -= atom.k
        elif isinstance(atom, ExpThetaLower):
            lower_left += atom.k
        elif isinstance(atom, Psi):
            if theta_right:
                channels.append(("up", atom.index, theta_right))
            elif lower_left:
                channels.append(("down", atom.index, lower_left))
            else:
                channels.append(("psi", atom.index, 0))
        else:
            channels.append((type(atom).__name__, atom, 0))

    state = FockVector.vacuum(charge)
    budget = 2 * caps.max_degree
    for pos in range(len(channels) - 1, -1, -1):
        kind, payload, weight = channels[pos]
        rest = sum(2 * c[1] + 1 for c in channels[:pos] if c[0] in ("up", "psi"))
        prune = all(c[0] in ("up", "psi") for c in channels[:pos])
        if kind == "up":
            state = _apply_up_channel(payload, weight, state, budget - rest if prune else None)
        elif kind == "down":
            state = _apply_down_channel(payload, weight, state, caps)
        elif kind == "psi":
            state = apply_psi(payload, state)
            if prune:
                state = _drop_above(state, budget - rest)
        elif kind == "PsiStar":
            state = apply_psi_star(payload.index, state)
        else:
            state = apply_boson(payload.mode, state)
        if not state:
            return SymmetricElement.zero(caps)

    result = _pair_with_schur(state, caps)
    if total_theta:
        result = result * theta_boundary_factor(total_theta, caps)
    return result


def _drop_above(v: FockVector, limit: int) -> FockVector:
    return FockVector._wrap({k: c for k, c in v._terms.items() if k.energy2 <= limit})


def _apply_up_channel(j: int, theta_right: int, v: FockVector, limit: int | None) -> FockVector:
    # psi_j e^{K Theta} = e^{K Theta} sum_m binom(-K, m) b^m psi_{j+m}
    if limit is None and theta_right > 0:
        raise GrothError("an infinite e^Theta series needs an energy cut")
    out = FockVector()
    for ket, c in v._terms.items():
        single = FockVector._wrap({ket: c})
        for idx, coeff in conjugate_psi_by_exp_theta(-theta_right, j):
            if limit is not None and ket.energy2 + 2 * idx + 1 > limit:
                break
            out = out + apply_psi(idx, single) * coeff
    return out


def _apply_down_channel(j: int, lower_left: int, v: FockVector, caps: TruncationCaps) -> FockVector:
    out = FockVector()
    for ket, c in v._terms.items():
        single = FockVector._wrap({ket: c})
        bound = caps.max_degree + ket.shape.weight + abs(ket.charge) + abs(j) + 1
        for step, (idx, coeff) in enumerate(conjugate_psi_by_exp_theta_lower(lower_left, j)):
            if idx <= ket.sea_top:
                break
            if step > bound:
                raise GrothError(f"e^theta series on {ket} passed its iteration bound {bound}")
            out = out + apply_psi(idx, single) * coeff
    return out


# -- strip actions, used by the direct evaluator --------------------------

def _strip_shapes(lam: Partition, low: Sequence[int], high: Sequence[int]) -> Iterator[Partition]:
    """Partitions mu with low_i <= mu_i <= high_i, row by row."""
    def walk(i, prev, acc):
        if i == len(low):
            yield Partition.from_sequence(acc)
            return
        for value in range(min(high[i], prev), low[i] - 1, -1):
            yield from walk(i + 1, value, acc + [value])
    yield from walk(0, high[0] if high else 0, [])


def add_vertical_strips(lam: Partition, max_boxes: int) -> Iterator[tuple[Partition, int]]:
    parts = lam.padded(lam.length + max(max_boxes, 0))
    for mu in _strip_shapes(lam, parts, [p + 1 for p in parts]):
        size = mu.weight - lam.weight
        if size <= max_boxes:
            yield mu, size


def remove_vertical_strips(lam: Partition) -> Iterator[tuple[Partition, int]]:
    for mu in _strip_shapes(lam, [max(p - 1, 0) for p in lam], list(lam)):
        yield mu, lam.weight - mu.weight


def remove_horizontal_strips(lam: Partition) -> Iterator[tuple[Partition, int]]:
    below = list(lam[1:]) + [0]
    for mu in _strip_shapes(lam, below, list(lam)):
        yield mu, lam.weight - mu.weight


def apply_exp_theta(k: int, v: FockVector, max_weight: int) -> FockVector:
    """e^{k Theta} v for k >= 0, keeping shapes of weight <= max_weight."""
    if k < 0:
        raise UnsupportedWordError("e^{k Theta} with k < 0 is never applied to a ket")
    for _ in range(k):
        out: dict[MayaKet, BetaScalar] = {}
        for ket, c in v._terms.items():
            for mu, size in add_vertical_strips(ket.shape, max_weight - ket.shape.weight):
                _accumulate(out, MayaKet(ket.charge, mu), c * BetaScalar.monomial(size))
        v = FockVector._wrap(out)
    return v


def apply_exp_theta_lower(k: int, v: FockVector) -> FockVector:
    """e^{k theta} v: vertical strips come off with b^size for k > 0, horizontal ones with (-b)^size for k < 0."""
    strips = remove_vertical_strips if k > 0 else remove_horizontal_strips
    sign = 1 if k > 0 else -1
    for _ in range(abs(k)):
        out: dict[MayaKet, BetaScalar] = {}
        for ket, c in v._terms.items():
            for mu, size in strips(ket.shape):
                _accumulate(out, MayaKet(ket.charge, mu), c * BetaScalar.monomial(size, sign ** size))
        v = FockVector._wrap(out)
    return v


def direct_expectation(word: OperatorWord, charge: int, caps: TruncationCaps) -> SymmetricElement:
    """Same pairing as vacuum_expectation, applying every atom straight to the ket."""
    word = tuple(word)
    _check_word(word)
    if word_charge(word) + charge != 0:
        return SymmetricElement.zero(caps)
    prune = all(isinstance(a, (Psi, ExpTheta)) for a in word)
    budget = 2 * caps.max_degree
    state = FockVector.vacuum(charge)
    for pos in range(len(word) - 1, -1, -1):
        atom = word[pos]
        rest = sum(2 * a.index + 1 for a in word[:pos] if isinstance(a, Psi)) if prune else 0
        if isinstance(atom, Psi):
            state = apply_psi(atom.index, state)
        elif isinstance(atom, PsiStar):
            state = apply_psi_star(atom.index, state)
        elif isinstance(atom, Boson):
            state = apply_boson(atom.mode, state)
        elif isinstance(atom, ExpTheta):
            if not prune:
                raise UnsupportedWordError("e^Theta needs an energy cut")
            out = FockVector()
            for ket, c in state._terms.items():
                room = (budget - rest - ket.energy2) // 2
                if room >= 0:
                    out = out + apply_exp_theta(atom.k, FockVector._wrap({ket: c}), ket.shape.weight + room)
            state = out
        else:
            state = apply_exp_theta_lower(atom.k, state)
        if prune:
            state = _drop_above(state, budget - rest)
    return _pair_with_schur(state, caps)


# -- straightening ---------------------------------------------------------

def _check_straightenable(n: Sequence[int]):
    for j in range(len(n) - 1):
        if n[j + 1] > n[j] + 1:
            raise PreconditionError(f"{tuple(n)} violates n_j - j >= n_(j+1) - (j+1) at j = {j + 1}")


def straighten_raising(n: Sequence[int]) -> tuple[BetaScalar, Partition | None]:
    """X(n) = (-b)^{|n_bar| - |n|} X(n_bar) with n_bar_j = max(n_j, ..., n_r)."""
    n = tuple(n)
    _check_straightenable(n)
    bar = [max(n[j:]) for j in range(len(n))]
    if bar and bar[-1] < 0:
        return BetaScalar(), None
    excess = sum(bar) - sum(n)
    return BetaScalar.monomial(excess, (-1) ** excess), Partition.from_sequence(bar)


def straighten_lowering(n: Sequence[int]) -> tuple[BetaScalar, Partition | None]:
    """x(n) = (-b)^{|n| - |n_low|} x(n_low) with n_low_j = min(n_1, ..., n_j)."""
    n = tuple(n)
    _check_straightenable(n)
    low = [min(n[:j + 1]) for j in range(len(n))]
    if low and low[-1] < 0:
        return BetaScalar(), None
    excess = sum(n) - sum(low)
    return BetaScalar.monomial(excess, (-1) ** excess), Partition.from_sequence(low)


__all__ = [
    "Boson", "ExpTheta", "ExpThetaLower", "FockVector", "MayaKet", "OperatorAtom",
    "OperatorWord", "Psi", "PsiStar", "add_vertical_strips", "anticommutator_check",
    "apply_boson", "apply_exp_theta", "apply_exp_theta_lower", "apply_psi", "apply_psi_star",
    "conjugate_psi_by_exp_theta", "conjugate_psi_by_exp_theta_lower", "direct_expectation",
    "dual_grothendieck_word", "grothendieck_word", "remove_horizontal_strips",
    "remove_vertical_strips", "schur_word", "straighten_lowering", "straighten_raising",
    "theta_boundary_factor", "theta_boundary_polynomial", "vacuum_coefficient",
    "vacuum_expectation", "wick_expectation", "word_charge",
]
