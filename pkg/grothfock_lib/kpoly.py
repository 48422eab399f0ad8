"""Grothendieck polynomials G_lam and dual polynomials g_lam.

Every construction returns a SymmetricElement in the CompleteH basis except
G_bialternant, which works directly in n variables. G_jacobi_trudi and G_r
with r rows agree with the stable G_lam in at most r variables; the
fermionic and one-row routes give the stable function itself.
"""
import enum
import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

from . import constants
from .algebra import (
    BetaScalar, MultiPoly, RingMatrix, alternant_quotient, det_exact, exact_divide, integer_binomial, symmetric_polynomial,
    vandermonde,
)
from .errors import CapsError, PreconditionError, RouteMismatchError
from .fermion import dual_grothendieck_word, grothendieck_word, theta_boundary_factor, vacuum_expectation
from .symfunc import Partition, SymmetricElement, TruncationCaps, complete, from_polynomial, hall_pair, restrict

logger = logging.getLogger(__name__)


class Family(enum.Enum):
    G = "G"
    DUAL = "g"


class Method(enum.Enum):
    BIALTERNANT = "bialternant"
    JACOBI_TRUDI = "jacobi-trudi"
    FERMIONIC = "fermionic"
    ANOTHER_DETERMINANT = "another-determinant"
    GR = "gr"
    DETERMINANT = "determinant"


FAMILY_METHODS = {
    Family.G: (Method.BIALTERNANT, Method.JACOBI_TRUDI, Method.FERMIONIC, Method.ANOTHER_DETERMINANT, Method.GR),
    Family.DUAL: (Method.DETERMINANT, Method.FERMIONIC),
}


def default_caps(lam: Partition) -> TruncationCaps:
    weight = Partition(lam).weight
    return TruncationCaps(max(constants.MIN_DEFAULT_VARS, weight + constants.VAR_SLACK),
                          weight + constants.DEGREE_SLACK)


@dataclass(frozen=True)
class GrothendieckSpec:
    shape: Partition
    method: Method
    caps: TruncationCaps
    family: Family = Family.G
    rows: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "shape", Partition(self.shape))
        if self.method not in FAMILY_METHODS[self.family]:
            raise PreconditionError(f"method {self.method.value} does not build {self.family.value}_lam")
        if self.method is Method.BIALTERNANT and self.caps.n_vars < self.shape.length:
            raise PreconditionError(f"bialternant needs n_vars >= {self.shape.length}")
        if self.rows is not None and self.rows < self.shape.length:
            raise PreconditionError(f"rows = {self.rows} is shorter than {self.shape}")

    @property
    def effective_rows(self) -> int:
        if self.rows is not None:
            return self.rows
        if self.method is Method.JACOBI_TRUDI:
            return max(self.caps.n_vars, self.shape.length)
        return self.shape.length


def build(spec: GrothendieckSpec) -> SymmetricElement:
    lam, caps, r = spec.shape, spec.caps, spec.effective_rows
    logger.debug("building %s_%s by %s with caps %s", spec.family.value, lam, spec.method.value, caps)
    if spec.family is Family.DUAL:
        if spec.method is Method.FERMIONIC:
            return g_fermionic(lam, r, caps)
        return g_determinant(lam, r, caps)
    if spec.method is Method.BIALTERNANT:
        return from_polynomial(G_bialternant(lam, caps.n_vars, caps.max_degree), caps)
    if spec.method is Method.JACOBI_TRUDI:
        return G_jacobi_trudi(lam, r, caps)
    if spec.method is Method.FERMIONIC:
        return G_fermionic(lam, caps)
    if spec.method is Method.ANOTHER_DETERMINANT:
        return G_another_determinant(lam, max(r, 1), caps)
    return G_r(lam, r, caps)


def _check_rows(lam: Partition, r: int):
    if r < lam.length:
        raise PreconditionError(f"r = {r} is shorter than {lam}")


def G_bialternant(lam: Partition, n: int, max_degree: int | None = None) -> MultiPoly:
    """det(x_i^{lam_j + n - j} (1 + b x_i)^{j - 1}) / prod_{i<j}(x_i - x_j).

    Without max_degree the full numerator is divided by the Vandermonde.
    With it, only the leading coefficients of the numerator up to degree
    max_degree + n(n-1)/2 are formed and the quotient is solved degree by
    degree, which is exact because the Vandermonde is homogeneous.
    """
    lam = Partition(lam)
    if lam.length > n:
        raise PreconditionError(f"{lam} has more than {n} parts")
    parts = lam.padded(n)
    if max_degree is not None:
        return symmetric_polynomial(alternant_quotient(_bialternant_numerator(parts, max_degree), n), n)
    one = MultiPoly.constant(n, 1)
    beta = MultiPoly.beta(n)
    rows = []
    for i in range(1, n + 1):
        x = MultiPoly.variable(n, i)
        rows.append([x ** (parts[j] + n - 1 - j) * (one + beta * x) ** j for j in range(n)])
    return exact_divide(det_exact(RingMatrix(rows)), vandermonde(n))


def _bialternant_numerator(parts: tuple[int, ...], max_degree: int) -> dict[tuple[int, ...], BetaScalar]:
    # each column is linear in (1 + b x)^j = sum_m binom(j, m) b^m x^m, leaving
    # alternants det(x_i^{c_j}) that sort to a decreasing exponent vector
    n = len(parts)
    budget = max_degree - sum(parts)
    dominant: dict[tuple[int, ...], BetaScalar] = {}
    for shifts in itertools.product(*(range(j + 1) for j in range(n))):
        extra = sum(shifts)
        if extra > budget:
            continue
        columns = [parts[j] + n - 1 - j + shifts[j] for j in range(n)]
        if len(set(columns)) < n:
            continue
        inversions = sum(1 for a, b in itertools.combinations(columns, 2) if a < b)
        coeff = (-1) ** inversions * math.prod(integer_binomial(j, m) for j, m in enumerate(shifts))
        key = tuple(sorted(columns, reverse=True))
        dominant[key] = dominant.get(key, BetaScalar()) + BetaScalar.monomial(extra, coeff)
    return {e: c for e, c in dominant.items() if c}


def G_jacobi_trudi(lam: Partition, r: int, caps: TruncationCaps) -> SymmetricElement:
    """det(sum_m binom(i-1, m) b^m h_{lam_i - i + j + m}), r x r."""
    lam = Partition(lam)
    _check_rows(lam, r)
    if r == 0:
        return SymmetricElement.one(caps)
    parts = lam.padded(r)
    rows = []
    for i in range(1, r + 1):
        row = []
        for j in range(1, r + 1):
            entry = SymmetricElement.zero(caps)
            for m in range(i):
                entry = entry + complete(parts[i - 1] - i + j + m, caps, BetaScalar.monomial(m, integer_binomial(i - 1, m)))
            row.append(entry)
        rows.append(row)
    return det_exact(RingMatrix(rows))


def G_fermionic(lam: Partition, caps: TruncationCaps) -> SymmetricElement:
    lam = Partition(lam)
    return vacuum_expectation(grothendieck_word(lam), -lam.length, caps)


def G_r(lam: Partition, r: int, caps: TruncationCaps) -> SymmetricElement:
    """G^r_lam by its operator word and by its r x r determinant; the two must agree."""
    lam = Partition(lam)
    _check_rows(lam, r)
    by_word = vacuum_expectation(grothendieck_word(lam, r), -r, caps)
    by_det = G_jacobi_trudi(lam, r, caps)
    if by_word != by_det:
        raise RouteMismatchError(f"G^{r}_{lam}: operator word and determinant disagree")
    return by_det


@lru_cache(maxsize=None)
def one_row_G(k: int, caps: TruncationCaps) -> SymmetricElement:
    """Coefficient of z^k in (1 + b/z)^{-1} prod_i (1 + b x_i)/(1 - x_i z).

    For k <= 0 this is (-b)^{-k}.
    """
    series = SymmetricElement.zero(caps)
    for m in range(max(0, -k), caps.max_degree - k + 1):
        series = series + complete(k + m, caps, BetaScalar.monomial(m, (-1) ** m))
    return series * theta_boundary_factor(1, caps)


def G_another_determinant(lam: Partition, r: int, caps: TruncationCaps) -> SymmetricElement:
    """det(sum_m binom(i-r, m) b^m G_{lam_i - i + j + m}), r x r, over one-row G's."""
    lam = Partition(lam)
    _check_rows(lam, r)
    if r == 0:
        return SymmetricElement.one(caps)
    parts = lam.padded(r)
    rows = []
    for i in range(1, r + 1):
        row = []
        for j in range(1, r + 1):
            base = parts[i - 1] - i + j
            entry = SymmetricElement.zero(caps)
            for m in range(max(caps.max_degree - base, -1) + 1):
                coeff = integer_binomial(i - r, m)
                if coeff:
                    entry = entry + one_row_G(base + m, caps) * BetaScalar.monomial(m, coeff)
            row.append(entry)
        rows.append(row)
    return det_exact(RingMatrix(rows))


def g_determinant(lam: Partition, r: int, caps: TruncationCaps) -> SymmetricElement:
    """det(sum_m binom(1-i, m) b^m h_{lam_i - i + j - m}), r x r."""
    lam = Partition(lam)
    _check_rows(lam, r)
    if r == 0:
        return SymmetricElement.one(caps)
    parts = lam.padded(r)
    rows = []
    for i in range(1, r + 1):
        row = []
        for j in range(1, r + 1):
            base = parts[i - 1] - i + j
            entry = SymmetricElement.zero(caps)
            for m in range(max(base, -1) + 1):
                entry = entry + complete(base - m, caps, BetaScalar.monomial(m, integer_binomial(1 - i, m)))
            row.append(entry)
        rows.append(row)
    return det_exact(RingMatrix(rows))


def g_fermionic(lam: Partition, r: int, caps: TruncationCaps) -> SymmetricElement:
    """g_lam from its operator word, evaluated with r and r + 1 fermions."""
    lam = Partition(lam)
    _check_rows(lam, r)
    result = vacuum_expectation(dual_grothendieck_word(lam, r), -r, caps)
    wider = vacuum_expectation(dual_grothendieck_word(lam, r + 1), -(r + 1), caps)
    if result != wider:
        raise RouteMismatchError(f"g_{lam} depends on the number of fermions ({r} vs {r + 1})")
    return result


def duality_check(lam: Partition, mu: Partition, caps: TruncationCaps) -> BetaScalar:
    """<G_lam, g_mu>; expected to be 1 when lam == mu and 0 otherwise."""
    lam, mu = Partition(lam), Partition(mu)
    if caps.max_degree < max(lam.weight, mu.weight):
        raise CapsError(f"caps {caps} cannot hold {lam} and {mu}")
    caps.require_injective("the duality pairing")
    # g_mu lives in Schur functions of length <= l(mu), so G^r with r >= l(mu) pairs exactly
    r = max(lam.length, mu.length, 1)
    return hall_pair(G_jacobi_trudi(lam, r, caps), g_determinant(mu, mu.length, caps))


def duality_gram(shapes: list[Partition], caps: TruncationCaps) -> list[list[BetaScalar]]:
    duals = {mu: g_determinant(mu, mu.length, caps) for mu in shapes}
    gram = []
    for lam in shapes:
        G = G_jacobi_trudi(lam, max([lam.length, 1] + [mu.length for mu in shapes]), caps)
        gram.append([hall_pair(G, duals[mu]) for mu in shapes])
    return gram


def all_routes(lam: Partition, caps: TruncationCaps) -> dict[str, SymmetricElement]:
    """Every G route restricted to caps.n_vars variables, keyed by method name."""
    lam = Partition(lam)
    return {
        Method.BIALTERNANT.value: from_polynomial(G_bialternant(lam, caps.n_vars, caps.max_degree), caps),
        Method.JACOBI_TRUDI.value: restrict(G_jacobi_trudi(lam, max(caps.n_vars, lam.length), caps)),
        Method.FERMIONIC.value: restrict(G_fermionic(lam, caps)),
        Method.ANOTHER_DETERMINANT.value: restrict(G_another_determinant(lam, max(lam.length, 1), caps)),
    }
