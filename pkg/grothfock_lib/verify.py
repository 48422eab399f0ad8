"""Verification suites.

Each suite is a list of named checks; a check walks its cases and stops at
the first counterexample. Checks run on a thread pool and the results come
back sorted by name, so the report does not depend on scheduling.
"""
import itertools
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

from . import constants
from .algebra import BETA, BetaScalar, integer_binomial
from .errors import GrothError, ParseError
from .fermion import (
    FockVector, anticommutator_check, apply_boson, apply_exp_theta,
    apply_psi, apply_psi_star, conjugate_psi_by_exp_theta, direct_expectation, grothendieck_word,
    vacuum_coefficient, vacuum_expectation, wick_expectation,
)
from .kpoly import G_bialternant, G_jacobi_trudi, G_r, all_routes, duality_gram, g_determinant, g_fermionic
from .pieri import (
    OperatorFamily, PartitionCombo, Tableau, column_word, d_apply, elementary_apply, expand_sG,
    expand_sg, interpret_G, interpret_g, knuth_violations, noncomm_schur_apply, noncomm_schur_via_jt,
    pieri_e_g, pieri_h_g, ssyt_enumerate, u_apply,
)
from .symfunc import (
    Basis, Partition, SymmetricElement, TruncationCaps, beta_prefix_schur, complete, elementary, evaluate,
    partitions_up_to, restrict, schur_jt, to_basis,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    counterexample: str | None = None


@dataclass(frozen=True)
class Check:
    name: str
    cases: Callable[[], Iterable]
    holds: Callable[[object], bool]

    def run(self) -> CheckResult:
        count = 0
        for case in self.cases():
            count += 1
            try:
                ok = self.holds(case)
            except GrothError as e:
                return CheckResult(self.name, False, count, f"{case!r}: {e}")
            if not ok:
                return CheckResult(self.name, False, count, repr(case))
        logger.debug("%s: %d cases", self.name, count)
        return CheckResult(self.name, True, count)


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def _random_partition(rng: random.Random, max_weight: int, max_length: int | None = None) -> Partition:
    shapes = list(partitions_up_to(max_weight, max_length))
    return rng.choice(shapes)


def _random_ket(rng: random.Random) -> FockVector:
    return FockVector.basis(rng.randint(-2, 2), _random_partition(rng, 4))


# -- routes ------------------------------------------------------------------

def routes_checks(max_weight: int | None, seed: int) -> list[Check]:
    max_weight = constants.ROUTE_MAX_WEIGHT if max_weight is None else max_weight
    caps = TruncationCaps(*constants.ROUTE_CAPS)
    shapes = lambda: partitions_up_to(max_weight, constants.ROUTE_MAX_LENGTH)

    @lru_cache(maxsize=None)
    def routes(lam):
        return tuple(all_routes(lam, caps).values())

    def agree(lam):
        first, *rest = routes(lam)
        return all(r == first for r in rest)

    def collapse(lam):
        schur = restrict(schur_jt(lam, caps=caps))
        return all(r.at_beta_zero() == schur for r in routes(lam))

    def lowest(lam):
        schur = restrict(schur_jt(lam, caps=caps)).truncate(lam.weight)
        return all(r.truncate(lam.weight) == schur for r in routes(lam))

    return [
        Check(f"G routes agree in {caps.n_vars} variables", shapes, agree),
        Check("G routes collapse to s at b = 0", shapes, collapse),
        Check("lowest component of G is s", shapes, lowest),
    ]


# -- duality -----------------------------------------------------------------

def duality_checks(max_weight: int | None, seed: int) -> list[Check]:
    max_weight = constants.DUALITY_MAX_WEIGHT if max_weight is None else max_weight
    shapes = [lam for lam in partitions_up_to(max_weight) if lam]
    cap = max(constants.DUALITY_MIN_CAPS, max_weight)
    caps = TruncationCaps(cap, cap)
    classical_weight = max(min(max_weight, constants.DUALITY_CLASSICAL_WEIGHT), 1)

    def identity(_):
        gram = duality_gram(shapes, caps)
        return all(gram[i][j] == (1 if i == j else 0) for i in range(len(shapes)) for j in range(len(shapes)))

    def dual_one_row(n):
        return g_determinant(Partition((n,)), 1, caps) == complete(n, caps)

    def dual_one_column(n):
        expected = SymmetricElement.zero(caps)
        for j in range(n):
            expected = expected + elementary(n - j, caps) * BetaScalar.monomial(j, (-1) ** j * integer_binomial(n - 1, j))
        return g_determinant(Partition((1,) * n), n, caps) == expected

    def dual_classical(lam):
        r = max(lam.length, 1)
        small = TruncationCaps(classical_weight, classical_weight)
        schur = schur_jt(lam, r, small)
        return (g_determinant(lam, r, small).at_beta_zero() == schur
                and g_fermionic(lam, r, small).at_beta_zero() == schur)

    k = len(shapes)
    return [
        Check(f"{k}x{k} Gram block == identity", lambda: [k], identity),
        Check("g_(n) == h_n", lambda: range(1, max_weight + 1), dual_one_row),
        Check("g_(1^n) expands in e", lambda: range(1, max_weight + 1), dual_one_column),
        Check("g_lam == s_lam at b = 0", lambda: partitions_up_to(classical_weight, 3), dual_classical),
    ]


# -- knuth -------------------------------------------------------------------

def knuth_checks(max_weight: int | None, seed: int) -> list[Check]:
    max_weight = constants.KNUTH_MAX_WEIGHT if max_weight is None else max_weight
    checks = []
    for family in OperatorFamily:
        name = f"Knuth relations for {family.value}"
        rng = _rng(seed, name)
        shapes = [_random_partition(rng, max_weight) for _ in range(constants.RANDOM_INSTANCES)]
        checks.append(Check(
            name, lambda shapes=shapes: shapes,
            lambda lam, family=family: not knuth_violations(family, lam, constants.KNUTH_MAX_INDEX),
        ))

        name = f"e_a e_b == e_b e_a for {family.value}"
        rng = _rng(seed, name)
        cases = [(rng.randint(1, 4), rng.randint(1, 4), _random_partition(rng, max_weight))
                 for _ in range(constants.RANDOM_INSTANCES)]

        def commute(case, family=family):
            a, b, lam = case
            c = PartitionCombo.of(lam)
            n = constants.PIERI_ROWS
            return (elementary_apply(a, n, family, elementary_apply(b, n, family, c))
                    == elementary_apply(b, n, family, elementary_apply(a, n, family, c)))

        checks.append(Check(name, lambda cases=cases: cases, commute))
    return checks


# -- wick --------------------------------------------------------------------

def wick_checks(max_weight: int | None, seed: int) -> list[Check]:
    low, high = constants.WICK_INDEX_RANGE
    count = constants.RANDOM_INSTANCES

    def cases(name, draw):
        def draw_all():
            rng = _rng(seed, name)
            return [draw(rng) for _ in range(count)]
        return draw_all

    def anticommutator(case):
        m, n, v = case
        return anticommutator_check(m, n, v)

    def boson(case):
        m, n, v = case
        lhs = apply_boson(m, apply_boson(n, v)) - apply_boson(n, apply_boson(m, v))
        return lhs == (v * m if m + n == 0 else FockVector())

    def wick(case):
        ms, ns = case
        state = FockVector.vacuum(0)
        for n in ns:
            state = apply_psi_star(n, state)
        for m in reversed(ms):
            state = apply_psi(m, state)
        return vacuum_coefficient(state) == wick_expectation(ms, ns)

    def draw_wick(rng):
        r = rng.randint(0, 3)
        return ([rng.randint(low, high) for _ in range(r)], [rng.randint(low, high) for _ in range(r)])

    def draw_boson(rng):
        m = rng.choice([k for k in range(-3, 4) if k])
        n = -m if rng.random() < 0.5 else rng.choice([k for k in range(-3, 4) if k])
        return m, n, _random_ket(rng)

    def conjugation(case):
        j, ket = case
        v = FockVector.basis(*ket)
        cap = 4
        wide = cap + abs(j) + abs(ket[0]) + 1
        lhs = _keep_weight(apply_exp_theta(1, apply_psi(j, v), cap), cap)
        rhs = FockVector()
        moved = apply_exp_theta(1, v, wide)
        for idx, coeff in conjugate_psi_by_exp_theta(1, j):
            rhs = rhs + apply_psi(idx, moved) * coeff
        return lhs == _keep_weight(rhs, cap)

    def draw_conjugation(rng):
        return rng.randint(low, high), (rng.randint(-2, 2), _random_partition(rng, 3))

    def word_routes(lam):
        caps = TruncationCaps(4, lam.weight + 2)
        word = grothendieck_word(lam)
        return vacuum_expectation(word, -lam.length, caps) == direct_expectation(word, -lam.length, caps)

    return [
        Check("psi psi* anticommutators", cases("psi psi* anticommutators", lambda rng: (
            rng.randint(low, high), rng.randint(low, high), _random_ket(rng))), anticommutator),
        Check("boson commutators", cases("boson commutators", draw_boson), boson),
        Check("Wick determinant == direct evaluation", cases("Wick determinant", draw_wick), wick),
        Check("e^Theta psi_n e^-Theta == psi_n + b psi_n+1",
              cases("conjugation", draw_conjugation), conjugation),
        Check("G words: boundary route == direct route",
              lambda: partitions_up_to(3 if max_weight is None else max_weight, 3), word_routes),
    ]


def _keep_weight(v: FockVector, max_weight: int) -> FockVector:
    return FockVector({ket: c for ket, c in v.terms.items() if ket.shape.weight <= max_weight})


# -- pieri -------------------------------------------------------------------

def _combo(pairs) -> PartitionCombo:
    return PartitionCombo({Partition(lam): c for lam, c in pairs})


PIERI_FIXTURES = {
    "u_1 (2,2)": (lambda: u_apply(1, PartitionCombo.of((2, 2))), _combo([((3, 2), 1)])),
    "u_2 (2,2)": (lambda: u_apply(2, PartitionCombo.of((2, 2))), _combo([((3, 3), -BETA)])),
    "u_3 (2,2)": (lambda: u_apply(3, PartitionCombo.of((2, 2))), _combo([((2, 2, 1), 1)])),
    "d_1 (1,1)": (lambda: d_apply(1, PartitionCombo.of((1, 1))), _combo([((2, 1), 1)])),
    "d_2 (1,1)": (lambda: d_apply(2, PartitionCombo.of((1, 1))), _combo([((1, 1), -BETA)])),
    "d_3 (1,1)": (lambda: d_apply(3, PartitionCombo.of((1, 1))), _combo([((1, 1, 1), 1)])),
    "h_2(u_1,u_2) ()": (
        lambda: noncomm_schur_apply(Partition((2,)), 2, OperatorFamily.U, PartitionCombo.of(())),
        _combo([((2,), 1), ((2, 1), -BETA), ((2, 2), BETA ** 2)])),
    "s_(2,1)(u_1,u_2,u_3) ()": (
        lambda: noncomm_schur_apply(Partition((2, 1)), 3, OperatorFamily.U, PartitionCombo.of(())),
        _combo([((2, 1), 1), ((2, 2), -BETA), ((2, 1, 1), -2 * BETA), ((2, 2, 1), 2 * BETA ** 2), ((2, 2, 2), -2 * BETA ** 3)])),
    "h_2 G_(1), r = 2": (lambda: expand_sG(Partition((2,)), Partition((1,)), 2),
        _combo([((3,), 1), ((2, 1), 1), ((2, 2), -BETA)])),
    "h_2 G_(2), r = 2": (lambda: expand_sG(Partition((2,)), Partition((2,)), 2),
        _combo([((4,), 1), ((3, 1), 1), ((2, 2), 1)])),
    "s_(2,1) G_(1), r = 3": (lambda: expand_sG(Partition((2, 1)), Partition((1,)), 3),
        _combo([((3, 1), 1), ((2, 2), 1), ((2, 1, 1), 1), ((2, 2, 1), -2 * BETA), ((3, 1, 1), -BETA), ((2, 2, 2), 2 * BETA ** 2)])),
    "E(t) g_() at t^2": (lambda: pieri_e_g(2, Partition())[2], _combo([((1,), BETA), ((1, 1), 1)])),
    "E(t) g_(1) at t^1": (lambda: pieri_e_g(1, Partition((1,)))[1],
        _combo([((1,), BETA), ((1, 1), 1), ((2,), 1)])),
    "E(t) g_() at t^3": (lambda: pieri_e_g(3, Partition())[3],
        _combo([((1,), BETA ** 2), ((1, 1), 2 * BETA), ((1, 1, 1), 1)])),
    "E(t) g_(1) at t^2": (lambda: pieri_e_g(2, Partition((1,)))[2],
        _combo([((1,), BETA ** 2), ((1, 1), 2 * BETA), ((2,), BETA), ((1, 1, 1), 1), ((2, 1), 1)])),
    "H(t) g_(1) at t^1": (lambda: pieri_h_g(1, Partition((1,)))[1],
        _combo([((1,), BETA), ((2,), 1), ((1, 1), 1)])),
    "H(t) g_(2) at t^1": (lambda: pieri_h_g(1, Partition((2,)))[1],
        _combo([((2,), BETA), ((2, 1), 1), ((3,), 1)])),
    "H(t) g_(1) at t^2": (lambda: pieri_h_g(2, Partition((1,)))[2],
        _combo([((2,), BETA), ((3,), 1), ((2, 1), 1)])),
    "H(t) g_(2) at t^2": (lambda: pieri_h_g(2, Partition((2,)))[2],
        _combo([((3,), BETA), ((2, 1), BETA), ((4,), 1), ((3, 1), 1), ((2, 2), 1)])),
    "H(t) g_() at t^3": (lambda: pieri_h_g(3, Partition())[3], _combo([((3,), 1)])),
}


def _classical_caps(weight: int) -> TruncationCaps:
    return TruncationCaps(max(weight, 1), max(weight, 1))


def _classical_product(factor: SymmetricElement, lam: Partition) -> PartitionCombo:
    """Schur expansion of factor * s_lam at b = 0."""
    product = to_basis(factor.at_beta_zero() * schur_jt(lam, caps=factor.caps), Basis.SCHUR)
    return PartitionCombo(dict(product.items()))


def pieri_checks(max_weight: int | None, seed: int) -> list[Check]:
    weight = constants.PIERI_MAX_WEIGHT if max_weight is None else max_weight
    series_weight = constants.PIERI_SERIES_WEIGHT if max_weight is None else min(max_weight, constants.PIERI_SERIES_WEIGHT)
    rows = constants.PIERI_ROWS

    def fixture(name):
        compute, expected = PIERI_FIXTURES[name]
        return compute() == expected

    def column(_):
        T = Tableau(((1, 3, 4, 4), (2, 5), (3,)))
        return column_word(T) == (3, 2, 1, 5, 3, 4, 4)

    def tableau_vs_jt(case):
        lam, n, family = case
        start = PartitionCombo.of(())
        return noncomm_schur_apply(lam, n, family, start) == noncomm_schur_via_jt(lam, n, family, start)

    def tableau_cases():
        for lam in partitions_up_to(weight):
            for n in range(max(lam.length, 1), rows + 1):
                for family in OperatorFamily:
                    yield lam, n, family

    def sG_sound(case):
        lam, mu = case
        caps = TruncationCaps(rows, lam.weight + mu.weight + 1)
        combo = expand_sG(lam, mu, rows)
        direct = restrict(schur_jt(lam, caps=caps) * G_jacobi_trudi(mu, rows, caps))
        return interpret_G(combo, caps) == direct

    def pairs(bound, max_length):
        shapes = list(partitions_up_to(bound, max_length))
        return lambda: itertools.product(shapes, shapes)

    def sg_sound(case):
        lam, mu = case
        r, s = max(mu.length, 1), max(lam.length, 1)
        caps = TruncationCaps(8, 8)
        combo = expand_sg(lam, mu, r, s)
        direct = beta_prefix_schur(lam, r + s - 1, caps) * g_determinant(mu, mu.length, caps)
        return interpret_g(combo, caps) == direct

    def series_sound(case):
        kind, lam = case
        caps = TruncationCaps(8, 8)
        g = g_determinant(lam, lam.length, caps)
        series = (pieri_e_g if kind == "e" else pieri_h_g)(constants.PIERI_SERIES_WEIGHT, lam)
        factor = elementary if kind == "e" else complete
        return all(interpret_g(c, caps) == factor(i, caps) * g for i, c in enumerate(series))

    def classical(case):
        lam, mu = case
        product = _classical_product(schur_jt(lam, caps=_classical_caps(lam.weight + mu.weight)), mu)
        bounded = PartitionCombo({nu: c for nu, c in product.items() if nu.length <= rows})
        return (expand_sG(lam, mu, rows).at_beta_zero() == bounded
                and expand_sg(lam, mu, max(mu.length, 1), max(lam.length, 1)).at_beta_zero() == product)

    def series_classical(case):
        kind, lam = case
        series = (pieri_e_g if kind == "e" else pieri_h_g)(constants.PIERI_SERIES_WEIGHT, lam)
        factor = elementary if kind == "e" else complete
        caps = _classical_caps(lam.weight + constants.PIERI_SERIES_WEIGHT)
        return all(c.at_beta_zero() == _classical_product(factor(i, caps), lam) for i, c in enumerate(series))

    return [
        Check("Pieri fixtures", lambda: PIERI_FIXTURES, fixture),
        Check("column word of the reading example", lambda: [None], column),
        Check("ssyt count for (2,1) in 3 letters", lambda: [None], lambda _: len(ssyt_enumerate(Partition((2, 1)), 3)) == 8),
        Check("tableau route == Jacobi-Trudi route", tableau_cases, tableau_vs_jt),
        Check(f"s G expansion sound in {rows} variables", pairs(weight, rows), sG_sound),
        Check("s g expansion sound", pairs(series_weight, None), sg_sound),
        Check("E(t) and H(t) series sound",
              lambda: [(kind, lam) for kind in "eh" for lam in partitions_up_to(series_weight)], series_sound),
        Check("expansions are Littlewood-Richardson at b = 0", pairs(series_weight, rows), classical),
        Check("E(t) and H(t) series are classical Pieri at b = 0",
              lambda: [(kind, lam) for kind in "eh" for lam in partitions_up_to(series_weight)], series_classical),
    ]


# -- stability ---------------------------------------------------------------

def stability_checks(max_weight: int | None, seed: int) -> list[Check]:
    max_rank = constants.STABILITY_MAX_RANK
    weight = max_rank if max_weight is None else max_weight

    def cases():
        for lam in partitions_up_to(weight, max_rank):
            for r in range(max(lam.length, 1), max_rank + 1):
                for n in range(max(lam.length, 1), r + 1):
                    yield lam, r, n

    def stable(case):
        lam, r, n = case
        degree = lam.weight + constants.STABILITY_DEGREE_SLACK
        G = G_r(lam, r, TruncationCaps(r, degree))
        return evaluate(G).restrict(n) == G_bialternant(lam, n, degree)

    return [Check("G^r restricts to G in fewer variables", cases, stable)]


SUITES: dict[str, Callable[[int | None, int], list[Check]]] = {
    "routes": routes_checks,
    "duality": duality_checks,
    "knuth": knuth_checks,
    "wick": wick_checks,
    "pieri": pieri_checks,
    "stability": stability_checks,
}


def suite_names() -> list[str]:
    return [*SUITES, "all"]


def collect_checks(suite: str, max_weight: int | None = None, seed: int = constants.DEFAULT_SEED) -> list[Check]:
    if suite == "all":
        return [c for build in SUITES.values() for c in build(max_weight, seed)]
    if suite not in SUITES:
        raise ParseError(f"unknown suite {suite!r}, expected one of {', '.join(suite_names())}")
    return SUITES[suite](max_weight, seed)


def run_checks(checks: list[Check], workers: int = constants.DEFAULT_WORKERS) -> list[CheckResult]:
    with ThreadPoolExecutor(max_workers=max(workers, 1)) as pool:
        results = list(pool.map(Check.run, checks))
    return sorted(results, key=lambda r: r.name)
