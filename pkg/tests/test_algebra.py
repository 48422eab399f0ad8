import random

import pytest
import sympy

from grothfock_lib.algebra import (
    BETA, BetaScalar, MultiPoly, RingMatrix, alternant_quotient, det_exact, exact_divide, integer_binomial, join_terms,
    symmetric_polynomial, vandermonde,
)
from grothfock_lib.errors import DimensionError, InexactDivisionError, PreconditionError

b = sympy.Symbol("b")


def to_sympy(p, xs):
    """Oracle view of a BetaScalar or MultiPoly."""
    if isinstance(p, BetaScalar):
        return sum((c * b ** e for e, c in p.items()), sympy.Integer(0))
    expr = sympy.Integer(0)
    for key, c in p.flat_items():
        term = c * b ** key[-1]
        for x, e in zip(xs, key[:-1]):
            term *= x ** e
        expr += term
    return expr


def random_scalar(rng):
    return BetaScalar({e: rng.randint(-3, 3) for e in range(rng.randint(0, 3))})


def random_poly(rng, n):
    terms = {}
    for _ in range(rng.randint(0, 4)):
        terms[tuple(rng.randint(0, 2) for _ in range(n))] = random_scalar(rng)
    return MultiPoly(n, terms)


def test_integer_binomial():
    assert integer_binomial(5, 2) == 10
    assert integer_binomial(3, 5) == 0
    assert integer_binomial(-2, 3) == -4
    assert integer_binomial(-1, 4) == 1
    assert integer_binomial(7, -1) == 0
    assert integer_binomial(0, 0) == 1


class TestBetaScalar:

    def test_powers_and_text(self):
        s = (1 + BETA) ** 3
        assert s.items() == [(0, 1), (1, 3), (2, 3), (3, 1)]
        assert BetaScalar({0: 1, 1: -2, 3: 1}).to_text() == "1 - 2 b + b^3"
        assert BetaScalar({0: 1, 1: -2, 3: 1}).to_text(r"\beta", latex=True) == r"1 - 2\beta + \beta^{3}"
        assert BetaScalar().to_text() == "0"
        assert (-BETA).to_text() == "-b"

    def test_equality_with_ints(self):
        assert BetaScalar(3) == 3
        assert BetaScalar() == 0
        assert BETA != 1
        assert hash(BetaScalar(3)) == hash(3)

    def test_exact_div(self):
        assert (1 - BETA ** 2).exact_div(1 + BETA) == 1 - BETA
        assert BetaScalar(6).exact_div(3) == 2
        with pytest.raises(InexactDivisionError):
            (1 + BETA ** 2).exact_div(1 + BETA)
        with pytest.raises(PreconditionError):
            BETA.exact_div(0)

    def test_evaluate_and_beta_zero(self):
        s = BetaScalar({0: 2, 2: -1})
        assert s.evaluate(3) == -7
        assert s.at_beta_zero() == 2
        assert s.degree() == 2
        assert BetaScalar().degree() == -1

    def test_negative_exponent_rejected(self):
        with pytest.raises(PreconditionError):
            BetaScalar({-1: 1})

    def test_ring_axioms_against_sympy(self):
        rng = random.Random(11)
        for _ in range(100):
            p, q, r = (random_scalar(rng) for _ in range(3))
            assert to_sympy(p * (q + r), []) - sympy.expand(to_sympy(p, []) * (to_sympy(q, []) + to_sympy(r, []))) == 0
            assert (p * q) * r == p * (q * r)
            assert p * q == q * p
            assert p - p == 0


class TestMultiPoly:

    def test_one_row_grothendieck_text(self):
        x1, x2 = MultiPoly.variable(2, 1), MultiPoly.variable(2, 2)
        p = x1 + x2 + MultiPoly.beta(2) * x1 * x2
        assert p.to_text() == "x1 + x2 + b x1 x2"
        assert p.to_text(r"\beta", latex=True) == r"x_{1} + x_{2} + \beta x_{1}x_{2}"

    def test_products_match_sympy(self):
        rng = random.Random(5)
        xs = sympy.symbols("x1:4")
        for _ in range(50):
            p, q = random_poly(rng, 3), random_poly(rng, 3)
            assert sympy.expand(to_sympy(p * q, xs) - to_sympy(p, xs) * to_sympy(q, xs)) == 0
            assert sympy.expand(to_sympy(p + q, xs) - to_sympy(p, xs) - to_sympy(q, xs)) == 0

    def test_truncate_ignores_beta(self):
        x1 = MultiPoly.variable(2, 1)
        p = x1 + MultiPoly.beta(2) * x1 ** 3
        assert p.truncate(2) == x1
        assert p.total_degree() == 3

    def test_restrict_and_extend(self):
        x = [MultiPoly.variable(3, i) for i in (1, 2, 3)]
        p = x[0] * x[1] + x[2] + x[0]
        assert p.restrict(2) == MultiPoly.variable(2, 1) * MultiPoly.variable(2, 2) + MultiPoly.variable(2, 1)
        assert p.restrict(2).extend(3) == x[0] * x[1] + x[0]
        with pytest.raises(PreconditionError):
            p.restrict(4)

    def test_symmetry(self):
        x1, x2 = MultiPoly.variable(2, 1), MultiPoly.variable(2, 2)
        assert (x1 * x2 + x1 + x2).is_symmetric()
        assert not (x1 + MultiPoly.beta(2) * x2).is_symmetric()
        assert (x1 + BETA * x2).swap_variables(1, 2) == x2 + BETA * x1

    def test_bad_exponents(self):
        with pytest.raises(DimensionError):
            MultiPoly(2, {(1,): 1})
        with pytest.raises(PreconditionError):
            MultiPoly(0)


class TestDeterminants:

    def test_integer_determinants_match_sympy(self):
        rng = random.Random(3)
        for n in (1, 2, 3, 5, 6):
            for _ in range(10):
                rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
                assert det_exact(RingMatrix(rows)) == sympy.Matrix(rows).det()

    def test_singular_bareiss(self):
        rows = [[1, 2, 3, 4, 5]] * 2 + [[0, 1, 0, 1, 0], [2, 0, 1, 1, 3], [1, 1, 1, 1, 1]]
        assert det_exact(RingMatrix(rows)) == 0

    def test_beta_scalar_bareiss(self):
        rng = random.Random(17)
        rows = [[random_scalar(rng) for _ in range(5)] for _ in range(5)]
        expected = sympy.Matrix([[to_sympy(e, []) for e in r] for r in rows]).det()
        assert sympy.expand(to_sympy(det_exact(RingMatrix(rows)), []) - expected) == 0

    def test_polynomial_determinant(self):
        xs = sympy.symbols("x1:3")
        x1, x2 = MultiPoly.variable(2, 1), MultiPoly.variable(2, 2)
        rows = [[x1, x2 + BETA], [x1 * x2, x1 + x2]]
        expected = sympy.Matrix([[to_sympy(e, xs) for e in r] for r in rows]).det()
        assert sympy.expand(to_sympy(det_exact(RingMatrix(rows)), xs) - expected) == 0

    def test_shape_errors(self):
        with pytest.raises(DimensionError):
            RingMatrix([])
        with pytest.raises(DimensionError):
            RingMatrix([[1, 2], [3]])
        with pytest.raises(DimensionError):
            det_exact(RingMatrix([[1, 2]]))


class TestExactDivide:

    def test_difference_of_squares(self):
        x1, x2 = MultiPoly.variable(2, 1), MultiPoly.variable(2, 2)
        assert exact_divide(x1 ** 2 - x2 ** 2, x1 - x2) == x1 + x2

    def test_vandermonde_quotient(self):
        v = vandermonde(3)
        x = [MultiPoly.variable(3, i) for i in (1, 2, 3)]
        assert exact_divide(v * (x[0] + BETA * x[1] * x[2]), v) == x[0] + BETA * x[1] * x[2]

    def test_remainder_raises(self):
        x1, x2 = MultiPoly.variable(2, 1), MultiPoly.variable(2, 2)
        with pytest.raises(InexactDivisionError):
            exact_divide(x1 ** 2 + x2, x1 - x2)


class TestAlternantQuotient:

    def test_single_alternant(self):
        # (x1^3 - x2^3) / (x1 - x2) = x1^2 + x1 x2 + x2^2
        assert alternant_quotient({(3, 0): BetaScalar(1)}, 2) == {(2, 0): BetaScalar(1), (1, 1): BetaScalar(1)}

    def test_matches_long_division(self):
        x = [MultiPoly.variable(3, i) for i in (1, 2, 3)]
        sym = x[0] * x[1] + x[0] * x[2] + x[1] * x[2] + BETA * (x[0] + x[1] + x[2]) + 2
        numerator = vandermonde(3) * sym
        dominant = {}
        for exps, c in numerator.terms.items():
            if exps[0] > exps[1] > exps[2]:
                dominant[exps] = c
        quotient = alternant_quotient(dominant, 3)
        assert symmetric_polynomial(quotient, 3) == exact_divide(numerator, vandermonde(3)) == sym

    def test_rejects_non_leading_terms(self):
        with pytest.raises(InexactDivisionError):
            alternant_quotient({(1, 1): BetaScalar(1)}, 2)
        with pytest.raises(DimensionError):
            alternant_quotient({(2, 1, 0): BetaScalar(1)}, 2)

    def test_orbit_expansion(self):
        x1, x2 = MultiPoly.variable(2, 1), MultiPoly.variable(2, 2)
        assert symmetric_polynomial({(1, 0): BETA, (1, 1): BetaScalar(1)}, 2) == BETA * (x1 + x2) + x1 * x2


def test_join_terms():
    terms = [(BetaScalar(1), "G_(3)"), (-BETA, "G_(2,2)"), (BetaScalar({0: 1, 1: 1}), "G_(1)"), (BetaScalar(2), "")]
    assert join_terms(terms) == "G_(3) - b G_(2,2) + (1 + b) G_(1) + 2"
    assert join_terms([]) == "0"
