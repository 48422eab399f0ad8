import random

import pytest
import sympy

from grothfock_lib.algebra import BETA, MultiPoly
from grothfock_lib.errors import CapsError, NonSymmetricError, PreconditionError
from grothfock_lib.symfunc import (
    Basis, Partition, SymmetricElement, TruncationCaps, beta_prefix_e, beta_prefix_h, beta_prefix_schur,
    complete, elementary, evaluate, from_polynomial, hall_pair, partitions_of, partitions_up_to, restrict,
    schur_jt, to_basis,
)

b = sympy.Symbol("b")


def poly_to_sympy(p, xs):
    expr = sympy.Integer(0)
    for key, c in p.flat_items():
        term = c * b ** key[-1]
        for x, e in zip(xs, key[:-1]):
            term *= x ** e
        expr += term
    return expr


def sympy_schur(lam, xs):
    n = len(xs)
    parts = list(lam) + [0] * (n - len(lam))
    num = sympy.Matrix(n, n, lambda i, j: xs[i] ** (parts[j] + n - 1 - j))
    den = sympy.Matrix(n, n, lambda i, j: xs[i] ** (n - 1 - j))
    return sympy.cancel(num.det() / den.det())


class TestPartition:

    def test_validation(self):
        with pytest.raises(PreconditionError):
            Partition((2, 3))
        with pytest.raises(PreconditionError):
            Partition((2, 0))
        assert Partition.from_sequence((2, 1, 0, 0)) == Partition((2, 1))

    def test_shape_data(self):
        lam = Partition((3, 1))
        assert lam.weight == 4
        assert lam.length == 2
        assert lam.conjugate() == Partition((2, 1, 1))
        assert lam.padded(4) == (3, 1, 0, 0)
        assert str(lam) == "(3,1)"
        assert str(Partition()) == "()"

    def test_enumeration(self):
        assert len(partitions_of(4)) == 5
        assert partitions_of(3) == (Partition((3,)), Partition((2, 1)), Partition((1, 1, 1)))
        assert len(list(partitions_up_to(3))) == 7
        assert len(list(partitions_up_to(4, max_length=1))) == 5
        assert partitions_of(-1) == ()


class TestTruncationCaps:

    def test_bad_caps(self):
        with pytest.raises(CapsError):
            TruncationCaps(0, 3)
        with pytest.raises(CapsError):
            TruncationCaps(2, -1)

    def test_injective(self):
        assert TruncationCaps(4, 4).injective
        assert not TruncationCaps(2, 4).injective
        with pytest.raises(CapsError):
            TruncationCaps(2, 4).require_injective("test")


class TestSymmetricElement:
    caps = TruncationCaps(4, 4)

    def test_terms_above_cap_dropped(self):
        assert not complete(5, self.caps)
        assert complete(-1, self.caps) == SymmetricElement.zero(self.caps)
        assert not (complete(3, self.caps) * complete(2, self.caps))

    def test_products(self):
        h1 = complete(1, self.caps)
        assert h1 * h1 == SymmetricElement.basis_element(Basis.COMPLETE_H, (1, 1), self.caps)
        assert (h1 * BETA).coefficient((1,)) == BETA
        assert (h1 + 1).coefficient(()) == 1

    def test_canonical_order(self):
        f = SymmetricElement(Basis.COMPLETE_H, {(1,): 1, (1, 1): 2, (2,): 3}, self.caps)
        assert [lam for lam, _ in f.items()] == [Partition((2,)), Partition((1, 1)), Partition((1,))]

    def test_mismatched_caps(self):
        with pytest.raises(CapsError):
            complete(1, self.caps) + complete(1, TruncationCaps(5, 5))

    def test_truncate(self):
        f = complete(3, self.caps) + complete(1, self.caps)
        assert f.truncate(2) == complete(1, self.caps.with_degree(2))
        assert f.homogeneous_component(3) == complete(3, self.caps)


class TestBases:
    caps = TruncationCaps(5, 5)

    def test_small_transitions(self):
        s21 = to_basis(schur_jt(Partition((2, 1)), caps=self.caps), Basis.MONOMIAL)
        assert dict(s21.coeffs) == {Partition((2, 1)): 1, Partition((1, 1, 1)): 2}
        h2 = to_basis(complete(2, self.caps), Basis.MONOMIAL)
        assert dict(h2.coeffs) == {Partition((2,)): 1, Partition((1, 1)): 1}
        e2 = elementary(2, self.caps)
        assert dict(e2.coeffs) == {Partition((1, 1)): 1, Partition((2,)): -1}

    def test_round_trips(self):
        rng = random.Random(7)
        for _ in range(20):
            coeffs = {lam: rng.randint(-2, 2) + rng.randint(-1, 1) * BETA
                      for lam in rng.sample(list(partitions_up_to(5)), 4)}
            f = SymmetricElement(Basis.SCHUR, coeffs, self.caps)
            assert to_basis(to_basis(f, Basis.COMPLETE_H), Basis.SCHUR) == f
            assert to_basis(to_basis(f, Basis.MONOMIAL), Basis.SCHUR) == f
            assert to_basis(to_basis(f, Basis.MONOMIAL), Basis.COMPLETE_H) == to_basis(f, Basis.COMPLETE_H)

    def test_leaving_monomial_needs_enough_variables(self):
        f = SymmetricElement.basis_element(Basis.MONOMIAL, (1, 1), TruncationCaps(2, 4))
        with pytest.raises(CapsError):
            to_basis(f, Basis.SCHUR)

    def test_h_to_schur_on_few_variables(self):
        f = to_basis(complete(2, TruncationCaps(1, 3)), Basis.SCHUR)
        assert dict(f.coeffs) == {Partition((2,)): 1}

    def test_schur_polynomials_match_bialternant(self):
        xs = sympy.symbols("x1:4")
        for lam in partitions_up_to(4, max_length=3):
            caps = TruncationCaps(3, max(lam.weight, 1))
            got = poly_to_sympy(evaluate(schur_jt(lam, caps=caps)), xs)
            assert sympy.expand(got - sympy_schur(lam, xs)) == 0, lam

    def test_jacobi_trudi_padding(self):
        lam = Partition((2, 1))
        assert schur_jt(lam, 4, self.caps) == schur_jt(lam, caps=self.caps)
        with pytest.raises(PreconditionError):
            schur_jt(lam, 1, self.caps)


class TestPolynomials:

    def test_from_polynomial(self):
        caps = TruncationCaps(2, 3)
        x1, x2 = MultiPoly.variable(2, 1), MultiPoly.variable(2, 2)
        f = from_polynomial(x1 + x2 + BETA * x1 * x2, caps)
        assert f.basis is Basis.MONOMIAL
        assert dict(f.coeffs) == {Partition((1,)): 1, Partition((1, 1)): BETA}
        assert evaluate(f) == x1 + x2 + BETA * x1 * x2
        assert restrict(f) == f

    def test_from_polynomial_errors(self):
        x1, x2 = MultiPoly.variable(2, 1), MultiPoly.variable(2, 2)
        with pytest.raises(NonSymmetricError):
            from_polynomial(x1 + BETA * x2, TruncationCaps(2, 3))
        with pytest.raises(CapsError):
            from_polynomial(x1 + x2, TruncationCaps(3, 3))


class TestHallPairing:
    caps = TruncationCaps(4, 4)

    def test_orthonormal_schur(self):
        for lam in partitions_of(3):
            for mu in partitions_of(3):
                pair = hall_pair(schur_jt(lam, caps=self.caps), schur_jt(mu, caps=self.caps))
                assert pair == (1 if lam == mu else 0)

    def test_h_dual_to_m(self):
        h = SymmetricElement.basis_element(Basis.COMPLETE_H, (2, 1), self.caps)
        m = SymmetricElement.basis_element(Basis.MONOMIAL, (2, 1), self.caps)
        assert hall_pair(h, m) == 1
        assert hall_pair(h, SymmetricElement.basis_element(Basis.MONOMIAL, (3,), self.caps)) == 0

    def test_requires_enough_variables(self):
        caps = TruncationCaps(2, 4)
        with pytest.raises(CapsError):
            hall_pair(complete(1, caps), complete(1, caps))


class TestBetaPrefixes:
    caps = TruncationCaps(4, 4)

    def test_no_prefix_is_plain(self):
        assert beta_prefix_h(3, 0, self.caps) == complete(3, self.caps)
        assert beta_prefix_e(2, 0, self.caps) == elementary(2, self.caps)

    def test_single_box(self):
        assert beta_prefix_h(1, 1, self.caps) == complete(1, self.caps) - BETA
        assert beta_prefix_e(1, 2, self.caps) == elementary(1, self.caps) - 2 * BETA
        assert beta_prefix_schur(Partition((1,)), 3, self.caps) == complete(1, self.caps) - 3 * BETA

    def test_empty_shape(self):
        assert beta_prefix_schur(Partition(), 2, self.caps) == SymmetricElement.one(self.caps)
