import pytest

from grothfock_lib.algebra import BETA, MultiPoly
from grothfock_lib.errors import CapsError, PreconditionError
from grothfock_lib.kpoly import (
    Family, GrothendieckSpec, G_another_determinant, G_bialternant, G_fermionic, G_jacobi_trudi, G_r, Method,
    all_routes, build, default_caps, duality_check, duality_gram, g_determinant, g_fermionic, one_row_G,
)
from grothfock_lib.symfunc import (
    Partition, SymmetricElement, TruncationCaps, complete, elementary, evaluate, from_polynomial, partitions_of,
    partitions_up_to, restrict, schur_jt,
)


class TestBialternant:

    def test_single_box(self):
        x1, x2 = MultiPoly.variable(2, 1), MultiPoly.variable(2, 2)
        assert G_bialternant((1,), 2) == x1 + x2 + BETA * x1 * x2

    def test_empty_shape(self):
        assert G_bialternant((), 3) == MultiPoly.constant(3, 1)

    def test_degree_cap(self):
        x = [MultiPoly.variable(3, i) for i in (1, 2, 3)]
        expected = x[0] + x[1] + x[2] + BETA * (x[0] * x[1] + x[0] * x[2] + x[1] * x[2])
        assert G_bialternant((1,), 3, max_degree=2) == expected

    @pytest.mark.parametrize("lam", list(partitions_up_to(4, 3)), ids=str)
    def test_graded_division_matches_full_division(self, lam):
        full = G_bialternant(lam, 3)
        for degree in range(lam.weight - 1, lam.weight + 3):
            assert G_bialternant(lam, 3, degree) == full.truncate(degree), degree

    def test_route_scale_shape(self):
        lam = Partition((3, 2, 1))
        caps = TruncationCaps(6, 8)
        assert from_polynomial(G_bialternant(lam, 6, 8), caps) == restrict(G_jacobi_trudi(lam, 6, caps))

    def test_too_many_parts(self):
        with pytest.raises(PreconditionError):
            G_bialternant((2, 1), 1)


class TestRoutes:

    @pytest.mark.parametrize("lam", list(partitions_up_to(3, 3)), ids=str)
    def test_all_routes_agree(self, lam):
        caps = TruncationCaps(3, lam.weight + 2)
        routes = all_routes(lam, caps)
        first = routes.pop("bialternant")
        for name, value in routes.items():
            assert value == first, name

    @pytest.mark.parametrize("lam", list(partitions_up_to(4, 3)), ids=str)
    def test_classical_limit(self, lam):
        caps = TruncationCaps(4, 4)
        r = max(lam.length, 1)
        assert G_jacobi_trudi(lam, r, caps).at_beta_zero() == schur_jt(lam, r, caps)

    def test_lowest_component_is_schur(self):
        caps = TruncationCaps(5, 5)
        lam = Partition((2, 1))
        assert G_fermionic(lam, caps).truncate(3) == schur_jt(lam, caps=caps).truncate(3)

    def test_one_row(self):
        caps = TruncationCaps(4, 4)
        assert one_row_G(0, caps) == SymmetricElement.one(caps)
        assert one_row_G(-1, caps) == SymmetricElement.one(caps) * -BETA
        assert one_row_G(-2, caps) == SymmetricElement.one(caps) * BETA ** 2
        assert one_row_G(2, caps) == G_fermionic(Partition((2,)), caps)
        assert G_another_determinant(Partition((2,)), 1, caps) == one_row_G(2, caps)

    def test_finite_rank_matches_polynomial(self):
        lam = Partition((2, 1))
        caps = TruncationCaps(2, 5)
        assert evaluate(G_r(lam, 2, caps)) == G_bialternant(lam, 2, 5)

    def test_rows_shorter_than_shape(self):
        with pytest.raises(PreconditionError):
            G_jacobi_trudi(Partition((1, 1)), 1, TruncationCaps(3, 3))
        with pytest.raises(PreconditionError):
            g_determinant(Partition((1, 1, 1)), 2, TruncationCaps(3, 3))


class TestDuals:
    caps = TruncationCaps(5, 5)

    def test_one_row_is_complete(self):
        for n in range(5):
            assert g_determinant(Partition((n,)) if n else Partition(), 1, self.caps) == complete(n, self.caps)

    def test_one_column(self):
        g11 = g_determinant(Partition((1, 1)), 2, self.caps)
        assert g11 == elementary(2, self.caps) - complete(1, self.caps) * BETA

    @pytest.mark.parametrize("lam", list(partitions_up_to(3, 3)), ids=str)
    def test_fermionic_matches_determinant(self, lam):
        r = max(lam.length, 1)
        assert g_fermionic(lam, r, self.caps) == g_determinant(lam, r, self.caps)

    @pytest.mark.parametrize("lam", list(partitions_up_to(4, 3)), ids=str)
    def test_classical_limit(self, lam):
        r = max(lam.length, 1)
        schur = schur_jt(lam, r, self.caps)
        assert g_determinant(lam, r, self.caps).at_beta_zero() == schur
        assert g_fermionic(lam, r, self.caps).at_beta_zero() == schur

    def test_duality_pairs(self):
        assert duality_check(Partition((2, 1)), Partition((2, 1)), self.caps) == 1
        assert duality_check(Partition((2,)), Partition((1, 1)), self.caps) == 0
        assert duality_check(Partition((1,)), Partition((2,)), self.caps) == 0
        assert duality_check(Partition((2,)), Partition((1,)), self.caps) == 0

    def test_gram_block_is_identity(self):
        shapes = [lam for k in range(1, 4) for lam in partitions_of(k)]
        gram = duality_gram(shapes, TruncationCaps(3, 3))
        for i, row in enumerate(gram):
            assert row == [1 if i == j else 0 for j in range(len(shapes))]

    def test_duality_needs_room(self):
        with pytest.raises(CapsError):
            duality_check(Partition((3,)), Partition((1,)), TruncationCaps(5, 2))
        with pytest.raises(CapsError):
            duality_check(Partition((1,)), Partition((1,)), TruncationCaps(2, 4))

    def test_fermionic_routes_need_room(self):
        caps = TruncationCaps(6, 2)
        with pytest.raises(CapsError):
            G_fermionic(Partition((2, 1)), caps)
        with pytest.raises(CapsError):
            G_r(Partition((2, 1)), 2, caps)
        assert G_fermionic(Partition((2,)), caps).truncate(2) == schur_jt(Partition((2,)), caps=caps)


class TestSpec:

    def test_default_caps(self):
        assert default_caps(Partition((2, 1))) == TruncationCaps(6, 7)
        assert default_caps(Partition((3, 2))) == TruncationCaps(7, 9)

    def test_method_must_fit_family(self):
        with pytest.raises(PreconditionError):
            GrothendieckSpec(Partition((1,)), Method.DETERMINANT, TruncationCaps(3, 3))
        with pytest.raises(PreconditionError):
            GrothendieckSpec(Partition((1,)), Method.BIALTERNANT, TruncationCaps(3, 3), Family.DUAL)

    def test_shape_and_rows_validation(self):
        with pytest.raises(PreconditionError):
            GrothendieckSpec(Partition((1, 1)), Method.BIALTERNANT, TruncationCaps(1, 3))
        with pytest.raises(PreconditionError):
            GrothendieckSpec(Partition((1, 1)), Method.JACOBI_TRUDI, TruncationCaps(3, 3), rows=1)

    def test_effective_rows(self):
        caps = TruncationCaps(4, 4)
        assert GrothendieckSpec((2, 1), Method.JACOBI_TRUDI, caps).effective_rows == 4
        assert GrothendieckSpec((2, 1), Method.FERMIONIC, caps).effective_rows == 2
        assert GrothendieckSpec((2, 1), Method.GR, caps, rows=3).effective_rows == 3

    def test_build_dispatch(self):
        caps = TruncationCaps(4, 4)
        lam = Partition((1, 1))
        assert build(GrothendieckSpec(lam, Method.FERMIONIC, caps)) == G_fermionic(lam, caps)
        assert build(GrothendieckSpec(lam, Method.DETERMINANT, caps, Family.DUAL)) == g_determinant(lam, 2, caps)
        assert build(GrothendieckSpec(lam, Method.FERMIONIC, caps, Family.DUAL)) == g_fermionic(lam, 2, caps)
        assert evaluate(build(GrothendieckSpec(lam, Method.BIALTERNANT, caps))) == G_bialternant(lam, 4, 4)
