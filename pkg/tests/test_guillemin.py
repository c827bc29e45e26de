"""Normal-form subspaces, the rank-one locus, and structural checks."""

import random
from fractions import Fraction

import pytest

from involutive import (
    CartanCharacters,
    RatMatrix,
    Subspace,
    SymbolPresentation,
    b_of_phi,
    build_b_array,
    cartan_test,
    check_gnf_commutativity,
    check_theorem_a,
    coordinate_subspace,
    dim_w1_generic,
    tableau_from_coefficients,
    w1_of_phi,
    w_minus,
    w_minus_of_phi,
    w_plus,
)
from involutive.guillemin import ZeroCovector
from involutive.involutivity import NotEndovolutive
from conftest import make_310, make_321


def e(n, i):
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return RatMatrix.column(v)


class TestSubspace:
    def test_dim_and_contains(self):
        s = Subspace.from_vectors(3, [e(3, 0), e(3, 1)])
        assert s.dim == 2
        assert s.contains(e(3, 0) + e(3, 1).scale(5))
        assert not s.contains(e(3, 2))

    def test_from_vectors_prunes_dependents(self):
        s = Subspace.from_vectors(2, [e(2, 0), e(2, 0).scale(3)])
        assert s.dim == 1

    def test_equality_is_span_equality(self):
        a = Subspace.from_vectors(2, [e(2, 0), e(2, 1)])
        b = Subspace.from_vectors(2, [e(2, 0) + e(2, 1), e(2, 1)])
        assert a == b

    def test_rejects_dependent_basis(self):
        with pytest.raises(ValueError):
            Subspace(2, (e(2, 0), e(2, 0)))

    def test_coordinate_subspace(self):
        s = coordinate_subspace(4, [1, 3])
        assert s.dim == 2 and s.contains(e(4, 3))


class TestWSplitting:
    def test_w_minus_plus_complementary(self):
        barr = build_b_array(make_310())
        for i in (1, 2, 3):
            lo, hi = w_minus(barr, i), w_plus(barr, i)
            assert lo.dim + hi.dim == barr.r
            for v in lo.basis:
                assert not hi.contains(v) or v.is_zero()

    def test_w_minus_dims_follow_characters(self):
        barr = build_b_array(make_321())
        assert [w_minus(barr, i).dim for i in (1, 2, 3)] == [3, 2, 1]

    def test_w_minus_of_phi_uses_leading_index(self):
        barr = build_b_array(make_310())
        assert w_minus_of_phi(barr, [1, 0, 0]).dim == 3
        assert w_minus_of_phi(barr, [0, 2, 0]).dim == 1
        with pytest.raises(ZeroCovector):
            w_minus_of_phi(barr, [0, 0, 0])


class TestBOfPhi:
    def test_recovers_single_block(self):
        barr = build_b_array(make_310(T2=2, R3=2, Q=5))
        m = b_of_phi(barr, [1, 0], [0, 0, 1])
        assert m == barr.block(1, 3)

    def test_linear_combination(self):
        barr = build_b_array(make_310(T2=1, R3=1))
        m = b_of_phi(barr, [1, 1], [0, 1, 1])
        expect = (barr.block(1, 2) + barr.block(1, 3)
                  + barr.block(2, 2) + barr.block(2, 3))
        assert m == expect

    def test_ignores_components_past_ell(self):
        barr = build_b_array(make_310(T2=1, R3=1))
        assert b_of_phi(barr, [1, 0, 7], [0, 0, 1]) == \
            b_of_phi(barr, [1, 0], [0, 0, 1])


class TestW1:
    def test_w1_of_u1_dim2(self):
        # phi = u^1: eigen-system for eigenvalue 1 in columns 1..ell
        barr = build_b_array(make_310(T2=1, R3=1))
        w1 = w1_of_phi(barr, [1, 0])
        assert w1.dim == 2
        assert w1.contains(e(3, 0))

    def test_w1_with_phi2_nonzero_dim1(self):
        barr = build_b_array(make_310(T2=1, R3=1))
        for phi in ([0, 1], [1, 1], [2, -3]):
            assert w1_of_phi(barr, phi).dim == 1

    def test_w1_inside_w_minus_phi(self):
        barr = build_b_array(make_310(T2=2, R3=2, P1=1, Q=1))
        for phi in ([1, 0], [1, 5], [0, 1]):
            w1 = w1_of_phi(barr, phi)
            assert w_minus_of_phi(barr, phi).contains_subspace(w1)

    def test_requires_endovolutive(self):
        chars = CartanCharacters((2, 1))
        bad = SymbolPresentation(3, chars, {(3, 2, 2, 1): Fraction(1)})
        with pytest.raises(NotEndovolutive):
            w1_of_phi(build_b_array(bad), [1, 0])

    def test_zero_phi_rejected(self):
        barr = build_b_array(make_310())
        with pytest.raises(ZeroCovector):
            w1_of_phi(barr, [0, 0])


class TestGenericW1Dim:
    def test_involutive_gives_s_ell(self):
        barr = build_b_array(make_310(T2=3, R3=3, Q=1))
        assert dim_w1_generic(barr) == 1  # s_2 = 1

    def test_zero_characters(self):
        chars = CartanCharacters((0, 0))
        barr = build_b_array(SymbolPresentation(2, chars, {}))
        assert dim_w1_generic(barr) == 0

    def test_321_zero_coefficients(self):
        barr = build_b_array(make_321())
        assert dim_w1_generic(barr) == 1  # s_3 = 1


class TestCommutativity:
    def test_holds_even_when_not_involutive(self):
        # the commutator obstruction lives on W^1(phi); for this family
        # it vanishes there regardless of T2 = R3
        barr = build_b_array(make_310(T2=1, R3=2))
        for phi in ([1, 0], [0, 1], [1, -1]):
            ok, witness = check_gnf_commutativity(barr, phi)
            assert ok, witness

    def test_extra_sample_vectors(self):
        barr = build_b_array(make_310(T2=2, R3=2, P2=1))
        ok, witness = check_gnf_commutativity(
            barr, [1, 1], sample_vectors=[[1, 2, 3], [0, 1, -1]])
        assert ok, witness

    def test_random_involutive_samples(self):
        rng = random.Random(6)
        for _ in range(5):
            t2 = rng.randint(-3, 3)
            barr = build_b_array(make_310(
                T2=t2, R3=t2, P1=rng.randint(-2, 2), Q=rng.randint(-2, 2)))
            phi = [Fraction(rng.randint(-4, 4)) for _ in range(2)]
            if not any(phi):
                phi = [Fraction(1), Fraction(0)]
            ok, witness = check_gnf_commutativity(barr, phi)
            assert ok, witness


class TestRestrictionComparison:
    def test_involutive_310(self):
        tab = tableau_from_coefficients(make_310(T2=2, R3=2))
        assert check_theorem_a(tab)

    def test_full_column_range_trivial(self):
        tab = tableau_from_coefficients(make_321(Q4=1))
        # ell = n: the restriction is the tableau itself
        assert check_theorem_a(tab)

    def test_restriction_dims_match_oracle(self):
        from involutive import prolongation_dimension, restrict_to_U
        tab = tableau_from_coefficients(make_310(T2=1, R3=1, Q=2))
        rep = cartan_test(tab)
        assert rep.involutive
        cut = restrict_to_U(tab, rep.basis, rep.characters.ell)
        assert prolongation_dimension(tab)[0] == prolongation_dimension(cut)[0]
