"""Exact linear algebra: unit cases plus property tests."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from involutive.linalg import (
    InconsistentSystem,
    QQ,
    RatMatrix,
    SingularMatrix,
    format_rational,
    hstack,
    invert,
    kernel_basis,
    parse_rational,
    random_invertible,
    random_unit_upper_triangular,
    rank,
    row_basis,
    rref,
    solve,
    vstack,
)

rationals = st.fractions(
    min_value=-20, max_value=20, max_denominator=6)


@st.composite
def matrices(draw, max_dim=5):
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    data = draw(st.lists(rationals, min_size=rows * cols,
                         max_size=rows * cols))
    return RatMatrix(rows, cols, data)


class TestRatMatrix:
    def test_shape_validation(self):
        with pytest.raises(ValueError):
            RatMatrix(2, 2, [1, 2, 3])

    def test_immutable(self):
        m = RatMatrix.identity(2)
        with pytest.raises(AttributeError):
            m.rows = 3

    def test_matmul_known(self):
        a = RatMatrix.from_rows([[1, 2], [3, 4]])
        b = RatMatrix.from_rows([[0, 1], [1, 0]])
        assert a @ b == RatMatrix.from_rows([[2, 1], [4, 3]])

    def test_matmul_shape_mismatch(self):
        with pytest.raises(ValueError):
            RatMatrix.identity(2) @ RatMatrix.identity(3)

    def test_transpose_involution(self):
        m = RatMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
        assert m.transpose().transpose() == m

    def test_stacking(self):
        a = RatMatrix.from_rows([[1, 2]])
        b = RatMatrix.from_rows([[3, 4]])
        assert vstack([a, b]) == RatMatrix.from_rows([[1, 2], [3, 4]])
        assert hstack([a, b]) == RatMatrix.from_rows([[1, 2, 3, 4]])

    def test_exact_fractions(self):
        m = RatMatrix.from_rows([[QQ(1, 3), QQ(1, 6)]])
        assert m[0, 0] + m[0, 1] == QQ(1, 2)


class TestRref:
    def test_rref_known(self):
        m = RatMatrix.from_rows([[2, 4], [1, 2]])
        red, pivots = rref(m)
        assert pivots == [0]
        assert red.row(0) == (Fraction(1), Fraction(2))

    def test_rank_identity(self):
        assert rank(RatMatrix.identity(4)) == 4

    def test_rank_zero(self):
        assert rank(RatMatrix.zeros(3, 5)) == 0

    def test_row_basis_spans(self):
        m = RatMatrix.from_rows([[1, 1], [2, 2], [0, 1]])
        basis = row_basis(m)
        assert len(basis) == 2


class TestSolveInvert:
    def test_solve_scalar(self):
        x = solve(RatMatrix.from_rows([[2]]), RatMatrix.column([4]))
        assert x == RatMatrix.column([2])

    def test_solve_inconsistent(self):
        m = RatMatrix.from_rows([[1, 1], [1, 1]])
        with pytest.raises(InconsistentSystem):
            solve(m, RatMatrix.column([1, 2]))

    def test_invert_identity(self):
        assert invert(RatMatrix.identity(3)) == RatMatrix.identity(3)

    def test_invert_singular(self):
        with pytest.raises(SingularMatrix):
            invert(RatMatrix.from_rows([[1, 2], [2, 4]]))


class TestRandom:
    def test_random_invertible_deterministic(self):
        a = random_invertible(3, seed=1, bound=5)
        b = random_invertible(3, seed=1, bound=5)
        assert a == b
        assert rank(a) == 3

    def test_unit_upper_triangular(self):
        import random
        m = random_unit_upper_triangular(4, random.Random(7))
        for i in range(4):
            assert m[i, i] == 1
            for j in range(i):
                assert m[i, j] == 0


class TestParseFormat:
    @pytest.mark.parametrize("text,value", [
        ("3", Fraction(3)), ("-2/4", Fraction(-1, 2)), (" 7/3 ", Fraction(7, 3)),
    ])
    def test_parse(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("text", ["", "1/0", "a/b", "1.5", "1/ "])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            parse_rational(text)

    @given(rationals)
    def test_round_trip(self, q):
        assert parse_rational(format_rational(q)) == q


class TestProperties:
    @settings(max_examples=60, deadline=None)
    @given(matrices())
    def test_rank_nullity(self, m):
        assert rank(m) + len(kernel_basis(m)) == m.cols

    @settings(max_examples=60, deadline=None)
    @given(matrices())
    def test_kernel_vectors_annihilate(self, m):
        for v in kernel_basis(m):
            assert (m @ v).is_zero()

    @settings(max_examples=40, deadline=None)
    @given(matrices(max_dim=4))
    def test_invert_left_inverse(self, m):
        if m.rows != m.cols:
            return
        try:
            inv = invert(m)
        except SingularMatrix:
            assert rank(m) < m.rows
            return
        assert inv @ m == RatMatrix.identity(m.rows)

    @settings(max_examples=40, deadline=None)
    @given(matrices())
    def test_rref_idempotent(self, m):
        red, pivots = rref(m)
        red2, pivots2 = rref(red)
        assert red == red2 and pivots == pivots2
