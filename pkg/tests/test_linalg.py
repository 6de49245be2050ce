from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from aklt_vbs.linalg import in_span, nullspace, rank, rref

entries = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r)))


def sym(rows):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows])


class TestRank:
    @pytest.mark.parametrize("rows, expected", [
        ([[1, 2], [2, 4]], 1),
        ([[1, 0], [0, 1]], 2),
        ([[0, 0], [0, 0]], 0),
        ([], 0),
        ([[Fraction(1, 2), Fraction(1, 3)], [3, 2]], 1),
    ])
    def test_examples(self, rows, expected):
        assert rank(rows) == expected

    @given(matrices())
    @settings(max_examples=60, deadline=None)
    def test_matches_sympy(self, rows):
        assert rank(rows) == sym(rows).rank()


class TestNullspace:
    @given(matrices())
    @settings(max_examples=60, deadline=None)
    def test_dimension_and_annihilation(self, rows):
        n = len(rows[0])
        null = nullspace(rows, n)
        assert len(null) == n - rank(rows)
        for v in null:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)

    @given(matrices())
    @settings(max_examples=40, deadline=None)
    def test_rref_pivots(self, rows):
        reduced, pivots = rref(rows)
        ref, ref_pivots = sym(rows).rref()
        assert tuple(pivots) == tuple(ref_pivots)

    def test_span(self):
        vs = [[1, 0, 1], [0, 1, 1]]
        assert in_span(vs, [2, 3, 5])
        assert not in_span(vs, [0, 0, 1])
