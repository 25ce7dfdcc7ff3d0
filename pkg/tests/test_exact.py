from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nsverlinde import exact

small = st.integers(min_value=-6, max_value=6)


def int_matrix(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def square(n):
    return int_matrix(n, n).filter(lambda m: round(np.linalg.det(np.array(m, dtype=float))) != 0)


@given(st.integers(1, 4).flatmap(square))
def test_det_matches_numpy(m):
    assert exact.bareiss_det(m) == round(np.linalg.det(np.array(m, dtype=float)))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), int_matrix(n, 2))))
def test_solve_is_exact(data):
    a, b = data
    x = exact.solve(a, b)
    assert exact.matmul(a, x) == [[Fraction(v) for v in row] for row in b]


@given(st.integers(1, 4).flatmap(square))
def test_inverse_roundtrip(m):
    assert exact.matmul(m, exact.inverse(m)) == exact.identity(len(m))


def test_singular_matrix_raises():
    with pytest.raises(exact.SingularMatrixError):
        exact.solve([[1, 2], [2, 4]], [[1], [0]])


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(lambda c: int_matrix(r, c))))
def test_smith_form(m):
    diag, u, v = exact.smith(m)
    d = exact.matmul(exact.matmul(u, m), v)
    for i, row in enumerate(d):
        for j, x in enumerate(row):
            assert x == (diag[i] if i == j else 0)
    assert abs(exact.bareiss_det(u)) == 1 and abs(exact.bareiss_det(v)) == 1
    nonzero = [x for x in diag if x]
    assert all(x >= 0 for x in diag)
    assert diag[: len(nonzero)] == nonzero
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


@given(st.integers(1, 4).flatmap(lambda n: int_matrix(n + 2, n)))
def test_hermite_spans_same_lattice(m):
    h = exact.hermite_rows(m)
    # every row of h is an integer combination of rows of m and vice versa
    assert exact.hermite_rows(h) == h
    assert exact.hermite_rows(m + h) == h


@given(st.integers(1, 3).flatmap(square))
def test_quotient_order_is_determinant(m):
    g = exact.FiniteAbelianGroup(m)
    assert g.order == abs(exact.bareiss_det(m))
    assert len(g.labels()) == g.order
    for label in g.labels():
        assert g.reduce(g.lift(label)) == label
    for row in m:
        assert all(x == 0 for x in g.reduce(row))


def test_cyclic_quotient():
    g = exact.FiniteAbelianGroup([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    assert g.invariants == (4,)
    g = exact.FiniteAbelianGroup([[2, 0], [0, 2]])
    assert g.invariants == (2, 2)


def test_lattice_index_and_inclusion():
    assert exact.lattice_index([[1, 0], [0, 1]], [[2, 0], [1, 3]]) == 6
    with pytest.raises(exact.LatticeInclusionError):
        exact.lattice_index([[2, 0], [0, 2]], [[1, 0], [0, 1]])
    half = exact.lattice_basis([[Fraction(1, 2), 0], [0, 1], [1, 1]])
    assert exact.lattice_index(half, [[1, 0], [0, 1]]) == 2


def test_row_coordinates_rejects_outside_span():
    with pytest.raises(exact.LatticeInclusionError):
        exact.row_coordinates([[0, 0, 1]], [[1, 0, 0], [0, 1, 0]])


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=6))
def test_gcd_list(values):
    expect = 0
    for v in values:
        expect = gcd(expect, v)
    assert exact.gcd_list(values) == expect
