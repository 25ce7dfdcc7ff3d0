"""Exact integer and rational linear algebra.

Matrices are plain lists of rows holding ``int`` or ``fractions.Fraction``.
Everything here is small (rank <= 8), so clarity wins over speed.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Matrix = list[list]


class SingularMatrixError(ArithmeticError):
    pass


class LatticeInclusionError(ValueError):
    pass


def frac_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def common_denominator(values: Iterable) -> int:
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def is_integral(values: Iterable) -> bool:
    return all(Fraction(v).denominator == 1 for v in values)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vecmat(v: Sequence, a: Matrix) -> list:
    return [sum(x * row[j] for x, row in zip(v, a)) for j in range(len(a[0]))]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def bareiss_det(a: Matrix) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    den = common_denominator(x for row in a for x in row)
    m = [[int(Fraction(x) * den) for x in row] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1], den**n)


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Solve ``a @ x = b`` exactly for square nonsingular ``a``.

    ``b`` is a matrix whose columns are right-hand sides. Rows of the
    augmented system are scaled to integers and reduced with Bareiss
    elimination; only the final back substitution divides.
    """
    n = len(a)
    if any(len(row) != n for row in a) or len(b) != n:
        raise ValueError("dimension mismatch in solve")
    ncols = len(b[0]) if b else 0
    rows = []
    for arow, brow in zip(a, b):
        full = [Fraction(x) for x in arow] + [Fraction(x) for x in brow]
        d = common_denominator(full)
        rows.append([int(x * d) for x in full])
    prev = 1
    for k in range(n):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                raise SingularMatrixError("matrix is singular")
            rows[k], rows[swap] = rows[swap], rows[k]
        pivot = rows[k][k]
        for i in range(k + 1, n):
            rows[i] = [
                (rows[i][j] * pivot - rows[i][k] * rows[k][j]) // prev
                for j in range(n + ncols)
            ]
        prev = pivot
    x = [[Fraction(0)] * ncols for _ in range(n)]
    for c in range(ncols):
        for i in reversed(range(n)):
            acc = Fraction(rows[i][n + c])
            for j in range(i + 1, n):
                acc -= rows[i][j] * x[j][c]
            x[i][c] = acc / rows[i][i]
    return x


def solve_vector(a: Matrix, v: Sequence) -> list[Fraction]:
    return [row[0] for row in solve(a, [[x] for x in v])]


def inverse(a: Matrix) -> Matrix:
    return solve(a, identity(len(a)))


def row_coordinates(vectors: Matrix, basis: Matrix) -> Matrix:
    """Coordinates ``x`` with ``x @ basis == vectors`` (basis rows independent).

    The basis may be rectangular (rank r inside an n-dimensional ambient
    space); the system is solved through the Gram matrix and the result is
    checked exactly.
    """
    gram = matmul(basis, transpose(basis))
    rhs = matmul(basis, transpose(vectors))
    coords = transpose(solve(gram, rhs))
    back = matmul(coords, basis) if coords else []
    if any(Fraction(x) != Fraction(y) for r1, r2 in zip(back, vectors) for x, y in zip(r1, r2)):
        raise LatticeInclusionError("vector is not in the span of the basis")
    return coords


# -- integer normal forms ---------------------------------------------------


def hermite_rows(m: Matrix) -> Matrix:
    """Row-style Hermite normal form; returns the nonzero rows.

    Pivots are positive and entries above each pivot are reduced into
    ``[0, pivot)``. The rows form a basis of the row lattice of ``m``.
    """
    a = [[int(x) for x in row] for row in m]
    if not a:
        return []
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        # Euclid down the column until a single nonzero entry remains
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < len(a) and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    return [row for row in a[:r] if any(row)]


def smith(m: Matrix) -> tuple[list[int], Matrix, Matrix]:
    """Smith normal form ``U @ m @ V = D`` of an integer matrix.

    Returns ``(diag, U, V)`` with ``diag`` the diagonal of ``D`` (length
    ``min(rows, cols)``), nonnegative and each entry dividing the next.
    ``U`` and ``V`` are unimodular.
    """
    a = [[int(x) for x in row] for row in m]
    nr = len(a)
    nc = len(a[0]) if a else 0
    u = identity(nr)
    v = identity(nc)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    for t in range(min(nr, nc)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            swap_rows(t, pi)
            swap_cols(t, pj)
            clean = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, a[i][t] // a[t][t])
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, a[t][j] // a[t][t])
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            # fold the offending row in so the next pass lowers the pivot
            add_row(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    diag = [a[i][i] for i in range(min(nr, nc))]
    return diag, u, v


class FiniteAbelianGroup:
    """The quotient ``Z^r / R`` for a full-rank relation lattice ``R``.

    Elements are canonically labelled by tuples ``(x_1, ..., x_s)`` with
    ``0 <= x_i < d_i`` over the nontrivial invariant factors ``d_i``.
    """

    def __init__(self, relations: Matrix):
        rel = [[int(x) for x in row] for row in relations]
        if not rel:
            raise ValueError("empty relation matrix")
        self.rank = len(rel[0])
        diag, _, v = smith(rel)
        if len(diag) < self.rank or any(d == 0 for d in diag):
            raise ValueError("relations do not have full rank")
        self._v = v
        self._keep = [i for i, d in enumerate(diag) if d != 1]
        self.invariants = tuple(diag[i] for i in self._keep)
        self.relations = rel

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        y = vecmat([int(t) for t in x], self._v)
        return tuple(y[i] % d for i, d in zip(self._keep, self.invariants))

    def lift(self, label: Sequence[int]) -> list[int]:
        """An integer vector whose class has the given label."""
        y = [0] * self.rank
        for i, t in zip(self._keep, label):
            y[i] = t
        return [int(t) for t in vecmat(y, inverse(self._v))] if self.rank else []

    def labels(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(d) for d in self.invariants)))


def lattice_index(sup: Matrix, sub: Matrix) -> int:
    """Index ``[sup : sub]`` of two full-rank lattices given by basis rows.

    Raises ``LatticeInclusionError`` if ``sub`` is not contained in ``sup``.
    """
    coords = row_coordinates(sub, sup)
    if not is_integral(x for row in coords for x in row):
        raise LatticeInclusionError("sublattice is not contained in the lattice")
    if len(coords) != len(sup):
        raise LatticeInclusionError("lattices have different rank")
    return abs(int(bareiss_det(coords)))


def lattice_basis(generators: Matrix) -> Matrix:
    """A basis (as rational rows) of the lattice spanned by rational rows."""
    d = common_denominator(x for row in generators for x in row)
    rows = hermite_rows([[int(Fraction(x) * d) for x in row] for row in generators])
    return [[Fraction(x, d) for x in row] for row in rows]


def gcd_list(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g
