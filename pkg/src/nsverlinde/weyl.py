"""Weyl group elements as exact integer matrices.

An element is stored by its matrix on Dynkin labels (weights written in
the basis of fundamental weights). Its matrix on coweight coordinates is
obtained by conjugating through the Cartan matrix, and the ambient
rational matrix is the product of the reflection matrices along its word.

Words are read as products of maps: ``word == (i1, i2, ..., ir)`` means
``s_i1 s_i2 ... s_ir`` with ``s_ir`` applied first.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from . import exact
from .rootdata import RootDatum, build_root_datum

DEFAULT_MAX_ORDER = int(os.environ.get("NSVERLINDE_MAX_WEYL_ORDER", 10**6))


class WeylBudgetError(RuntimeError):
    def __init__(self, order: int, bound: int):
        super().__init__(f"|W| = {order} exceeds the enumeration bound {bound}")
        self.order = order
        self.bound = bound


class NotDominantError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class WeylElement:
    rd: RootDatum = field(repr=False)
    weight_matrix: np.ndarray = field(repr=False)
    word: tuple[int, ...] = ()
    sign: int = 1

    def __eq__(self, other):
        return isinstance(other, WeylElement) and np.array_equal(self.weight_matrix, other.weight_matrix)

    def __hash__(self):
        return hash(self.weight_matrix.tobytes())

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(
            self.rd,
            self.weight_matrix @ other.weight_matrix,
            self.word + other.word,
            self.sign * other.sign,
        )

    def inverse(self) -> "WeylElement":
        mats = [simple_reflection(self.rd, i).weight_matrix for i in reversed(self.word)]
        m = np.eye(self.rd.rank, dtype=np.int64)
        for r in mats:
            m = m @ r
        return WeylElement(self.rd, m, tuple(reversed(self.word)), self.sign)

    def is_identity(self) -> bool:
        return np.array_equal(self.weight_matrix, np.eye(self.rd.rank, dtype=np.int64))

    @cached_property
    def coweight_matrix(self) -> np.ndarray:
        """Matrix on coordinates in the fundamental coweights."""
        return _coweight_matrices(self.rd, self.weight_matrix[None])[0]

    @cached_property
    def matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        """Exact orthogonal matrix on the ambient space."""
        n = self.rd.ambient_dim
        m = exact.identity(n)
        for i in self.word:
            m = exact.matmul(m, _ambient_reflection(self.rd, i))
        return tuple(tuple(Fraction(x) for x in row) for row in m)

    def act_labels(self, labels) -> tuple:
        return tuple(int(x) for x in self.weight_matrix @ np.asarray(labels, dtype=np.int64))

    def act_coweight_coords(self, coords) -> tuple[Fraction, ...]:
        m = self.coweight_matrix
        c = [Fraction(x) for x in coords]
        return tuple(sum((int(m[i, j]) * c[j] for j in range(len(c))), Fraction(0)) for i in range(len(c)))

    def act(self, vector) -> tuple[Fraction, ...]:
        """Action on an ambient vector (weights and coweights alike)."""
        return tuple(exact.matvec(self.matrix, [Fraction(x) for x in vector]))


def _ambient_reflection(rd: RootDatum, i: int):
    a = rd.simple_roots[i - 1]
    av = rd.simple_coroots[i - 1]
    n = rd.ambient_dim
    # s(x) = x - <alpha, x> alpha^vee acts the same way on weights and coweights
    # because alpha^vee is proportional to alpha in ambient coordinates
    return [[Fraction(int(r == c)) - av[r] * a[c] for c in range(n)] for r in range(n)]


@lru_cache(maxsize=None)
def _simple_weight_matrix(rd: RootDatum, i: int) -> np.ndarray:
    l = rd.rank
    m = np.eye(l, dtype=np.int64)
    col = np.array([rd.cartan[r][i - 1] for r in range(l)], dtype=np.int64)
    m[:, i - 1] -= col
    m.setflags(write=False)
    return m


def identity_element(rd: RootDatum) -> WeylElement:
    return WeylElement(rd, np.eye(rd.rank, dtype=np.int64), (), 1)


def simple_reflection(rd: RootDatum, i: int) -> WeylElement:
    if not 1 <= i <= rd.rank:
        raise IndexError(f"simple reflection index {i} out of range 1..{rd.rank}")
    return WeylElement(rd, _simple_weight_matrix(rd, i), (i,), -1)


def from_word(rd: RootDatum, word) -> WeylElement:
    w = identity_element(rd)
    for i in word:
        w = w * simple_reflection(rd, i)
    return w


def coxeter_element(rd: RootDatum) -> WeylElement:
    """The Coxeter element with ``s_l`` applied first and ``s_1`` last.

    In the standard realizations this is the map ``e_i -> e_(i+1)`` for
    type A, ``e_i -> e_(i+1), e_l -> -e_1`` for type B and so on.
    """
    return from_word(rd, tuple(range(1, rd.rank + 1)))


def element_order(w: WeylElement) -> int:
    ident = np.eye(w.rd.rank, dtype=np.int64)
    m = w.weight_matrix
    p = m.copy()
    k = 1
    while not np.array_equal(p, ident):
        p = p @ m
        k += 1
    return k


def weyl_order(rd: RootDatum) -> int:
    """|W| as the product of (degree) = (exponent + 1)."""
    f, l = rd.type.family, rd.type.rank
    fact = 1
    for i in range(2, l + 1):
        fact *= i
    if f == "A":
        return fact * (l + 1)
    if f in "BC":
        return 2**l * fact
    if f == "D":
        return 2 ** (l - 1) * fact
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600, ("F", 4): 1152, ("G", 2): 12}[(f, l)]


@dataclass(frozen=True, eq=False)
class WeylGroup:
    """All elements of W as stacked label matrices (BFS order, so by length)."""

    rd: RootDatum = field(repr=False)
    matrices: np.ndarray = field(repr=False)
    signs: np.ndarray = field(repr=False)
    lengths: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.signs)

    def __len__(self):
        return self.order

    def element(self, index: int) -> WeylElement:
        return WeylElement(self.rd, self.matrices[index], self.word(index), int(self.signs[index]))

    def word(self, index: int) -> tuple[int, ...]:
        return _reduce_word(self.rd, self.matrices[index])

    @property
    def elements(self) -> list[WeylElement]:
        return [self.element(i) for i in range(self.order)]

    def orbit(self, labels) -> np.ndarray:
        """Images ``w(labels)`` for every element, shape (|W|, l)."""
        return self.matrices @ np.asarray(labels, dtype=np.int64)

    @cached_property
    def coweight_matrices(self) -> np.ndarray:
        return _coweight_matrices(self.rd, self.matrices)


def _coweight_matrices(rd: RootDatum, label_matrices: np.ndarray) -> np.ndarray:
    # labels = C @ root coordinates, and root coordinates are dual to coweight
    # coordinates, so the coweight matrix is (C^-1 R C)^-T = C^T R^-T C^-T
    c = np.array(rd.cartan, dtype=float)
    r_inv = np.linalg.inv(label_matrices.astype(float))
    out = c.T @ np.transpose(r_inv, (0, 2, 1)) @ np.linalg.inv(c).T
    rounded = np.rint(out)
    assert np.abs(out - rounded).max(initial=0.0) < 1e-6
    return rounded.astype(np.int64)


def _reduce_word(rd: RootDatum, matrix: np.ndarray) -> tuple[int, ...]:
    # w(rho) determines w; walk w(rho) back to rho to read off a reduced word
    rho = np.ones(rd.rank, dtype=np.int64)
    x = matrix @ rho
    steps = []
    while (x < 0).any():
        i = int(np.argmax(x < 0)) + 1
        x = _simple_weight_matrix(rd, i) @ x
        steps.append(i)
    # s_ir ... s_i1 w = 1  =>  w = s_i1 ... s_ir
    return tuple(steps)


@lru_cache(maxsize=8)
def _enumerate(rd: RootDatum) -> WeylGroup:
    l = rd.rank
    rho = np.ones(l, dtype=np.int64)
    refl = [_simple_weight_matrix(rd, i) for i in range(1, l + 1)]
    frontier = np.eye(l, dtype=np.int64)[None]
    seen = {tuple(rho)}
    mats = [frontier]
    lengths = [np.zeros(1, dtype=np.int64)]
    depth = 0
    while len(frontier):
        depth += 1
        new = []
        for r in refl:
            cand = r @ frontier  # left multiplication: s_i w
            images = cand @ rho
            for m, img in zip(cand, map(tuple, images)):
                if img not in seen:
                    seen.add(img)
                    new.append(m)
        frontier = np.array(new, dtype=np.int64).reshape(-1, l, l)
        if len(frontier):
            mats.append(frontier)
            lengths.append(np.full(len(frontier), depth, dtype=np.int64))
    matrices = np.concatenate(mats)
    lens = np.concatenate(lengths)
    signs = np.where(lens % 2 == 0, 1, -1).astype(np.int64)
    return WeylGroup(rd, matrices, signs, lens)


def enumerate_weyl(rd: RootDatum, max_order: int | None = None) -> WeylGroup:
    bound = DEFAULT_MAX_ORDER if max_order is None else max_order
    order = weyl_order(rd)
    if order > bound:
        raise WeylBudgetError(order, bound)
    group = _enumerate(rd)
    assert group.order == order
    return group


def to_dominant_labels(rd: RootDatum, labels) -> tuple[tuple, WeylElement]:
    """Return ``(dominant, w)`` with ``w(labels) == dominant``.

    Works for integer or rational labels.
    """
    x = [Fraction(v) for v in labels]
    steps = []
    while True:
        neg = next((i for i, v in enumerate(x) if v < 0), None)
        if neg is None:
            break
        c = x[neg]
        x = [v - c * rd.cartan[r][neg] for r, v in enumerate(x)]
        steps.append(neg + 1)
    return tuple(x), from_word(rd, tuple(reversed(steps)))


def to_dominant_coweight(rd: RootDatum, coords) -> tuple[tuple, WeylElement]:
    """Same as :func:`to_dominant_labels` for coweight coordinates."""
    x = [Fraction(v) for v in coords]
    steps = []
    while True:
        neg = next((i for i, v in enumerate(x) if v < 0), None)
        if neg is None:
            break
        c = x[neg]
        # s_j xi = xi - <alpha_j, xi> alpha_j^vee; alpha_j^vee has coordinates cartan[j][:]
        x = [v - c * rd.cartan[neg][r] for r, v in enumerate(x)]
        steps.append(neg + 1)
    return tuple(x), from_word(rd, tuple(reversed(steps)))


@lru_cache(maxsize=None)
def longest_element(rd: RootDatum) -> WeylElement:
    _, w = to_dominant_labels(rd, [-1] * rd.rank)
    return w


def dual_weight(rd: RootDatum, labels) -> tuple[int, ...]:
    """Labels of ``-w_0(mu)``, the highest weight of the dual representation."""
    if any(int(n) < 0 for n in labels):
        raise NotDominantError(f"weight {tuple(labels)} is not dominant")
    w0 = longest_element(rd)
    return tuple(-x for x in w0.act_labels(labels))


def solve_one_minus_w(w: WeylElement, v) -> tuple[Fraction, ...]:
    """Exact ``x`` in the root span with ``(1 - w) x = v``.

    Raises ``exact.SingularMatrixError`` when ``w`` fixes a nonzero vector of
    the root span.
    """
    rd = w.rd
    v = [Fraction(x) for x in v]
    # coordinates in the fundamental coweights: c_i = <alpha_i, v>
    c = list(rd.coweight_coords(v))
    if rd.coweight(c) != tuple(v):
        raise ValueError("vector is not in the span of the roots")
    a = exact.identity(rd.rank)
    m = w.coweight_matrix
    a = [[a[i][j] - int(m[i, j]) for j in range(rd.rank)] for i in range(rd.rank)]
    y = exact.solve_vector(a, c)
    return rd.coweight(y)


def weyl_group(t) -> WeylGroup:
    return enumerate_weyl(build_root_datum(t))
