"""Level k weights, Weyl characters at torus points, the S-matrix and fusion.

A torus point ``exp(zeta)`` is carried exactly by its rational logarithm.
For evaluation it is encoded as an integer vector ``y`` and a modulus ``M``
with ``<varpi_j, zeta> = y_j / M``, so the phase of a weight with labels
``n`` is ``(n . y) / M`` and every exponential is an M-th root of unity.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from . import _kernels, exact
from ._config import SINGULAR_TOL, UNITARITY_TOL, ResidualError, round_checked
from .centerlat import CenterElement, center_weyl_map, inverse, torus_order
from .rootdata import RootDatum
from .weyl import WeylGroup, dual_weight, enumerate_weyl


class SingularPointError(ValueError):
    """The Weyl denominator vanishes at the requested torus point."""


class NotSimplyLacedError(ValueError):
    pass


# -- torus points ---------------------------------------------------------------


@dataclass(frozen=True)
class TorusPoints:
    """Integer encoding of several torus points sharing one modulus."""

    ys: np.ndarray
    modulus: int

    @classmethod
    def from_coweights(cls, rd: RootDatum, zetas) -> "TorusPoints":
        pairs = [[sum((a * b for a, b in zip(fw, z)), Fraction(0)) for fw in rd.fundamental_weights] for z in zetas]
        m = exact.common_denominator(x for row in pairs for x in row)
        ys = np.array([[int(x * m) for x in row] for row in pairs], dtype=np.int64).reshape(len(pairs), rd.rank)
        return cls(ys, m)


def principal_point(rd: RootDatum) -> TorusPoints:
    """The principal element t_* = exp(rho^vee / h)."""
    return TorusPoints.from_coweights(rd, [rd.zeta_star])


def _rho_labels(rd: RootDatum) -> np.ndarray:
    return np.ones(rd.rank, dtype=np.int64)


def _group(rd: RootDatum, group: WeylGroup | None) -> WeylGroup:
    return enumerate_weyl(rd) if group is None else group


def alternating_sums(rd: RootDatum, shifted_labels, points: TorusPoints, group=None) -> np.ndarray:
    """``sum_w sign(w) exp(2 pi i <w n, zeta>)`` for each label row ``n`` and point."""
    g = _group(rd, group)
    nums = np.atleast_2d(np.asarray(shifted_labels, dtype=np.int64))
    return _kernels.alternating_sums(g.matrices, g.signs, nums, points.ys, points.modulus)


def weyl_denominator(rd: RootDatum, zeta, group: WeylGroup | None = None) -> complex:
    """J(exp zeta) for a coweight ``zeta`` in ambient coordinates."""
    pts = TorusPoints.from_coweights(rd, [zeta])
    return complex(alternating_sums(rd, _rho_labels(rd), pts, group)[0, 0])


def character(rd: RootDatum, labels, zeta, group: WeylGroup | None = None) -> complex:
    """Weyl character of the irreducible representation with highest weight ``labels``."""
    pts = TorusPoints.from_coweights(rd, [zeta])
    nums = np.array([np.ones(rd.rank, dtype=np.int64), np.asarray(labels, dtype=np.int64) + 1])
    num = alternating_sums(rd, nums, pts, group)[:, 0]
    if abs(num[0]) < SINGULAR_TOL:
        raise SingularPointError(f"Weyl denominator vanishes at {tuple(zeta)}")
    return complex(num[1] / num[0])


# -- level k weights ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LevelWeightTable:
    """The level k weights P_k in lexicographic order of their Dynkin labels."""

    rd: RootDatum = field(repr=False)
    k: int
    weights: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {w: i for i, w in enumerate(self.weights)}

    def position(self, labels) -> int:
        key = tuple(int(x) for x in labels)
        try:
            return self.index[key]
        except KeyError:
            raise ValueError(f"{key} is not a level {self.k} weight") from None

    def level_of(self, labels) -> int:
        return sum(c * n for c, n in zip(self.rd.comarks, labels))

    def zeta(self, labels) -> tuple[Fraction, ...]:
        """zeta_lambda = (lambda + rho) / (k + h^vee), as a coweight."""
        rd = self.rd
        shifted = rd.weight([n + 1 for n in labels])
        kk = self.k + rd.dual_coxeter_number
        return tuple(x / kk for x in rd.weight_to_coweight(shifted))

    @cached_property
    def points(self) -> TorusPoints:
        # <varpi_j, zeta_lambda> = (lambda + rho, varpi_j) / (k + h^vee) in the weight form
        rd = self.rd
        form = rd.weight_form
        d = exact.common_denominator(x for row in form for x in row)
        f_int = np.array([[int(x * d) for x in row] for row in form], dtype=np.int64)
        shifted = np.array(self.weights, dtype=np.int64).reshape(len(self), rd.rank) + 1
        return TorusPoints(shifted @ f_int, d * (self.k + rd.dual_coxeter_number))

    @cached_property
    def dual_index(self) -> np.ndarray:
        """Position of ``*lambda = -w_0 lambda`` for each lambda."""
        return np.array([self.index[dual_weight(self.rd, w)] for w in self.weights], dtype=np.int64)

    def center_permutation(self, c: CenterElement) -> np.ndarray:
        """Index array ``p`` with ``c . weights[i] == weights[p[i]]``."""
        return _center_permutation(self, c.label)


def level_weights(rd: RootDatum, k: int) -> LevelWeightTable:
    if k < 0:
        raise ValueError("level must be nonnegative")
    return _level_weights(rd, int(k))


@lru_cache(maxsize=64)
def _level_weights(rd: RootDatum, k: int) -> LevelWeightTable:
    ranges = [range(k // c + 1) for c in rd.comarks]
    weights = tuple(n for n in itertools.product(*ranges) if sum(c * x for c, x in zip(rd.comarks, n)) <= k)
    return LevelWeightTable(rd, k, weights)


# -- the center acting on P_k -----------------------------------------------------


def _vertex_labels(c: CenterElement) -> tuple[int, ...]:
    """Dynkin labels of the weight identified with the vertex zeta_c."""
    rd = c.rd
    labels = rd.labels(rd.coweight_to_weight(c.zeta))
    assert exact.is_integral(labels)
    return tuple(int(x) for x in labels)


def center_act_on_Pk(c: CenterElement, k: int, labels) -> tuple[int, ...]:
    """c . lambda = w_c(lambda - k zeta_{c^-1})."""
    w, _ = center_weyl_map(c)
    shift = _vertex_labels(inverse(c))
    moved = [n - k * s for n, s in zip(labels, shift)]
    out = tuple(int(x) for x in w.act_labels(moved))
    if any(x < 0 for x in out) or sum(a * b for a, b in zip(c.rd.comarks, out)) > k:
        raise AssertionError(f"center action left P_{k}: {tuple(labels)} -> {out}")
    return out


@lru_cache(maxsize=256)
def _center_permutation(table: LevelWeightTable, label) -> np.ndarray:
    from .centerlat import _center

    c = _center(table.rd).by_label[label]
    perm = np.array([table.index[center_act_on_Pk(c, table.k, w)] for w in table.weights], dtype=np.int64)
    out = perm.copy()
    out.setflags(write=False)
    return out


def fixed_mask(table: LevelWeightTable, c: CenterElement) -> np.ndarray:
    perm = table.center_permutation(c)
    return perm == np.arange(len(table))


def common_fixed_weights(table: LevelWeightTable, cs) -> list[tuple[int, ...]]:
    mask = np.ones(len(table), dtype=bool)
    for c in cs:
        mask &= fixed_mask(table, c)
    return [table.weights[i] for i in np.flatnonzero(mask)]


@lru_cache(maxsize=None)
def _affine_permutation(rd: RootDatum, label) -> tuple[int, ...]:
    from .centerlat import _center

    c = _center(rd).by_label[label]
    l = rd.rank
    w, _ = center_weyl_map(c)
    shift = _vertex_labels(inverse(c))
    perm = []
    # the action is linear in the affine labels (n_0, n_1, ..., n_l)
    for i in range(l + 1):
        lam = [int(j == i) for j in range(1, l + 1)]
        k = 1 if i == 0 else rd.comarks[i - 1]
        out = [int(x) for x in w.act_labels([n - k * s for n, s in zip(lam, shift)])]
        n0 = k - sum(a * b for a, b in zip(rd.comarks, out))
        image = [n0] + out
        if sorted(image) != [0] * l + [1]:
            raise AssertionError("center action is not a permutation of affine labels")
        perm.append(image.index(1))
    return tuple(perm)


def affine_permutation(c: CenterElement) -> tuple[int, ...]:
    """The permutation of affine Dynkin nodes 0..l induced by ``c``."""
    return _affine_permutation(c.rd, c.label)


def has_common_fixed_weight(cs, k: int) -> bool:
    """Whether some lambda in P_k is fixed by every element of ``cs``.

    Fixed weights are exactly those whose affine labels are constant on the
    orbits of the induced node permutations, so this is a coin problem in
    the orbit weights sum(comarks over the orbit).
    """
    cs = list(cs)
    if not cs:
        return True
    rd = cs[0].rd
    l = rd.rank
    parent = list(range(l + 1))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for c in cs:
        for i, j in enumerate(affine_permutation(c)):
            parent[find(i)] = find(j)
    marks = (1,) + rd.comarks
    coins = {}
    for i in range(l + 1):
        coins[find(i)] = coins.get(find(i), 0) + marks[i]
    reachable = [True] + [False] * k
    for n in range(1, k + 1):
        reachable[n] = any(c <= n and reachable[n - c] for c in coins.values())
    return reachable[k]


# -- S-matrix ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SMatrix:
    table: LevelWeightTable
    entries: np.ndarray = field(repr=False)
    torus_order: int

    @property
    def k(self) -> int:
        return self.table.k

    def __getitem__(self, key):
        return self.entries[key]

    def symmetry_residual(self) -> float:
        return float(np.abs(self.entries - self.entries.T).max())

    def unitarity_residual(self) -> float:
        s = self.entries
        return float(np.abs(s @ s.conj().T - np.eye(len(s), dtype=s.dtype)).max())

    def check(self, tol: float = UNITARITY_TOL) -> None:
        if self.symmetry_residual() > tol or self.unitarity_residual() > tol:
            raise ResidualError("S-matrix symmetry/unitarity", None, max(self.symmetry_residual(), self.unitarity_residual()), tol)

    def positive_first_row(self) -> np.ndarray:
        """Debug view rescaled by a global sign so that S_{0,0} > 0."""
        return self.entries * np.sign(self.entries[0, 0].real)

    @cached_property
    def tau_values(self) -> np.ndarray:
        """``T[a, m] = tau_a(t_m) = S_{a,*m} / S_{0,*m}``."""
        s = self.entries[:, self.table.dual_index]
        return s / s[0]


def s_matrix(rd: RootDatum, k: int, group: WeylGroup | None = None) -> SMatrix:
    return _s_matrix(rd, int(k), _group(rd, group))


@lru_cache(maxsize=32)
def _s_matrix(rd: RootDatum, k: int, group: WeylGroup) -> SMatrix:
    table = level_weights(rd, k)
    shifted = np.array(table.weights, dtype=np.int64).reshape(len(table), rd.rank) + 1
    a = alternating_sums(rd, shifted, table.points, group)  # a[mu, lam]
    j = a[0]  # J(t_lambda), since mu = 0 gives the Weyl denominator
    n_torus = torus_order(rd, k + rd.dual_coxeter_number)
    prefactor = _kernels.COMPLEX(1j ** (rd.num_positive_roots % 4)) / np.sqrt(_kernels.REAL(n_torus))
    # S_{mu,lam} = i^N J(t_lam) conj(chi_mu(t_lam)) / sqrt(#T)
    s = prefactor * j[None, :] * np.conj(a / j[None, :])
    s.setflags(write=False)
    return SMatrix(table, s, n_torus)


# -- fusion -----------------------------------------------------------------------


@dataclass(frozen=True)
class FusionVector:
    """Integer coefficients over the basis tau_mu, mu in P_k."""

    table: LevelWeightTable = field(repr=False)
    coefficients: tuple[int, ...]

    @classmethod
    def basis(cls, table: LevelWeightTable, labels) -> "FusionVector":
        c = [0] * len(table)
        c[table.position(labels)] = 1
        return cls(table, tuple(c))

    def __getitem__(self, labels) -> int:
        return self.coefficients[self.table.position(labels)]

    def support(self) -> dict[tuple[int, ...], int]:
        return {w: c for w, c in zip(self.table.weights, self.coefficients) if c}

    def values(self, s: SMatrix) -> np.ndarray:
        """Evaluations at every t_mu."""
        return np.asarray(self.coefficients, dtype=_kernels.REAL) @ s.tau_values


def from_values(s: SMatrix, values: np.ndarray, what: str = "fusion coefficient") -> tuple[FusionVector, float]:
    """Recover integer tau-coefficients from evaluations at all t_mu.

    Uses sum_m S_{a,m} conj(S_{c,m}) = delta_{ac} with tau_a(t_{*m}) = S_{a,m}/S_{0,m}.
    """
    entries = s.entries
    at_dual = np.asarray(values)[s.table.dual_index]  # f(t_{*m})
    coeffs = (at_dual * entries[0]) @ entries.conj().T
    out, worst = [], 0.0
    for c in coeffs:
        n, r = round_checked(c, what)
        out.append(n)
        worst = max(worst, r)
    return FusionVector(s.table, tuple(out)), worst


def fusion_product(s: SMatrix, x: FusionVector, y: FusionVector) -> FusionVector:
    return from_values(s, x.values(s) * y.values(s))[0]


# -- the principal element --------------------------------------------------------


def character_at_principal(rd: RootDatum, labels, group: WeylGroup | None = None) -> complex:
    return character(rd, labels, rd.zeta_star, group)


def _require_simply_laced(rd: RootDatum):
    if not rd.simply_laced:
        raise NotSimplyLacedError(f"{rd.type} is not simply laced")


def epsilon_combinatorial(rd: RootDatum, labels, group: WeylGroup | None = None) -> int:
    """(-1)^l(w) for the w with w(mu + rho) - rho in hQ, or 0 if there is none."""
    g = _group(rd, group)
    h = rd.coxeter_number
    cartan = [list(r) for r in rd.cartan]
    det = int(exact.bareiss_det(cartan))
    # root coordinates are C^-1 applied to labels; det * C^-1 is integral
    adj = np.array([[int(x * det) for x in row] for row in exact.inverse(cartan)], dtype=np.int64)
    v = g.orbit(np.asarray(labels, dtype=np.int64) + 1) - 1
    coords = v @ adj.T
    hits = np.flatnonzero((coords % (h * det) == 0).all(axis=1))
    if len(hits) == 0:
        return 0
    signs = set(int(g.signs[i]) for i in hits)
    if len(signs) != 1:
        raise AssertionError(f"conflicting signs in the principal-element criterion for {tuple(labels)}")
    return signs.pop()


def epsilon(rd: RootDatum, labels, group: WeylGroup | None = None) -> int:
    """chi_mu(t_*) in {-1, 0, 1}, computed numerically and checked combinatorially."""
    _require_simply_laced(rd)
    value = character_at_principal(rd, labels, group)
    n, _ = round_checked(value, f"chi_{tuple(labels)}(t_*)")
    other = epsilon_combinatorial(rd, labels, group)
    if n != other:
        raise AssertionError(f"epsilon disagreement for {tuple(labels)}: numeric {n}, combinatorial {other}")
    return n


def tau_natural(rd: RootDatum, k: int, group: WeylGroup | None = None) -> FusionVector:
    table = level_weights(rd, k)
    return FusionVector(table, tuple(epsilon(rd, w, group) for w in table.weights))
