"""Exact root data for the simple types, normalized by the basic inner product.

Weights and coweights share one ambient coordinate space. The pairing
between a weight and a coweight is the ordinary dot product of ambient
coordinates, coroots are ``2 alpha / (alpha . alpha)``, and the basic
inner product on coweights is ``scale * (x . y)`` with ``scale`` chosen so
that the highest coroot has squared length 2.

The basic identification of coweights with weights multiplies ambient
coordinates by ``scale``; :meth:`RootDatum.coweight_to_weight` and its
inverse are the only places where that conversion happens.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from . import exact

Vector = tuple[Fraction, ...]

_HALF = Fraction(1, 2)


class InvalidTypeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        f, l = self.family, self.rank
        ok = {
            "A": l >= 1,
            "B": l >= 2,
            "C": l >= 2,
            "D": l >= 3,
            "E": l in (6, 7, 8),
            "F": l == 4,
            "G": l == 2,
        }.get(f)
        if not ok:
            raise InvalidTypeError(f"{f}{l} is not a simple root system")

    @classmethod
    def parse(cls, text: str) -> "LieType":
        m = re.fullmatch(r"\s*([A-Ga-g])[_ ]?(\d+)\s*", text)
        if not m:
            raise InvalidTypeError(f"cannot parse Lie type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self):
        return f"{self.family}{self.rank}"


def _e(n: int, *entries) -> Vector:
    """Vector in Q^n from (index, value) pairs, 1-based."""
    v = [Fraction(0)] * n
    for i, x in entries:
        v[i - 1] += Fraction(x)
    return tuple(v)


def _e8_simple_roots() -> list[Vector]:
    h = _HALF
    roots = [tuple([h, -h, -h, -h, -h, -h, -h, h]), _e(8, (1, 1), (2, 1))]
    roots += [_e(8, (i, 1), (i - 1, -1)) for i in range(2, 8)]
    return [tuple(Fraction(x) for x in r) for r in roots]


def standard_simple_roots(t: LieType) -> list[Vector]:
    """Bourbaki's simple roots in the usual orthonormal coordinates."""
    f, l = t.family, t.rank
    if f == "A":
        return [_e(l + 1, (i, 1), (i + 1, -1)) for i in range(1, l + 1)]
    if f in "BCD":
        roots = [_e(l, (i, 1), (i + 1, -1)) for i in range(1, l)]
        if f == "B":
            roots.append(_e(l, (l, 1)))
        elif f == "C":
            roots.append(_e(l, (l, 2)))
        else:
            roots.append(_e(l, (l - 1, 1), (l, 1)))
        return roots
    if f == "E":
        return _e8_simple_roots()[:l]
    if f == "F":
        h = _HALF
        return [_e(4, (2, 1), (3, -1)), _e(4, (3, 1), (4, -1)), _e(4, (4, 1)), (h, -h, -h, -h)]
    if f == "G":
        return [_e(3, (1, 1), (2, -1)), _e(3, (1, -2), (2, 1), (3, 1))]
    raise InvalidTypeError(str(t))


def _dot(x, y) -> Fraction:
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} vs {len(y)}")
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def _lin(coeffs, vectors) -> Vector:
    n = len(vectors[0])
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i in range(n):
                out[i] += c * v[i]
    return tuple(out)


@dataclass(frozen=True)
class RootDatum:
    type: LieType
    ambient_dim: int
    simple_roots: tuple[Vector, ...]
    simple_coroots: tuple[Vector, ...]
    fundamental_weights: tuple[Vector, ...]
    fundamental_coweights: tuple[Vector, ...]
    rho: Vector
    rho_check: Vector
    highest_root: Vector
    highest_coroot: Vector
    marks: tuple[int, ...]
    comarks: tuple[int, ...]
    coxeter_number: int
    dual_coxeter_number: int
    scale: Fraction
    cartan: tuple[tuple[int, ...], ...] = field(repr=False)
    positive_roots: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.type.rank

    @property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """Matrix of the basic inner product in ambient coordinates."""
        n = self.ambient_dim
        return tuple(tuple(self.scale if i == j else Fraction(0) for j in range(n)) for i in range(n))

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    @property
    def zeta_star(self) -> Vector:
        h = self.coxeter_number
        return tuple(x / h for x in self.rho_check)

    # -- pairings ---------------------------------------------------------

    def pairing(self, weight, coweight) -> Fraction:
        """Natural pairing between a weight and a coweight."""
        return _dot(weight, coweight)

    def pairing_basic(self, x, y) -> Fraction:
        """Basic inner product of two coweights."""
        if len(x) != self.ambient_dim or len(y) != self.ambient_dim:
            raise ValueError("vectors must live in the ambient space of the root datum")
        return self.scale * _dot(x, y)

    def weight_product(self, x, y) -> Fraction:
        """Basic inner product transported to weights."""
        return _dot(x, y) / self.scale

    def coweight_to_weight(self, xi) -> Vector:
        return tuple(self.scale * Fraction(a) for a in xi)

    def weight_to_coweight(self, mu) -> Vector:
        return tuple(Fraction(a) / self.scale for a in mu)

    # -- coordinates ------------------------------------------------------

    def weight(self, labels) -> Vector:
        """Weight with the given Dynkin labels."""
        return _lin([Fraction(n) for n in labels], self.fundamental_weights)

    def labels(self, weight) -> tuple[Fraction, ...]:
        return tuple(_dot(weight, a) for a in self.simple_coroots)

    def coweight(self, coords) -> Vector:
        """Coweight with the given coordinates in the fundamental coweights."""
        return _lin([Fraction(c) for c in coords], self.fundamental_coweights)

    def coweight_coords(self, xi) -> tuple[Fraction, ...]:
        return tuple(_dot(a, xi) for a in self.simple_roots)

    @cached_property
    def coweight_form(self) -> tuple[tuple[Fraction, ...], ...]:
        """Basic inner products of the fundamental coweights."""
        cw = self.fundamental_coweights
        return tuple(tuple(self.pairing_basic(a, b) for b in cw) for a in cw)

    @cached_property
    def weight_form(self) -> tuple[tuple[Fraction, ...], ...]:
        """Inner products of the fundamental weights under the basic identification."""
        fw = self.fundamental_weights
        return tuple(tuple(self.weight_product(a, b) for b in fw) for a in fw)

    def alcove_vertices(self) -> list[Vector]:
        zero = tuple(Fraction(0) for _ in range(self.ambient_dim))
        return [zero] + [tuple(x / k for x in w) for w, k in zip(self.fundamental_coweights, self.marks)]

    def minuscule_indices(self) -> list[int]:
        """0-based indices i with mark 1, i.e. alcove vertices lying in P^vee."""
        return [i for i, k in enumerate(self.marks) if k == 1]

    @cached_property
    def simply_laced(self) -> bool:
        return self.type.family in "ADE"

    def check_invariants(self) -> None:
        l = self.rank
        for i in range(l):
            for j in range(l):
                d = int(i == j)
                assert _dot(self.simple_roots[i], self.fundamental_coweights[j]) == d
                assert _dot(self.fundamental_weights[i], self.simple_coroots[j]) == d
        assert self.pairing_basic(self.highest_coroot, self.highest_coroot) == 2
        for a in self.simple_coroots:
            for w in self.fundamental_coweights:
                assert self.pairing_basic(a, w).denominator == 1
        assert self.coxeter_number == 1 + _dot(self.highest_root, self.rho_check)
        assert self.dual_coxeter_number == 1 + _dot(self.rho, self.highest_coroot)


def _positive_roots(cartan) -> list[tuple[int, ...]]:
    """Positive roots as coefficient vectors over the simple roots."""
    l = len(cartan)
    simple = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for j in range(l):
                # <beta, alpha_j^vee> = sum_i b_i <alpha_i, alpha_j^vee>
                p = sum(beta[i] * cartan[j][i] for i in range(l))
                image = list(beta)
                image[j] -= p
                image = tuple(image)
                if all(c >= 0 for c in image) and image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return sorted(seen, key=lambda b: (sum(b), b))


@lru_cache(maxsize=None)
def build_root_datum(t: LieType | str) -> RootDatum:
    if isinstance(t, str):
        t = LieType.parse(t)
    alphas = standard_simple_roots(t)
    n = len(alphas[0])
    l = t.rank
    coroots = [tuple(2 * x / _dot(a, a) for x in a) for a in alphas]
    # cartan[i][j] = <alpha_j, alpha_i^vee>; column j holds the labels of alpha_j
    cartan = tuple(tuple(int(_dot(alphas[j], coroots[i])) for j in range(l)) for i in range(l))

    # fundamental (co)weights inside the root span: solve against the simple (co)roots
    pair = [[_dot(a, c) for c in coroots] for a in alphas]  # pair[i][j] = <alpha_i, alpha_j^vee>
    inv = exact.inverse(pair)
    # varpi_i = sum_j X_ij alpha_j with <varpi_i, alpha_k^vee> = delta_ik  => X = pair^{-1}
    weights = [_lin(inv[i], alphas) for i in range(l)]
    # varpi_i^vee = sum_j Y_ij alpha_j^vee with <alpha_k, varpi_i^vee> = delta => Y = pair^{-T}
    y_cw = exact.transpose(inv)
    coweights = [_lin(y_cw[i], coroots) for i in range(l)]

    pos = _positive_roots(cartan)
    theta_coeffs = max(pos, key=sum)
    theta = _lin(theta_coeffs, alphas)
    theta_check = tuple(2 * x / _dot(theta, theta) for x in theta)
    comarks = tuple(int(_dot(w, theta_check)) for w in weights)
    rho = _lin([1] * l, weights)
    rho_check = _lin([1] * l, coweights)
    h = 1 + _dot(theta, rho_check)
    h_dual = 1 + _dot(rho, theta_check)
    scale = 2 / _dot(theta_check, theta_check)
    rd = RootDatum(
        type=t,
        ambient_dim=n,
        simple_roots=tuple(alphas),
        simple_coroots=tuple(coroots),
        fundamental_weights=tuple(weights),
        fundamental_coweights=tuple(coweights),
        rho=rho,
        rho_check=rho_check,
        highest_root=theta,
        highest_coroot=theta_check,
        marks=tuple(theta_coeffs),
        comarks=comarks,
        coxeter_number=int(h),
        dual_coxeter_number=int(h_dual),
        scale=scale,
        cartan=cartan,
        positive_roots=tuple(pos),
    )
    return rd
