"""The center P^vee/Q^vee, its subgroups, basic levels and Coxeter fixed points.

All lattice work happens in coordinates over the fundamental coweights, where
P^vee is Z^l and the coroot lattice Q^vee is spanned by the rows of the
Cartan matrix.
"""
from __future__ import annotations

import cmath
import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from . import exact
from .exact import FiniteAbelianGroup
from .rootdata import RootDatum, Vector
from .weyl import (
    WeylElement,
    WeylGroup,
    coxeter_element,
    to_dominant_coweight,
)


class CenterError(ValueError):
    pass


@dataclass(frozen=True)
class CenterElement:
    """An element of Z(G) = P^vee / Q^vee.

    ``coords`` are the coweight coordinates of the alcove vertex lying in the
    class, so ``exp`` of that vertex is the element itself.
    """

    label: tuple[int, ...]
    coords: tuple[int, ...] = field(compare=False)
    rd: RootDatum = field(compare=False, repr=False)

    @property
    def representative(self) -> Vector:
        return self.rd.coweight(self.coords)

    @property
    def zeta(self) -> Vector:
        return self.representative

    def is_identity(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        if self.is_identity():
            return "e"
        i = next(i for i, c in enumerate(self.coords) if c)
        return f"exp(w{i + 1})"


class _Center:
    """Multiplication table for the full center of one root datum."""

    def __init__(self, rd: RootDatum):
        self.rd = rd
        self.group = FiniteAbelianGroup([list(row) for row in rd.cartan])
        l = rd.rank
        self.by_label: dict[tuple[int, ...], CenterElement] = {}
        reps = [tuple([0] * l)] + [tuple(int(i == j) for j in range(l)) for i in rd.minuscule_indices()]
        for coords in reps:
            lab = self.group.reduce(coords)
            if lab in self.by_label:
                raise AssertionError("two alcove vertices in one center class")
            self.by_label[lab] = CenterElement(lab, coords, rd)
        if len(self.by_label) != self.group.order:
            raise AssertionError("alcove vertices in P^vee do not exhaust the center")

    def element(self, coords) -> CenterElement:
        coords = [Fraction(c) for c in coords]
        if not exact.is_integral(coords):
            raise CenterError(f"{coords} is not in the coweight lattice")
        return self.by_label[self.group.reduce([int(c) for c in coords])]

    def mul(self, a: CenterElement, b: CenterElement) -> CenterElement:
        lab = tuple((x + y) % d for x, y, d in zip(a.label, b.label, self.group.invariants))
        return self.by_label[lab]

    def inv(self, a: CenterElement) -> CenterElement:
        lab = tuple((-x) % d for x, d in zip(a.label, self.group.invariants))
        return self.by_label[lab]

    def identity(self) -> CenterElement:
        return self.by_label[tuple(0 for _ in self.group.invariants)]

    def elements(self) -> list[CenterElement]:
        return [self.by_label[lab] for lab in self.group.labels()]


@lru_cache(maxsize=None)
def _center(rd: RootDatum) -> _Center:
    return _Center(rd)


def center_element(rd: RootDatum, coords) -> CenterElement:
    """The class of a coweight (given in fundamental coweight coordinates)."""
    return _center(rd).element(coords)


def multiply(a: CenterElement, b: CenterElement) -> CenterElement:
    return _center(a.rd).mul(a, b)


def inverse(a: CenterElement) -> CenterElement:
    return _center(a.rd).inv(a)


def power(a: CenterElement, n: int) -> CenterElement:
    out = _center(a.rd).identity()
    for _ in range(n % element_order(a) if not a.is_identity() else 0):
        out = multiply(out, a)
    return out


def element_order(a: CenterElement) -> int:
    n, x = 1, a
    while not x.is_identity():
        x = multiply(x, a)
        n += 1
    return n


def _structure_name(invariants) -> str:
    return "x".join(f"Z{d}" for d in invariants) if invariants else "1"


@dataclass(frozen=True, eq=False)
class CenterSubgroup:
    rd: RootDatum = field(repr=False)
    elements: tuple[CenterElement, ...]
    generators: tuple[CenterElement, ...]
    lambda_basis: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __contains__(self, c: CenterElement) -> bool:
        return c in self.elements

    @cached_property
    def quotient(self) -> FiniteAbelianGroup:
        """Lambda_Z / Q^vee with its invariant-factor coordinates."""
        lam = [list(r) for r in self.lambda_basis]
        rel = exact.row_coordinates([list(r) for r in self.rd.cartan], lam)
        return FiniteAbelianGroup([[int(x) for x in row] for row in rel])

    @property
    def invariants(self) -> tuple[int, ...]:
        return self.quotient.invariants

    @property
    def name(self) -> str:
        return _structure_name(self.invariants)

    def coordinates(self, c: CenterElement) -> tuple[int, ...]:
        """Invariant-factor coordinates of ``c``, used to evaluate characters."""
        if c not in self.elements:
            raise CenterError(f"{c} is not in the subgroup")
        y = exact.row_coordinates([list(c.coords)], [list(r) for r in self.lambda_basis])[0]
        return self.quotient.reduce([int(t) for t in y])

    def lambda_gram(self) -> exact.Matrix:
        form = self.rd.coweight_form
        lam = [list(r) for r in self.lambda_basis]
        return exact.matmul(exact.matmul(lam, [list(r) for r in form]), exact.transpose(lam))

    def contains_coweight(self, coords) -> bool:
        try:
            y = exact.row_coordinates([list(coords)], [list(r) for r in self.lambda_basis])[0]
        except exact.LatticeInclusionError:
            return False
        return exact.is_integral(y)


def subgroup_from_generators(rd: RootDatum, gens) -> CenterSubgroup:
    """Subgroup generated by center elements (or coweight coordinate vectors)."""
    center = _center(rd)
    gens = tuple(g if isinstance(g, CenterElement) else center.element(g) for g in gens)
    elems = {center.identity()}
    frontier = [center.identity()]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = center.mul(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    ordered = tuple(e for e in center.elements() if e in elems)
    rows = [list(r) for r in rd.cartan] + [list(g.coords) for g in gens]
    lam = exact.hermite_rows(rows)
    return CenterSubgroup(rd, ordered, gens, tuple(tuple(r) for r in lam))


def center_group(rd: RootDatum) -> CenterSubgroup:
    center = _center(rd)
    gens = [center.element(lift) for lift in _invariant_generators(center)]
    return subgroup_from_generators(rd, gens)


def trivial_subgroup(rd: RootDatum) -> CenterSubgroup:
    return subgroup_from_generators(rd, [])


def _invariant_generators(center: _Center) -> list[list[int]]:
    invs = center.group.invariants
    out = []
    for i in range(len(invs)):
        lab = [int(i == j) for j in range(len(invs))]
        out.append(center.group.lift(lab))
    return out


def all_subgroups(rd: RootDatum) -> list[CenterSubgroup]:
    """Every subgroup of Z(G), each listed once, trivial first."""
    center = _center(rd)
    elems = center.elements()
    seen = {}
    for r in range(0, 3):
        for gens in itertools.combinations(elems, r):
            sub = subgroup_from_generators(rd, gens)
            key = frozenset(sub.elements)
            if key not in seen:
                seen[key] = sub
    return sorted(seen.values(), key=lambda s: (s.order, [e.label for e in s.elements]))


_TERM = re.compile(r"([+-]?\d*)\s*w(\d+)")


def parse_coweight(text: str, rank: int) -> list[int]:
    """Parse ``"w1"``, ``"2w1"`` or ``"w1+w3"`` into coweight coordinates."""
    coords = [0] * rank
    pos = 0
    text = text.replace(" ", "")
    for m in _TERM.finditer(text):
        if m.start() != pos:
            raise CenterError(f"cannot parse coweight {text!r}")
        pos = m.end()
        n = m.group(1)
        mult = int(n) if n not in ("", "+", "-") else (-1 if n == "-" else 1)
        i = int(m.group(2))
        if not 1 <= i <= rank:
            raise CenterError(f"coweight index {i} out of range")
        coords[i - 1] += mult
    if pos != len(text) or not text:
        raise CenterError(f"cannot parse coweight {text!r}")
    return coords


def subgroup_from_spec(rd: RootDatum, spec: str) -> CenterSubgroup:
    """``"trivial"``, ``"full"`` or ``"gen:w1,w3"``."""
    spec = spec.strip()
    if spec == "trivial":
        return trivial_subgroup(rd)
    if spec == "full":
        return center_group(rd)
    if spec.startswith("gen:"):
        items = [s for s in spec[4:].split(",") if s]
        return subgroup_from_generators(rd, [parse_coweight(s, rd.rank) for s in items])
    raise CenterError(f"unknown center specification {spec!r}")


# -- levels -----------------------------------------------------------------


def levels(z: CenterSubgroup) -> tuple[int, int]:
    """Basic level ``k0`` and the level ``k1`` of a center subgroup.

    ``k0`` clears the denominators of the basic form on Lambda_Z, ``k1``
    those of its pairing with all of P^vee.
    """
    form = [list(r) for r in z.rd.coweight_form]
    lam = [list(r) for r in z.lambda_basis]
    mixed = exact.matmul(lam, form)
    gram = exact.matmul(mixed, exact.transpose(lam))
    k0 = exact.common_denominator(x for row in gram for x in row)
    k1 = exact.common_denominator(x for row in mixed for x in row)
    return k0, k1


# -- the center inside W ----------------------------------------------------


def center_weyl_map(c: CenterElement) -> tuple[WeylElement, Vector]:
    """The Weyl element ``w_c`` with ``c^-1 t_* = w_c(t_*)`` and the vertex ``zeta_c``.

    ``w_c`` is characterized by ``w_c(zeta_* - zeta_{c^-1}) = zeta_*``; it is
    found by reflecting the regular point ``zeta_* - zeta_{c^-1}`` into the
    dominant chamber.
    """
    rd = c.rd
    h = rd.coxeter_number
    cinv = inverse(c)
    x = [Fraction(1, h) - v for v in cinv.coords]
    dominant, w = to_dominant_coweight(rd, x)
    if any(v != Fraction(1, h) for v in dominant):
        raise AssertionError(f"no Weyl element maps zeta_* - zeta_(c^-1) to zeta_* for {c}")
    return w, c.zeta


def center_weyl_map_search(c: CenterElement, group: WeylGroup) -> int:
    """Exhaustive variant of :func:`center_weyl_map`; returns an index into ``group``.

    Kept as an independent check of the chamber walk.
    """
    import numpy as np

    rd = c.rd
    h = rd.coxeter_number
    cinv = inverse(c)
    # scale by h so everything is integral
    x = np.array([1 - h * v for v in cinv.coords], dtype=np.int64)
    target = np.ones(rd.rank, dtype=np.int64)
    images = group.coweight_matrices @ x
    hits = np.flatnonzero((images == target).all(axis=1))
    if len(hits) != 1:
        raise AssertionError(f"expected a unique w_c, found {len(hits)}")
    return int(hits[0])


# -- Coxeter fixed points on T' = T/Z -----------------------------------------


@dataclass(eq=False)
class CoxeterFixedGroup:
    """The fixed points of a Coxeter element on T/Z, i.e. (1-w)^-1 Lambda_Z / Lambda_Z."""

    subgroup: CenterSubgroup
    coxeter: WeylElement
    basis: exact.Matrix  # rows span (1-w)^-1 Lambda_Z, coweight coordinates
    group: FiniteAbelianGroup

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def invariants(self) -> tuple[int, ...]:
        return self.group.invariants

    def label(self, coords) -> tuple[int, ...]:
        """Label of ``exp`` of a point of (1-w)^-1 Lambda_Z."""
        y = exact.row_coordinates([[Fraction(c) for c in coords]], self.basis)[0]
        if not exact.is_integral(y):
            raise CenterError(f"{coords} is not in (1-w)^-1 Lambda_Z")
        return self.group.reduce([int(t) for t in y])

    def representative(self, label) -> list[Fraction]:
        y = self.group.lift(label)
        return exact.vecmat(y, self.basis)

    def one_minus_w(self, coords) -> list[Fraction]:
        m = self.coxeter.coweight_matrix
        l = len(coords)
        return [Fraction(coords[i]) - sum(int(m[i, j]) * Fraction(coords[j]) for j in range(l)) for i in range(l)]

    def inclusion(self, c: CenterElement) -> tuple[int, ...]:
        """Z(G)/Z -> (T')^w induced by P^vee inside (1-w)^-1 Lambda_Z."""
        return self.label(c.coords)

    def projection(self, label) -> CenterElement:
        """(T')^w -> Z: apply (1-w) and reduce mod Q^vee."""
        x = self.one_minus_w(self.representative(label))
        return center_element(self.subgroup.rd, x)

    def exact_sequence_report(self) -> dict:
        """Check exactness of 1 -> Z(G)/Z -> (T')^w -> Z -> 1 by enumeration."""
        z = self.subgroup
        full = _center(z.rd).elements()
        zset = set(z.elements)
        labels = self.group.labels()
        incl = {c: self.inclusion(c) for c in full}
        identity = tuple(0 for _ in self.group.invariants)
        # well defined and injective on Z(G)/Z
        well_defined = all((incl[c] == identity) == (c in zset) for c in full)
        image = set(incl.values())
        proj = {lab: self.projection(lab) for lab in labels}
        kernel = {lab for lab, c in proj.items() if c.is_identity()}
        proj_image = set(proj.values())
        cosets = len(full) // z.order
        return {
            "order": self.order,
            "center_order": len(full),
            "inclusion_injective": well_defined and len(image) == cosets,
            "image_equals_kernel": image == kernel,
            "projection_surjective": proj_image == zset,
            "kernel_order": len(kernel),
            "image_order": len(proj_image),
        }


def coxeter_fixed_subgroup(z: CenterSubgroup, w: WeylElement | None = None) -> CoxeterFixedGroup:
    rd = z.rd
    w = coxeter_element(rd) if w is None else w
    m = w.coweight_matrix
    l = rd.rank
    a = [[int(i == j) - int(m[i, j]) for j in range(l)] for i in range(l)]
    lam = [list(r) for r in z.lambda_basis]
    # rows x with (1-w) x = lambda_i, i.e. x = A^-1 lambda_i
    basis = exact.transpose(exact.solve(a, exact.transpose(lam)))
    rel = exact.row_coordinates(lam, basis)
    if not exact.is_integral(x for row in rel for x in row):
        raise AssertionError("Lambda_Z is not contained in (1-w)^-1 Lambda_Z")
    group = FiniteAbelianGroup([[int(x) for x in row] for row in rel])
    return CoxeterFixedGroup(z, w, basis, group)


# -- finite quotients -------------------------------------------------------


def lattice_quotient_order(sup, sub) -> int:
    """Index of the lattice spanned by ``sub`` rows in the one spanned by ``sup`` rows."""
    sup_b = exact.lattice_basis([[Fraction(x) for x in r] for r in sup])
    sub_b = exact.lattice_basis([[Fraction(x) for x in r] for r in sub])
    return exact.lattice_index(sup_b, sub_b)


def torus_order(rd: RootDatum, n: int) -> int:
    """#T_n = #((1/n) P / Q^vee), with P carried to coweights by the basic form."""
    sup = [[x / n for x in rd.weight_to_coweight(w)] for w in rd.fundamental_weights]
    return lattice_quotient_order(sup, rd.simple_coroots)


# -- characters of Z ----------------------------------------------------------


@dataclass(frozen=True)
class CenterCharacter:
    """Character of Z given by exponents over its invariant-factor generators."""

    exponents: tuple[int, ...]

    def exponent(self, z: CenterSubgroup, c: CenterElement) -> Fraction:
        coords = z.coordinates(c)
        return sum((Fraction(e * x, d) for e, x, d in zip(self.exponents, coords, z.invariants)), Fraction(0)) % 1

    def __call__(self, z: CenterSubgroup, c: CenterElement) -> complex:
        return cmath.exp(2j * math.pi * float(self.exponent(z, c)))

    def is_trivial(self, z: CenterSubgroup) -> bool:
        return all(e % d == 0 for e, d in zip(self.exponents, z.invariants))


def characters(z: CenterSubgroup) -> list[CenterCharacter]:
    return [CenterCharacter(tuple(e)) for e in itertools.product(*(range(d) for d in z.invariants))]


def trivial_character(z: CenterSubgroup) -> CenterCharacter:
    return CenterCharacter(tuple(0 for _ in z.invariants))
