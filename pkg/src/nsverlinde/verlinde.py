"""Verlinde numbers for G and for quotients G/Z, surfaces with one boundary circle."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _config
from ._config import ResidualError
from ._kernels import COMPLEX, unit_phase
from .centerlat import (
    CenterCharacter,
    CenterSubgroup,
    characters,
    levels,
    subgroup_from_generators,
)
from .fusion import SMatrix, epsilon, fixed_mask, level_weights, s_matrix
from .phases import LevelError, delta
from .rootdata import RootDatum, build_root_datum


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class ModuliSpec:
    z: CenterSubgroup
    k: int
    genus: int
    mu: tuple[int, ...]
    phi: tuple[CenterCharacter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(int(x) for x in self.mu))
        if self.genus < 0:
            raise PreconditionError("genus must be nonnegative")
        if self.k < 1:
            raise PreconditionError("level must be positive")
        k0, _ = levels(self.z)
        if self.k % k0:
            raise LevelError(f"level {self.k} is not a multiple of the basic level {k0}")
        table = level_weights(self.z.rd, self.k)
        if self.mu not in table.index:
            raise PreconditionError(f"{self.mu} is not a level {self.k} weight")
        phi = tuple(self.phi) if self.phi else tuple(CenterCharacter(tuple(0 for _ in self.z.invariants)) for _ in range(2 * self.genus))
        if len(phi) != 2 * self.genus:
            raise PreconditionError(f"expected {2 * self.genus} characters, got {len(phi)}")
        for ch in phi:
            if len(ch.exponents) != len(self.z.invariants):
                raise PreconditionError(f"character {ch.exponents} does not match Z = {self.z.name}")
        object.__setattr__(self, "phi", phi)

    @property
    def rd(self) -> RootDatum:
        return self.z.rd


@dataclass(frozen=True)
class VerlindeValue:
    value: int
    leading: float
    correction: float
    residual: float
    contributing_tuples: int


@dataclass(frozen=True, eq=False)
class VerlindeTable:
    """Values for every requested twist (rows) and every mu in P_k (columns)."""

    z: CenterSubgroup
    k: int
    genus: int
    phis: tuple[tuple[CenterCharacter, ...], ...]
    weights: tuple[tuple[int, ...], ...]
    values: np.ndarray = field(repr=False)
    raw: np.ndarray = field(repr=False)
    leading: np.ndarray = field(repr=False)
    contributing_tuples: int

    @property
    def residual(self) -> float:
        return float(np.abs(self.raw - self.values).max(initial=0.0))

    def lookup(self, phi, mu) -> VerlindeValue:
        i = self.phis.index(tuple(phi))
        j = self.weights.index(tuple(mu))
        return VerlindeValue(
            int(self.values[i, j]),
            float(self.leading[j]),
            float(self.values[i, j] - self.leading[j]),
            float(abs(self.raw[i, j] - self.values[i, j])),
            self.contributing_tuples,
        )


def _restricted_sums(s: SMatrix, genus: int, mask: np.ndarray) -> np.ndarray:
    """sum over lambda in ``mask`` of S_{lambda,0}^(1-2g) S_{lambda,*mu}, for all mu."""
    e = s.entries
    weights = np.where(mask, e[:, 0] ** (1 - 2 * genus), 0)
    return weights @ e[:, s.table.dual_index]


def _round_table(raw: np.ndarray, what: str, tol: float | None = None) -> np.ndarray:
    tol = _config.INTEGRALITY_TOL if tol is None else tol
    out = np.rint(raw.real)
    residual = np.abs(raw - out)
    if residual.size and residual.max() > tol:
        idx = np.unravel_index(int(np.argmax(residual)), residual.shape)
        raise ResidualError(f"{what} at {tuple(int(i) for i in idx)}", complex(raw[idx]), float(residual[idx]), tol)
    if (out < 0).any():
        raise ResidualError(f"{what} is negative", float(out.min()), 0.0, tol)
    return out.astype(np.int64)


def verlinde_sc_all(rd: RootDatum, genus: int, k: int) -> np.ndarray:
    """Simply connected Verlinde numbers for every mu in P_k, lexicographic order."""
    if genus < 0:
        raise PreconditionError("genus must be nonnegative")
    s = s_matrix(rd, k)
    raw = _restricted_sums(s, genus, np.ones(len(s.table), dtype=bool))
    return _round_table(raw[None, :], "simply connected Verlinde number")[0]


def verlinde_sc(rd: RootDatum, genus: int, k: int, mu) -> int:
    table = level_weights(rd, k)
    return int(verlinde_sc_all(rd, genus, k)[table.position(mu)])


def _all_twists(z: CenterSubgroup, genus: int):
    chars = characters(z)
    return tuple(itertools.product(chars, repeat=2 * genus))


def verlinde_nsc_table(z: CenterSubgroup, k: int, genus: int, phis=None) -> VerlindeTable:
    """Evaluate the quotient-group formula for many twists and all mu at once.

    The sum over tuples (c_1, ..., c_2g) in Z^2g only keeps tuples with a
    common fixed weight; each contributes prod_j delta(c_{2j-1}, c_{2j})
    times the S-matrix sum over the common fixed weights, and the twists
    enter through the character table of Z^2g.
    """
    rd = z.rd
    k0, _ = levels(z)
    if k % k0:
        raise LevelError(f"level {k} is not a multiple of the basic level {k0}")
    if genus < 0:
        raise PreconditionError("genus must be nonnegative")
    s = s_matrix(rd, k)
    table = s.table
    elems = list(z.elements)
    n = len(elems)
    phis = _all_twists(z, genus) if phis is None else tuple(tuple(p) for p in phis)
    for p in phis:
        if len(p) != 2 * genus:
            raise PreconditionError(f"twist {p} has the wrong length")

    masks = [fixed_mask(table, c) for c in elems]
    delta_cache: dict[tuple[int, int], COMPLEX] = {}
    sum_cache: dict[bytes, np.ndarray] = {}
    tuples, contribs = [], []
    for t in itertools.product(range(n), repeat=2 * genus):
        mask = np.ones(len(table), dtype=bool)
        for i in t:
            mask &= masks[i]
        if not mask.any():
            continue
        phase = COMPLEX(1)
        for j in range(genus):
            key = (t[2 * j], t[2 * j + 1])
            if key not in delta_cache:
                r = delta(z, k, elems[key[0]], elems[key[1]]).exponent
                delta_cache[key] = unit_phase(r.numerator, r.denominator)
            phase = phase * delta_cache[key]
        mkey = mask.tobytes()
        if mkey not in sum_cache:
            sum_cache[mkey] = _restricted_sums(s, genus, mask)
        tuples.append(t)
        contribs.append(phase * sum_cache[mkey])
    contrib = np.array(contribs, dtype=COMPLEX).reshape(len(tuples), len(table))
    tup = np.array(tuples, dtype=np.int64).reshape(len(tuples), 2 * genus)

    # single-factor character table X[char, element]
    chars = characters(z)
    char_pos = {c: i for i, c in enumerate(chars)}
    x = np.array(
        [[unit_phase(ch.exponent(z, c).numerator, ch.exponent(z, c).denominator) for c in elems] for ch in chars],
        dtype=COMPLEX,
    ).reshape(len(chars), n)
    phi_idx = np.array([[char_pos[ch] for ch in p] for p in phis], dtype=np.int64).reshape(len(phis), 2 * genus)
    chi = np.ones((len(phis), len(tuples)), dtype=COMPLEX)
    for i in range(2 * genus):
        chi *= x[phi_idx[:, i]][:, tup[:, i]]

    norm = n ** (2 * genus)
    raw = chi @ contrib / norm
    values = _round_table(raw, f"Verlinde number for {rd.type}/{z.name} at k={k}, g={genus}")
    identity = tuple([0] * (2 * genus))
    leading = (contrib[tuples.index(identity)] / norm).real
    return VerlindeTable(z, k, genus, phis, table.weights, values, raw, leading, len(tuples))


def verlinde_nsc(spec: ModuliSpec) -> VerlindeValue:
    tab = verlinde_nsc_table(spec.z, spec.k, spec.genus, [spec.phi])
    return tab.lookup(spec.phi, spec.mu)


# -- PU(n), n an odd prime -------------------------------------------------------


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, math.isqrt(n) + 1))


def _check_pu(n: int, k: int, genus: int):
    if not (_is_prime(n) and n % 2):
        raise PreconditionError(f"n = {n} is not an odd prime")
    if k < 1 or k % n:
        raise PreconditionError(f"k = {k} is not a positive multiple of n = {n}")
    if genus < 1:
        raise PreconditionError("genus must be at least 1")


def pu_n_prime(n: int, k: int, genus: int, phi_trivial: bool, mu) -> int:
    """Closed form for PU(n) = SU(n)/Z_n, n an odd prime."""
    _check_pu(n, k, genus)
    rd = build_root_datum(f"A{n - 1}")
    q_su = verlinde_sc(rd, genus, k, mu)
    eps = epsilon(rd, mu)
    power = (k // n + 1) ** ((n - 1) * (genus - 1))
    total = n ** (2 * genus)
    if phi_trivial:
        q = Fraction(q_su + (total - 1) * power * eps, total)
    else:
        q = Fraction(q_su - power * eps, total)
    if q.denominator != 1:
        raise ArithmeticError(f"closed form is not an integer: {q}")
    return int(q)


def congruence_check(n: int, k: int, genus: int) -> dict:
    """N(mu) = (k/n+1)^((n-1)(g-1)) eps(mu) mod n^(2g) for every mu in P_k."""
    _check_pu(n, k, genus)
    rd = build_root_datum(f"A{n - 1}")
    table = level_weights(rd, k)
    values = verlinde_sc_all(rd, genus, k)
    power = (k // n + 1) ** ((n - 1) * (genus - 1))
    modulus = n ** (2 * genus)
    failures = []
    for mu, v in zip(table.weights, values):
        eps = epsilon(rd, mu)
        if (int(v) - power * eps) % modulus:
            failures.append({"mu": list(mu), "N": int(v), "epsilon": eps})
    return {"n": n, "k": k, "genus": genus, "checked": len(table), "passed": not failures, "failures": failures}


# -- free actions ---------------------------------------------------------------


def trivial_stabilizer_check(l: int, m: int, k: int, genus: int = 1) -> dict:
    """For A_l and Z = Z_m with m prime, m^2 | l+1 and m not dividing k.

    Verifies that nontrivial elements act without fixed points on P_k and that
    the quotient formula then collapses to its leading term.
    """
    applicable = _is_prime(m) and (l + 1) % (m * m) == 0 and k % m != 0
    report = {"type": f"A{l}", "m": m, "k": k, "genus": genus, "applicable": applicable}
    if not applicable:
        return report
    rd = build_root_datum(f"A{l}")
    z = subgroup_from_generators(rd, [[(l + 1) // m] + [0] * (l - 1)])
    table = level_weights(rd, k)
    fixed = {str(c): int(fixed_mask(table, c).sum()) for c in z.elements if not c.is_identity()}
    free = all(v == 0 for v in fixed.values())
    sc = verlinde_sc_all(rd, genus, k)
    nsc = verlinde_nsc_table(z, k, genus)
    norm = z.order ** (2 * genus)
    collapse = all(
        int(nsc.values[i, j]) * norm == int(sc[j]) for i in range(len(nsc.phis)) for j in range(len(table))
    )
    report.update(
        {
            "weights": len(table),
            "fixed_points": fixed,
            "free": free,
            "collapses_to_leading_term": collapse,
            "divisible": all(int(v) % norm == 0 for v in sc),
        }
    )
    return report

