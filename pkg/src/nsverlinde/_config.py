"""Tolerances and environment switches."""
from __future__ import annotations

import os


def _env_float(name: str, default: float) -> float:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return float(raw)
    except ValueError as exc:
        raise ValueError(f"{name} must be a number, got {raw!r}") from exc


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in ("1", "true", "yes", "on")


# rounding guard for quantities that must be integers or roots of unity
INTEGRALITY_TOL = _env_float("NSVERLINDE_TOL", 1e-6)
# S-matrix symmetry/unitarity
UNITARITY_TOL = _env_float("NSVERLINDE_UNITARITY_TOL", 1e-9)
# below this |J(t)| a torus point is treated as singular
SINGULAR_TOL = 1e-8


def numba_disabled() -> bool:
    return _env_flag("NSVERLINDE_DISABLE_NUMBA")


class ResidualError(ArithmeticError):
    """A value that must be an integer was not close enough to one."""

    def __init__(self, what: str, value, residual: float, tol: float):
        super().__init__(f"{what}: {value!r} is {residual:.3g} away from an integer (tolerance {tol:g})")
        self.value = value
        self.residual = residual
        self.tol = tol


def round_checked(value, what: str = "value", tol: float | None = None) -> tuple[int, float]:
    """Round a (possibly complex) number to an integer, enforcing the guard."""
    tol = INTEGRALITY_TOL if tol is None else tol
    z = complex(value)
    n = round(z.real)
    residual = abs(z - n)
    if residual > tol:
        raise ResidualError(what, value, residual, tol)
    return int(n), residual
