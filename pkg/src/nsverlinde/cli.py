"""Command line interface.

Data goes to stdout as JSON (default) or CSV, logs and errors to stderr.
Exit codes: 0 success, 2 usage error, 3 precondition violation, 4 numerical
residual failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction

from . import _config, _kernels
from .centerlat import CenterCharacter, CenterError, center_group, levels, subgroup_from_spec
from .exact import LatticeInclusionError
from .fusion import s_matrix
from .phases import FixedPointError, LevelError, NoClosedFormError, RepresentativeDependenceError, delta_closed_form, delta_table
from .rootdata import InvalidTypeError, build_root_datum
from .verlinde import PreconditionError, verlinde_nsc_table
from .weyl import NotDominantError, WeylBudgetError

SCHEMA = 1
EXIT_USAGE, EXIT_PRECONDITION, EXIT_RESIDUAL = 2, 3, 4

log = logging.getLogger("nsverlinde")


class UsageError(ValueError):
    pass


def _fraction(x: Fraction) -> str:
    return str(x)


def _complex(z) -> list[float]:
    z = complex(z)
    return [round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0]


# -- argument helpers ---------------------------------------------------------


def _subgroup(args):
    rd = build_root_datum(args.type)
    spec = args.center
    if args.gen:
        if spec not in (None, "full") and not spec.startswith("gen:"):
            raise UsageError("--gen cannot be combined with --center trivial")
        spec = "gen:" + ",".join(args.gen)
    return rd, subgroup_from_spec(rd, spec or "full")


def _labels(text: str, rank: int) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse weight labels {text!r}") from None
    if len(out) != rank:
        raise UsageError(f"expected {rank} labels, got {len(out)}")
    return out


def _twist(text: str, z, genus: int) -> tuple[CenterCharacter, ...]:
    """Parse ``"e1;e2;...;e2g"`` where each entry is a comma separated exponent vector."""
    parts = [p for p in text.split(";")] if text else []
    if len(parts) != 2 * genus:
        raise UsageError(f"--phi needs {2 * genus} exponent tuples separated by ';'")
    out = []
    for p in parts:
        try:
            exps = tuple(int(x) for x in p.split(",")) if p else ()
        except ValueError:
            raise UsageError(f"cannot parse exponent tuple {p!r}") from None
        if len(exps) != len(z.invariants):
            raise UsageError(f"exponent tuple {p!r} does not match Z = {z.name}")
        out.append(CenterCharacter(tuple(e % d for e, d in zip(exps, z.invariants))))
    return tuple(out)


# -- commands -------------------------------------------------------------------


def cmd_rootdata(args) -> dict:
    rd = build_root_datum(args.type)
    zg = center_group(rd)
    row = {
        "type": str(rd.type),
        "rank": rd.rank,
        "h": rd.coxeter_number,
        "h_dual": rd.dual_coxeter_number,
        "marks": list(rd.marks),
        "comarks": list(rd.comarks),
        "cartan": [list(r) for r in rd.cartan],
        "positive_roots": rd.num_positive_roots,
        "ZG": zg.name,
    }
    return {"rows": [row], "diagnostics": {}}


def cmd_levels(args) -> dict:
    rd, z = _subgroup(args)
    k0, k1 = levels(z)
    row = {"type": str(rd.type), "ZG": center_group(rd).name, "Z": z.name, "k0": k0, "k1": k1}
    return {"rows": [row], "diagnostics": {}}


def cmd_delta(args) -> dict:
    rd, z = _subgroup(args)
    table = delta_table(z, args.k)
    rows = []
    for (a, b), value in table.items():
        row = {"c1": str(a), "c2": str(b)}
        if value is None:
            row.update({"exponent": None, "value": None, "note": "no fixed point on P_k"})
        else:
            row.update({"exponent": _fraction(value.exponent), "value": _complex(value.value)})
        try:
            closed = delta_closed_form(z, args.k, a, b)
            printed = delta_closed_form(z, args.k, a, b, as_printed=True)
            row["closed_form"] = _fraction(closed.exponent)
            row["closed_form_as_printed"] = _fraction(printed.exponent)
            if value is not None:
                row["agrees"] = closed == value
        except NoClosedFormError:
            row["closed_form"] = None
        rows.append(row)
    return {"rows": rows, "diagnostics": {"k": args.k, "Z": z.name}}


def cmd_smatrix(args) -> dict:
    rd = build_root_datum(args.type)
    s = s_matrix(rd, args.k)
    rows = [
        {"mu": list(m), "row": [_complex(x) for x in s.entries[i]]}
        for i, m in enumerate(s.table.weights)
    ]
    diag = {
        "symmetry_residual": s.symmetry_residual(),
        "unitarity_residual": s.unitarity_residual(),
        "torus_order": s.torus_order,
        "backend": _kernels.active_backend(),
    }
    return {"rows": rows, "diagnostics": diag}


def cmd_verlinde(args) -> dict:
    rd, z = _subgroup(args)
    if args.genus < 0:
        raise UsageError("--genus must be nonnegative")
    if args.all_phi and args.phi is not None:
        raise UsageError("--phi and --all-phi are exclusive")
    if args.all_phi:
        phis = None
    elif args.phi is not None:
        phis = [_twist(args.phi, z, args.genus)]
    else:
        phis = [tuple(CenterCharacter(tuple(0 for _ in z.invariants)) for _ in range(2 * args.genus))]
    mu = _labels(args.mu, rd.rank) if args.mu is not None else None
    tab = verlinde_nsc_table(z, args.k, args.genus, phis)
    if mu is not None and mu not in tab.weights:
        raise PreconditionError(f"{mu} is not a level {args.k} weight")
    rows = []
    for i, phi in enumerate(tab.phis):
        for j, w in enumerate(tab.weights):
            if mu is not None and w != mu:
                continue
            q = int(tab.values[i, j])
            lead = float(tab.leading[j])
            rows.append(
                {
                    "mu": list(w),
                    "phi": [list(ch.exponents) for ch in phi],
                    "Q": q,
                    "leading": round(lead, 9) + 0.0,
                    "correction": round(q - lead, 9) + 0.0,
                }
            )
    diag = {
        "max_residual": tab.residual,
        "tolerance": _config.INTEGRALITY_TOL,
        "contributing_tuples": tab.contributing_tuples,
        "backend": _kernels.active_backend(),
    }
    return {"rows": rows, "diagnostics": diag}


# -- output -----------------------------------------------------------------------


def _emit(command: str, args, result: dict, out) -> None:
    if args.format == "csv":
        rows = result["rows"]
        keys = []
        for r in rows:
            for key in r:
                if key not in keys:
                    keys.append(key)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: json.dumps(v, separators=(",", ":")) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        out.write(buf.getvalue())
        return
    doc = {"schema": SCHEMA, "command": command}
    rows = result["rows"]
    if command == "levels":
        doc.update(rows[0])
    else:
        doc["rows"] = rows
    doc["diagnostics"] = result["diagnostics"]
    out.write(json.dumps(doc, separators=(",", ":")) + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nsverlinde", description="Verlinde numbers for G and G/Z.")
    p.add_argument("-v", "--verbose", action="store_true", help="log to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, center=True):
        sp.add_argument("--type", required=True, help="Lie type, e.g. A3 or D4")
        if center:
            sp.add_argument("--center", default=None, help="trivial, full (default) or gen:w1,w3")
            sp.add_argument("--gen", action="append", help="generator coweight such as w1 or 2w1; repeatable")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--tol", type=float, default=None, help="integrality tolerance")

    common(sub.add_parser("rootdata", help="root system summary"), center=False)
    common(sub.add_parser("levels", help="basic levels k0 and k1"))
    sp = sub.add_parser("delta", help="phase factors on Z x Z")
    common(sp)
    sp.add_argument("--k", type=int, required=True)
    sp = sub.add_parser("smatrix", help="modular S-matrix at level k")
    common(sp, center=False)
    sp.add_argument("--k", type=int, required=True)
    sp = sub.add_parser("verlinde", help="Verlinde numbers for G/Z")
    common(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--mu", default=None, help="Dynkin labels, e.g. 1,0; all of P_k if omitted")
    sp.add_argument("--phi", default=None, help="2g exponent tuples separated by ';'")
    sp.add_argument("--all-phi", action="store_true", help="tabulate every twist")
    return p


COMMANDS = {
    "rootdata": cmd_rootdata,
    "levels": cmd_levels,
    "delta": cmd_delta,
    "smatrix": cmd_smatrix,
    "verlinde": cmd_verlinde,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    saved_tol = _config.INTEGRALITY_TOL
    if args.tol is not None:
        _config.INTEGRALITY_TOL = args.tol
    try:
        result = COMMANDS[args.command](args)
    except (UsageError, InvalidTypeError, CenterError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        PreconditionError,
        LevelError,
        FixedPointError,
        NotDominantError,
        WeylBudgetError,
        LatticeInclusionError,
        RepresentativeDependenceError,
    ) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except _config.ResidualError as exc:
        print(f"numerical residual failure: {exc}", file=sys.stderr)
        return EXIT_RESIDUAL
    finally:
        _config.INTEGRALITY_TOL = saved_tol
    _emit(args.command, args, result, out)
    log.info("done: %s", args.command)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
