"""Command line front-end.

Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 bad input
or configuration.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

import numpy as np

from . import laplacian as la
from .cells import CellStructure, build_sg, build_star_toy, cell_orbits
from .certify import SweepRow, boundary_subset_suite, property_suite, sweep_row
from .errors import SGError
from .harmonic import (
    HarmonicStructureCandidate,
    evaluate_at_address,
    extension_matrices,
    is_harmonic_structure,
    nondegeneracy_report,
    solve_homogeneous_ratio,
    standard_d,
)
from .laplacian import EXACT, FLOAT, Tolerances
from .render import to_svg

EXACT_N_MAX = 16
FLOAT_N_MAX = 64


class ConfigError(Exception):
    pass


def load_structure(spec: str) -> CellStructure:
    m = re.fullmatch(r"sg(\d+)", spec.lower())
    if m:
        return build_sg(int(m.group(1)))
    if spec.lower() in ("star-toy", "star_toy", "star"):
        return build_star_toy()
    path = Path(spec)
    if not path.exists():
        raise ConfigError(f"unknown structure {spec!r} (built-ins: sgN, star-toy; or a JSON file)")
    return CellStructure.from_json(path.read_text())


def load_candidate(s: CellStructure, d_path, r_path, mode: str, tol: Tolerances) -> HarmonicStructureCandidate:
    if d_path:
        D = la.matrix_from_dict(json.loads(Path(d_path).read_text()), mode)
    else:
        D = standard_d(mode, s.k)
    if r_path:
        doc = json.loads(Path(r_path).read_text())
        raw = doc["r"] if isinstance(doc, dict) else doc
        try:
            r = [la.parse_scalar(x, mode) for x in raw]
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"unparseable weight: {exc}") from exc
        if len(r) != s.n_cells:
            raise ConfigError(f"{s.name} has {s.n_cells} cells but {len(r)} weights were given")
        for i, x in enumerate(r):
            if not x > 0:
                raise ConfigError(f"weight r_{i} = {la.format_scalar(x)} violates r_i > 0")
    else:
        r = [solve_homogeneous_ratio(s, D, tol.entry)] * s.n_cells
    return HarmonicStructureCandidate(D, r)


def parse_values(text: str, mode: str) -> list:
    try:
        return [la.parse_scalar(x, mode) for x in text.replace(",", " ").split()]
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad value list {text!r}") from exc


def _tolerances(args) -> Tolerances:
    try:
        return Tolerances(entry=args.tol_entry, residual=args.tol_residual, sv_floor=args.sv_floor, level=args.tol_entry)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _emit(text: str, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(doc) -> str:
    return json.dumps(doc, indent=1, default=la.format_scalar) + "\n"


# commands ------------------------------------------------------------------------


def cmd_sweep(args) -> int:
    tol = _tolerances(args)
    n_max = args.n_max if args.n_max is not None else (12 if args.mode == EXACT else 50)
    cap = EXACT_N_MAX if args.mode == EXACT else FLOAT_N_MAX
    if not 2 <= args.n_min <= n_max <= cap:
        raise ConfigError(f"need 2 <= n-min <= n-max <= {cap} in {args.mode} mode")
    rng = np.random.default_rng(args.seed)
    lines = [SweepRow.CSV_HEADER]
    status = 0
    for n in range(args.n_min, n_max + 1):
        row = sweep_row(n, args.mode, tol, args.orbit_samples, rng)
        lines.append(row.csv(timing=not args.no_timing))
        if row.verdict != "nondegenerate":
            status = 1
    _emit("\n".join(lines) + "\n", args.out)
    return status


def cmd_verify(args) -> int:
    tol = _tolerances(args)
    if args.mode == FLOAT:
        print("warning: level-set checks in float mode compare values with a tolerance", file=sys.stderr)
    s = load_structure(args.structure)
    cand = load_candidate(s, args.D, args.r, args.mode, tol)
    rng = np.random.default_rng(args.seed)
    checks = []

    H1 = la.assemble_h1(s, cand.D, cand.r)
    verdict = la.validate_laplacian(H1, tol.entry)
    checks.append({"check": "laplacian", "passed": verdict.ok, "violations": verdict.violations})

    ok, residual = is_harmonic_structure(s, cand, tol.entry)
    checks.append({"check": "harmonic_structure", "passed": ok, "residual": residual})

    report = nondegeneracy_report(extension_matrices(s, cand), tol.sv_floor, n=s.level)
    checks.append({"check": "nondegeneracy", "passed": not report.degenerate, "report": report.to_dict()})

    for name, res in property_suite(s, cand, args.samples, rng, tol).items():
        checks.append({"check": name, "passed": res.passed, "checked": res.checked, "failures": res.failures[:5]})
    if len(s.interior) >= 3:
        res = boundary_subset_suite(s, 200, rng)
        checks.append({"check": res.name, "passed": res.passed, "checked": res.checked, "failures": res.failures[:5]})

    passed = all(c["passed"] for c in checks)
    _emit(_dump({"structure": s.name, "mode": args.mode, "passed": passed, "checks": checks}), args.out)
    return 0 if passed else 1


def cmd_extend(args) -> int:
    tol = _tolerances(args)
    s = load_structure(args.structure)
    cand = load_candidate(s, args.D, args.r, args.mode, tol)
    u = parse_values(args.boundary, args.mode)
    if len(u) != s.k:
        raise ConfigError(f"need {s.k} boundary values, got {len(u)}")
    H1 = la.assemble_h1(s, cand.D, cand.r)
    v = la.harmonic_extend(H1, s, u)
    doc = {"structure": s.name, "mode": args.mode, "boundary": [la.format_scalar(x) for x in u],
           "values": [la.format_scalar(x) for x in v]}
    if args.address is not None:
        try:
            address = [int(x) for x in args.address.replace(",", " ").split()]
        except ValueError as exc:
            raise ConfigError(f"bad address {args.address!r}") from exc
        w = evaluate_at_address(extension_matrices(s, cand), address, u)
        doc["address"] = address
        doc["address_values"] = [la.format_scalar(x) for x in w]
    if args.svg:
        Path(args.svg).write_text(to_svg(s, v))
    _emit(_dump(doc), args.out)
    return 0


def cmd_orbits(args) -> int:
    s = load_structure(args.structure)
    orbits = cell_orbits(s)
    _emit(_dump({"structure": s.name, "orbits": orbits, "sizes": [len(o) for o in orbits]}), args.out)
    return 0


def cmd_render(args) -> int:
    tol = _tolerances(args)
    s = load_structure(args.structure)
    values = None
    if args.boundary:
        cand = load_candidate(s, args.D, args.r, args.mode, tol)
        u = parse_values(args.boundary, args.mode)
        if len(u) != s.k:
            raise ConfigError(f"need {s.k} boundary values, got {len(u)}")
        values = la.harmonic_extend(la.assemble_h1(s, cand.D, cand.r), s, u)
    target = args.svg or args.out
    if not target:
        raise ConfigError("render needs --svg or --out")
    Path(target).write_text(to_svg(s, values))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=(EXACT, FLOAT), default=EXACT)
    common.add_argument("--tol-entry", type=float, default=1e-10)
    common.add_argument("--tol-residual", type=float, default=1e-9)
    common.add_argument("--sv-floor", type=float, default=1e-12)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the main output here instead of stdout")

    net = argparse.ArgumentParser(add_help=False)
    net.add_argument("structure", help="sgN, star-toy, or a cell-structure JSON file")
    net.add_argument("--D", help="boundary Laplacian JSON (default: unit conductances)")
    net.add_argument("--r", help="cell weights JSON (default: solved homogeneous weight)")

    p = argparse.ArgumentParser(prog="sgharmonic", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sweep", parents=[common], help="certify SG_n for a range of n")
    sp.add_argument("--n-min", type=int, default=2)
    sp.add_argument("--n-max", type=int, default=None)
    sp.add_argument("--orbit-samples", type=int, default=0)
    sp.add_argument("--no-timing", action="store_true", help="leave the millis column empty")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", parents=[common, net], help="run every check on one structure")
    sp.add_argument("--samples", type=int, default=20)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("extend", parents=[common, net], help="harmonic extension of boundary values")
    sp.add_argument("--boundary", required=True)
    sp.add_argument("--address")
    sp.add_argument("--svg")
    sp.set_defaults(func=cmd_extend)

    sp = sub.add_parser("orbits", parents=[common], help="symmetry orbits of the cells")
    sp.add_argument("structure")
    sp.set_defaults(func=cmd_orbits)

    sp = sub.add_parser("render", parents=[common, net], help="SVG drawing of the level-1 network")
    sp.add_argument("--boundary")
    sp.add_argument("--svg")
    sp.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (ConfigError, SGError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
