"""Command-line front end: ring checks, identity solving, map checks and campaigns.

Exit codes: 0 success, 1 a check or campaign failed, 2 usage or parse
error, 3 a size budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import __version__
from .budget import BudgetExceeded
from .campaigns import BUILTIN_MAPS, build_report, canonical_json, load_manifest, run_campaigns, select
from .constructors import RingExprError, corner_projection_map, parse_ring_expr
from .engine import DegreeError, UnboundSlotError, find_violation, satisfies, solve_identity, verify_sufficiency
from .identities import IdentitySyntaxError, builtin_identities, format_law, get_law
from .maps import (
    AdditiveMap,
    apply,
    exhaustive_check,
    is_jordan_left,
    is_jordan_right,
    is_left_centralizer,
    is_right_centralizer,
    is_scalar_form,
    is_two_sided_centralizer,
    scalar_map,
)
from .ring import RingSpec, Verdict, center, check_associativity, is_k_torsion_free, is_prime, is_semiprime

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(ValueError):
    """Bad command-line input that is not caught by argparse."""


# helpers --------------------------------------------------------------------


def _ring_info(ring: RingSpec) -> dict:
    return {
        "name": ring.name,
        "N": ring.exponent,
        "k": ring.rank,
        "cardinality": ring.cardinality,
        "unital": ring.is_unital,
    }


def _fmt_witness(ring: RingSpec, witness):
    if witness is None:
        return None
    if isinstance(witness, tuple) and witness and isinstance(witness[0], int):
        return ring.format(witness)
    return [_fmt_witness(ring, w) for w in witness]


def _verdict(ring: RingSpec, v: Verdict) -> dict:
    return {"holds": v.holds, "witness": _fmt_witness(ring, v.witness)}


def load_map(ring: RingSpec, spec: str, ring_expr: str = "") -> AdditiveMap:
    """Resolve ``builtin:<name>``, ``scalar:<element>``, an inline JSON matrix or a JSON file."""
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        if name == "corner-projection":
            if not ring_expr.startswith("TRI:"):
                raise UsageError("builtin:corner-projection needs a TRI:<base> ring")
            return corner_projection_map(parse_ring_expr(ring_expr[4:]))
        if name not in BUILTIN_MAPS:
            known = ", ".join(sorted([*BUILTIN_MAPS, "corner-projection"]))
            raise UsageError(f"unknown builtin map {name!r} (known: {known})")
        return BUILTIN_MAPS[name](ring)
    if spec.startswith("scalar:"):
        return scalar_map(ring, ring.parse(spec.split(":", 1)[1]))
    if spec.lstrip().startswith(("[", "{")):
        data = json.loads(spec)
    else:
        try:
            with open(spec) as fh:
                data = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read map file {spec!r}: {exc}") from exc
    if isinstance(data, dict):
        data = data["matrix"]
    matrix = np.asarray(data, dtype=np.int64)
    if matrix.shape != (ring.rank, ring.rank):
        raise UsageError(f"map must be a {ring.rank}x{ring.rank} matrix, got shape {matrix.shape}")
    return AdditiveMap(matrix, ring.exponent)


def _bindings(ring: RingSpec, items: list[str], ring_expr: str) -> dict[str, AdditiveMap]:
    out = {}
    for item in items or []:
        slot, sep, spec = item.partition("=")
        if not sep or not slot:
            raise UsageError(f"--bind expects SLOT=MAPSPEC, got {item!r}")
        out[slot.strip()] = load_map(ring, spec.strip(), ring_expr)
    return out


def _emit(report: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
        return
    for line in _flatten(report):
        out.write(line + "\n")


def _flatten(value, prefix: str = "") -> list[str]:
    if isinstance(value, dict) and value:
        lines = []
        for key in sorted(value):
            lines.extend(_flatten(value[key], f"{prefix}.{key}" if prefix else str(key)))
        return lines
    return [f"{prefix}: {json.dumps(value)}"]


# subcommands ----------------------------------------------------------------


def cmd_ring_check(args) -> int:
    ring = parse_ring_expr(args.ring)
    assoc = check_associativity(ring)
    report = {"ring": _ring_info(ring), "associative": _verdict(ring, assoc)}
    if ring.is_unital:
        report["ring"]["unity"] = ring.format(ring.one)
    if args.center:
        members = center(ring)
        report["center"] = {"size": len(members), "elements": [ring.format(a) for a in members]}
    if args.semiprime:
        report["semiprime"] = _verdict(ring, is_semiprime(ring))
    if args.prime:
        report["prime"] = _verdict(ring, is_prime(ring))
    if args.torsion is not None:
        report[f"{args.torsion}-torsion free"] = _verdict(ring, is_k_torsion_free(ring, args.torsion))
    _emit(report, args.json)
    return EXIT_OK if assoc.holds else EXIT_FAIL


def cmd_solve(args) -> int:
    ring = parse_ring_expr(args.ring)
    law = get_law(args.identity)
    bindings = _bindings(ring, args.bind, args.ring)
    space = solve_identity(ring, law, bindings, enum_cap=args.enumerate_cap)
    report = {"ring": _ring_info(ring), "bindings": {s: T.rows() for s, T in sorted(bindings.items())}}
    report.update(space.to_dict())
    if args.members:
        report["members"] = [T.rows() for T in space.members()]
    code = EXIT_OK
    if args.verify_sufficiency:
        suff = verify_sufficiency(ring, law, bindings, space, workers=args.jobs)
        report["sufficiency"] = {"sound": suff.sound, "complete": suff.complete, "detail": suff.detail}
        code = EXIT_OK if suff else EXIT_FAIL
    _emit(report, args.json)
    return code


_PREDICATES = {
    "left": (is_left_centralizer, "left"),
    "right": (is_right_centralizer, "right"),
    "two_sided": (is_two_sided_centralizer, "two-sided"),
    "jordan_left": (is_jordan_left, "jordan-left"),
    "jordan_right": (is_jordan_right, "jordan-right"),
}


def cmd_check_map(args) -> int:
    ring = parse_ring_expr(args.ring)
    T = load_map(ring, args.map, args.ring)
    bindings = _bindings(ring, args.bind, args.ring)
    chosen = [name for name in (*_PREDICATES, "scalar") if getattr(args, name)]
    if not chosen and not args.identity:
        chosen = [*_PREDICATES, "scalar"]
    report: dict = {"ring": _ring_info(ring), "map": T.rows()}
    for name in chosen:
        key = name.replace("_", "-")
        if name == "scalar":
            alpha = is_scalar_form(ring, T) if ring.is_unital else None
            report["scalar-form"] = {"holds": alpha is not None, "alpha": None if alpha is None else ring.format(alpha)}
            continue
        fast, prop = _PREDICATES[name]
        v = exhaustive_check(ring, T, prop) if args.exhaustive else fast(ring, T)
        entry = _verdict(ring, v)
        if not v.holds and name in ("left", "two_sided") and len(v.witness) == 2:
            x, y = v.witness
            entry["T(xy)"] = ring.format(apply(ring, T, ring.mul(x, y)))
            entry["T(x)y"] = ring.format(ring.mul(apply(ring, T, x), y))
        report[key] = entry
    for key in args.identity or []:
        law = get_law(key)
        entry = {"identity": format_law(law), "holds": satisfies(ring, law, T, bindings)}
        if not entry["holds"]:
            try:
                v = find_violation(ring, law, T, bindings)
                entry["witness"] = None if v.holds else {n: ring.format(e) for n, e in v.witness[1].items()}
            except BudgetExceeded:
                entry["witness"] = None
        report.setdefault("identities", {})[key] = entry
    _emit(report, args.json)
    return EXIT_OK


def cmd_verify_all(args) -> int:
    campaigns = select(load_manifest(args.manifest), args.filter)
    if not campaigns:
        raise UsageError(f"no campaign matches {args.filter!r}")
    results = run_campaigns(campaigns, jobs=args.jobs)
    report = build_report(results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.campaign.id}: {r.campaign.summary} ({r.duration_ms:.0f} ms)")
        if r.error:
            print(f"    error: {r.error}")
        for c in r.checks:
            if args.verbose or not c.passed:
                mark = "ok " if c.passed else "BAD"
                print(f"    {mark} {c.name}: expected {json.dumps(c.expected)}, observed {json.dumps(c.observed)}")
    s = report["summary"]
    print(f"{s['passed']}/{s['total']} campaigns passed")
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(canonical_json(report))
    return EXIT_OK if s["failed"] == 0 else EXIT_FAIL


def cmd_catalog(args) -> int:
    catalog = {key: format_law(law) for key, law in builtin_identities().items()}
    if args.json:
        print(json.dumps(catalog, sort_keys=True, indent=2))
    else:
        width = max(map(len, catalog))
        for key, text in catalog.items():
            print(f"{key:<{width}}  {text}")
    return EXIT_OK


# parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="centralizers", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress and list passing checks")
    sub = parser.add_subparsers(dest="command", required=True)

    ring = sub.add_parser("ring", help="ring-level checks")
    ring_sub = ring.add_subparsers(dest="ring_command", required=True)
    check = ring_sub.add_parser("check", help="validate a ring and evaluate predicates")
    check.add_argument("ring", help="ring expression, e.g. M:2:Zn:9, TRI:Zn:2 or @ring.json")
    check.add_argument("--center", action="store_true", help="list the center")
    check.add_argument("--semiprime", action="store_true")
    check.add_argument("--prime", action="store_true")
    check.add_argument("--torsion", type=int, metavar="M", help="decide M-torsion freeness")
    check.add_argument("--json", action="store_true", help="print the report as JSON")
    check.set_defaults(func=cmd_ring_check)

    solve = sub.add_parser("solve", help="solve an identity for its unknown additive map")
    solve.add_argument("ring")
    solve.add_argument("identity", help="catalog key, mn-jordan(m,n), or identity text")
    solve.add_argument("--bind", action="append", metavar="SLOT=MAPSPEC", help="bind a known map slot")
    solve.add_argument("--verify-sufficiency", action="store_true", help="cross-check against brute force")
    solve.add_argument("--enumerate-cap", type=int, metavar="N", help="classify at most N solutions")
    solve.add_argument("--members", action="store_true", help="list every solution")
    solve.add_argument("--jobs", type=int, default=1, help="worker processes for brute force")
    solve.add_argument("--json", action="store_true")
    solve.set_defaults(func=cmd_solve)

    cm = sub.add_parser("check-map", help="evaluate predicates on one additive map")
    cm.add_argument("ring")
    cm.add_argument("map", help="JSON matrix file, inline JSON, builtin:<name> or scalar:<element>")
    cm.add_argument("--identity", action="append", metavar="KEY", help="check a catalog identity (repeatable)")
    cm.add_argument("--bind", action="append", metavar="SLOT=MAPSPEC")
    for name, (_, prop) in _PREDICATES.items():
        cm.add_argument(f"--{prop}", dest=name, action="store_true")
    cm.add_argument("--scalar", action="store_true", help="test for the form x -> alpha x")
    cm.add_argument("--exhaustive", action="store_true", help="check predicates on all elements")
    cm.add_argument("--json", action="store_true")
    cm.set_defaults(func=cmd_check_map)

    va = sub.add_parser("verify-all", help="run the bundled campaigns")
    va.add_argument("--filter", help="campaign id, glob, or id prefix")
    va.add_argument("--json", metavar="OUT", help="write the canonical report here")
    va.add_argument("--jobs", type=int, default=1, help="run campaigns in parallel")
    va.add_argument("--manifest", help="alternative campaign manifest")
    va.set_defaults(func=cmd_verify_all)

    cat = sub.add_parser("catalog", help="list built-in identities")
    cat.add_argument("--json", action="store_true")
    cat.set_defaults(func=cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, RingExprError, IdentitySyntaxError, DegreeError, UnboundSlotError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
