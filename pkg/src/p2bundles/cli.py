"""Command-line interface.

Exit codes: 0 when the verdict is true or the command succeeded, 1 when
the verdict is false (a witness is printed), 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import verify as sweeps
from .plotting import ascii_grid, write_support_svg, write_sweep_figure
from .quiver import EnumerationBoundError, Rectangle, enumerate_staircases, staircase_count, support_of_schur
from .resolution import (
    ElementarySpec,
    SpecError,
    classify_1regular,
    classify_fibomsem,
    classify_pinco,
    cokernel_invariants,
    dominance_failure,
    load_spec,
    map_defect,
)
from .schur import Partition3, dim3, dual, pieri
from .slopecalc import is_multistable_staircase, slope_of_support

VERIFY_NAMES = (
    "murettangolo",
    "segmenti",
    "rettangoli",
    "four-terms",
    "stable",
    "regstair-facts",
    "sltensor",
    "cross-classify",
    "third-form",
    "witness",
)


class UsageError(Exception):
    pass


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def _emit(args, payload: Any, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _partition(args) -> Partition3:
    try:
        return Partition3(args.l1, args.l2, args.l3)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_dim(args) -> int:
    lam = _partition(args)
    d = dim3(lam)
    _emit(args, {"partition": list(lam.parts), "dim": d}, str(d))
    return 0


def cmd_pieri(args) -> int:
    lam = _partition(args)
    if args.s < 0:
        raise UsageError("s must be nonnegative")
    nus = pieri(lam, args.s)
    _emit(args, [list(nu.parts) for nu in nus], "\n".join(str(nu) for nu in nus))
    return 0


def cmd_dual(args) -> int:
    nu = dual(_partition(args))
    _emit(args, list(nu.parts), str(nu))
    return 0


def _schur_rect(p: int, q: int, twist: int) -> Rectangle:
    try:
        return support_of_schur(p, q, twist)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_support(args) -> int:
    rect = _schur_rect(args.p, args.q, args.twist)
    sup = rect.support()
    if args.svg:
        write_support_svg(sup, args.svg, f"S^{{{args.p},{args.q}}}V({args.twist})")
    rows = [
        {"vertex": v.label(), "l": v.l, "t": v.t, "x": v.x, "y": v.y, "mult": m, "rank": v.rank, "c1": v.c1}
        for v, m in sup.mult.items()
    ]
    if args.json:
        print(json.dumps({"h": rect.h, "k": rect.k, "anchor": rect.anchor.label(), "vertices": rows}, sort_keys=True))
    elif args.ascii:
        print(ascii_grid(sup))
    else:
        print(f"rectangle h={rect.h} k={rect.k}, top-left {rect.anchor.label()}")
        print(_table(rows, ["vertex", "x", "y", "rank", "c1"]))
    if args.svg and not args.json:
        print(f"wrote {args.svg}")
    return 0


def _table(rows: list[dict], cols: list[str]) -> str:
    widths = [max([len(c)] + [len(str(r[c])) for r in rows]) for c in cols]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
    for r in rows:
        lines.append("  ".join(str(r[c]).ljust(w) for c, w in zip(cols, widths)))
    return "\n".join(line.rstrip() for line in lines)


def _slope_payload(c1: int, rank: int, value) -> dict:
    return {"c1": c1, "rank": rank, "slope": str(value)}


def cmd_slope(args) -> int:
    if args.schur:
        p, q, t = args.schur
        mu = slope_of_support(_schur_rect(p, q, t))
    else:
        spec, _ = load_spec(args.spec)
        mu = cokernel_invariants(spec).slope
    _emit(args, _slope_payload(mu.c1, mu.rank, mu.value), str(mu))
    return 0


def cmd_check_shape(args) -> int:
    spec, _ = load_spec(args.spec)
    strict = not args.injection_only
    fail = dominance_failure(spec, strict)
    what = "admits minimal resolution" if strict else "admits injection"
    payload = {"verdict": fail is None, "check": what, "witness": str(fail) if fail else None}
    text = f"{what}: {_yes(fail is None)}" + (f"\nwitness: {fail}" if fail else "")
    _emit(args, payload, text)
    return 0 if fail is None else 1


def cmd_check_map(args) -> int:
    spec, m = load_spec(args.spec)
    if m is None:
        raise UsageError(f"{args.spec}: check-map needs an 'M' block list")
    defect = map_defect(spec, m)
    payload = {"verdict": defect is None, "witness": defect}
    text = f"valid minimal resolution map: {_yes(defect is None)}" + (f"\nwitness: {defect}" if defect else "")
    _emit(args, payload, text)
    return 0 if defect is None else 1


def parse_component(text: str) -> tuple[int, int, int]:
    """Read "100" or "1,0,0" as a component triple."""
    raw = text.strip()
    parts = raw.split(",") if "," in raw else list(raw)
    try:
        comp = tuple(int(x) for x in parts)
    except ValueError:
        raise UsageError(f"bad component {text!r}") from None
    if len(comp) != 3:
        raise UsageError(f"component {text!r} must have three entries")
    return comp  # type: ignore[return-value]


def cmd_classify(args) -> int:
    try:
        if args.pinco:
            p, q, s, *comps = args.pinco
            spec = ElementarySpec(int(p), int(q), tuple(parse_component(c) for c in comps))
            if any(sum(c) != int(s) for c in spec.components):
                raise UsageError(f"every component must have twist s = {s}")
            if args.require_stable:
                raise UsageError("--require-stable needs --one-regular")
            simple = classify_pinco(spec)
            _emit(args, {"simple": simple}, f"simple: {_yes(simple)}")
            return 0 if simple else 1
        if args.one_regular:
            p, q, *comps = args.one_regular
            spec = ElementarySpec(int(p), int(q), tuple(parse_component(c) for c in comps))
            v = classify_1regular(spec)
            _emit(args, {"simple": v.simple, "stable": v.stable, "form": v.form}, f"simple: {_yes(v.simple)}, stable: {_yes(v.stable)}")
            return 0 if (v.stable if args.require_stable else v.simple) else 1
        p, q, comps = args.general
        spec = ElementarySpec(int(p), int(q), tuple(parse_component(c) for c in comps.split(";") if c.strip()))
        if args.require_stable:
            raise UsageError("--require-stable needs --one-regular")
        rep = classify_fibomsem(spec)
        text = f"simple: {_yes(rep.simple)}"
        if rep.failed:
            text += f" (failed: {', '.join(rep.failed)})"
        _emit(args, {"simple": rep.simple, "conditions": rep.conditions}, text)
        return 0 if rep.simple else 1
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_staircases(args) -> int:
    rect = _schur_rect(args.p, args.q, args.twist)
    if args.count_only:
        n = sum(1 for _ in enumerate_staircases(rect, args.bound))
        _emit(args, {"count": n, "formula": staircase_count(rect)}, str(n))
        return 0
    rows = []
    for s in enumerate_staircases(rect, args.bound):
        mu = slope_of_support(s)
        rows.append({
            "heights": " ".join(map(str, s.heights)),
            "vertices": len(s),
            "slope": str(mu.value),
            "multistable": _yes(bool(is_multistable_staircase(s, args.bound))),
        })
    if args.json:
        print(json.dumps(rows, sort_keys=True))
    else:
        print(_table(rows, ["heights", "vertices", "slope", "multistable"]))
    return 0


def cmd_verify(args) -> int:
    if args.max < 0:
        raise UsageError("--max must be nonnegative")
    res = sweeps.SWEEPS[args.name](args.max)
    if args.report:
        out = Path(args.report)
        out.mkdir(parents=True, exist_ok=True)
        csv_path = out / f"{args.name}.csv"
        cols = sorted({k for r in res.rows for k in r})
        with open(csv_path, "w", newline="", encoding="utf-8") as fh:
            w = csv.DictWriter(fh, fieldnames=cols, lineterminator="\n")
            w.writeheader()
            for r in res.rows:
                w.writerow(r)
        write_sweep_figure(res.rows, args.name, out / f"{args.name}.svg", res.example, res.example_title)
    if args.json:
        print(json.dumps({"name": args.name, "ok": res.ok, "cases": res.cases, "failures": res.failures}, sort_keys=True))
    else:
        print(res.summary())
        for f in res.failures[:10]:
            print(f"  {f}")
        if len(res.failures) > 10:
            print(f"  ... {len(res.failures) - 10} more")
    return 0 if res.ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="p2bundles", description="Homogeneous bundles on P^2: supports, slopes and resolutions.")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (("dim", cmd_dim, "dimension of S^λ C^3"), ("dual", cmd_dual, "partition of the dual module")):
        sp = sub.add_parser(name, help=helptext)
        for part in ("l1", "l2", "l3"):
            sp.add_argument(part, type=int)
        sp.set_defaults(func=fn)
    sp = sub.add_parser("pieri", help="Pieri decomposition of S^λV ⊗ S^sV")
    for part in ("l1", "l2", "l3", "s"):
        sp.add_argument(part, type=int)
    sp.set_defaults(func=cmd_pieri)

    sp = sub.add_parser("support", help="quiver support of S^{p,q}V(twist)")
    for a in ("p", "q", "twist"):
        sp.add_argument(a, type=int)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--svg", metavar="PATH")
    g.add_argument("--ascii", action="store_true")
    sp.set_defaults(func=cmd_support)

    sp = sub.add_parser("slope", help="slope of S^{p,q}V(twist) or of a resolution's cokernel")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--schur", nargs=3, type=int, metavar=("P", "Q", "TWIST"))
    g.add_argument("--spec", metavar="FILE")
    sp.set_defaults(func=cmd_slope)

    sp = sub.add_parser("check-shape", help="does the shape start a minimal resolution")
    sp.add_argument("--spec", required=True, metavar="FILE")
    sp.add_argument("--injection-only", action="store_true")
    sp.set_defaults(func=cmd_check_shape)

    sp = sub.add_parser("check-map", help="is the block matrix a minimal resolution map")
    sp.add_argument("--spec", required=True, metavar="FILE")
    sp.set_defaults(func=cmd_check_map)

    sp = sub.add_parser("classify", help="simplicity and stability of elementary bundles")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--pinco", nargs="+", metavar="ARG", help="p q s comp...")
    g.add_argument("--one-regular", nargs="+", metavar="ARG", help="p q comp...")
    g.add_argument("--general", nargs=3, metavar="ARG", help='p q "s1,s2,s3;..."')
    sp.add_argument("--require-stable", action="store_true")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("staircases", help="staircases in the support of S^{p,q}V(twist)")
    for a in ("p", "q", "twist"):
        sp.add_argument(a, type=int)
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--bound", type=int, default=24, help="largest allowed h + k")
    sp.set_defaults(func=cmd_staircases)

    sp = sub.add_parser("verify", help="run a verification sweep")
    sp.add_argument("name", choices=VERIFY_NAMES)
    sp.add_argument("--max", type=int, default=6)
    sp.add_argument("--report", metavar="DIR", help="write NAME.csv and NAME.svg here")
    sp.set_defaults(func=cmd_verify)
    return ap


def _check_arity(args) -> None:
    if args.command == "classify":
        if args.pinco and len(args.pinco) < 4:
            raise UsageError("--pinco needs p q s and at least one component")
        if args.one_regular and len(args.one_regular) < 3:
            raise UsageError("--one-regular needs p q and at least one component")
        for vals in (args.pinco or [])[:3], (args.one_regular or [])[:2], (args.general or [])[:2]:
            for v in vals:
                try:
                    int(v)
                except ValueError:
                    raise UsageError(f"expected an integer, got {v!r}") from None


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _check_arity(args)
        return args.func(args)
    except (UsageError, SpecError, EnumerationBoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
