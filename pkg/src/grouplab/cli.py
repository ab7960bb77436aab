"""Command line front end.

Exit codes: 0 on success, 1 when a check fails or groups mismatch, 2 for
usage and validation errors.  All output is deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .catalog import (
    CATALOG_ENV,
    catalog_counts,
    catalog_problems,
    curated_catalog,
    enumerate_groups_of_order,
    load_catalog,
)
from .classify import lambda_of_spec, suite_of_spec, verify_theorem
from .construct import build, parse_group_spec, spec_text
from .core import Group, are_isomorphic, format_group, read_group
from .covers import max_irredundant_size, maximal_cyclic_cover, min_cover_size
from .errors import GroupLabError, SigmaBudgetError

__all__ = ["main"]


def _load_input(arg: str) -> tuple[str, Group]:
    """Treat the argument as an exchange-format file if one exists there,
    otherwise as a spec string."""
    if os.path.exists(arg):
        return arg, read_group(arg)
    spec = parse_group_spec(arg)
    return spec_text(spec), build(spec)


def _emit(args, text_lines, payload) -> None:
    if args.quiet:
        return
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _map_specs(fn, specs, jobs):
    if jobs > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, specs))
    return [fn(s) for s in specs]


# -- command handlers -------------------------------------------------------------


def _cmd_build(args) -> int:
    name, G = _load_input(args.group)
    text = format_group(G)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        return 0
    _emit(args, [text.rstrip("\n")],
          {"group": name, "order": G.order, "table": [list(r) for r in G.table]})
    return 0


def _cmd_lambda(args) -> int:
    lines, payload = [], []
    for arg in args.group:
        name, G = _load_input(arg)
        lam = max_irredundant_size(G)
        lines.append(f"{name}\t{lam}")
        payload.append({"group": name, "order": G.order, "invariant": lam})
    _emit(args, lines, payload)
    return 0


def _cmd_sigma(args) -> int:
    lines, payload = [], []
    for arg in args.group:
        name, G = _load_input(arg)
        try:
            got = min_cover_size(G, budget=args.budget)
        except SigmaBudgetError as exc:
            print(f"{name}: {exc} (bracket {exc.lower}..{exc.upper})", file=sys.stderr)
            return 1
        shown = "infinite" if got == math.inf else got
        lines.append(f"{name}\t{shown}")
        payload.append({"group": name, "order": G.order, "invariant": shown})
    _emit(args, lines, payload)
    return 0


def _cmd_covers(args) -> int:
    name, G = _load_input(args.group)
    cov = maximal_cyclic_cover(G)
    lines = [f"group {name} order {G.order}", f"parts {len(cov.parts)}"]
    parts = [list(p) for p in cov.parts]
    lines.extend(" ".join(str(x) for x in part) for part in parts)
    lines.append(f"covers {'true' if cov.covers else 'false'}")
    lines.append(f"irredundant {'true' if cov.irredundant else 'false'}")
    _emit(args, lines, {
        "group": name,
        "order": G.order,
        "parts": parts,
        "covers": cov.covers,
        "irredundant": cov.irredundant,
    })
    return 0


def _cmd_iso(args) -> int:
    name_a, A = _load_input(args.left)
    name_b, B = _load_input(args.right)
    iso = are_isomorphic(A, B)
    if iso is None:
        _emit(args, ["not isomorphic"],
              {"left": name_a, "right": name_b, "isomorphic": False, "map": None})
        return 1
    _emit(args, ["isomorphic", " ".join(str(v) for v in iso.forward)],
          {"left": name_a, "right": name_b, "isomorphic": True,
           "map": list(iso.forward)})
    return 0


def _cmd_enumerate(args) -> int:
    classes = enumerate_groups_of_order(args.order)
    try:
        catalog = [e for e in load_catalog(args.catalog) if e.order == args.order]
    except GroupLabError:
        catalog = []
    lines = [f"order {args.order} classes {len(classes)}"]
    payload = []
    for G in classes:
        match = next(
            (e.spec for e in catalog if are_isomorphic(G, e.group) is not None),
            None,
        )
        lines.append(f"{G.label}\t{match or '-'}")
        payload.append({"label": G.label, "order": args.order, "spec": match})
    _emit(args, lines, payload)
    return 0


def _cmd_catalog(args) -> int:
    if args.check:
        problems = catalog_problems(load_catalog(args.catalog))
        counts = catalog_counts(args.catalog)
        seen: dict[int, int] = {}
        for e in load_catalog(args.catalog):
            seen[e.order] = seen.get(e.order, 0) + 1
        for order, want in sorted(counts.items()):
            have = seen.get(order, 0)
            if have != want:
                problems.append(f"order {order}: {have} entries, count record says {want}")
        if problems:
            _emit(args, problems, {"ok": False, "problems": problems})
            return 1
        _emit(args, ["catalog ok"], {"ok": True, "problems": []})
        return 0
    entries = load_catalog(args.catalog)
    if args.max_order is not None:
        entries = curated_catalog(args.max_order, path=args.catalog)
    lines = [f"{e.order}\t{e.spec}\t{e.name}" for e in entries]
    _emit(args, lines,
          [{"order": e.order, "spec": e.spec, "name": e.name} for e in entries])
    return 0


def _cmd_verify(args) -> int:
    if not args.theorem or "all" in args.theorem:
        gaps = [1, 2, 3, 4, 5]
    else:
        gaps = sorted({int(v) for v in args.theorem})
    entries = curated_catalog(args.max_order, path=args.catalog)
    reports = [
        verify_theorem(t, args.max_order, entries=entries, catalog_path=args.catalog)
        for t in gaps
    ]
    lines = [f"checked catalog groups of order 2..{args.max_order}"]
    for r in reports:
        mark = "PASS" if r.passed else "FAIL"
        lines.append(
            f"t={r.theorem} {mark} ({len(r.expected)} expected, {len(r.found)} found)"
        )
        for s in r.missing:
            lines.append(f"  missing {s}")
        for s in r.extraneous:
            lines.append(f"  extraneous {s}")
    if args.report_dir:
        detail_rows = _map_specs(lambda_of_spec, [e.spec for e in entries], args.jobs)
        from .report import write_verify_artifacts

        for path in write_verify_artifacts(args.report_dir, detail_rows, reports):
            lines.append(f"wrote {path}")
    _emit(args, lines, [r.to_json() for r in reports])
    return 0 if all(r.passed for r in reports) else 1


def _cmd_props(args) -> int:
    entries = curated_catalog(args.max_order, path=args.catalog)
    results = _map_specs(suite_of_spec, [e.spec for e in entries], args.jobs)
    lines = []
    bad = 0
    for spec, checks in results:
        for c in checks:
            if not c.holds:
                bad += 1
                lines.append(f"FAIL {spec} {c.name}: {c.detail}")
    lines.append(
        f"checked {len(results)} groups: "
        + ("all properties hold" if not bad else f"{bad} violations")
    )
    if args.report_dir:
        from .report import write_props_artifacts

        for path in write_props_artifacts(args.report_dir, results):
            lines.append(f"wrote {path}")
    payload = [
        {
            "spec": spec,
            "checks": [
                {"name": c.name, "holds": c.holds, "detail": c.detail} for c in checks
            ],
        }
        for spec, checks in results
    ]
    _emit(args, lines, payload)
    return 0 if not bad else 1


# -- parser wiring -----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="grouplab",
        description="Finite group tables, subgroup covers, and their invariants.",
    )
    top.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                     help="worker processes for catalog-wide commands")
    top.add_argument("--quiet", action="store_true", help="suppress stdout")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("build", help="materialise a group table from a spec")
    p.add_argument("group", help="spec string or exchange-format file")
    p.add_argument("-o", "--output", help="write the table here instead of stdout")
    common(p)
    p.set_defaults(fn=_cmd_build)

    p = sub.add_parser("lambda", help="max irredundant cover size")
    p.add_argument("group", nargs="+")
    common(p)
    p.set_defaults(fn=_cmd_lambda)

    p = sub.add_parser("sigma", help="minimum proper-subgroup cover size")
    p.add_argument("group", nargs="+")
    p.add_argument("--budget", type=float, default=None,
                   help="seconds before giving up with a bracket")
    common(p)
    p.set_defaults(fn=_cmd_sigma)

    p = sub.add_parser("covers", help="show the maximal cyclic cover")
    p.add_argument("group")
    common(p)
    p.set_defaults(fn=_cmd_covers)

    p = sub.add_parser("iso", help="test two groups for isomorphism")
    p.add_argument("left")
    p.add_argument("right")
    common(p)
    p.set_defaults(fn=_cmd_iso)

    p = sub.add_parser("enumerate", help="all groups of one order, up to isomorphism")
    p.add_argument("order", type=int)
    p.add_argument("--catalog", default=None, help="catalog file for naming matches")
    common(p)
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("catalog", help="list or check the shipped catalog")
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--check", action="store_true")
    p.add_argument("--catalog", default=None,
                   help=f"alternate catalog file (or set {CATALOG_ENV})")
    common(p)
    p.set_defaults(fn=_cmd_catalog)

    p = sub.add_parser("verify", help="check the classification lists")
    p.add_argument("--max-order", type=int, default=24)
    p.add_argument("--theorem", action="append",
                   choices=("1", "2", "3", "4", "5", "all"),
                   help="gap to check; repeatable; default is all of them")
    p.add_argument("--catalog", default=None)
    p.add_argument("--report-dir", default=None,
                   help="also write details.csv and figures here")
    common(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("props", help="run the structural property suite")
    p.add_argument("--max-order", type=int, default=24)
    p.add_argument("--catalog", default=None)
    p.add_argument("--report-dir", default=None,
                   help="also write props.csv and figures here")
    common(p)
    p.set_defaults(fn=_cmd_props)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except GroupLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
