"""Command-line entry point; every subcommand prints sorted-key JSON on stdout.

Exit codes: 0 success, 1 verification failure, 2 usage error (JSON on stderr).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .energy import FieldSpec, ParameterPoint, enumerate_energy_forms
from .groundstate import (
    MIN_SCOPES,
    PeriodicConfiguration,
    exhaustive_ground_check,
    ground_state_region,
    is_ground_state,
)
from .paper_tables import CATALOG_IDS, paper_catalog
from .plot import parse_fix, parse_window, plot_phase_diagram, verify_svg
from .rational import parse_rational
from .regions import argmin_region, region_equal
from .theorems import THEOREMS, compare_tables, verify
from .words import FiniteTree

# options whose values may legitimately start with "-"
_VALUE_OPTIONS = {"--J", "--alpha", "--alpha1", "--alpha2", "--window", "--fix"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTIONS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _params(args) -> tuple[FieldSpec, ParameterPoint]:
    if args.J is None:
        raise UsageError("--J is required")
    J = parse_rational(args.J)
    if args.alpha is not None:
        if args.alpha1 is not None or args.alpha2 is not None:
            raise UsageError("give either --alpha or --alpha1/--alpha2, not both")
        field, alphas = FieldSpec("full"), (parse_rational(args.alpha),)
    elif args.alpha1 is not None and args.alpha2 is not None:
        field, alphas = FieldSpec("even-length"), (parse_rational(args.alpha1), parse_rational(args.alpha2))
    else:
        raise UsageError("need --alpha (constant field) or both --alpha1 and --alpha2 (even/odd field)")
    return field, ParameterPoint(J, alphas)


def _catalog(args):
    if getattr(args, "catalog", None):
        return paper_catalog(args.catalog)
    return enumerate_energy_forms(args.k, args.m, args.field_classes)


def cmd_energies(args) -> int:
    cat = _catalog(args)
    payload = cat.to_json()
    payload["count"] = len(cat)
    _emit(payload)
    return 0


def cmd_regions(args) -> int:
    cat = _catalog(args)
    indices = [args.form] if args.form else range(1, len(cat) + 1)
    rows = [{"form": i, "energy": str(cat.form(i)), "region": argmin_region(cat, i).to_json()} for i in indices]
    _emit(rows[0] if args.form else rows)
    return 0


def cmd_compare(args) -> int:
    rows = compare_tables(args.catalog)
    mismatched = [r["row"] for r in rows if not r["match"]]
    _emit({"catalog": args.catalog, "rows": rows, "mismatched_rows": mismatched, "status": "fail" if mismatched else "pass"})
    return 1 if mismatched else 0


def cmd_check(args) -> int:
    field, params = _params(args)
    config = PeriodicConfiguration.parse(args.config)
    report = is_ground_state(config, args.k, args.m, field, params, args.min_scope)
    other = "class" if args.min_scope == "all" else "all"
    other_verdict = is_ground_state(config, args.k, args.m, field, params, other).verdict
    payload = report.to_json()
    payload.update(config=config.label(), params=params.to_json(), min_scope=args.min_scope)
    if other_verdict != report.verdict:
        payload["scope_discrepancy"] = {"min_scope": other, "verdict": other_verdict}
    _emit(payload)
    return 0


def cmd_region_of(args) -> int:
    config = PeriodicConfiguration.parse(args.config)
    r = args.field_classes or (1 if config.subgroup == "full" else 2)
    field = FieldSpec.with_classes(r)
    region = ground_state_region(config, args.k, args.m, field, args.min_scope)
    other = "class" if args.min_scope == "all" else "all"
    other_region = ground_state_region(config, args.k, args.m, field, other)
    payload = {"config": config.label(), "field_classes": r, "min_scope": args.min_scope, "region": region.to_json()}
    if not region_equal(region, other_region):
        payload["scope_discrepancy"] = {"min_scope": other, "region": other_region.to_json()}
    _emit(payload)
    return 0


def cmd_verify(args) -> int:
    names = THEOREMS if args.theorem == "all" else (args.theorem,)
    reports = [verify(t) for t in names]
    payload = reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]
    _emit(payload)
    return 0 if all(r.passed for r in reports) else 1


def cmd_plot(args) -> int:
    cat = paper_catalog(args.catalog)
    window = parse_window(args.window)
    fix = parse_fix(args.fix, cat.r)
    svg, cells = plot_phase_diagram(cat, window, catalog_id=args.catalog, fix=fix)
    Path(args.out).write_text(svg)
    payload = {"out": args.out, "catalog": args.catalog, "cells": [c.to_json() for c in cells]}
    status = 0
    if args.check:
        checks = verify_svg(svg, cat, n_samples=args.check)
        payload["soundness"] = checks
        status = 0 if all(c["ok"] for c in checks) else 1
    _emit(payload)
    return status


def cmd_oracle(args) -> int:
    field, params = _params(args)
    tree = FiniteTree(args.k, args.radius)
    res = exhaustive_ground_check(tree, field, params, args.m, args.min_scope, args.cap)
    payload = res.to_json(limit=args.limit)
    payload.update(params=params.to_json(), interior_constant=res.interior_constant())
    _emit(payload)
    return 0


def _add_model(p, field_classes_default: int | None = 1):
    p.add_argument("--k", type=int, default=2, help="tree order (k+1 neighbours per vertex)")
    p.add_argument("--m", type=int, default=2, help="largest spin value")
    p.add_argument("--field-classes", type=int, choices=(1, 2), default=field_classes_default)


def _add_params(p):
    p.add_argument("--J")
    p.add_argument("--alpha", help="constant field value (p/q)")
    p.add_argument("--alpha1", help="field on even-length words (p/q)")
    p.add_argument("--alpha2", help="field on odd-length words (p/q)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sos-cayley", description="Exact ground states of the SOS model on Cayley trees.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("energies", help="enumerate the ball-energy catalog")
    _add_model(p)
    p.add_argument("--catalog", choices=CATALOG_IDS, help="list a k=m=2 catalog in published order")
    p.set_defaults(fn=cmd_energies)

    p = sub.add_parser("regions", help="argmin region of one form (or all)")
    _add_model(p)
    p.add_argument("--catalog", choices=CATALOG_IDS)
    p.add_argument("--form", type=int)
    p.set_defaults(fn=cmd_regions)

    p = sub.add_parser("compare-paper", help="compare computed regions with the published table")
    p.add_argument("--catalog", choices=CATALOG_IDS, required=True)
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("check", help="is a periodic configuration a ground state at given parameters")
    p.add_argument("--config", required=True, help="const:S or evenodd:S_even,S_odd")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--min-scope", choices=MIN_SCOPES, default="all")
    _add_params(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("region-of", help="exact ground-state region of a periodic configuration")
    p.add_argument("--config", required=True)
    _add_model(p, field_classes_default=None)
    p.add_argument("--min-scope", choices=MIN_SCOPES, default="all")
    p.set_defaults(fn=cmd_region_of)

    p = sub.add_parser("verify", help="run a theorem check")
    p.add_argument("--theorem", choices=(*THEOREMS, "all"), required=True)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("plot", help="SVG phase diagram of the argmin cells")
    p.add_argument("--catalog", choices=CATALOG_IDS, required=True)
    p.add_argument("--window", default="-1,1,-1,1", help="Jmin,Jmax,amin,amax")
    p.add_argument("--fix", help="alpha1=p/q or alpha2=p/q (two-class catalog only)")
    p.add_argument("--out", required=True)
    p.add_argument("--check", type=int, default=0, metavar="N", help="sample N points per cell to verify the plot")
    p.set_defaults(fn=cmd_plot)

    p = sub.add_parser("oracle", help="exhaustive finite-tree ground-state search")
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--min-scope", choices=MIN_SCOPES, default="all")
    p.add_argument("--cap", type=int, default=2_000_000, help="refuse trees with more configurations")
    p.add_argument("--limit", type=int, default=100, help="survivors to print")
    _add_params(p)
    p.set_defaults(fn=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_glue_negative_values(argv))
        if not getattr(args, "fn", None):
            raise UsageError("a subcommand is required")
        return args.fn(args)
    except (UsageError, ValueError) as exc:
        sys.stderr.write(json.dumps({"error": str(exc), "kind": type(exc).__name__}, sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
