"""Command-line entry point: ``transpoly {report,verify,sweep,rays,canonical}``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .canonical_type import block_type, canonical_generators_bruteforce, enumerate_M, type_report
from .cone_geometry import ConeRepresentation, build_cone
from .errors import DomainError, InconclusiveBound, ParameterError, PresentationParseError
from .exact_linalg import integer_rank
from .hilbert_ehrhart import (
    Mode,
    conjecture_check,
    hilbert_series_render,
    hilbert_summary,
    monomial_counts,
    numerator_from_values,
)
from .presentation import (
    FamilyParams,
    Presentation,
    build_family_presentation,
    enumerate_base,
    family_grid,
    read_presentation,
)
from .report import Report, render_text, summarize_generators
from .sampling import Lcg64, random_presentation
from .verification import CHECKS, run_checks, run_grid


class UsageError(Exception):
    pass


def _params_dict(p: FamilyParams) -> dict:
    return {"n": p.n, "i": p.i, "j": p.j, "case": p.case.value, "r": p.r}


def _cone_dict(cone: ConeRepresentation, with_rays: bool = True) -> dict:
    out = {
        "dimension": cone.dimension,
        "normals": [{"label": a.describe(), "coords": list(a.coords)} for a in cone.normals],
        "ray_count": len(cone.rays),
    }
    if with_rays:
        out["rays"] = [list(r) for r in cone.rays]
    return out


def _family_params(args) -> Optional[FamilyParams]:
    given = [args.n, args.i, args.j]
    if all(v is None for v in given):
        return None
    if any(v is None for v in given):
        raise UsageError("--n, --i and --j must be given together")
    return FamilyParams(args.n, args.i, args.j)


def _source(args):
    params = _family_params(args)
    pres = getattr(args, "presentation", None)
    if params is not None and pres:
        raise UsageError("give either --n/--i/--j or --presentation, not both")
    if params is None and not pres:
        raise UsageError("need --n/--i/--j or --presentation")
    return params, (read_presentation(pres) if pres else None)


def _row_dict(rep, pres: Optional[Presentation] = None) -> dict:
    row = {
        "instance": rep.instance,
        "n": rep.n,
        "r": rep.r,
        "type": rep.type_value,
        "predicted": rep.predicted,
        "status": rep.status,
        "numerator": rep.numerator,
        "detail": rep.detail,
    }
    if pres is not None:
        row["presentation"] = [list(s) for s in pres.sets()]
    return row


# --- subcommands -----------------------------------------------------------


def cmd_report(args) -> Report:
    params, pres = _source(args)
    if params is not None:
        tr = type_report(params)
        summary = hilbert_summary(params)
        rep = Report(
            command="report",
            params=_params_dict(params),
            cone=_cone_dict(build_cone(params)),
            type_value=tr.type_value,
            type_exact=block_type(params),
            a_invariant=tr.a_invariant,
            gorenstein=tr.gorenstein,
            h_values=summary.h_values,
            numerator=summary.numerator,
            hilbert_series=hilbert_series_render(summary.numerator, params.n),
            canonical=summarize_generators(enumerate_M(params).generators, args.full),
        )
        if args.verify:
            rep.oracle_checks = [c.to_dict() for c in run_checks(params, args.max_t)]
        return rep

    rep = Report(command="report", presentation=[list(s) for s in pres.sets()])
    n = pres.n
    base = enumerate_base(pres)
    checks = []
    if integer_rank(sorted(base)) < n:
        checks.append({"name": "full_dimension", "status": "skipped", "detail": "Krull dimension < n"})
        rep.oracle_checks = checks
        return rep
    cap = args.degree_cap if args.degree_cap is not None else n + 1
    try:
        gens = canonical_generators_bruteforce(pres, degree_cap=cap)
    except InconclusiveBound as exc:
        checks.append({"name": "canonical_bruteforce", "status": "skipped", "detail": str(exc)})
        rep.oracle_checks = checks
        return rep
    r = gens.min_degree
    values = monomial_counts(pres, n - r)
    rep.type_value = len(gens)
    rep.a_invariant = -r
    rep.gorenstein = len(gens) == 1
    rep.h_values = values
    rep.numerator = numerator_from_values(values, n)
    rep.hilbert_series = hilbert_series_render(rep.numerator, n)
    rep.canonical = summarize_generators(gens.generators, args.full)
    # the conjecture is not an oracle check: a failing row is a finding, not an error
    conj = conjecture_check(pres, Mode.BRUTE_FORCE, max_n=max(n, 6), degree_cap=cap)
    rep.rows = [_row_dict(conj, pres)]
    rep.oracle_checks = checks
    return rep


def cmd_verify(args) -> Report:
    if args.max_n < 3:
        raise UsageError("--max-n must be at least 3 (n >= 3 is required)")
    only = None
    if args.only:
        only = [name for item in args.only for name in item.split(",") if name]
        unknown = sorted(set(only) - set(CHECKS))
        if unknown:
            raise UsageError(f"unknown check(s) {unknown}; choose from {list(CHECKS)}")
    checks = run_grid(args.max_n, args.max_t, only, min_n=args.min_n)
    return Report(command="verify", oracle_checks=[c.to_dict() for c in checks])


def cmd_sweep(args) -> Report:
    if args.max_n < 3:
        raise UsageError("--max-n must be at least 3")
    rows = []
    modes = {
        "closed": [Mode.FAMILY_CLOSED_FORM],
        "exact": [Mode.FAMILY_EXACT],
        "both": [Mode.FAMILY_CLOSED_FORM, Mode.FAMILY_EXACT],
    }[args.family_mode]
    for mode in modes:
        for p in family_grid(args.max_n):
            rep = conjecture_check(build_family_presentation(p), mode)
            rows.append(_row_dict(rep))
    if args.random:
        sizes = args.random_n or [n for n in (4, 5) if n <= args.max_n] or [args.max_n]
        rng = Lcg64(args.seed)
        for k in range(args.random):
            n = sizes[k % len(sizes)]
            pres = random_presentation(n, rng)
            rep = conjecture_check(pres, Mode.BRUTE_FORCE, max_n=args.bruteforce_max_n, degree_cap=args.degree_cap)
            rows.append(_row_dict(rep, pres))
    report = Report(command="sweep", rows=rows)
    if args.counterexamples:
        bad = [row for row in rows if row["status"] == "fails"]
        Path(args.counterexamples).write_text(json.dumps(bad, indent=2) + "\n")
    return report


def cmd_rays(args) -> Report:
    params = _family_params(args)
    if params is None:
        raise UsageError("rays needs --n/--i/--j (facets are only computed for the family)")
    if not 0 <= args.shift < params.n:
        raise UsageError(f"--shift must be in [0, {params.n - 1}]")
    return Report(command="rays", params=_params_dict(params), cone=_cone_dict(build_cone(params, args.shift)))


def cmd_canonical(args) -> Report:
    params, pres = _source(args)
    if params is not None:
        gens = enumerate_M(params)
        rep = Report(command="canonical", params=_params_dict(params), type_value=len(gens),
                     type_exact=block_type(params),
                     a_invariant=-gens.min_degree, canonical=summarize_generators(gens.generators, args.full))
        if args.verify:
            rep.oracle_checks = [c.to_dict() for c in run_checks(params, 0, only=["type", "a_invariant"])]
        return rep
    cap = args.degree_cap if args.degree_cap is not None else pres.n + 1
    rep = Report(command="canonical", presentation=[list(s) for s in pres.sets()])
    try:
        gens = canonical_generators_bruteforce(pres, degree_cap=cap)
    except (InconclusiveBound, DomainError) as exc:
        rep.oracle_checks = [{"name": "canonical_bruteforce", "status": "skipped", "detail": str(exc)}]
        return rep
    rep.type_value = len(gens)
    rep.a_invariant = -gens.min_degree
    rep.canonical = summarize_generators(gens.generators, args.full)
    return rep


# --- parser ----------------------------------------------------------------


def _add_family(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)


def _add_output(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--full", action="store_true", help="list every canonical generator")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="transpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="type, a-invariant, Hilbert series and cone of one instance")
    _add_family(p)
    p.add_argument("--presentation", help="presentation file (brute-force report)")
    p.add_argument("--verify", action="store_true", help="also run every oracle check (family mode)")
    p.add_argument("--max-t", type=int, default=3)
    p.add_argument("--degree-cap", type=int)
    _add_output(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify", help="formula-versus-oracle checks over the family grid")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--min-n", type=int, default=3)
    p.add_argument("--max-t", type=int, default=3)
    p.add_argument("--only", action="append", help=f"restrict to checks: {', '.join(CHECKS)}")
    _add_output(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="check the type / h-vector conjecture on many instances")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--random", type=int, default=0, help="number of random general presentations")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random-n", type=int, action="append", help="sizes n for random presentations")
    p.add_argument("--degree-cap", type=int)
    p.add_argument("--bruteforce-max-n", type=int, default=6)
    p.add_argument("--family-mode", choices=["closed", "exact", "both"], default="both",
                   help="family type from the closed form, the cone block oracle, or both")
    p.add_argument("--counterexamples", help="write failing rows to this JSON file")
    _add_output(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("rays", help="facet normals and extremal rays of the family cone")
    _add_family(p)
    p.add_argument("--shift", type=int, default=0, help="rotation sigma^t of the presentation")
    _add_output(p)
    p.set_defaults(func=cmd_rays)

    p = sub.add_parser("canonical", help="minimal generators of the canonical module")
    _add_family(p)
    p.add_argument("--presentation")
    p.add_argument("--degree-cap", type=int)
    p.add_argument("--verify", action="store_true")
    _add_output(p)
    p.set_defaults(func=cmd_canonical)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except (UsageError, ParameterError, PresentationParseError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2

    sys.stdout.write(report.to_json() if args.format == "json" else render_text(report))
    if report.failed:
        first = next(c for c in report.oracle_checks if c["status"] == "fail")
        print(f"verification failed: {first['name']}: {first['detail']}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
