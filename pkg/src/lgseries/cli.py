"""Batch command-line front end.

Every subcommand reads flags (optionally seeded from a JSON config file;
flags win), runs one experiment, and writes a schema-versioned JSON or CSV
report.  Identical inputs produce byte-identical reports.  Exit codes:
0 success, 2 invalid input, 3 enumeration budget exceeded, 4 a verification
command found a property violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional

from . import chains, ramification, series
from .fields import PrimeField
from .linalg import BudgetError, Subspace

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_VIOLATION = 4

SCHEMA_VERSION = 1


def _emit(report: dict, args) -> None:
    fmt = getattr(args, "format", "json") or "json"
    if fmt == "csv":
        text = _to_csv(report)
    else:
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _to_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    if "signatures" in report:
        writer.writerow(["f_ranks", "g_ranks", "count"])
        for sig, cnt in report["signatures"]:
            writer.writerow([" ".join(map(str, sig[0])),
                             " ".join(map(str, sig[1])), cnt])
    elif "vanishing" in report:
        writer.writerow(["point", "j", "a_j", "alpha_j"])
        for j, (a, al) in enumerate(zip(report["vanishing"],
                                        report["ramification"])):
            writer.writerow([report["point"], j, a, al])
    else:
        writer.writerow(sorted(report))
        writer.writerow([json.dumps(report[k], sort_keys=True)
                         for k in sorted(report)])
    return buf.getvalue()


def _fail(message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": message}, sort_keys=True) + "\n")
    return code


def _chain_from_args(args) -> chains.LinkedChain:
    kind = args.kind
    if kind == "standard":
        return chains.make_standard_chain(args.n, args.dim, args.d1, args.s,
                                          args.p, r=args.rank)
    if kind == "section":
        return series.build_section_chain(args.degree, args.p, args.rank + 1)
    if kind == "file":
        with open(args.chain_file) as fh:
            return chains.LinkedChain.from_dict(json.load(fh))
    raise ValueError("unknown chain kind %r" % kind)


def _add_chain_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", choices=["standard", "section", "file"],
                   default="standard",
                   help="standard projection chain, nodal-curve section "
                        "chain, or a chain serialized to JSON")
    p.add_argument("--n", type=int, default=2, help="levels (standard kind)")
    p.add_argument("--dim", type=int, default=2, help="ambient dimension "
                   "(standard kind)")
    p.add_argument("--d1", type=int, default=1,
                   help="forward projection rank (standard kind, s = 0)")
    p.add_argument("--s", type=int, default=0, help="the chain scalar")
    p.add_argument("--p", type=int, default=2, help="field characteristic")
    p.add_argument("--degree", type=int, default=2,
                   help="curve degree (section kind)")
    p.add_argument("--rank", type=int, default=1,
                   help="subspace dimension (standard kind) or series "
                        "projective dimension r (section kind)")
    p.add_argument("--chain-file", help="JSON chain (file kind)")


def _add_output_flags(p: argparse.ArgumentParser, csv_ok: bool = False) -> None:
    p.add_argument("--out", help="write the report here instead of stdout")
    if csv_ok:
        p.add_argument("--format", choices=["json", "csv"], default="json")


def _parse_subspace(text: str, p: int, ambient: int) -> Subspace:
    rows = json.loads(text)
    return Subspace.from_rows(PrimeField(p), ambient, rows)


def cmd_validate_chain(args) -> int:
    chain = _chain_from_args(args)
    report = chain.as_dict()
    report.update(chains.validate_chain(chain).as_dict())
    report["schema_version"] = SCHEMA_VERSION
    _emit(report, args)
    return EXIT_OK if report["ok"] else EXIT_VIOLATION


def cmd_census(args) -> int:
    chain = _chain_from_args(args)
    rep = chains.census(chain, budget=args.budget, workers=args.workers,
                        experiments=args.experiments)
    _emit(rep.as_dict(), args)
    return EXIT_OK


def cmd_tangent(args) -> int:
    chain = _chain_from_args(args)
    if args.point_file:
        with open(args.point_file) as fh:
            pt = chains.ChainPoint.from_dict(json.load(fh))
    else:
        pts = chains.enumerate_points(chain, budget=args.budget)
        pt = None
        for idx, cand in enumerate(pts):
            if idx == args.point_index:
                pt = cand
                break
        if pt is None:
            raise ValueError("point index %d out of range" % args.point_index)
    sig = chains.signature(chain, pt)
    report = {"schema_version": SCHEMA_VERSION, "chain": chain.as_dict(),
              "point": pt.as_dict(),
              "tangent_dimension": chains.tangent_dimension(chain, pt),
              "signature": sig.as_dict(),
              "smooth_floor": chain.r * (chain.d - chain.r)}
    _emit(report, args)
    return EXIT_OK


def cmd_components_n2(args) -> int:
    d2 = args.dim - args.d1
    expected = chains.expected_component_count_n2(args.dim, args.rank,
                                                  args.d1, d2)
    admissible = list(chains.admissible_signatures_n2(args.dim, args.rank,
                                                      args.d1, d2))
    chain = chains.make_standard_chain(2, args.dim, args.d1, 0, args.p,
                                       r=args.rank)
    rep = chains.census(chain, budget=args.budget)
    observed = sorted({sig[0][0] for sig in rep.signatures})
    report = {"schema_version": SCHEMA_VERSION, "d": args.dim, "r": args.rank,
              "d1": args.d1, "d2": d2, "p": args.p,
              "expected": expected, "admissible_f_ranks": admissible,
              "observed": len(observed), "observed_f_ranks": observed,
              "match": observed == admissible}
    _emit(report, args)
    return EXIT_OK if report["match"] else EXIT_VIOLATION


def cmd_enum_lls(args) -> int:
    constraints = json.loads(args.constraints) if args.constraints else None
    pts = []
    for lsp in series.enumerate_limit_series(args.degree, args.rank, args.p,
                                             constraints=constraints,
                                             budget=args.budget):
        pts.append(lsp.as_dict())
    report = {"schema_version": SCHEMA_VERSION, "d": args.degree,
              "r": args.rank, "q": args.p, "count": len(pts), "points": pts}
    _emit(report, args)
    return EXIT_OK


def cmd_fr_image(args) -> int:
    rep = series.fr_image_report(args.degree, args.rank, args.p,
                                 budget=args.budget)
    _emit(rep.as_dict(), args)
    return EXIT_OK if rep.equal else EXIT_VIOLATION


def _pair_from_args(args) -> series.EHPair:
    ambient = args.degree + 1
    vy = _parse_subspace(args.vy, args.p, ambient)
    vz = _parse_subspace(args.vz, args.p, ambient)
    return series.EHPair.from_subspaces(vy, vz, args.degree)


def cmd_reconstruct(args) -> int:
    pair = _pair_from_args(args)
    lsp = series.reconstruct_refined(pair)
    report = {"schema_version": SCHEMA_VERSION, "pair": pair.as_dict(),
              "point": lsp.as_dict()}
    _emit(report, args)
    return EXIT_OK


def cmd_lift_crude(args) -> int:
    pair = _pair_from_args(args)
    lsp = series.lift_crude(pair)
    report = {"schema_version": SCHEMA_VERSION, "pair": pair.as_dict(),
              "point": lsp.as_dict()}
    _emit(report, args)
    return EXIT_OK


def cmd_plucker(args) -> int:
    v = _parse_subspace(args.basis, args.p, args.degree + 1)
    points = None
    if args.points:
        points = [p if p == "inf" else int(p) for p in args.points.split(",")]
    cert = ramification.plucker_check(v, degree=args.degree, genus=args.genus,
                                      points=points)
    _emit(cert.as_dict(), args)
    if cert.separable and cert.found_weight > cert.bound:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_vanishing(args) -> int:
    v = _parse_subspace(args.basis, args.p, args.degree + 1)
    point = ramification.INFINITY if args.point == "inf" else int(args.point)
    data = ramification.vanishing_sequence(v, point, degree=args.degree)
    report = data.as_dict()
    report["schema_version"] = SCHEMA_VERSION
    _emit(report, args)
    return EXIT_OK


def cmd_rho(args) -> int:
    alphas = json.loads(args.alphas) if args.alphas else []
    value = ramification.rho(args.genus, args.rank, args.degree, alphas)
    report = {"schema_version": SCHEMA_VERSION, "genus": args.genus,
              "r": args.rank, "d": args.degree, "alphas": alphas, "rho": value}
    _emit(report, args)
    return EXIT_OK


def cmd_dual_probe(args) -> int:
    rep = series.dual_probe(args.p)
    _emit(rep.as_dict(), args)
    ok = (rep.linked_over_dual and rep.first_order_sum >= rep.d - 1)
    return EXIT_OK if ok else EXIT_VIOLATION


def _build_parser(config: Optional[dict] = None) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lgseries",
        description="Deterministic censuses and certificates for linked "
                    "subspace chains and nodal-curve limit linear series.")
    parser.add_argument("--config", help="JSON file of flag defaults "
                        "(explicit flags override it)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, chain_flags=False, budget=False, csv_ok=False):
        p = sub.add_parser(name)
        if chain_flags:
            _add_chain_flags(p)
        if budget:
            p.add_argument("--budget", type=int, required=True,
                           help="max candidate subspaces to examine")
        _add_output_flags(p, csv_ok=csv_ok)
        p.set_defaults(func=fn)
        return p

    add("validate-chain", cmd_validate_chain, chain_flags=True)

    p = add("census", cmd_census, chain_flags=True, budget=True, csv_ok=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--experiments", action="store_true",
                   help="attach the signature-adjacency graph")

    p = add("tangent", cmd_tangent, chain_flags=True, budget=True)
    p.add_argument("--point-index", type=int, default=0,
                   help="index into the deterministic point stream")
    p.add_argument("--point-file", help="JSON chain point")

    p = add("components-n2", cmd_components_n2, budget=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--d1", type=int, required=True)
    p.add_argument("--p", type=int, default=2)

    p = add("enum-lls", cmd_enum_lls, budget=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--constraints", help="JSON list of vanishing bounds")

    p = add("fr-image", cmd_fr_image, budget=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--p", type=int, required=True)

    for name, fn in (("reconstruct", cmd_reconstruct),
                     ("lift-crude", cmd_lift_crude)):
        p = add(name, fn)
        p.add_argument("--degree", type=int, required=True)
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--vy", required=True,
                       help="JSON rows of the y-aspect basis")
        p.add_argument("--vz", required=True,
                       help="JSON rows of the z-aspect basis")

    p = add("plucker", cmd_plucker)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--basis", required=True, help="JSON coefficient rows")
    p.add_argument("--points", help="comma list of points, e.g. 0,1,inf "
                   "(default: all rational points and inf)")

    p = add("vanishing", cmd_vanishing, csv_ok=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--basis", required=True)
    p.add_argument("--point", required=True, help="a field value or inf")

    p = add("rho", cmd_rho)
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--alphas", help="JSON list of ramification sequences")

    p = add("dual-probe", cmd_dual_probe)
    p.add_argument("--p", type=int, required=True)

    if config:
        for action_parser in sub.choices.values():
            known = {a.dest for a in action_parser._actions}
            action_parser.set_defaults(
                **{k: v for k, v in config.items() if k in known})
            for action in action_parser._actions:
                if action.dest in config:
                    action.required = False
    return parser


def main(argv: Optional[list] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    config = None
    if "--config" in argv:
        idx = argv.index("--config")
        try:
            with open(argv[idx + 1]) as fh:
                config = json.load(fh)
        except (IndexError, OSError, json.JSONDecodeError) as exc:
            return _fail("cannot read config: %s" % exc, EXIT_INVALID)
    parser = _build_parser(config)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BudgetError as exc:
        return _fail(str(exc), EXIT_BUDGET)
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        return _fail(str(exc), EXIT_INVALID)


if __name__ == "__main__":
    sys.exit(main())
