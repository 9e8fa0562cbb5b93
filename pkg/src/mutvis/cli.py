"""Command-line front end.

Standard output carries exactly one report; logging goes to standard error.
Exit codes: 0 complete, 1 error (or failed check), 2 a solve timed out.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import __version__
from .constructions import complete as complete_graph
from .constructions import parse_family
from .graph import GraphError, all_pairs_distances, cartesian_product
from .io import read_graph, to_edge_list, to_graph6, write_graph
from .solvers import bounds_mu, default_timeout, solve
from .theorems import CLAIMS, run_checks
from .visibility import is_mv_set
from .zarankiewicz import (
    ZInstance,
    erdos_window,
    format_matrix,
    is_2x2_free,
    kst_upper,
    matrix_to_mv_set,
    mv_set_to_matrix,
    projective_lower,
    z_exact,
)

log = logging.getLogger("mutvis")

PROBLEMS = ("mu", "mu_i", "alpha", "gp")


class CliError(Exception):
    pass


def _positive(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mutvis", description="Exact mutual-visibility toolkit.")
    parser.add_argument("--version", action="version", version=f"mutvis {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("json", "csv", "text")):
        p.add_argument("--format", choices=formats, default="json")
        p.add_argument(
            "--timeout", type=_positive, default=None,
            help="seconds per solve (default: $MUTVIS_TIMEOUT_SECS or 60)",
        )
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--timing", action="store_true", help="include node counts and timings")

    p = sub.add_parser("compute", help="compute mu, mu_i, alpha, gp of one graph")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="graph file (.g6 is graph6, otherwise edge list)")
    src.add_argument("--generate", metavar="SPEC", help="family spec, e.g. cycle:8")
    p.add_argument("--input-format", choices=("graph6", "edgelist"))
    p.add_argument("--mu", action="store_true")
    p.add_argument("--mu-i", dest="mu_i", action="store_true")
    p.add_argument("--alpha", action="store_true")
    p.add_argument("--gp", action="store_true")
    common(p)

    p = sub.add_parser("generate", help="write a named graph")
    p.add_argument("spec")
    p.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    p.add_argument("--output", help="file to write (default stdout)")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("z", help="Zarankiewicz number z(m, n; s, t)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--crosscheck-mu", action="store_true", help="compare with mu(K_m x K_n)")
    common(p, formats=("json", "text"))

    p = sub.add_parser("check", help="verify registered claims")
    p.add_argument("claims", nargs="*")
    p.add_argument("--all", action="store_true")
    p.add_argument("--max-n", type=int, default=None)
    common(p, formats=("json", "text"))
    return parser


def _envelope(command: str, config: dict) -> dict:
    return {"tool": "mutvis", "version": __version__, "command": command, "config": config}


def _resolved(args, keys) -> dict:
    # workers changes scheduling only, so it stays out of the byte-stable report.
    return {k: getattr(args, k) for k in keys}


def cmd_compute(args) -> tuple[str, int]:
    problems = [p for p in PROBLEMS if getattr(args, p)] or list(PROBLEMS)
    if args.input:
        G = read_graph(args.input, args.input_format)
        source = {"input": args.input}
    else:
        G = parse_family(args.generate, args.seed)
        source = {"generate": args.generate}
    D = all_pairs_distances(G)
    config = {**source, **_resolved(args, ["timeout", "seed", "format"]), "problems": problems}
    report = _envelope("compute", config)
    report["graph"] = {"n": G.n, "m": G.m, "diam": D.diam, "graph6": to_graph6(G)}
    results = {}
    complete = True
    for p in problems:
        res = solve(G, p, timeout=args.timeout, workers=args.workers, D=D)
        log.info("%s = %d (%s)", p, res.value, "complete" if res.complete else "incomplete")
        results[p] = res.to_dict(stats=args.timing)
        complete &= res.complete
    report["results"] = results
    report["bounds"] = bounds_mu(G).to_dict()

    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["quantity", "value", "complete", "witness"])
        for p, r in results.items():
            w.writerow([p, r["value"], r["complete"], " ".join(map(str, r["witness"]))])
        text = buf.getvalue()
    else:
        lines = [f"graph: n={G.n} m={G.m} diam={D.diam} graph6={to_graph6(G)}"]
        for p, r in results.items():
            flag = "" if r["complete"] else " (incomplete)"
            lines.append(f"{p} = {r['value']}{flag}  witness {r['witness']}")
        b = report["bounds"]
        lines.append(f"bounds on mu: {b['lower']} <= mu <= {b['upper']}")
        text = "\n".join(lines) + "\n"
    return text, 0 if complete else 2


def cmd_generate(args) -> tuple[str, int]:
    G = parse_family(args.spec, args.seed)
    if args.output:
        write_graph(G, args.output, args.format)
        log.info("wrote %r (n=%d, m=%d) to %s", args.spec, G.n, G.m, args.output)
        return "", 0
    return (to_graph6(G) + "\n" if args.format == "graph6" else to_edge_list(G)), 0


def cmd_z(args) -> tuple[str, int]:
    inst = ZInstance(args.m, args.n, args.s, args.t)
    config = _resolved(args, ["m", "n", "s", "t", "crosscheck_mu", "timeout", "format"])
    res = z_exact(inst, timeout=args.timeout)
    report = _envelope("z", config)
    report["value"] = res.value
    report["complete"] = res.complete
    report["witness"] = format_matrix(res.witness)
    bounds = {}
    if inst.s > 1 and inst.t > 1:
        bounds["kst_upper"] = kst_upper(inst)
    if inst.s * inst.t > 1:
        bounds["projective_lower"] = projective_lower(inst)
    if inst.m == inst.n and (inst.s, inst.t) == (2, 2):
        lo, hi = erdos_window(inst.n)
        bounds["erdos_window"] = {"lower": lo, "upper": hi}
    report["bounds"] = bounds
    complete = res.complete
    if args.crosscheck_mu:
        if (inst.s, inst.t) != (2, 2) or min(inst.m, inst.n) < 2:
            raise CliError("--crosscheck-mu needs s = t = 2 and m, n >= 2")
        G, lab = cartesian_product(complete_graph(inst.m), complete_graph(inst.n))
        mu = solve(G, "mu", timeout=args.timeout, workers=args.workers)
        witness_set = matrix_to_mv_set(res.witness, lab)
        report["crosscheck"] = {
            "mu": mu.value,
            "equal": mu.value == res.value,
            "z_witness_is_mv": is_mv_set(G, witness_set),
            "mu_witness_is_2x2_free": is_2x2_free(mv_set_to_matrix(mu.witness, lab)),
        }
        complete &= mu.complete
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        lines = [f"z({inst.m},{inst.n};{inst.s},{inst.t}) = {res.value}"]
        lines += ["  " + row for row in report["witness"]]
        lines += [f"{k}: {v}" for k, v in bounds.items()]
        if "crosscheck" in report:
            lines.append(f"crosscheck: {report['crosscheck']}")
        text = "\n".join(lines) + "\n"
    return text, 0 if complete else 2


def cmd_check(args) -> tuple[str, int]:
    ids = list(CLAIMS) if args.all else args.claims
    if not ids:
        raise CliError(f"name claim ids or pass --all; valid ids: {', '.join(CLAIMS)}")
    unknown = [c for c in ids if c not in CLAIMS]
    if unknown:
        raise CliError(f"unknown claim id(s): {', '.join(unknown)}; valid ids: {', '.join(CLAIMS)}")
    scale = {"max_n": args.max_n, "seed": args.seed}
    reports = run_checks(ids, workers=args.workers, timeout=args.timeout, **scale)
    config = {"claims": ids, **_resolved(args, ["max_n", "timeout", "seed", "format"])}
    out = _envelope("check", config)
    out["reports"] = [r.to_dict(timing=args.timing) for r in reports]
    ok = all(r.status in ("pass", "skipped") for r in reports)
    out["status"] = "pass" if ok else "fail"
    if args.format == "json":
        text = json.dumps(out, indent=2) + "\n"
    else:
        lines = [
            f"{r.claim_id:18s} {r.status:8s} instances={r.instances_checked} failures={len(r.failures)}"
            + (f" ({r.reason})" if r.reason else "")
            for r in reports
        ]
        text = "\n".join(lines) + "\n"
    return text, 0 if ok else 1


COMMANDS = {"compute": cmd_compute, "generate": cmd_generate, "z": cmd_z, "check": cmd_check}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if getattr(args, "timeout", "absent") is None:
        args.timeout = default_timeout()
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return 1
    try:
        text, code = COMMANDS[args.command](args)
    except (CliError, GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
