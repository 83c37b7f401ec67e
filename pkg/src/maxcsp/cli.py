"""Command-line interface: analyze, solve, generate, compare.

Exit codes: 0 success, 1 parse or validation error, 2 precondition error,
3 resource limit.  Every invocation with fixed arguments and seed produces
byte-identical output; wall-clock timing is only emitted with --timing.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import cnf_approx, cover_solver, fvs_solver, oracle, reductions, structure
from .errors import (
    ContractViolationError,
    MalformedInstanceError,
    MaxCspError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
)
from .formats import (
    instance_digest,
    parse_instance,
    parse_mcc,
    serialize_instance,
)
from .forest_solver import solve_forest
from .graphs import build_incidence_graph
from .model import Formula, Kind
from .report import SolveReport, fraction_str, make_report, parse_fraction

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_PRECONDITION = 2
EXIT_RESOURCE = 3

ALGORITHMS = ("oracle", "tree", "vc", "fvs-as", "cw-as", "parity-sat")
EPSILON_ALGS = {"fvs-as", "cw-as"}


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="ascii") as fh:
        return fh.read()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write(text)


def _budgeted_json(res: structure.BudgetedResult, inc) -> dict:
    if res.exceeded:
        return {"status": "exceeds-budget", "budget": res.budget, "size": None, "witness": None}
    split = inc.split(res.witness)
    return {
        "status": "ok",
        "budget": res.budget,
        "size": res.size,
        "witness": {
            "variables": sorted(split.variables),
            "constraints": sorted(split.constraints),
        },
    }


def cmd_analyze(args: argparse.Namespace) -> int:
    f = parse_instance(_read_text(args.file))
    inc = build_incidence_graph(f)
    report = structure.analyze_graph(inc.graph, args.max_vc, args.max_fvs)
    payload = {
        "instance_digest": instance_digest(f),
        "num_vars": f.num_vars,
        "num_constraints": f.num_constraints,
        "occ": f.occ,
        "nd": report.nd,
        "nd_class_sizes": sorted((len(c) for c in report.nd_partition.classes), reverse=True),
        "vc": _budgeted_json(report.vc, inc),
        "fvs": _budgeted_json(report.fvs, inc),
    }
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"variables={f.num_vars} constraints={f.num_constraints} occ={f.occ}")
        print(f"nd={report.nd}")
        for name, res in (("vc", report.vc), ("fvs", report.fvs)):
            if res.exceeded:
                print(f"{name}=exceeds-budget({res.budget})")
            else:
                print(f"{name}={res.size}")
    return EXIT_OK


def _solve_instance(f: Formula, args: argparse.Namespace) -> SolveReport:
    alg = args.alg
    if alg in EPSILON_ALGS and args.epsilon is None:
        raise PreconditionError(f"--epsilon is required for {alg}")
    if alg == "oracle":
        res = oracle.max_csp_bruteforce(f, var_limit=args.oracle_limit)
        return make_report("oracle", f, res.value, res.witness)
    if alg == "tree":
        res = solve_forest(f)
        return make_report("tree", f, res.value, res.witness)
    if alg == "vc":
        inc = build_incidence_graph(f)
        cover = structure.vertex_cover_number(inc.graph, args.max_vc)
        if cover.exceeded:
            raise ResourceLimitError(
                f"no incidence vertex cover within budget {args.max_vc}; raise --max-vc"
            )
        res = cover_solver.solve_via_vertex_cover(f, inc.split(cover.witness))
        return make_report("vc", f, res.value, res.witness)
    if alg == "fvs-as":
        inc = build_incidence_graph(f)
        fvs = structure.feedback_vertex_set(inc.graph, args.max_fvs)
        if fvs.exceeded:
            raise ResourceLimitError(
                f"no incidence feedback vertex set within budget {args.max_fvs}; raise --max-fvs"
            )
        return fvs_solver.approx_via_fvs(f, inc.split(fvs.witness), args.epsilon)
    if alg == "cw-as":
        return cnf_approx.approx_max_cnf(
            f,
            args.epsilon,
            seed=args.seed,
            trials=args.trials,
            window_exponent=args.window_exponent,
            backend_var_limit=args.oracle_limit,
        )
    if alg == "parity-sat":
        if any(c.kind is not Kind.PARITY for c in f.constraints):
            raise PreconditionError("parity-sat requires a pure PARITY instance")
        sat, witness = oracle.parity_gauss_satisfiable(f)
        value = f.num_constraints if sat else 0
        report = make_report("parity-sat", f, value, witness, satisfiable=sat)
        return report
    raise PreconditionError(f"unknown algorithm {alg!r}")


def cmd_solve(args: argparse.Namespace) -> int:
    f = parse_instance(_read_text(args.file))
    started = time.perf_counter()
    report = _solve_instance(f, args)
    report.wall_time_ms = (time.perf_counter() - started) * 1000.0
    if args.with_oracle:
        try:
            opt = oracle.max_csp_bruteforce(f, var_limit=args.oracle_limit)
            report.oracle_value = opt.value
            if opt.value > 0:
                report.ratio = Fraction(report.value, opt.value)
        except ResourceLimitError:
            report.oracle_value = None
    report.verify(f)
    if args.json:
        print(report.to_json(include_timing=args.timing))
    else:
        line = f"algorithm={report.algorithm} value={report.value}"
        if report.satisfiable is not None:
            line += f" satisfiable={str(report.satisfiable).lower()}"
        if report.route is not None:
            line += f" route={report.route}"
        if report.oracle_value is not None:
            line += f" oracle={report.oracle_value}"
            if report.ratio is not None:
                line += f" ratio={fraction_str(report.ratio)}"
        if report.witness is not None:
            line += f" witness={report.witness.bitstring()}"
        if args.timing:
            line += f" time_ms={report.wall_time_ms:.3f}"
        print(line)
    return EXIT_OK


def _mcc_from_args(args: argparse.Namespace) -> reductions.MccGraph:
    if args.graph is not None:
        return parse_mcc(_read_text(args.graph))
    if args.k is None or args.n is None:
        raise PreconditionError("either --graph or both --k and --n are required")
    if args.complete:
        return reductions.complete_mcc(args.k, args.n)
    if args.edgeless:
        return reductions.edgeless_mcc(args.k, args.n)
    if args.edge_prob is not None:
        return reductions.random_mcc(args.k, args.n, args.edge_prob, args.seed)
    raise PreconditionError("choose one of --complete, --edgeless or --edge-prob")


def cmd_generate(args: argparse.Namespace) -> int:
    kind = args.what
    comments: list[str] = [f"c generator {kind}"]
    if kind in ("mcc-cnf", "mcc-dnf", "mcc-thr"):
        g = _mcc_from_args(args)
        comments.append(f"c mcc k={g.parts} n={g.part_size} edges={len(g.edges)}")
        if kind == "mcc-cnf":
            out = reductions.mcc_to_cnf(g)
            formula = out.formula
        elif kind == "mcc-dnf":
            red = reductions.mcc_to_dnf(g)
            formula = red.formula
            comments.append(f"c target {red.target}")
            comments.append(f"c epsilon {fraction_str(red.epsilon)}")
        else:
            red = reductions.mcc_to_threshold(g)
            formula = red.formula
            fvs = " ".join(str(j) for j in red.fvs_constraints)
            comments.append(f"c fvs-witness-constraints {fvs}")
    elif kind in ("thr2maj", "cnf2maj"):
        if args.input is None:
            raise PreconditionError(f"{kind} requires --input")
        src = parse_instance(_read_text(args.input))
        formula = (
            reductions.threshold_to_majority(src)
            if kind == "thr2maj"
            else reductions.cnf_to_majority(src)
        )
    elif kind == "random":
        mix = {}
        for part in args.kinds.split(","):
            name, _, weight = part.partition("=")
            mix[name.strip()] = float(weight) if weight else 1.0
        formula = oracle.random_formula(
            args.num_vars,
            args.num_constraints,
            mix,
            (args.arity_min, args.arity_max),
            args.seed,
        )
    else:
        raise PreconditionError(f"unknown generator {kind!r}")
    text = "\n".join(comments) + "\n" + serialize_instance(formula)
    _write_text(args.output, text)
    return EXIT_OK


def _compare_task(task: tuple) -> tuple:
    """Worker for compare; module level so it can cross process boundaries."""
    path, name, alg, eps_str, seed, trials, oracle_limit = task
    f = parse_instance(_read_text(path))
    ns = argparse.Namespace(
        alg=alg,
        epsilon=eps_str,
        seed=seed,
        trials=trials,
        oracle_limit=oracle_limit,
        max_vc=structure.DEFAULT_VC_BUDGET,
        max_fvs=structure.DEFAULT_FVS_BUDGET,
        window_exponent=cnf_approx.DEFAULT_WINDOW_EXPONENT,
    )
    started = time.perf_counter()
    status = "ok"
    value: int | None = None
    try:
        report = _solve_instance(f, ns)
        value = report.value
    except PreconditionError:
        status = "error:precondition"
    except ResourceLimitError:
        status = "error:resource"
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    oracle_opt: int | str | None = None
    ratio = ""
    try:
        opt = oracle.max_csp_bruteforce(f, var_limit=oracle_limit).value
        oracle_opt = opt
        if value is not None and opt > 0:
            ratio = fraction_str(Fraction(value, opt))
    except ResourceLimitError:
        oracle_opt = "unavailable"
    return (name, alg, eps_str or "", value, oracle_opt, ratio, status, elapsed_ms)


def cmd_compare(args: argparse.Namespace) -> int:
    import os

    algs = [a.strip() for a in args.algs.split(",") if a.strip()]
    for a in algs:
        if a not in ALGORITHMS:
            raise PreconditionError(f"unknown algorithm {a!r}")
    epsilons = [
        fraction_str(parse_fraction(e.strip()))
        for e in (args.epsilons.split(",") if args.epsilons else [])
        if e.strip()
    ]
    files = sorted(
        name for name in os.listdir(args.dir) if name.endswith(".mcsp")
    )
    tasks = []
    for name in files:
        path = os.path.join(args.dir, name)
        for alg in algs:
            if alg in EPSILON_ALGS:
                if not epsilons:
                    raise PreconditionError(f"{alg} requires --epsilons")
                for eps in epsilons:
                    tasks.append((path, name, alg, eps, args.seed, args.trials, args.oracle_limit))
            else:
                tasks.append((path, name, alg, None, args.seed, args.trials, args.oracle_limit))
    if args.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_compare_task, tasks))
    else:
        rows = [_compare_task(t) for t in tasks]
    rows.sort(key=lambda r: (r[0], r[1], Fraction(r[2]) if r[2] else Fraction(-1)))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["instance", "algorithm", "epsilon", "value", "oracle_opt", "ratio", "status", "time_ms"]
    )
    for name, alg, eps, value, opt, ratio, status, elapsed in rows:
        writer.writerow(
            [
                name,
                alg,
                eps,
                "" if value is None else value,
                "" if opt is None else opt,
                ratio,
                status,
                f"{elapsed:.3f}" if args.timing else "",
            ]
        )
    _write_text(args.output, buf.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maxcsp", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="incidence-graph structural parameters")
    p.add_argument("file")
    p.add_argument("--max-vc", type=int, default=structure.DEFAULT_VC_BUDGET)
    p.add_argument("--max-fvs", type=int, default=structure.DEFAULT_FVS_BUDGET)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("solve", help="run one solver on one instance")
    p.add_argument("file")
    p.add_argument("--alg", choices=ALGORITHMS, required=True)
    p.add_argument("--epsilon", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=cnf_approx.DEFAULT_TRIALS)
    p.add_argument("--window-exponent", type=int, default=cnf_approx.DEFAULT_WINDOW_EXPONENT)
    p.add_argument("--max-vc", type=int, default=structure.DEFAULT_VC_BUDGET)
    p.add_argument("--max-fvs", type=int, default=structure.DEFAULT_FVS_BUDGET)
    p.add_argument("--oracle-limit", type=int, default=oracle.DEFAULT_VAR_LIMIT)
    p.add_argument("--with-oracle", action="store_true")
    p.add_argument("--timing", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("generate", help="emit instances and gadget reductions")
    p.add_argument("what", choices=["mcc-cnf", "mcc-dnf", "mcc-thr", "thr2maj", "cnf2maj", "random"])
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--graph", default=None, help="MCC graph file")
    p.add_argument("--input", default=None, help="MCSP input for thr2maj/cnf2maj")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--complete", action="store_true")
    p.add_argument("--edgeless", action="store_true")
    p.add_argument("--edge-prob", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--num-vars", type=int, default=10)
    p.add_argument("--num-constraints", type=int, default=10)
    p.add_argument("--kinds", default="OR=1")
    p.add_argument("--arity-min", type=int, default=1)
    p.add_argument("--arity-max", type=int, default=3)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("compare", help="ratio table over a directory of instances")
    p.add_argument("--algs", required=True)
    p.add_argument("--epsilons", "--epsilon", default="")
    p.add_argument("--dir", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=cnf_approx.DEFAULT_TRIALS)
    p.add_argument("--oracle-limit", type=int, default=oracle.DEFAULT_VAR_LIMIT)
    p.add_argument("--workers", type=int, default=2)
    p.add_argument("--timing", action="store_true")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, MalformedInstanceError, ContractViolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except MaxCspError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    raise SystemExit(main())
