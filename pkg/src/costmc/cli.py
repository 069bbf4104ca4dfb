"""Command-line front end.

Exit codes: 0 success, 1 instance parse error, 2 invalid flags,
3 recovery unsound, 4 search cap exceeded, 5 certification or reproduction
mismatch.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from .errors import (
    DimensionCapExceeded,
    DimensionMismatch,
    InvalidD,
    ModelMismatch,
    ParseError,
    UnknownFixture,
    ZeroMatrix,
)
from .instances import Instance, random_cost_model, random_low_rank, resolve_instance, save_instance
from .linalg import DEFAULT_TOL, pivot_columns
from .reports import (
    ALGORITHMS,
    RunReport,
    json_scalar,
    repro_table,
    run_algorithm,
    run_certify,
    run_repro,
    tightness_sweep,
)
from .sparsity import matrix_sparsity, subspace_sparsity

EXIT_OK, EXIT_PARSE, EXIT_FLAGS, EXIT_UNSOUND, EXIT_CAP, EXIT_MISMATCH = 0, 1, 2, 3, 4, 5


def _d_arg(text: str):
    if text == "auto":
        return "auto"
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer or 'auto', got {text!r}") from None
    if d < 1:
        raise argparse.ArgumentTypeError("d must be at least 1")
    return d


def _default_tol() -> float:
    env = os.environ.get("COSTMC_TOL")
    return float(env) if env else DEFAULT_TOL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="costmc", description="Adaptive exact matrix completion under observation costs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, d=True):
        sp.add_argument("--instance", required=True, help="fixture name, random:M:N:R[:float], or instance file")
        if d:
            sp.add_argument("--d", type=_d_arg, default="auto", help="rows per column sample, or 'auto'")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--tol", type=float, default=_default_tol())
        sp.add_argument("--format", choices=("text", "json"), default="text")

    rec = sub.add_parser("recover", help="run a recovery algorithm through a fresh oracle")
    common(rec)
    rec.add_argument("--algorithm", choices=ALGORITHMS, required=True)
    rec.add_argument("--row-policy", choices=("random", "first", "cheapest"), default="random")

    sp = sub.add_parser("sparsity", help="sparsity number of an instance's hidden matrix")
    common(sp, d=False)
    sp.add_argument("--of", choices=("matrix", "columnspace"), default="matrix")

    cert = sub.add_parser("certify", help="compare erhc against the brute-force optimal plan")
    common(cert)

    rp = sub.add_parser("repro", help="recompute the worked examples and compare")
    rp.add_argument("--format", choices=("text", "json"), default="text")

    sw = sub.add_parser("sweep", help="tightness ratio sweep as CSV")
    sw.add_argument("--eps", nargs="+", default=["1", "1/10", "1/100", "1/1000"])

    gen = sub.add_parser("generate", help="write a random instance file")
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--r", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--mode", choices=("rational", "float"), default="rational")
    gen.add_argument("--costs", choices=("uniform", "percolumn", "perentry"), default="perentry")
    gen.add_argument("--out", required=True)
    return p


def _emit(payload: dict, fmt: str, text: str) -> None:
    print(json.dumps(payload, indent=2) if fmt == "json" else text)


def _load(args) -> Instance:
    return resolve_instance(args.instance, seed=args.seed)


def cmd_recover(args) -> int:
    inst = _load(args)
    result = run_algorithm(inst, args.algorithm, args.d, seed=args.seed, tol=args.tol, row_policy=args.row_policy)
    report = RunReport.from_result(result, inst.name or args.instance)
    if args.d == "auto":
        print("note: d derived from the hidden matrix (simulation only)", file=sys.stderr)
    _emit(report.to_dict(), args.format, report.to_text())
    return EXIT_UNSOUND if result.unsound else EXIT_OK


def cmd_sparsity(args) -> int:
    inst = _load(args)
    if args.of == "matrix":
        rep = matrix_sparsity(inst.hidden, tol=args.tol)
    else:
        basis = inst.hidden[:, pivot_columns(inst.hidden, args.tol)]
        rep = subspace_sparsity(basis, tol=args.tol)
    payload = {
        "instance": inst.name or args.instance,
        "m": rep.m,
        "rank": rep.rank,
        "psi": rep.psi,
        "psi_bar": rep.psi_bar,
        "witness": [json_scalar(x) for x in rep.witness],
        "zero_support": list(rep.zero_support),
    }
    text = "\n".join(f"{k:<12}  {json.dumps(v)}" for k, v in payload.items())
    _emit(payload, args.format, text)
    return EXIT_OK


def cmd_certify(args) -> int:
    inst = _load(args)
    report, result = run_certify(inst, args.d, tol=args.tol)
    _emit(report.to_dict(), args.format, report.to_text())
    if report.total_cost > 2 * report.optimal_cost:
        print("error: greedy cost exceeds twice the optimum", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_UNSOUND if result.unsound else EXIT_OK


def cmd_repro(args, fixture=None) -> int:
    checks = run_repro() if fixture is None else run_repro(fixture)
    if args.format == "json":
        print(json.dumps(
            [{"check": c.name, "expected": json_scalar(c.expected), "computed": json_scalar(c.computed),
              "passed": c.passed} for c in checks],
            indent=2,
        ))
    else:
        print(repro_table(checks))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_MISMATCH


def cmd_sweep(args) -> int:
    writer = csv.writer(sys.stdout)
    writer.writerow(["eps", "greedy_cost", "optimal_cost", "ratio"])
    for eps, g, o, r in tightness_sweep([Fraction(e) for e in args.eps]):
        writer.writerow([str(eps), str(g), str(o), f"{float(r):.10f}"])
    return EXIT_OK


def cmd_generate(args) -> int:
    hidden = random_low_rank(args.m, args.n, args.r, seed=args.seed, mode=args.mode)
    model = random_cost_model(args.costs, args.m, args.n, seed=args.seed)
    inst = Instance(hidden, model, name=f"random-{args.m}x{args.n}-r{args.r}", seed=args.seed, declared_rank=args.r)
    save_instance(inst, args.out)
    print(args.out)
    return EXIT_OK


COMMANDS = {
    "recover": cmd_recover,
    "sparsity": cmd_sparsity,
    "certify": cmd_certify,
    "repro": cmd_repro,
    "sweep": cmd_sweep,
    "generate": cmd_generate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ParseError, DimensionMismatch, UnknownFixture, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidD, ModelMismatch, ZeroMatrix, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FLAGS
    except DimensionCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
