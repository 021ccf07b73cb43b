"""Command-line frontend: one verb per capability, JSON reports, exit codes
0 = success, 1 = verified negative, 2 = budget exhausted, 3 = input error."""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import backend, circle, colourings, fourier, lefmann, wtrick
from .arith import SmoothParams, dickman_rho, smooth_sieve
from .counting import (CountRequest, WeightFunction, count_bruteforce,
                       count_orthogonality)
from .equations import (CoefficientMatrix, DiagonalEquation, columns_condition,
                        rado_criterion)
from .errors import RangeError, ResourceLimitError
from .sets import IntegerSet

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_BUDGET = 2
EXIT_INPUT = 3


def _parse_coeffs(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise RangeError(f"bad coefficient list {text!r}: {exc}") from exc


def _equation(args) -> DiagonalEquation:
    if getattr(args, "equation", None):
        text = args.equation
        if not text.lstrip().startswith("{"):
            with open(text) as fh:
                text = fh.read()
        try:
            return DiagonalEquation.from_json(text)
        except (KeyError, json.JSONDecodeError) as exc:
            if isinstance(exc, json.JSONDecodeError):
                raise RangeError(f"equation JSON at line {exc.lineno} column "
                                 f"{exc.colno}: {exc.msg}") from exc
            raise RangeError(f"equation JSON missing field {exc}") from exc
    if not getattr(args, "coeffs", None):
        raise RangeError("provide --coeffs or --equation")
    return DiagonalEquation(args.k, _parse_coeffs(args.coeffs))


def _emit(args, report: dict, exit_code: int) -> int:
    report.setdefault("schema", 1)
    report.setdefault("seed", args.seed)
    report.setdefault("threads", args.threads)
    report["timestamp"] = time.time()
    text = json.dumps(report, indent=2, default=str) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return exit_code


# -- subcommand handlers -----------------------------------------------------

def _cmd_criterion(args) -> int:
    eq = _equation(args)
    dec = rado_criterion(eq)
    report = {"command": "criterion", "coeffs": list(eq.coeffs),
              "holds": dec.holds,
              "witness": list(dec.witness) if dec.witness else None}
    return _emit(args, report, EXIT_OK if dec.holds else EXIT_NEGATIVE)


def _cmd_columns(args) -> int:
    rows = tuple(tuple(int(v) for v in row.split(","))
                 for row in args.matrix.split(";"))
    dec = columns_condition(CoefficientMatrix(rows))
    report = {"command": "columns", "rows": [list(r) for r in rows],
              "holds": dec.holds,
              "partition": [list(b) for b in dec.partition] if dec.partition else None}
    return _emit(args, report, EXIT_OK if dec.holds else EXIT_NEGATIVE)


def _cmd_count(args) -> int:
    eq = _equation(args)
    dom = IntegerSet.interval(args.n)
    req = CountRequest(eq, (dom,) * eq.s, distinct_only=args.distinct)
    start = time.time()
    counter = count_orthogonality if args.mode == "orthogonality" else count_bruteforce
    value = counter(req)
    elapsed = time.time() - start
    report = {"command": "count", "N": args.n, "s": eq.s, "k": eq.k,
              "coeffs": list(eq.coeffs), "mode": args.mode, "count": int(value),
              "csv": f"{args.n},{eq.s},{eq.k},"
                     f"\"{','.join(map(str, eq.coeffs))}\",{args.mode},"
                     f"{int(value)},{elapsed:.3f}"}
    if args.verify:
        other = count_bruteforce if args.mode == "orthogonality" else count_orthogonality
        check = other(req)
        report["verified"] = int(check) == int(value)
        if not report["verified"]:
            return _emit(args, report, EXIT_NEGATIVE)
    return _emit(args, report, EXIT_OK)


def _cmd_mono_count(args) -> int:
    eq = _equation(args)
    with open(args.colouring) as fh:
        text = fh.read()
    col = (colourings.Colouring.from_json(text) if text.lstrip().startswith("{")
           else colourings.Colouring.from_text(text))
    counts = colourings.mono_count(eq, col, distinct_only=args.distinct)
    report = {"command": "mono-count", "coeffs": list(eq.coeffs),
              "per_colour": counts, "total": sum(counts)}
    return _emit(args, report, EXIT_OK)


def _cmd_search(args) -> int:
    eq = _equation(args)
    start = time.time()
    outcome = colourings.search_solution_free(
        eq, args.n, args.r, budget=args.budget, distinct=args.distinct)
    seconds = time.time() - start
    path = None
    if outcome.colouring is not None and args.colouring_out:
        path = args.colouring_out
        with open(path, "w") as fh:
            fh.write(outcome.colouring.to_json() + "\n")
    report = {"command": "search", "status": outcome.status, "N": args.n,
              "r": args.r, "colouring_path": path, "nodes": outcome.nodes,
              "seconds": round(seconds, 3)}
    if outcome.colouring is not None and path is None:
        report["colouring"] = json.loads(outcome.colouring.to_json())
    code = {"found": EXIT_OK, "none-within-N": EXIT_NEGATIVE,
            "budget-exhausted": EXIT_BUDGET}[outcome.status]
    return _emit(args, report, code)


def _cmd_rado_number(args) -> int:
    eq = _equation(args)
    start = time.time()
    res = colourings.rado_number(eq, args.r, distinct=args.distinct,
                                 n_max=args.n_max, budget=args.budget)
    report = {"command": "rado-number", "coeffs": list(eq.coeffs), "r": args.r,
              "distinct": args.distinct, "value": res.value,
              "exceeded_cap": res.exceeded_cap,
              "indeterminate": res.indeterminate, "nodes": res.nodes,
              "seconds": round(time.time() - start, 3)}
    if res.indeterminate:
        return _emit(args, report, EXIT_BUDGET)
    return _emit(args, report, EXIT_OK if res.value else EXIT_NEGATIVE)


def _cmd_witness_colouring(args) -> int:
    eq = _equation(args)
    wc = colourings.rado_witness_colouring(eq)
    report = {"command": "witness-colouring", "coeffs": list(eq.coeffs),
              "p": wc.p, "colours": wc.colours}
    if args.verify:
        col = wc.colouring(args.n)
        total = sum(colourings.mono_count(eq, col))
        report["mono_solutions_upto_n"] = {"n": args.n, "total": total}
        if total:
            return _emit(args, report, EXIT_NEGATIVE)
    return _emit(args, report, EXIT_OK)


def _cmd_smooth(args) -> int:
    s = smooth_sieve(SmoothParams(args.n, args.bound))
    report = {"command": "smooth", "N": args.n, "R": args.bound,
              "cardinality": s.cardinality,
              "set": json.loads(s.to_runs_json())}
    return _emit(args, report, EXIT_OK)


def _cmd_dickman(args) -> int:
    report = {"command": "dickman", "u": args.u, "value": dickman_rho(args.u)}
    return _emit(args, report, EXIT_OK)


def _cmd_wtrick(args) -> int:
    ctx = wtrick.build_context(args.k, args.w, args.n, xi=args.xi,
                               zeta=args.zeta)
    nu = wtrick.weight_nu(ctx)
    report = {"command": "wtrick", "context": json.loads(ctx.to_json()),
              "P": ctx.P, "X": ctx.X, "root": ctx.root,
              "nu_support": len(nu.support()), "nu_l1": float(nu.l1())}
    return _emit(args, report, EXIT_OK)


def _cmd_decay(args) -> int:
    ctx = wtrick.build_context(args.k, args.w, args.n, xi=args.xi,
                               zeta=args.zeta)
    nu = wtrick.weight_nu(ctx)
    rep = fourier.decay_statistic(nu, ctx.X)
    report = {"command": "decay", "w": args.w, "Q": rep.Q, "X": ctx.X,
              "statistic": rep.statistic,
              "argmax_frequency": rep.argmax_frequency,
              "neighbor_oscillation": rep.neighbor_oscillation}
    return _emit(args, report, EXIT_OK)


def _cmd_restriction(args) -> int:
    ctx = wtrick.build_context(args.k, args.w, args.n, xi=args.xi,
                               zeta=args.zeta)
    nu = wtrick.weight_nu(ctx)
    value = fourier.restriction_norm(nu, args.p)
    report = {"command": "restriction", "w": args.w, "p": args.p,
              "X": ctx.X, "value": value}
    return _emit(args, report, EXIT_OK)


def _cmd_gauss(args) -> int:
    value = circle.gauss_sum(args.q, args.a, args.k)
    report = {"command": "gauss", "q": args.q, "a": args.a, "k": args.k,
              "re": value.real, "im": value.imag, "magnitude": abs(value)}
    return _emit(args, report, EXIT_OK)


def _cmd_singular_series(args) -> int:
    eq = _equation(args)
    est = circle.singular_series(eq, args.qmax)
    sampled = {str(q): est.partial_at(q)
               for q in (1, 2, 5, 10, 50, 100, est.Q_max) if q <= est.Q_max}
    report = {"command": "singular-series", "coeffs": list(eq.coeffs),
              "Qmax": est.Q_max, "value": est.value,
              "partial_sums": sampled,
              "stabilization_gap": est.stabilization_gap}
    return _emit(args, report, EXIT_OK)


def _cmd_predict(args) -> int:
    eq = _equation(args)
    series = circle.singular_series(eq, args.qmax)
    integral = circle.singular_integral(eq, samples=args.samples,
                                        seed=args.seed)
    pred = circle.predict_count(eq, args.n, series=series, integral=integral)
    report = {"command": "predict", "coeffs": list(eq.coeffs), "N": args.n,
              "singular_series": series.value,
              "J": {"estimate": integral.estimate, "stderr": integral.stderr,
                    "seed": integral.seed},
              "prediction": {"N": args.n, "value": pred.value,
                             "band": pred.band}}
    if args.verify:
        dom = IntegerSet.interval(args.n)
        actual = count_bruteforce(CountRequest(eq, (dom,) * eq.s))
        report["actual"] = int(actual)
        report["ratio"] = pred.value / actual if actual else None
    return _emit(args, report, EXIT_OK)


def _cmd_lefmann(args) -> int:
    eq = _equation(args)
    res = lefmann.lefmann_certify(eq, P=args.p_bound)
    report = {"command": "lefmann", "coeffs": list(eq.coeffs),
              "P": res.P, "tried": [list(i) for i in res.tried],
              "certificate": (json.loads(res.certificate.to_json())
                              if res.certificate else None)}
    return _emit(args, report, EXIT_OK if res.certificate else EXIT_NEGATIVE)


def _cmd_diagnostics(args) -> int:
    eq = _equation(args)
    idx = tuple(int(v) for v in args.indices.split(","))
    diag = lefmann.lefmann_diagnostics(eq, idx, args.p_bound)
    report = {"command": "diagnostics", "coeffs": list(eq.coeffs),
              "I": list(idx), "P": diag.P, "N1": diag.N1, "N2": diag.N2,
              "N1_scaled": diag.N1_scaled, "N2_scaled": diag.N2_scaled,
              "csv": f"{diag.P},{diag.N1},{diag.N2}"}
    if diag.halved:
        report["halved"] = {"P": diag.halved.P, "N1": diag.halved.N1,
                            "N2": diag.halved.N2}
    return _emit(args, report, EXIT_OK)


# -- parser -------------------------------------------------------------------

def _add_equation_args(p, need_k=True):
    p.add_argument("--coeffs", help="comma-separated nonzero integers")
    if need_k:
        p.add_argument("--k", type=int, default=1, help="degree")
    p.add_argument("--equation", help="equation JSON (inline or a file path)")


def _bool(text: str) -> bool:
    if text.lower() in ("true", "1", "yes"):
        return True
    if text.lower() in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radolab",
        description="Workbench for partition regularity of diagonal equations")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=None,
                        help="worker cap (recorded in reports)")
    parser.add_argument("--output", help="report path (default stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("criterion")
    _add_equation_args(p)
    p.set_defaults(func=_cmd_criterion)

    p = sub.add_parser("columns")
    p.add_argument("--matrix", required=True,
                   help="rows separated by ';', entries by ','")
    p.set_defaults(func=_cmd_columns)

    p = sub.add_parser("count")
    _add_equation_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("mitm", "orthogonality"), default="mitm")
    p.add_argument("--distinct", type=_bool, default=False)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("mono-count")
    _add_equation_args(p)
    p.add_argument("--colouring", required=True, help="colouring file")
    p.add_argument("--distinct", type=_bool, default=False)
    p.set_defaults(func=_cmd_mono_count)

    p = sub.add_parser("search")
    _add_equation_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--distinct", type=_bool, default=False)
    p.add_argument("--budget", type=int, default=10 ** 9)
    p.add_argument("--colouring-out", help="write any found colouring here")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("rado-number")
    _add_equation_args(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--distinct", type=_bool, default=True)
    p.add_argument("--n-max", type=int, default=100)
    p.add_argument("--budget", type=int, default=10 ** 9)
    p.set_defaults(func=_cmd_rado_number)

    p = sub.add_parser("witness-colouring")
    _add_equation_args(p)
    p.add_argument("--n", type=int, default=1000, help="verification range")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=_cmd_witness_colouring)

    p = sub.add_parser("smooth")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=int, required=True, help="smoothness bound R")
    p.set_defaults(func=_cmd_smooth)

    p = sub.add_parser("dickman")
    p.add_argument("--u", type=float, required=True)
    p.set_defaults(func=_cmd_dickman)

    for name, func in (("wtrick", _cmd_wtrick), ("decay", _cmd_decay),
                       ("restriction", _cmd_restriction)):
        p = sub.add_parser(name)
        p.add_argument("--k", type=int, default=2)
        p.add_argument("--w", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--xi", type=int, default=1)
        p.add_argument("--zeta", type=int, default=1)
        if name == "restriction":
            p.add_argument("--p", type=float, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("gauss")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.set_defaults(func=_cmd_gauss)

    p = sub.add_parser("singular-series")
    _add_equation_args(p)
    p.add_argument("--qmax", type=int, default=1000)
    p.set_defaults(func=_cmd_singular_series)

    p = sub.add_parser("predict")
    _add_equation_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--qmax", type=int, default=1000)
    p.add_argument("--samples", type=int, default=10 ** 6)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("lefmann")
    _add_equation_args(p)
    p.add_argument("--p-bound", type=int, default=50)
    p.set_defaults(func=_cmd_lefmann)

    p = sub.add_parser("diagnostics")
    _add_equation_args(p)
    p.add_argument("--indices", required=True,
                   help="comma-separated 1-based zero-sum index set")
    p.add_argument("--p-bound", type=int, default=20)
    p.set_defaults(func=_cmd_diagnostics)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (RangeError, ValueError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
