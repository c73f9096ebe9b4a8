"""Command-line interface.

Subcommands:

* verify-discrete:   randomized and/or file-based sequences through the
                     discrete inequality chain.
* verify-continuous: randomized and/or file-based step functions through
                     the pointwise bound, the deviation inequality,
                     classical Hardy, and the substitution identity.
* sharpness:         convergence of the extremal-family ratio toward the
                     sharp constant, with an extrapolated limit.
* eval:              per-prefix statistics (sequence input) or breakpoint
                     tables of A, M and f* (step-function input).

Exit codes: 0 all checks hold, 1 a mathematical violation was found
(i.e. a library bug, since the verified inequalities are mathematically
true), 2 usage or input error.

Reports are deterministic: identical configuration (including the seed)
gives byte-identical JSON, independent of MH_THREADS.  Each random case
draws its data from a generator derived from seed XOR case-index, and
aggregation is order-independent.  `--plot` renders a PNG figure next to
the delimited output.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .core import (
    CapabilityError,
    DomainError,
    MIN_CLI_EXPONENT,
    as_exponent,
    backend_by_name,
    sharp_constant,
)
from .continuous import run_stepfn_checks
from .discrete import run_sequence_checks
from .generators import (
    random_sample_times,
    random_sequence,
    random_step_function,
    rng_for_case,
)
from .io import load_input, load_sequence, load_step_function
from .reporting import (
    CheckSummary,
    RunReport,
    run_report_csv,
    run_report_human,
    run_report_json,
    scalar_json,
)
from .sharpness import extrapolate_limit, ratio_curve
from .stepfn import PiecewiseAverage, decreasing_rearrangement_fn, lower_median_fn
from .streaming import prefix_stats

DEFAULT_GRID = "10,100,1000,10000,100000,1000000"


def _parse_p(text: str):
    """Exponent from the command line: int, float, or "a/b"."""
    text = text.strip()
    try:
        if "/" in text:
            value = Fraction(text)
        elif text.lstrip("+-").isdigit():
            value = int(text)
        else:
            value = float(text)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"cannot parse exponent {text!r}") from None
    if value < MIN_CLI_EXPONENT:
        raise DomainError(
            f"the CLI requires p >= {MIN_CLI_EXPONENT} (the constant blows up "
            f"near 1); got {text}")
    return as_exponent(value).value


def exponent(text: str):
    """argparse type wrapper so rejection messages reach the user."""
    try:
        return _parse_p(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _worker_count() -> int:
    env = os.environ.get("MH_THREADS", "").strip()
    if env:
        try:
            n = int(env)
        except ValueError:
            raise DomainError(f"MH_THREADS must be an integer, got {env!r}") from None
        if n < 1:
            raise DomainError(f"MH_THREADS must be >= 1, got {n}")
        return n
    return os.cpu_count() or 1


def _resolve_backend(ns) -> str:
    p = as_exponent(ns.p)
    name = ns.backend
    if name == "auto":
        name = "exact" if p.is_integer else "float"
    if name == "exact" and not p.is_integer:
        raise DomainError("the exact backend requires an integer exponent")
    return name


# ---------------------------------------------------------------------------
# worker functions (module-level for process pools)

def _discrete_case(job):
    seed, index, p, backend_name, max_n = job
    rng = rng_for_case(seed, index)
    seq = random_sequence(rng, max_n, exact=backend_name == "exact")
    return run_sequence_checks(seq, p, backend_by_name(backend_name))


def _continuous_case(job):
    seed, index, p, backend_name, max_segments, tol = job
    rng = rng_for_case(seed, index)
    f = random_step_function(rng, max_segments, exact=backend_name == "exact")
    samples = random_sample_times(rng, 8, f.total_length + 2)
    return run_stepfn_checks(f, p, tol, samples)


def _run_cases(worker, jobs) -> list:
    workers = _worker_count()
    if workers <= 1 or len(jobs) < 4:
        return [worker(job) for job in jobs]
    chunk = max(1, len(jobs) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, jobs, chunksize=chunk))


def _summarize(case_reports) -> list[CheckSummary]:
    """Per-kind aggregation; order-independent, ties to the lowest case."""
    if not case_reports:
        return []
    summaries = []
    for ki in range(len(case_reports[0])):
        worst = None
        violations = 0
        for idx, reports in enumerate(case_reports):
            r = reports[ki]
            if not r.holds:
                violations += 1
            proxy = float(r.ratio)
            if worst is None or proxy > worst[0]:
                worst = (proxy, idx, r)
        summaries.append(CheckSummary(kind=worst[2].kind, cases=len(case_reports),
                                      violations=violations, worst=worst[2],
                                      worst_case=worst[1]))
    return summaries


# ---------------------------------------------------------------------------
# output plumbing

def _emit(text: str, out_path) -> None:
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _plot_path(ns):
    if ns.plot is None:
        return None
    if ns.plot != "auto":
        return Path(ns.plot)
    if ns.out:
        return Path(ns.out).with_suffix(".png")
    return Path(f"median_hardy_{ns.command.replace('-', '_')}.png")


def _render_report(run: RunReport, ns) -> None:
    if ns.output == "json":
        _emit(run_report_json(run), ns.out)
    elif ns.output == "csv":
        _emit(run_report_csv(run), ns.out)
    else:
        _emit(run_report_human(run), ns.out)
    path = _plot_path(ns)
    if path:
        from .plots import save_checks_plot
        save_checks_plot(run.checks, path)


# ---------------------------------------------------------------------------
# subcommands

def cmd_verify_discrete(ns) -> int:
    backend_name = _resolve_backend(ns)
    t0 = time.perf_counter()
    case_reports = []
    if ns.input:
        seq = load_sequence(ns.input, exact=backend_name == "exact")
        case_reports.append(run_sequence_checks(seq, ns.p, backend_by_name(backend_name)))
    jobs = [(ns.seed, i, ns.p, backend_name, ns.max_n) for i in range(ns.trials)]
    case_reports.extend(_run_cases(_discrete_case, jobs))
    run = RunReport(
        command="verify-discrete",
        config={"p": ns.p, "backend": backend_name, "seed": ns.seed,
                "trials": ns.trials, "max_n": ns.max_n,
                "input": ns.input, "output": ns.output},
        checks=_summarize(case_reports),
        elapsed_s=time.perf_counter() - t0,
    )
    _render_report(run, ns)
    return 0 if run.violations == 0 else 1


def cmd_verify_continuous(ns) -> int:
    backend_name = _resolve_backend(ns)
    t0 = time.perf_counter()
    case_reports = []
    if ns.input:
        f = load_step_function(ns.input, exact=backend_name == "exact")
        case_reports.append(run_stepfn_checks(f, ns.p, ns.tol))
    jobs = [(ns.seed, i, ns.p, backend_name, ns.max_n, ns.tol)
            for i in range(ns.trials)]
    case_reports.extend(_run_cases(_continuous_case, jobs))
    run = RunReport(
        command="verify-continuous",
        config={"p": ns.p, "backend": backend_name, "seed": ns.seed,
                "trials": ns.trials, "max_n": ns.max_n, "tol": ns.tol,
                "input": ns.input, "output": ns.output},
        checks=_summarize(case_reports),
        elapsed_s=time.perf_counter() - t0,
    )
    _render_report(run, ns)
    return 0 if run.violations == 0 else 1


def _parse_grid(text: str) -> list[int]:
    try:
        grid = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise DomainError(f"cannot parse N grid {text!r}") from None
    return grid


def cmd_sharpness(ns) -> int:
    t0 = time.perf_counter()
    grid = _parse_grid(ns.n_grid)
    points = ratio_curve(ns.family, grid, ns.p, ns.tol)
    fit = extrapolate_limit(points) if len(points) >= 3 else None
    cap = float(sharp_constant(ns.p))
    monotone = all(a.ratio < b.ratio for a, b in zip(points, points[1:]))
    capped = all(c.ratio <= cap * (1 + 1e-9) for c in points)
    violations = (0 if monotone else 1) + (0 if capped else 1)

    payload = {
        "schema": 1,
        "command": "sharpness",
        "config": {"p": scalar_json(ns.p), "family": ns.family,
                   "n_grid": grid, "tol": ns.tol, "output": ns.output},
        "sharp_constant": cap,
        "points": [{"N": c.n_blocks, "lhs": c.lhs, "rhs": c.rhs, "ratio": c.ratio}
                   for c in points],
        "fit": None if fit is None else {
            "c_inf": fit.c_inf, "slope": fit.slope,
            "residual": fit.residual, "points_used": fit.points_used},
        "grid_monotone": monotone,
        "ratios_capped": capped,
        "violations": violations,
    }
    if ns.output == "json":
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", ns.out)
    elif ns.output == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "lhs", "rhs", "ratio"])
        for c in points:
            w.writerow([c.n_blocks, repr(c.lhs), repr(c.rhs), repr(c.ratio)])
        _emit(buf.getvalue(), ns.out)
    else:
        lines = [f"sharpness ({ns.family} family, p = {ns.p}, C_p = {cap:.6g})"]
        for c in points:
            lines.append(f"  N={c.n_blocks:>9}  ratio {c.ratio:.6g}"
                         f"  ({c.ratio / cap:.4f} of C_p)")
        if fit:
            lines.append(f"  extrapolated limit {fit.c_inf:.6g}"
                         f"  (fit residual {fit.residual:.3g})")
        lines.append(f"  grid monotone: {monotone}   ratios capped: {capped}")
        lines.append(f"  elapsed: {time.perf_counter() - t0:.2f} s")
        _emit("\n".join(lines) + "\n", ns.out)

    path = _plot_path(ns)
    if path:
        from .plots import save_convergence_plot
        save_convergence_plot(points, cap, fit, path)
    return 0 if violations == 0 else 1


def cmd_eval(ns) -> int:
    backend_name = _resolve_backend(ns)
    exact = backend_name == "exact"
    kind, data = load_input(ns.input, exact)
    if kind == "sequence":
        stats = prefix_stats(data)
        rows = [(s.i, s.mean, s.lower_median, s.top_half_sum) for s in stats]
        if ns.output == "json":
            payload = {"schema": 1, "command": "eval", "kind": "sequence",
                       "stats": [{"i": i, "mean": scalar_json(m),
                                  "lower_median": scalar_json(md),
                                  "top_half_sum": scalar_json(t)}
                                 for i, m, md, t in rows]}
            _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", ns.out)
        elif ns.output == "csv":
            buf = _io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["i", "mean", "lower_median", "top_half_sum"])
            for i, m, md, t in rows:
                w.writerow([i, scalar_json(m), scalar_json(md), scalar_json(t)])
            _emit(buf.getvalue(), ns.out)
        else:
            lines = [f"{'i':>6} {'mean':>14} {'lower_median':>14} {'top_half_sum':>14}"]
            for i, m, md, t in rows:
                lines.append(f"{i:>6} {float(m):>14.6g} {float(md):>14.6g} {float(t):>14.6g}")
            _emit("\n".join(lines) + "\n", ns.out)
        path = _plot_path(ns)
        if path:
            from .plots import save_sequence_plot
            save_sequence_plot(stats, path)
        return 0

    f = data
    median = lower_median_fn(f)
    star = decreasing_rearrangement_fn(f)
    avg = PiecewiseAverage(f)
    if ns.output == "json":
        payload = {
            "schema": 1, "command": "eval", "kind": "stepfn",
            "median": [{"from": scalar_json(b), "value": scalar_json(v)}
                       for b, v in zip(median.breakpoints, median.values)],
            "average": [{"t0": scalar_json(p.t0),
                         "t1": None if p.t1 is None else scalar_json(p.t1),
                         "alpha": scalar_json(p.alpha), "beta": scalar_json(p.beta)}
                        for p in avg.pieces],
            "rearranged": [{"len": scalar_json(s.length), "val": scalar_json(s.value)}
                           for s in star.segments],
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", ns.out)
    elif ns.output == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["table", "a", "b", "c", "d"])
        for b, v in zip(median.breakpoints, median.values):
            w.writerow(["median", scalar_json(b), scalar_json(v), "", ""])
        for p in avg.pieces:
            w.writerow(["average", scalar_json(p.t0),
                        "inf" if p.t1 is None else scalar_json(p.t1),
                        scalar_json(p.alpha), scalar_json(p.beta)])
        for s in star.segments:
            w.writerow(["rearranged", scalar_json(s.length), scalar_json(s.value), "", ""])
        _emit(buf.getvalue(), ns.out)
    else:
        lines = ["lower median M(t):"]
        for b, v in zip(median.breakpoints, median.values):
            lines.append(f"  from t={float(b):g}: M = {float(v):g}")
        lines.append("average A(t) = (alpha + beta t)/t:")
        for p in avg.pieces:
            t1 = "inf" if p.t1 is None else f"{float(p.t1):g}"
            lines.append(f"  [{float(p.t0):g}, {t1}): alpha={float(p.alpha):g}, "
                         f"beta={float(p.beta):g}")
        lines.append("decreasing rearrangement f*:")
        for s in star.segments:
            lines.append(f"  len {float(s.length):g}: value {float(s.value):g}")
        if not star.segments:
            lines.append("  (zero function)")
        _emit("\n".join(lines) + "\n", ns.out)
    path = _plot_path(ns)
    if path:
        from .plots import save_stepfn_plot
        save_stepfn_plot(f, median, path)
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="median-hardy",
        description="Streaming prefix statistics and numerical verification "
                    "of the median version of Hardy's inequality.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, tol_default=None):
        sp.add_argument("--p", type=exponent, default=2, help="exponent p > 1 (int, float, or a/b)")
        sp.add_argument("--backend", choices=["auto", "exact", "float"], default="auto")
        sp.add_argument("--seed", type=int, default=0, help="64-bit experiment seed")
        sp.add_argument("--output", choices=["json", "csv", "human"], default="human")
        sp.add_argument("--out", default=None, help="write the report to this path")
        sp.add_argument("--plot", nargs="?", const="auto", default=None,
                        metavar="PNG", help="render a figure (next to --out by default)")
        if tol_default is not None:
            sp.add_argument("--tol", type=float, default=tol_default,
                            help="absolute quadrature error budget")

    sp = sub.add_parser("verify-discrete", help="discrete inequality suite")
    common(sp)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--max-n", type=int, default=200, help="max sequence length")
    sp.add_argument("--input", default=None, help="sequence file (JSON array or CSV)")

    sp = sub.add_parser("verify-continuous", help="continuous inequality suite")
    common(sp, tol_default=1e-9)
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--max-n", type=int, default=20, help="max segment count")
    sp.add_argument("--input", default=None, help="step function JSON file")

    sp = sub.add_parser("sharpness", help="extremal-family convergence")
    common(sp, tol_default=1e-9)
    sp.add_argument("--family", choices=["discrete", "continuous"], default="discrete")
    sp.add_argument("--n-grid", default=DEFAULT_GRID,
                    help="comma-separated increasing block counts")

    sp = sub.add_parser("eval", help="inspect one input")
    common(sp)
    sp.add_argument("--input", required=True, help="sequence or step function file")
    return parser


_DISPATCH = {
    "verify-discrete": cmd_verify_discrete,
    "verify-continuous": cmd_verify_continuous,
    "sharpness": cmd_sharpness,
    "eval": cmd_eval,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0)
    try:
        for arg in ("trials", "max_n"):
            if getattr(ns, arg, 1) < (0 if arg == "trials" else 1):
                raise DomainError(f"--{arg.replace('_', '-')} must be >= "
                                  f"{0 if arg == 'trials' else 1}")
        if getattr(ns, "tol", 1.0) <= 0:
            raise DomainError("--tol must be positive")
        return _DISPATCH[ns.command](ns)
    except (DomainError, CapabilityError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"mathematical violation: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
