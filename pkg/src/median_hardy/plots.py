"""Figure rendering for the report paths.

Each CLI subcommand can drop a PNG next to its delimited output: the
convergence curve against the sharp-constant asymptote for `sharpness`,
worst-ratio bars for the verification suites, and input profiles for
`eval`.  matplotlib is imported lazily with the Agg backend so headless
runs and non-plotting code paths never touch a display.
"""

from __future__ import annotations

import math


def _plt():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def save_convergence_plot(points, sharp: float, fit, path) -> None:
    plt = _plt()
    ns = [c.n_blocks for c in points]
    ratios = [c.ratio for c in points]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.semilogx(ns, ratios, "o-", label="deviation ratio")
    ax.axhline(sharp, color="crimson", ls="--", label=f"sharp constant {sharp:.6g}")
    if fit is not None:
        xs = [math.exp(x / 40.0) for x in range(int(40 * math.log(ns[0])),
                                                int(40 * math.log(ns[-1])) + 1)]
        ax.semilogx(xs, [fit.c_inf + fit.slope / math.log(x) for x in xs],
                    color="gray", lw=1, label=f"fit, limit {fit.c_inf:.4g}")
    ax.set_xlabel("N (blocks)")
    ax.set_ylabel("ratio")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_checks_plot(summaries, path) -> None:
    plt = _plt()
    kinds = [c.kind.value for c in summaries]
    ratios = [float(c.worst.ratio) for c in summaries]
    fig, ax = plt.subplots(figsize=(7.2, 4.2))
    bars = ax.barh(kinds, ratios, color=["tab:red" if c.violations else "tab:blue"
                                         for c in summaries])
    ax.axvline(1.0, color="crimson", ls="--", lw=1, label="lhs = rhs")
    ax.bar_label(bars, fmt="%.4g", padding=3)
    ax.set_xlabel("worst observed lhs/rhs")
    ax.set_xlim(0, max(1.05, max(ratios, default=0) * 1.15))
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_sequence_plot(stats, path) -> None:
    plt = _plt()
    idx = [s.i for s in stats]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.step(idx, [float(s.mean) for s in stats], where="post", label="prefix mean")
    ax.step(idx, [float(s.lower_median) for s in stats], where="post",
            label="lower median")
    ax.step(idx, [float(s.top_half_sum) / s.i for s in stats], where="post",
            ls="--", label="top-half sum / i")
    ax.set_xlabel("prefix length i")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_stepfn_plot(f, median, path) -> None:
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    horizon = float(max(f.total_length, median.breakpoints[-1])) * 1.5 or 1.0
    ts = [horizon * k / 400 for k in range(1, 401)]
    ax.plot(ts, [float(f.value_at(t)) for t in ts], label="f", lw=1.2)
    ax.plot(ts, [float(f.cumulative(t)) / t for t in ts], label="average A(t)")
    ax.plot(ts, [float(median.value_at(t)) for t in ts], label="lower median M(t)")
    ax.set_xlabel("t")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
