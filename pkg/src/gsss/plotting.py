"""Figures for the analyze and bench reports.

Rendering goes through the Agg backend so the CLI works headless. Curves are
evaluated exactly and only converted to float for drawing.
"""

import math
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .attack import critical_values, isolate_real_roots  # noqa: E402
from .polyarith import Polynomial, poly_eval  # noqa: E402

__all__ = ["render_delta_figure", "render_bench_figure"]

STYLE = {
    "font.size": 10,
    "axes.labelsize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
}

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _figure(width=6.0):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(width, width * GOLDEN))
    return fig, ax


def _to_float(v) -> float:
    try:
        return float(v)
    except OverflowError:
        return math.copysign(math.inf, v)


def _plot_window(poly: Polynomial):
    marks = [r.lo for r in isolate_real_roots(poly, Fraction(1, 1 << 10))]
    if poly.degree >= 2:
        marks += [c.location[0] for c in critical_values(poly, Fraction(1, 1 << 10))]
    if not marks:
        return -1.0, 1.0
    lo, hi = _to_float(min(marks)), _to_float(max(marks))
    pad = max(1.0, 0.25 * (hi - lo))
    return lo - pad, hi + pad


def render_delta_figure(poly: Polynomial, interval, path, secret=None, samples=400):
    """Draw y(x) together with the two extreme shifts y + delta1 and y + delta2."""
    lo, hi = _plot_window(poly)
    xs = [lo + (hi - lo) * i / (samples - 1) for i in range(samples)]
    ys = [_to_float(poly_eval(poly, Fraction(x))) for x in xs]

    fig, ax = _figure()
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.plot(xs, ys, color="black", lw=1.4, label="y(x)")
    for name, delta, colour in (
        ("delta1", interval.delta1, "tab:blue"),
        ("delta2", interval.delta2, "tab:red"),
    ):
        if isinstance(delta, float):
            continue
        shift = _to_float(delta)
        ax.plot(xs, [y + shift for y in ys], color=colour, lw=1.0, ls="--",
                label=f"y(x) + {name} ({shift:.4g})")
    if secret is not None:
        ax.plot(xs, [y - _to_float(secret) for y in ys], color="0.4", lw=0.8, ls=":", label="y(x) - S")
    finite = [y for y in ys if math.isfinite(y)]
    if finite:
        span = max(finite) - min(finite) or 1.0
        ax.set_ylim(min(finite) - 0.1 * span, max(finite) + 0.1 * span)
    ax.set_xlabel("x")
    ax.set_ylabel("value")
    ax.set_title(f"shift range keeping k={interval.k} real roots")
    ax.legend(loc="best", frameon=False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def render_bench_figure(rows, path):
    """Per-degree evaluation cost against k on log axes; flat means linear."""
    ks = [k for k, _ in rows]
    per_k = [ns / k for k, ns in rows]
    fig, ax = _figure()
    ax.plot(ks, per_k, marker="o", color="black", lw=1.2)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("k (degree of the public polynomial)")
    ax.set_ylabel("evaluation time / k  [ns]")
    ax.set_title("Horner evaluation cost")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
