"""Figure rendering for curve reports.

Renders to files only (Agg backend); the CLI calls these when asked to
put a figure next to the delimited output.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bounds import BoundReport
from .sum_engine import CdfCurve, DominanceReport


def _plot_curve(ax, curve: CdfCurve, label: str, color=None):
    ax.plot(curve.t_grid, curve.values, label=label, color=color)
    if curve.std_errors.any():
        ax.fill_between(
            curve.t_grid,
            curve.values - 2 * curve.std_errors,
            curve.values + 2 * curve.std_errors,
            alpha=0.2,
            color=color,
            linewidth=0,
        )


def render_dominance(
    path: str,
    lower: CdfCurve,
    upper: CdfCurve,
    report: DominanceReport,
    title: str = "",
) -> None:
    """Two CDF curves on top, their pointwise difference below."""
    fig, (ax0, ax1) = plt.subplots(
        2, 1, figsize=(7, 6), sharex=True, height_ratios=[2, 1]
    )
    _plot_curve(ax0, lower, "lower sum (CDF should dominate)", "C0")
    _plot_curve(ax0, upper, "upper sum", "C1")
    ax0.set_ylabel("Pr(sum <= t)")
    ax0.legend(loc="lower right")
    verdict = "holds" if report.holds else "VIOLATED"
    ax0.set_title(title or f"dominance {verdict}, worst margin {report.worst_margin:.3g}")

    diff = lower.values - upper.values
    ax1.axhline(0.0, color="grey", lw=0.8)
    ax1.plot(lower.t_grid, diff, color="C2")
    if report.violating_t is not None:
        ax1.axvline(report.violating_t, color="red", ls="--", lw=0.8)
    ax1.set_xlabel("t")
    ax1.set_ylabel("CDF difference")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_sandwich(path: str, report: BoundReport, title: str = "") -> None:
    """Lower bound, target, and upper bound curves on one axis."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    _plot_curve(ax, report.lower_curve, f"lower (scale {report.b_star_pow:.4g})", "C0")
    if report.target_curve is not None:
        _plot_curve(ax, report.target_curve, "weighted sum", "C1")
    _plot_curve(ax, report.upper_curve, f"upper (scale {report.b_star_geo:.4g})", "C2")
    ax.set_xlabel("t")
    ax.set_ylabel("Pr(sum <= t)")
    verdict = "holds" if report.holds else "VIOLATED"
    ax.set_title(title or f"sandwich {verdict} (q = {report.q:g})")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
