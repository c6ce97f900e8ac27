"""Closed-form tail bounds sandwiching a weighted sum.

Scaling the plain i.i.d. sum by the geometric mean of the weights bounds
the weighted sum's CDF from above; scaling by the q-power mean (q the
conjugate exponent) bounds it from below.  Together they sandwich
Pr(sum a_i Y_i <= t) between two curves of a single scaled sum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .distributions import (
    DistributionSpec,
    check_theorem1_condition,
    check_theorem2_condition,
)
from .errors import PreconditionError
from .majorization import WeightVector
from .sum_engine import (
    DEFAULT_Z,
    DIRECTION_LEFT,
    CdfCurve,
    DominanceReport,
    _quad_point,
    default_t_grid,
    dominance_test,
    mc_cdf,
    sample_matrix,
)


def geometric_mean_weight(b: WeightVector) -> float:
    """(prod b_i)^(1/n); rejects zeros, whose bound degenerates to 1."""
    vals = b.array()
    if np.any(vals <= 0):
        raise ValueError(
            "geometric-mean bound needs strictly positive weights "
            "(a zero weight collapses the bound to the trivial 1)"
        )
    return float(np.exp(np.mean(np.log(vals))))


def power_mean_weight(b: WeightVector, q: float) -> float:
    """(mean of q-th powers)^(1/q) for q > 1; zeros are fine."""
    if not q > 1:
        raise ValueError(f"power mean is used with q > 1, got {q}")
    vals = b.array()
    return float(np.mean(vals**q) ** (1.0 / q))


def sum_of_iid_cdf(
    d: DistributionSpec,
    n: int,
    t: float,
    n_samples: int = 10**6,
    seed: int = 0,
) -> float:
    """Pr(Y_1 + ... + Y_n <= t).

    Exact via the regularized incomplete gamma for the gamma family
    (the sum is again gamma with n-fold shape); quadrature for n <= 3
    otherwise; Monte Carlo beyond that (use :func:`sum_of_iid_curve`
    when the standard error matters).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if t <= 0:
        return 0.0
    if d.family == "gamma":
        p = d.param_dict
        return float(special.gammainc(n * p["alpha"], t / p["beta"]))
    if n == 1:
        return float(d.cdf(t))
    if n <= 3:
        return _quad_point(d, np.ones(n), t)
    y = sample_matrix(d, n_samples, n, seed)
    return float(np.mean(y.sum(axis=1) <= t))


def sum_of_iid_curve(
    d: DistributionSpec,
    n: int,
    t_grid,
    scale: float = 1.0,
    n_samples: int = 10**6,
    seed: int = 0,
) -> CdfCurve:
    """Curve of Pr(scale * (Y_1 + ... + Y_n) <= t) on t_grid.

    Deterministic (zero standard error) whenever the exact gamma-sum or
    quadrature route applies, so sandwich tests isolate Monte Carlo
    noise to the target curve.
    """
    if scale <= 0:
        raise ValueError("scale must be positive")
    t = np.asarray(t_grid, dtype=float)
    zeros = np.zeros_like(t)
    if d.family == "gamma":
        p = d.param_dict
        values = special.gammainc(n * p["alpha"], np.maximum(t / scale, 0.0) / p["beta"])
        return CdfCurve(t, values, zeros, "ExactGammaSum", 0, 0)
    if n == 1:
        values = np.clip(d.cdf(t / scale), 0.0, 1.0)
        return CdfCurve(t, values, zeros, "Quadrature", 0, 0)
    if n <= 3:
        values = np.clip(
            [_quad_point(d, np.ones(n), float(x) / scale) for x in t], 0.0, 1.0
        )
        return CdfCurve(t, np.asarray(values), zeros, "Quadrature", 0, 0)
    y = sample_matrix(d, n_samples, n, seed)
    sums = scale * y.sum(axis=1)
    values = np.searchsorted(np.sort(sums), t, side="right") / n_samples
    se = np.sqrt(values * (1.0 - values) / n_samples)
    return CdfCurve(t, values, se, "MonteCarloCRN", seed, n_samples)


@dataclass(frozen=True)
class BoundReport:
    """Two bound curves, the target they sandwich, and the verdicts."""

    b_star_geo: float
    b_star_pow: float
    q: float
    upper_curve: CdfCurve
    lower_curve: CdfCurve
    target_curve: CdfCurve | None
    upper_verdict: DominanceReport
    lower_verdict: DominanceReport

    def __post_init__(self):
        if self.b_star_geo > self.b_star_pow + 1e-12:
            raise ValueError(
                "geometric mean exceeds the q-power mean; means are inconsistent"
            )

    @property
    def holds(self) -> bool:
        return self.upper_verdict.holds and self.lower_verdict.holds

    def to_dict(self) -> dict:
        return {
            "b_star_geo": float(self.b_star_geo),
            "b_star_pow": float(self.b_star_pow),
            "q": float(self.q),
            "holds": bool(self.holds),
            "upper_curve": self.upper_curve.to_dict(),
            "lower_curve": self.lower_curve.to_dict(),
            "target_curve": None if self.target_curve is None else self.target_curve.to_dict(),
            "upper_verdict": self.upper_verdict.to_dict(),
            "lower_verdict": self.lower_verdict.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoundReport":
        return cls(
            b_star_geo=float(d["b_star_geo"]),
            b_star_pow=float(d["b_star_pow"]),
            q=float(d["q"]),
            upper_curve=CdfCurve.from_dict(d["upper_curve"]),
            lower_curve=CdfCurve.from_dict(d["lower_curve"]),
            target_curve=None
            if d["target_curve"] is None
            else CdfCurve.from_dict(d["target_curve"]),
            upper_verdict=DominanceReport.from_dict(d["upper_verdict"]),
            lower_verdict=DominanceReport.from_dict(d["lower_verdict"]),
        )

    def to_csv(self) -> str:
        lines = ["t,lower,target,upper"]
        target = (
            self.target_curve.values
            if self.target_curve is not None
            else np.full_like(self.upper_curve.values, np.nan)
        )
        for t, lo, tg, up in zip(
            self.upper_curve.t_grid,
            self.lower_curve.values,
            target,
            self.upper_curve.values,
        ):
            lines.append(f"{t!r},{lo!r},{tg!r},{up!r}")
        return "\n".join(lines) + "\n"


def sandwich(
    d: DistributionSpec,
    a: WeightVector,
    q: float,
    t_grid=None,
    n_samples: int = 10**6,
    seed: int = 0,
    z: float = DEFAULT_Z,
) -> BoundReport:
    """Two-sided bound report for Pr(sum a_i Y_i <= t).

    Applicability requires both concavity hypotheses: log-concavity of
    the density of log Y (upper bound via the geometric mean) and the
    power condition at p = q/(q-1) (lower bound via the q-power mean).
    The bound curves are deterministic where possible; the target curve
    is Monte Carlo on the shared sample matrix.
    """
    if not q > 1:
        raise ValueError(f"need q > 1, got {q}")
    p = q / (q - 1.0)
    cond1 = check_theorem1_condition(d)
    if not cond1.holds:
        raise PreconditionError(
            f"{d.label()} fails log-concavity of the density of log Y; "
            "the geometric-mean bound does not apply"
        )
    cond2 = check_theorem2_condition(d, p)
    if not cond2.holds:
        raise PreconditionError(
            f"{d.label()} fails the power condition at p={p:g}; "
            "the q-power-mean bound does not apply"
        )
    b_geo = geometric_mean_weight(a)
    b_pow = power_mean_weight(a, q)
    n = len(a)

    y = sample_matrix(d, n_samples, n, seed)
    sums = y @ a.array()
    if t_grid is None:
        t_grid = default_t_grid(sums)
    else:
        t_grid = np.asarray(t_grid, dtype=float)
    target = mc_cdf(d, a, t_grid, n_samples, seed)

    upper = sum_of_iid_curve(d, n, t_grid, scale=b_geo, n_samples=n_samples, seed=seed)
    lower = sum_of_iid_curve(d, n, t_grid, scale=b_pow, n_samples=n_samples, seed=seed)

    # b_geo-scaled sum is stochastically below the target, target below
    # the b_pow-scaled sum; both claims are CDF dominance tests.
    upper_verdict = dominance_test(upper, target, z, direction=DIRECTION_LEFT)
    lower_verdict = dominance_test(target, lower, z, direction=DIRECTION_LEFT)
    return BoundReport(
        b_star_geo=b_geo,
        b_star_pow=b_pow,
        q=q,
        upper_curve=upper,
        lower_curve=lower,
        target_curve=target,
        upper_verdict=upper_verdict,
        lower_verdict=lower_verdict,
    )
