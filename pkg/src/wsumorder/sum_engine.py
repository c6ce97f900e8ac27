"""CDF curves for weighted sums and usual-stochastic-order comparisons.

Three routes to Pr(sum_i a_i Y_i <= t):

  * ``exact_exp_mixture_cdf`` -- closed form for Exp(1) variables with
    distinct weights (the hypoexponential mixture),
  * ``quad_cdf``              -- deterministic nested quadrature, n <= 3,
  * ``mc_cdf``                -- Monte Carlo with common random numbers.

The CRN contract: the sample matrix is a function of (distribution, seed,
n_samples, n) only, laid out sample-major / component-minor and generated
in fixed 2^16-row blocks, block b from the substream (seed, b).  Two sums
estimated from the same seed therefore share every variate, so their
difference curves carry no shared noise, and results do not depend on
how many workers filled the blocks.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .distributions import (
    DistributionSpec,
    check_kr_condition,
    check_theorem1_condition,
    check_theorem2_condition,
    check_theorem4_condition,
)
from .errors import PreconditionError
from .majorization import PremiseMode, WeightVector, premise_holds
from .streams import BLOCK_SIZE, SeededStream, block_bounds

# Default comparison tolerances: z = 4 pooled standard errors per grid
# point for Monte Carlo curves; exact curves get only a 1e-12 float slack.
DEFAULT_Z = 4.0
EXACT_SLACK = 1e-12
QUAD_ABS_TOL = 1e-8
DEFAULT_GRID_POINTS = 50
GRID_QUANTILES = (0.005, 0.995)

DIRECTION_LEFT = "LeftLeqStRight"
DIRECTION_RIGHT = "RightLeqStLeft"

_METHODS = ("ExactExpMixture", "MonteCarloCRN", "Quadrature", "ExactGammaSum")
# permitted non-monotonicity per method (grid points are computed
# independently by the quadrature route)
_MONOTONE_ATOL = {
    "ExactExpMixture": 1e-12,
    "Quadrature": 10 * QUAD_ABS_TOL,
    "ExactGammaSum": 1e-12,
}


def worker_count() -> int:
    """Worker cap from WSUM_THREADS (unset/1 = serial, 0 = all cores)."""
    raw = os.environ.get("WSUM_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"WSUM_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError("WSUM_THREADS must be >= 0")
    return os.cpu_count() or 1 if n == 0 else n


@dataclass(frozen=True)
class CdfCurve:
    """Estimated or exact Pr(S <= t) along an increasing positive grid."""

    t_grid: np.ndarray
    values: np.ndarray
    std_errors: np.ndarray
    method: str
    seed: int
    n_samples: int

    def __post_init__(self):
        t = np.asarray(self.t_grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        se = np.asarray(self.std_errors, dtype=float)
        if not (t.shape == v.shape == se.shape) or t.ndim != 1:
            raise ValueError("t_grid, values, std_errors must be equal-length 1-d")
        if np.any(t <= 0) or np.any(np.diff(t) <= 0):
            raise ValueError("t_grid must be strictly increasing and positive")
        if self.method not in _METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if np.any((v < -1e-12) | (v > 1 + 1e-12)) or np.any(se < 0):
            raise ValueError("values must lie in [0, 1] and std errors be >= 0")
        slack = (
            2.0 * float(np.sum(se))
            if self.method == "MonteCarloCRN"
            else _MONOTONE_ATOL[self.method]
        )
        if np.any(np.diff(v) < -slack):
            raise ValueError("curve is decreasing beyond the method's slack")
        object.__setattr__(self, "t_grid", t)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "std_errors", se)

    def to_dict(self) -> dict:
        return {
            "t": [float(x) for x in self.t_grid],
            "value": [float(x) for x in self.values],
            "se": [float(x) for x in self.std_errors],
            "method": self.method,
            "seed": int(self.seed),
            "n_samples": int(self.n_samples),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CdfCurve":
        return cls(
            t_grid=np.asarray(d["t"], dtype=float),
            values=np.asarray(d["value"], dtype=float),
            std_errors=np.asarray(d["se"], dtype=float),
            method=d["method"],
            seed=int(d["seed"]),
            n_samples=int(d["n_samples"]),
        )

    def to_csv(self) -> str:
        lines = ["t,value,se"]
        lines += [
            f"{t!r},{v!r},{s!r}"
            for t, v, s in zip(self.t_grid, self.values, self.std_errors)
        ]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DominanceReport:
    """Pointwise CDF-dominance verdict for one ordering claim."""

    direction: str
    holds: bool
    worst_margin: float
    violating_t: float | None
    tolerance_rule: str

    def __post_init__(self):
        if self.direction not in (DIRECTION_LEFT, DIRECTION_RIGHT):
            raise ValueError(f"unknown direction {self.direction!r}")

    def to_dict(self) -> dict:
        return {
            "direction": self.direction,
            "holds": bool(self.holds),
            "worst_margin": float(self.worst_margin),
            "violating_t": None if self.violating_t is None else float(self.violating_t),
            "tolerance_rule": self.tolerance_rule,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DominanceReport":
        return cls(
            direction=d["direction"],
            holds=bool(d["holds"]),
            worst_margin=float(d["worst_margin"]),
            violating_t=None if d["violating_t"] is None else float(d["violating_t"]),
            tolerance_rule=d["tolerance_rule"],
        )


# ---------------------------------------------------------------------------
# Sampling with common random numbers.
# ---------------------------------------------------------------------------


def sample_matrix(
    d: DistributionSpec, n_samples: int, n_components: int, seed: int
) -> np.ndarray:
    """(n_samples, n_components) i.i.d. draws, a pure function of its args.

    Rows are partitioned into fixed 2^16 blocks; block b is drawn in one
    shot from the substream (seed, b), so the matrix is bit-identical no
    matter how many workers fill it.
    """
    if n_samples < 1 or n_components < 1:
        raise ValueError("need n_samples >= 1 and n_components >= 1")
    out = np.empty((n_samples, n_components), dtype=float)
    root = SeededStream(seed)
    bounds = block_bounds(n_samples, BLOCK_SIZE)

    def fill(item):
        b, (lo, hi) = item
        out[lo:hi, :] = d.sample(root.substream(b), (hi - lo, n_components))

    workers = min(worker_count(), len(bounds))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(fill, enumerate(bounds)))
    else:
        for item in enumerate(bounds):
            fill(item)
    return out


def _empirical_curve(
    sums: np.ndarray, t_grid: np.ndarray, seed: int
) -> CdfCurve:
    n = sums.size
    sorted_sums = np.sort(sums)
    values = np.searchsorted(sorted_sums, t_grid, side="right") / n
    se = np.sqrt(values * (1.0 - values) / n)
    return CdfCurve(
        t_grid=np.asarray(t_grid, dtype=float),
        values=values,
        std_errors=se,
        method="MonteCarloCRN",
        seed=seed,
        n_samples=n,
    )


def mc_cdf(
    d: DistributionSpec,
    a: WeightVector,
    t_grid,
    n_samples: int,
    seed: int,
) -> CdfCurve:
    """Empirical CDF of sum_i a_i Y_i on t_grid, binomial standard errors.

    Calls sharing (d, seed, n_samples, len(a)) reuse the identical sample
    matrix regardless of the weights, which is what makes paired
    comparisons free of shared noise.
    """
    if n_samples < 1000:
        raise ValueError("need n_samples >= 1000")
    y = sample_matrix(d, n_samples, len(a), seed)
    return _empirical_curve(y @ a.array(), np.asarray(t_grid, dtype=float), seed)


def default_t_grid(
    pooled_sums: np.ndarray,
    n_points: int = DEFAULT_GRID_POINTS,
    absolute: bool = False,
) -> np.ndarray:
    """Grid spanning the pooled sample quantiles (0.5% .. 99.5%).

    ``absolute=True`` spans quantiles of |sums| instead, for symmetric
    variables whose comparison is restricted to t > 0.
    """
    pooled = np.abs(pooled_sums) if absolute else np.asarray(pooled_sums)
    lo, hi = np.quantile(pooled, GRID_QUANTILES)
    if not 0 < lo < hi:
        raise ValueError("pooled sums do not give a positive increasing span")
    return np.linspace(lo, hi, n_points)


# ---------------------------------------------------------------------------
# Exact and quadrature routes.
# ---------------------------------------------------------------------------


def exact_exp_mixture_cdf(a: WeightVector, t: float) -> float:
    """Pr(sum a_i Y_i <= t) for Exp(1) variables, distinct positive weights.

    Closed form 1 - sum_i [a_i^(n-1) / prod_{j != i}(a_i - a_j)] e^(-t/a_i).
    """
    vals = a.array()
    if np.any(vals <= 0):
        raise ValueError("mixture form needs strictly positive weights")
    if np.unique(vals).size != vals.size:
        raise ValueError(
            "mixture form needs distinct weights; use quad_cdf for ties"
        )
    if t <= 0:
        return 0.0
    n = vals.size
    total = 0.0
    for i in range(n):
        denom = np.prod(vals[i] - np.delete(vals, i))
        total += vals[i] ** (n - 1) / denom * np.exp(-t / vals[i])
    return 1.0 - float(total)


def exact_exp_mixture_curve(a: WeightVector, t_grid) -> CdfCurve:
    t = np.asarray(t_grid, dtype=float)
    values = np.array([exact_exp_mixture_cdf(a, float(x)) for x in t])
    return CdfCurve(t, values, np.zeros_like(t), "ExactExpMixture", 0, 0)


def _upper_limit(d: DistributionSpec, cap: float) -> float:
    # integration never needs to go past the 1 - 1e-13 quantile
    return min(cap, float(d.quantile(1.0 - 1e-13)))


def _quad_point(d: DistributionSpec, weights: np.ndarray, t: float) -> float:
    """Nested adaptive quadrature of the weighted-sum CDF at one t."""
    w = np.sort(weights)[::-1]
    if t <= 0:
        return 0.0
    if w.size == 1:
        return float(d.cdf(t / w[0]))
    if w.size == 2:
        a1, a2 = w

        def integrand(y):
            return d.cdf((t - a1 * y) / a2) * d.density(y)

        hi = _upper_limit(d, t / a1)
        val, _ = integrate.quad(
            integrand, 0.0, hi, epsabs=QUAD_ABS_TOL * 0.1, epsrel=1e-10, limit=200
        )
        return float(val)
    a1, a2, a3 = w

    def outer(y1):
        rem = t - a1 * y1

        def inner(y2):
            return d.cdf((rem - a2 * y2) / a3) * d.density(y2)

        hi2 = _upper_limit(d, rem / a2)
        if hi2 <= 0:
            return 0.0
        val, _ = integrate.quad(
            inner, 0.0, hi2, epsabs=QUAD_ABS_TOL * 0.01, epsrel=1e-10, limit=200
        )
        return val * d.density(y1)

    hi1 = _upper_limit(d, t / a1)
    val, _ = integrate.quad(
        outer, 0.0, hi1, epsabs=QUAD_ABS_TOL * 0.1, epsrel=1e-9, limit=200
    )
    return float(val)


def quad_cdf(d: DistributionSpec, a: WeightVector, t_grid) -> CdfCurve:
    """Deterministic CDF curve by nested quadrature; needs support (0, inf).

    Zero weights are dropped first (they do not move the sum); at most 3
    nonzero weights are supported.
    """
    if not d.positive_support:
        raise ValueError("quadrature route requires a positive variable")
    weights = a.array()
    weights = weights[weights > 0]
    if weights.size > 3:
        raise ValueError(
            f"quadrature supports at most 3 nonzero weights, got {weights.size}"
        )
    t = np.asarray(t_grid, dtype=float)
    if weights.size == 0:
        values = np.ones_like(t)
    else:
        values = np.array([_quad_point(d, weights, float(x)) for x in t])
    values = np.clip(values, 0.0, 1.0)
    return CdfCurve(t, values, np.zeros_like(t), "Quadrature", 0, 0)


# ---------------------------------------------------------------------------
# Dominance verdicts.
# ---------------------------------------------------------------------------


def dominance_test(
    lower: CdfCurve,
    upper: CdfCurve,
    z: float = DEFAULT_Z,
    direction: str = DIRECTION_LEFT,
) -> DominanceReport:
    """Check that the ``lower`` sum is stochastically below the ``upper``.

    Stochastically smaller means the lower sum's CDF dominates pointwise,
    so the requirement at each grid point is

        lower.values - upper.values >= -z * sqrt(se_lower^2 + se_upper^2)

    with an extra 1e-12 slack so exact curves tolerate roundoff.  The
    worst margin (difference plus tolerance) and first violating t are
    recorded.
    """
    if not np.array_equal(lower.t_grid, upper.t_grid):
        raise ValueError("curves must share an identical t grid")
    pooled = np.sqrt(lower.std_errors**2 + upper.std_errors**2)
    margins = lower.values - upper.values + z * pooled + EXACT_SLACK
    worst = float(np.min(margins))
    bad = np.flatnonzero(margins < 0)
    violating_t = float(lower.t_grid[bad[0]]) if bad.size else None
    rule = f"cdf(lower) - cdf(upper) + {z:g}*pooled_se + {EXACT_SLACK:g} >= 0"
    return DominanceReport(
        direction=direction,
        holds=worst >= 0.0,
        worst_margin=worst,
        violating_t=violating_t,
        tolerance_rule=rule,
    )


def _condition_for_mode(d: DistributionSpec, mode: PremiseMode):
    if mode.kind == "thm1":
        return check_theorem1_condition(d)
    if mode.kind == "thm2":
        return check_theorem2_condition(d, mode.p)
    if mode.kind == "kr":
        return check_kr_condition(d, mode.p)
    return check_theorem4_condition(d)


_HYPOTHESIS_TEXT = {
    "thm1": "log-concavity of the density of log Y",
    "thm2": "concavity of min{0, 2/p-1} log x + log f(x^(1/p))",
    "kr": "log-concavity of the density of Y^p",
    "thm4": "symmetric log-concave density",
}


def compare_weighted_sums(
    d: DistributionSpec,
    a: WeightVector,
    b: WeightVector,
    mode: PremiseMode,
    t_grid=None,
    n_samples: int = 10**6,
    seed: int = 0,
    z: float = DEFAULT_Z,
    with_curves: bool = False,
):
    """Run the full theorem-oriented comparison of two weighted sums.

    Verifies the majorization premise and the distribution's concavity
    condition for ``mode``, estimates both CDF curves on shared samples,
    and tests the dominance the mode predicts: the a-sum is below the
    b-sum in log/negative-power/identity modes, above it in positive
    q-power mode.

    Weights are sorted (descending) before the sums are formed.  The
    sum's distribution is invariant under permuting the weights of i.i.d.
    components, and canonicalizing makes comparisons of permuted vectors
    bit-exact rather than merely equal in law.

    With ``with_curves=True`` returns (report, a_curve, b_curve).
    """
    if len(a) != len(b):
        raise ValueError("weight vectors must have equal length")
    if not premise_holds(a, b, mode):
        raise PreconditionError(
            f"majorization premise of mode {mode.label()} fails: "
            "transform(a) is not majorized by transform(b)"
        )
    condition = _condition_for_mode(d, mode)
    if not condition.holds:
        raise PreconditionError(
            f"{d.label()} fails the {mode.label()} hypothesis "
            f"({_HYPOTHESIS_TEXT[mode.kind]}): worst defect "
            f"{condition.worst_violation:.3g}"
        )

    a_sorted = np.sort(a.array())[::-1]
    b_sorted = np.sort(b.array())[::-1]
    y = sample_matrix(d, n_samples, len(a), seed)
    sums_a = y @ a_sorted
    sums_b = y @ b_sorted

    if t_grid is None:
        t_grid = default_t_grid(
            np.concatenate([sums_a, sums_b]), absolute=(mode.kind == "thm4")
        )
    else:
        t_grid = np.asarray(t_grid, dtype=float)
        if mode.kind == "thm4" and np.any(t_grid <= 0):
            raise PreconditionError(
                "identity-mode comparison is stated for t > 0 only"
            )

    curve_a = _empirical_curve(sums_a, t_grid, seed)
    curve_b = _empirical_curve(sums_b, t_grid, seed)
    if mode.kind == "thm2":
        report = dominance_test(curve_b, curve_a, z, direction=DIRECTION_RIGHT)
    else:
        report = dominance_test(curve_a, curve_b, z, direction=DIRECTION_LEFT)
    if with_curves:
        return report, curve_a, curve_b
    return report


def expected_log_capacity(
    d: DistributionSpec,
    a: WeightVector,
    n_samples: int = 10**6,
    seed: int = 0,
) -> tuple[float, float]:
    """Monte Carlo estimate of E log(1 + sum a_i Y_i) with standard error.

    Shares the CRN sample matrix, so estimates for different weight
    vectors at one seed are positively coupled.
    """
    if n_samples < 1000:
        raise ValueError("need n_samples >= 1000")
    y = sample_matrix(d, n_samples, len(a), seed)
    vals = np.log1p(y @ a.array())
    est = float(np.mean(vals))
    se = float(np.std(vals, ddof=1) / np.sqrt(n_samples))
    return est, se
