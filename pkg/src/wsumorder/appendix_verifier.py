"""Numerical verification of the proof machinery behind the comparisons.

The power-mode comparison reduces to showing that

    h(beta) = Pr(beta^(1/q) Y_1 + (1-beta)^(1/q) Y_2 <= t)

increases on beta in [1/2, 1).  The reduction runs through an auxiliary
convex function L, an implicit level-set mapping y -> ytilde with
L(ytilde) = L(y), a derivative identity for that mapping, divided
differences Q_alpha, and a chain of pointwise inequalities (named Claim1
through Claim3, the key inequality, and the h' integrand sign below).
Every one of those objects is evaluated here on dense grids and reported
with its worst margin.  The log-mode reduction has its own kernel
inequality, checked by :func:`verify_thm1_kernel`.

All claims are exact inequalities; tolerances cover floating point only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import (
    DistributionSpec,
    check_theorem1_condition,
    check_theorem2_condition,
)
from .errors import PreconditionError
from .majorization import WeightVector
from .sum_engine import quad_cdf

TOL_CLAIM = 1e-9
RESIDUAL_TOL = 1e-10          # |L(ytilde) - L(y)| relative to max(1, L(y))
MAP_TOL = 1e-9                # level-set equation in power form
FD_SWITCH = 1e-6              # |y - y0| below this (times y0) uses finite differences
BISECT_BRACKET_EPS = 1e-12
BISECT_MAX_ITER = 200
H_MONO_TOL = 1e-7             # quadrature tolerance for h(beta) monotonicity

DEFAULT_Y_RESOLUTION = 512
DEFAULT_BETAS = (0.5 + 1e-6, 0.55, 0.6, 0.75, 0.9, 0.99)
DEFAULT_PS = (1.5, 2.0, 3.0, 5.0)
DEFAULT_TS = (0.5, 1.0, 2.0, 5.0)
DEFAULT_KERNEL_BETAS = (0.25, 0.5, 0.75, 0.9, 1.0)

CLAIM_IDS = (
    "Thm1Kernel",
    "HBetaMonotone1",
    "HBetaMonotone2",
    "Claim1",
    "Claim2",
    "Claim3uv1",
    "Claim3uv2",
    "KeyIneq",
    "QAlphaMono",
    "HPrimeIntegrand",
)


@dataclass(frozen=True)
class MappingContext:
    """Fixed (p, beta, t) with the derived quantities of the reduction.

    q is the conjugate exponent p/(p-1); the turning point y0 and right
    endpoint y1 bracket the level-set mapping; delta = min{0, 2-p}
    weights the density products in the final inequality.
    """

    p: float
    beta: float
    t: float

    def __post_init__(self):
        if not self.p > 1:
            raise ValueError(f"need p > 1, got {self.p}")
        if not 0.5 <= self.beta < 1:
            raise ValueError(f"need beta in [1/2, 1), got {self.beta}")
        if not self.t > 0:
            raise ValueError(f"need t > 0, got {self.t}")

    @property
    def q(self) -> float:
        return self.p / (self.p - 1.0)

    @property
    def y0(self) -> float:
        return self.t * (1.0 - self.beta) ** (1.0 / self.p)

    @property
    def y1(self) -> float:
        return self.t * (1.0 - self.beta) ** (-1.0 / self.q)

    @property
    def delta(self) -> float:
        return min(0.0, 2.0 - self.p)

    def label(self) -> str:
        return f"p={self.p:g}, beta={self.beta:g}, t={self.t:g}"


@dataclass(frozen=True)
class ClaimReport:
    """Worst-margin verdict for one verified inequality or monotonicity."""

    claim_id: str
    grid: str
    holds: bool
    worst_margin: float
    worst_point: tuple[float, ...] | None
    tol: float = TOL_CLAIM
    notes: str = ""

    def __post_init__(self):
        if self.claim_id not in CLAIM_IDS:
            raise ValueError(f"unknown claim id {self.claim_id!r}")

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "grid": self.grid,
            "holds": bool(self.holds),
            "worst_margin": float(self.worst_margin),
            "worst_point": None
            if self.worst_point is None
            else [float(x) for x in self.worst_point],
            "tol": float(self.tol),
            "notes": self.notes,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ClaimReport":
        return cls(
            claim_id=d["claim_id"],
            grid=d["grid"],
            holds=bool(d["holds"]),
            worst_margin=float(d["worst_margin"]),
            worst_point=None
            if d["worst_point"] is None
            else tuple(float(x) for x in d["worst_point"]),
            tol=float(d.get("tol", TOL_CLAIM)),
            notes=d.get("notes", ""),
        )


def _report(claim_id, grid, margins, points, tol=TOL_CLAIM, notes="") -> ClaimReport:
    margins = np.asarray(margins, dtype=float)
    k = int(np.argmin(margins))
    worst = float(margins[k])
    return ClaimReport(
        claim_id=claim_id,
        grid=grid,
        holds=worst >= -tol,
        worst_margin=worst,
        worst_point=tuple(float(x) for x in points[k]),
        tol=tol,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# The auxiliary function L and the level-set mapping.
# ---------------------------------------------------------------------------


def big_l(ctx: MappingContext, y):
    """L(y) = beta^(p/q) y^p + (1-beta)^(p/q) (y1-y)^p on [0, y1].

    Strictly convex with its unique minimum at y0.
    """
    arr = np.asarray(y, dtype=float)
    if np.any((arr < 0) | (arr > ctx.y1)):
        raise ValueError(f"y must lie in [0, {ctx.y1!r}]")
    pq = ctx.p / ctx.q
    out = ctx.beta**pq * arr**ctx.p + (1.0 - ctx.beta) ** pq * (ctx.y1 - arr) ** ctx.p
    return out if out.ndim else float(out)


def x_of_y(ctx: MappingContext, y):
    """x(y) = (1/beta - 1)^(1/q) (y1 - y) for y in (0, y1)."""
    arr = np.asarray(y, dtype=float)
    if np.any((arr <= 0) | (arr >= ctx.y1)):
        raise ValueError(f"y must lie strictly inside (0, {ctx.y1!r})")
    out = (1.0 / ctx.beta - 1.0) ** (1.0 / ctx.q) * (ctx.y1 - arr)
    return out if out.ndim else float(out)


def _interior(lo: float, hi: float, resolution: int) -> np.ndarray:
    return np.linspace(lo, hi, resolution + 2)[1:-1]


def tilde_map_grid(ctx: MappingContext, ys: np.ndarray) -> np.ndarray:
    """Vectorized level-set partner: the unique root of L(.) = L(y) on
    (y0, y1), found by bisection on the strictly increasing branch."""
    ys = np.asarray(ys, dtype=float)
    if np.any((ys <= 0) | (ys >= ctx.y0)):
        raise ValueError(f"y must lie strictly inside (0, {ctx.y0!r})")
    target = big_l(ctx, ys)
    hi_edge = ctx.y1 * (1.0 - BISECT_BRACKET_EPS)
    if big_l(ctx, hi_edge) < float(np.max(target)):
        # cannot happen for beta in [1/2, 1): L(0) <= L(y1)
        raise ArithmeticError("level-set target exceeds the increasing branch")
    lo = np.full_like(ys, ctx.y0 * (1.0 + BISECT_BRACKET_EPS))
    hi = np.full_like(ys, hi_edge)
    for _ in range(BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        below = big_l(ctx, mid) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def tilde_map(ctx: MappingContext, y: float) -> float:
    """Scalar level-set partner of y in (0, y0); lands in (y0, y1)."""
    return float(tilde_map_grid(ctx, np.asarray([float(y)]))[0])


def _tilde_derivative_grid(
    ctx: MappingContext, ys: np.ndarray, yt: np.ndarray
) -> tuple[np.ndarray, int]:
    """Derivative of the mapping at each y (with partners yt).

    Uses the implicit-function formula away from y0; the formula is 0/0
    at y0, so points with |y - y0| < 1e-6 y0 fall back to a central
    finite difference.  Returns (values, number of fallback points).
    """
    pq = ctx.p / ctx.q
    b, y1 = ctx.beta, ctx.y1
    num = (b * ys) ** pq - ((1.0 - b) * (y1 - ys)) ** pq
    den = (b * yt) ** pq - ((1.0 - b) * (y1 - yt)) ** pq
    with np.errstate(divide="ignore", invalid="ignore"):
        out = num / den
    near = np.abs(ys - ctx.y0) < FD_SWITCH * ctx.y0
    n_fd = int(np.count_nonzero(near))
    if n_fd:
        idx = np.flatnonzero(near)
        h = np.minimum(FD_SWITCH * ctx.y0, 0.5 * (ctx.y0 - ys[idx]))
        h = np.minimum(h, 0.5 * ys[idx])
        plus = tilde_map_grid(ctx, ys[idx] + h)
        minus = tilde_map_grid(ctx, ys[idx] - h)
        out[idx] = (plus - minus) / (2.0 * h)
    return out, n_fd


def tilde_derivative(ctx: MappingContext, y: float) -> float:
    """d(ytilde)/dy at y in (0, y0); negative (the mapping decreases)."""
    ys = np.asarray([float(y)])
    yt = tilde_map_grid(ctx, ys)
    val, _ = _tilde_derivative_grid(ctx, ys, yt)
    return float(val[0])


# ---------------------------------------------------------------------------
# Divided differences.
# ---------------------------------------------------------------------------


def q_alpha(alpha: float, u: float, v: float) -> float:
    """Divided difference (u^alpha - v^alpha)/(u - v) with the analytic
    diagonal value alpha * u^(alpha-1) when u and v (nearly) coincide."""
    if not alpha > 0:
        raise ValueError(f"need alpha > 0, got {alpha}")
    if u <= 0 or v <= 0:
        raise ValueError("arguments must be strictly positive")
    if abs(u - v) <= 1e-12 * max(u, v):
        return float(alpha * u ** (alpha - 1.0))
    return float((u**alpha - v**alpha) / (u - v))


def verify_qalpha_monotonicity(
    alpha_grid=None, uv_grid=None
) -> ClaimReport:
    """Q_alpha decreases in each argument for alpha <= 1, increases for
    alpha > 1; checked by adjacent comparisons on a rectangular grid."""
    alphas = np.asarray(
        (0.25, 0.5, 0.75, 1.0, 1.5, 2.5) if alpha_grid is None else alpha_grid,
        dtype=float,
    )
    uv = np.asarray(
        np.linspace(0.1, 10.0, 34) if uv_grid is None else uv_grid, dtype=float
    )
    margins, points = [], []
    for alpha in alphas:
        m = np.array([[q_alpha(alpha, u, v) for v in uv] for u in uv])
        sign = 1.0 if alpha <= 1.0 else -1.0
        du = sign * (m[:-1, :] - m[1:, :])  # expected >= 0
        dv = sign * (m[:, :-1] - m[:, 1:])
        scale = np.maximum(1.0, np.abs(m))
        for diff, sc, axis in ((du, scale[:-1, :], 0), (dv, scale[:, :-1], 1)):
            rel = diff / sc
            i, j = np.unravel_index(np.argmin(rel), rel.shape)
            margins.append(float(rel[i, j]))
            points.append((alpha, uv[i], uv[j]))
    return _report(
        "QAlphaMono",
        f"alpha in {list(alphas)}, u,v on {uv.size}-point grid "
        f"[{uv[0]:g}, {uv[-1]:g}]",
        margins,
        points,
    )


# ---------------------------------------------------------------------------
# Claim reports.
# ---------------------------------------------------------------------------


def verify_claim1(
    ctx: MappingContext, y_resolution: int = DEFAULT_Y_RESOLUTION
) -> ClaimReport:
    """Existence/uniqueness of the level-set partner.

    Verified through its ingredients: L strictly decreases on (0, y0) and
    strictly increases on (y0, y1), L(0) <= L(y1), every computed partner
    lies strictly inside (y0, y1), and both the L-residual and the
    power-form level-set equation hold to tight tolerances.
    """
    ys = _interior(0.0, ctx.y0, y_resolution)
    yt = tilde_map_grid(ctx, ys)
    l_y = big_l(ctx, ys)
    l_t = big_l(ctx, yt)

    margins, points = [], []
    # branch monotonicity (normalized adjacent differences)
    left = _interior(0.0, ctx.y0, y_resolution)
    right = _interior(ctx.y0, ctx.y1, y_resolution)
    l_left, l_right = big_l(ctx, left), big_l(ctx, right)
    dec = (l_left[:-1] - l_left[1:]) / np.maximum(1.0, np.abs(l_left[:-1]))
    inc = (l_right[1:] - l_right[:-1]) / np.maximum(1.0, np.abs(l_right[1:]))
    margins.append(float(np.min(dec)))
    points.append((ctx.p, ctx.beta, ctx.t, left[int(np.argmin(dec))]))
    margins.append(float(np.min(inc)))
    points.append((ctx.p, ctx.beta, ctx.t, right[int(np.argmin(inc))]))
    # endpoint ordering L(0) <= L(y1)
    l0, l1 = big_l(ctx, 0.0), big_l(ctx, ctx.y1)
    margins.append((l1 - l0) / max(1.0, l1))
    points.append((ctx.p, ctx.beta, ctx.t, 0.0))
    # partners interior
    margins.append(float(np.min((yt - ctx.y0) / ctx.y1)))
    points.append((ctx.p, ctx.beta, ctx.t, ys[int(np.argmin(yt - ctx.y0))]))
    margins.append(float(np.min((ctx.y1 - yt) / ctx.y1)))
    points.append((ctx.p, ctx.beta, ctx.t, ys[int(np.argmax(yt))]))
    # residuals, as slack left under their own tolerances
    resid = np.abs(l_t - l_y) / np.maximum(1.0, l_y)
    margins.append(float(np.min(RESIDUAL_TOL - resid)))
    points.append((ctx.p, ctx.beta, ctx.t, ys[int(np.argmax(resid))]))
    map_resid = np.abs(
        ys**ctx.p + x_of_y(ctx, ys) ** ctx.p - yt**ctx.p - x_of_y(ctx, yt) ** ctx.p
    ) / max(1.0, ctx.y1**ctx.p)
    margins.append(float(np.min(MAP_TOL - map_resid)))
    points.append((ctx.p, ctx.beta, ctx.t, ys[int(np.argmax(map_resid))]))

    return _report(
        "Claim1",
        f"{ctx.label()}; {y_resolution} interior points each side of y0",
        margins,
        points,
        notes=(
            f"max |L(ytilde)-L(y)| residual {float(np.max(resid)):.3g} (rel), "
            f"max power-form residual {float(np.max(map_resid)):.3g} (rel)"
        ),
    )


def verify_claim2(
    ctx: MappingContext, y_resolution: int = DEFAULT_Y_RESOLUTION
) -> ClaimReport:
    """|d(ytilde)/dy| >= (x(yt) yt / (x(y) y))^delta * (y0-y)/(yt-y0)."""
    ys = _interior(0.0, ctx.y0, y_resolution)
    yt = tilde_map_grid(ctx, ys)
    deriv, n_fd = _tilde_derivative_grid(ctx, ys, yt)
    lhs = np.abs(deriv)
    ratio = (x_of_y(ctx, yt) * yt) / (x_of_y(ctx, ys) * ys)
    rhs = ratio**ctx.delta * (ctx.y0 - ys) / (yt - ctx.y0)
    margins = (lhs - rhs) / np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
    points = [(ctx.p, ctx.beta, ctx.t, y) for y in ys]
    notes = f"{n_fd} points used finite-difference derivative" if n_fd else ""
    return _report(
        "Claim2",
        f"{ctx.label()}; {y_resolution} interior points of (0, y0)",
        margins,
        points,
        notes=notes,
    )


def _keyineq_margins(ctx: MappingContext, ys: np.ndarray) -> np.ndarray:
    # L((1/beta - 1)(y1 - y)) <= L(y); the argument stays inside [0, y1]
    # because beta >= 1/2
    arg = (1.0 / ctx.beta - 1.0) * (ctx.y1 - ys)
    l_arg = big_l(ctx, arg)
    l_y = big_l(ctx, ys)
    return (l_y - l_arg) / np.maximum(1.0, np.maximum(np.abs(l_y), np.abs(l_arg)))


def verify_keyineq(
    ctx: MappingContext, y_resolution: int = DEFAULT_Y_RESOLUTION
) -> ClaimReport:
    """The key inequality L((1/beta-1)(y1-y)) <= L(y) on (0, y0)."""
    ys = _interior(0.0, ctx.y0, y_resolution)
    margins = _keyineq_margins(ctx, ys)
    points = [(ctx.p, ctx.beta, ctx.t, y) for y in ys]
    return _report(
        "KeyIneq",
        f"{ctx.label()}; {y_resolution} interior points of (0, y0)",
        margins,
        points,
    )


def verify_claim3(
    ctx: MappingContext, y_resolution: int = DEFAULT_Y_RESOLUTION
) -> tuple[ClaimReport, ClaimReport]:
    """beta*yt >= (1-beta)(y1-y) and beta*y <= (1-beta)(y1-yt) on (0, y0).

    The intermediate key inequality is evaluated on the same grid; its
    worst margin is noted (and reported separately by verify_keyineq).
    """
    ys = _interior(0.0, ctx.y0, y_resolution)
    yt = tilde_map_grid(ctx, ys)
    points = [(ctx.p, ctx.beta, ctx.t, y) for y in ys]
    key_worst = float(np.min(_keyineq_margins(ctx, ys)))
    notes = f"key-inequality worst margin on the same grid: {key_worst:.3g}"

    lhs1 = ctx.beta * yt
    rhs1 = (1.0 - ctx.beta) * (ctx.y1 - ys)
    m1 = (lhs1 - rhs1) / np.maximum(1.0, np.maximum(lhs1, rhs1))
    uv1 = _report(
        "Claim3uv1",
        f"{ctx.label()}; {y_resolution} interior points of (0, y0)",
        m1,
        points,
        notes=notes,
    )

    lhs2 = (1.0 - ctx.beta) * (ctx.y1 - yt)
    rhs2 = ctx.beta * ys
    m2 = (lhs2 - rhs2) / np.maximum(1.0, np.maximum(lhs2, rhs2))
    uv2 = _report(
        "Claim3uv2",
        f"{ctx.label()}; {y_resolution} interior points of (0, y0)",
        m2,
        points,
        notes=notes,
    )
    return uv1, uv2


def verify_thm1_kernel(
    d: DistributionSpec,
    beta_grid=None,
    t_grid=None,
    y_resolution: int = DEFAULT_Y_RESOLUTION,
) -> ClaimReport:
    """f(t*beta - beta^2 y) f(y) >= f(beta^2 y) f(t/beta - y) on
    0 < y < t/(2 beta), compared as sums of log densities.

    This is the sign that makes h(beta) = Pr(Y_1/beta + beta Y_2 <= t)
    increase; it needs the log-Y log-concavity hypothesis.
    """
    condition = check_theorem1_condition(d)
    if not condition.holds:
        raise PreconditionError(
            f"{d.label()} fails log-concavity of the density of log Y"
        )
    betas = np.asarray(
        DEFAULT_KERNEL_BETAS if beta_grid is None else beta_grid, dtype=float
    )
    if np.any((betas <= 0) | (betas > 1)):
        raise ValueError("beta grid must lie in (0, 1]")
    ts = np.asarray(DEFAULT_TS if t_grid is None else t_grid, dtype=float)
    margins, points = [], []
    n_masked = 0
    for beta in betas:
        for t in ts:
            ys = _interior(0.0, t / (2.0 * beta), y_resolution)
            lhs = d.logpdf(t * beta - beta**2 * ys) + d.logpdf(ys)
            rhs = d.logpdf(beta**2 * ys) + d.logpdf(t / beta - ys)
            ok = np.isfinite(lhs) & np.isfinite(rhs)
            n_masked += int(ys.size - np.count_nonzero(ok))
            if not np.any(ok):
                continue
            rel = (lhs[ok] - rhs[ok]) / np.maximum(
                1.0, np.maximum(np.abs(lhs[ok]), np.abs(rhs[ok]))
            )
            k = int(np.argmin(rel))
            margins.append(float(rel[k]))
            points.append((beta, t, float(ys[ok][k])))
    notes = f"{n_masked} grid points outside the support skipped" if n_masked else ""
    return _report(
        "Thm1Kernel",
        f"{d.label()}; beta in {list(betas)}, t in {list(ts)}, "
        f"{y_resolution} y-points",
        margins,
        points,
        notes=notes,
    )


def hprime_integrand_check(
    ctx: MappingContext,
    d: DistributionSpec,
    y_resolution: int = DEFAULT_Y_RESOLUTION,
) -> ClaimReport:
    """(x(yt) yt)^delta f(x(yt)) f(yt) >= (x(y) y)^delta f(x(y)) f(y).

    The sign of the bracket in the derivative of h(beta); needs the power
    condition at ctx.p.  Compared as sums of logs where all densities are
    positive.
    """
    condition = check_theorem2_condition(d, ctx.p)
    if not condition.holds:
        raise PreconditionError(
            f"{d.label()} fails the power condition at p={ctx.p:g}"
        )
    ys = _interior(0.0, ctx.y0, y_resolution)
    yt = tilde_map_grid(ctx, ys)
    xs, xt = x_of_y(ctx, ys), x_of_y(ctx, yt)
    lhs = ctx.delta * np.log(xt * yt) + d.logpdf(xt) + d.logpdf(yt)
    rhs = ctx.delta * np.log(xs * ys) + d.logpdf(xs) + d.logpdf(ys)
    ok = np.isfinite(lhs) & np.isfinite(rhs)
    n_masked = int(ys.size - np.count_nonzero(ok))
    if not np.any(ok):
        return ClaimReport(
            "HPrimeIntegrand",
            f"{d.label()}; {ctx.label()}",
            False,
            -np.inf,
            None,
            notes="no grid points with positive densities",
        )
    rel = (lhs[ok] - rhs[ok]) / np.maximum(
        1.0, np.maximum(np.abs(lhs[ok]), np.abs(rhs[ok]))
    )
    points = [(ctx.p, ctx.beta, ctx.t, y) for y in ys[ok]]
    notes = f"{n_masked} grid points outside the support skipped" if n_masked else ""
    return _report(
        "HPrimeIntegrand",
        f"{d.label()}; {ctx.label()}; {y_resolution} interior points",
        rel,
        points,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# The h(beta) reductions themselves.
# ---------------------------------------------------------------------------


def h_beta_thm1(d: DistributionSpec, t: float, beta: float) -> float:
    """Pr(Y_1/beta + beta Y_2 <= t) by two-dimensional quadrature.

    Nondecreasing in beta on (0, 1] under the log-Y log-concavity
    hypothesis, which is verified before computing.
    """
    if not 0 < beta <= 1:
        raise ValueError(f"need beta in (0, 1], got {beta}")
    condition = check_theorem1_condition(d)
    if not condition.holds:
        raise PreconditionError(
            f"{d.label()} fails log-concavity of the density of log Y"
        )
    w = WeightVector.of((1.0 / beta, beta))
    return float(quad_cdf(d, w, [t]).values[0])


def h_beta_thm2(d: DistributionSpec, p: float, t: float, beta: float) -> float:
    """Pr(beta^(1/q) Y_1 + (1-beta)^(1/q) Y_2 <= t), q conjugate to p.

    Nondecreasing in beta on [1/2, 1) under the power condition at p,
    which is verified before computing.
    """
    if not 0.5 <= beta < 1:
        raise ValueError(f"need beta in [1/2, 1), got {beta}")
    condition = check_theorem2_condition(d, p)
    if not condition.holds:
        raise PreconditionError(
            f"{d.label()} fails the power condition at p={p:g}"
        )
    q = p / (p - 1.0)
    w = WeightVector.of((beta ** (1.0 / q), (1.0 - beta) ** (1.0 / q)))
    return float(quad_cdf(d, w, [t]).values[0])


def verify_h_monotone_thm1(
    d: DistributionSpec, t: float, n_points: int = 20
) -> ClaimReport:
    """h(beta) of the log-mode reduction is nondecreasing on (0, 1]."""
    betas = np.linspace(0.05, 1.0, n_points)
    vals = np.array([h_beta_thm1(d, t, b) for b in betas])
    diffs = np.diff(vals)
    points = [(float(b), t) for b in betas[1:]]
    return _report(
        "HBetaMonotone1",
        f"{d.label()}; t={t:g}; {n_points}-point beta grid on (0, 1]",
        diffs,
        points,
        tol=H_MONO_TOL,
    )


def verify_h_monotone_thm2(
    d: DistributionSpec, p: float, t: float, n_points: int = 20
) -> ClaimReport:
    """h(beta) of the power-mode reduction is nondecreasing on [1/2, 1)."""
    betas = np.linspace(0.5, 0.99, n_points)
    vals = np.array([h_beta_thm2(d, p, t, b) for b in betas])
    diffs = np.diff(vals)
    points = [(float(b), p, t) for b in betas[1:]]
    return _report(
        "HBetaMonotone2",
        f"{d.label()}; p={p:g}, t={t:g}; {n_points}-point beta grid on [1/2, 1)",
        diffs,
        points,
        tol=H_MONO_TOL,
    )


# ---------------------------------------------------------------------------
# Bundled run for the CLI and the acceptance gate.
# ---------------------------------------------------------------------------


def default_contexts(
    ps=DEFAULT_PS, betas=DEFAULT_BETAS, ts=DEFAULT_TS
) -> list[MappingContext]:
    return [
        MappingContext(p=p, beta=b, t=t) for p in ps for b in betas for t in ts
    ]


def run_all_claims(
    contexts: list[MappingContext] | None = None,
    y_resolution: int = DEFAULT_Y_RESOLUTION,
    kernel_dists: tuple[DistributionSpec, ...] | None = None,
    include_h_monotone: bool = False,
) -> list[ClaimReport]:
    """Every claim report over the default (or given) grids.

    Per context: Claim1, Claim2, Claim3 (both parts), the key inequality,
    and the h' integrand sign with a matching-parameter Weibull density.
    Plus one divided-difference monotonicity report and one kernel report
    per distribution.  h(beta) monotonicity reports are optional (they
    are the slow quadrature-based checks).
    """
    if contexts is None:
        contexts = default_contexts()
    if kernel_dists is None:
        kernel_dists = (
            DistributionSpec.gamma(2.0, 1.0),
            DistributionSpec.weibull(2.0),
            DistributionSpec.lognormal(0.0, 1.0),
        )
    reports: list[ClaimReport] = [verify_qalpha_monotonicity()]
    for d in kernel_dists:
        reports.append(verify_thm1_kernel(d, y_resolution=y_resolution))
    for ctx in contexts:
        reports.append(verify_claim1(ctx, y_resolution))
        reports.append(verify_claim2(ctx, y_resolution))
        uv1, uv2 = verify_claim3(ctx, y_resolution)
        reports.extend((uv1, uv2))
        reports.append(verify_keyineq(ctx, y_resolution))
        reports.append(
            hprime_integrand_check(ctx, DistributionSpec.weibull(ctx.p), y_resolution)
        )
    if include_h_monotone:
        for d in (DistributionSpec.gamma(1.0, 1.0), DistributionSpec.lognormal(0.0, 1.0)):
            reports.append(verify_h_monotone_thm1(d, t=2.0))
        for d, p in ((DistributionSpec.weibull(2.0), 2.0), (DistributionSpec.weibull(3.0), 3.0)):
            reports.append(verify_h_monotone_thm2(d, p, t=2.0))
    return reports
