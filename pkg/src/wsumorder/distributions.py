"""Distribution families for the weighted-sum comparisons.

Seven parametric families are supported.  Five live on (0, inf) and are
the ones whose weighted sums the ordering theorems compare:

    uniform(s)        f(y) = 1/s on (0, s)
    gamma(alpha,beta) shape alpha, scale beta
    lognormal(mu,sigma)
    weibull(p)        f(y) = p y^(p-1) exp(-y^p)
    genrayleigh(nu)   f(y) = y^(nu-1) exp(-y^2/2) / (2^(nu/2-1) Gamma(nu/2))

Two symmetric families on the whole line back the identity-weight
(peakedness) comparison:

    normal0(sigma), laplace0(scale)   both symmetric about zero.

Densities are evaluated in log space throughout so tails never underflow.
The ``check_*_condition`` functions verify the log-concavity hypotheses
of the ordering theorems on quantile-spanning grids.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import PreconditionError, SpecParseError
from .streams import SeededStream

# Grid-based concavity checks: 2048 points spanning quantiles
# [1e-6, 1 - 1e-6]; defects are judged relative to max(1, |value|) so
# roundoff cannot produce false negatives.
CONDITION_GRID_SIZE = 2048
QUANTILE_EPS = 1e-6
TOL_CONCAVITY = 1e-9

_LOG_SQRT_2PI = 0.5 * np.log(2.0 * np.pi)

_FAMILY_PARAMS = {
    "uniform": ("s",),
    "gamma": ("alpha", "beta"),
    "lognormal": ("mu", "sigma"),
    "weibull": ("p",),
    "genrayleigh": ("nu",),
    "normal0": ("sigma",),
    "laplace0": ("scale",),
}

# mu of lognormal may be any real; everything else must be > 0
_SIGNED_PARAMS = {("lognormal", "mu")}

_SYMMETRIC_FAMILIES = ("normal0", "laplace0")


@dataclass(frozen=True)
class DistributionSpec:
    """A tagged distribution family with validated parameters."""

    family: str
    params: tuple[tuple[str, float], ...]

    def __post_init__(self):
        if self.family not in _FAMILY_PARAMS:
            raise ValueError(f"unknown family {self.family!r}")
        expected = _FAMILY_PARAMS[self.family]
        names = tuple(k for k, _ in self.params)
        if names != expected:
            raise ValueError(
                f"{self.family} takes parameters {expected}, got {names}"
            )
        for name, value in self.params:
            if not np.isfinite(value):
                raise ValueError(f"{self.family}: {name} must be finite")
            if value <= 0 and (self.family, name) not in _SIGNED_PARAMS:
                raise ValueError(
                    f"{self.family}: {name} must be strictly positive, got {value}"
                )

    # -- constructors -----------------------------------------------------

    @classmethod
    def uniform(cls, s: float) -> "DistributionSpec":
        return cls("uniform", (("s", float(s)),))

    @classmethod
    def gamma(cls, alpha: float, beta: float) -> "DistributionSpec":
        return cls("gamma", (("alpha", float(alpha)), ("beta", float(beta))))

    @classmethod
    def lognormal(cls, mu: float, sigma: float) -> "DistributionSpec":
        return cls("lognormal", (("mu", float(mu)), ("sigma", float(sigma))))

    @classmethod
    def weibull(cls, p: float) -> "DistributionSpec":
        return cls("weibull", (("p", float(p)),))

    @classmethod
    def genrayleigh(cls, nu: float) -> "DistributionSpec":
        return cls("genrayleigh", (("nu", float(nu)),))

    @classmethod
    def normal0(cls, sigma: float) -> "DistributionSpec":
        return cls("normal0", (("sigma", float(sigma)),))

    @classmethod
    def laplace0(cls, scale: float) -> "DistributionSpec":
        return cls("laplace0", (("scale", float(scale)),))

    @classmethod
    def exponential(cls) -> "DistributionSpec":
        """Exp(1), the gamma(1, 1) special case used all over the tests."""
        return cls.gamma(1.0, 1.0)

    # -- basic facts -------------------------------------------------------

    @property
    def param_dict(self) -> dict[str, float]:
        return dict(self.params)

    @property
    def positive_support(self) -> bool:
        return self.family not in _SYMMETRIC_FAMILIES

    @property
    def support(self) -> tuple[float, float]:
        if self.family == "uniform":
            return (0.0, self.param_dict["s"])
        if self.positive_support:
            return (0.0, np.inf)
        return (-np.inf, np.inf)

    def label(self) -> str:
        """Round-trippable spec string, e.g. ``weibull:p=2``."""
        inner = ",".join(f"{k}={v:g}" for k, v in self.params)
        return f"{self.family}:{inner}"

    # -- density / cdf / quantile -------------------------------------------

    def logpdf(self, y) -> np.ndarray:
        """Log density; -inf outside the support."""
        y = np.asarray(y, dtype=float)
        p = self.param_dict
        with np.errstate(divide="ignore", invalid="ignore"):
            if self.family == "uniform":
                inside = (y > 0) & (y < p["s"])
                out = np.where(inside, -np.log(p["s"]), -np.inf)
            elif self.family == "gamma":
                a, b = p["alpha"], p["beta"]
                val = (
                    (a - 1.0) * np.log(y)
                    - y / b
                    - special.gammaln(a)
                    - a * np.log(b)
                )
                out = np.where(y > 0, val, -np.inf)
            elif self.family == "lognormal":
                mu, sg = p["mu"], p["sigma"]
                ly = np.log(np.where(y > 0, y, 1.0))
                val = -ly - np.log(sg) - _LOG_SQRT_2PI - (ly - mu) ** 2 / (2 * sg**2)
                out = np.where(y > 0, val, -np.inf)
            elif self.family == "weibull":
                k = p["p"]
                val = np.log(k) + (k - 1.0) * np.log(y) - y**k
                out = np.where(y > 0, val, -np.inf)
            elif self.family == "genrayleigh":
                nu = p["nu"]
                log_norm = (nu / 2.0 - 1.0) * np.log(2.0) + special.gammaln(nu / 2.0)
                val = (nu - 1.0) * np.log(y) - y**2 / 2.0 - log_norm
                out = np.where(y > 0, val, -np.inf)
            elif self.family == "normal0":
                sg = p["sigma"]
                out = -_LOG_SQRT_2PI - np.log(sg) - y**2 / (2 * sg**2)
            else:  # laplace0
                b = p["scale"]
                out = -np.log(2.0 * b) - np.abs(y) / b
        return out if out.ndim else float(out)

    def density(self, y) -> np.ndarray:
        """Density f(y); zero outside the support."""
        out = np.exp(self.logpdf(y))
        return out if np.ndim(out) else float(out)

    def cdf(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        p = self.param_dict
        if self.family == "uniform":
            out = np.clip(y / p["s"], 0.0, 1.0)
        elif self.family == "gamma":
            out = np.where(y > 0, special.gammainc(p["alpha"], np.maximum(y, 0) / p["beta"]), 0.0)
        elif self.family == "lognormal":
            ly = np.log(np.where(y > 0, y, 1.0))
            out = np.where(y > 0, special.ndtr((ly - p["mu"]) / p["sigma"]), 0.0)
        elif self.family == "weibull":
            out = np.where(y > 0, -np.expm1(-np.maximum(y, 0) ** p["p"]), 0.0)
        elif self.family == "genrayleigh":
            out = np.where(y > 0, special.gammainc(p["nu"] / 2.0, np.maximum(y, 0) ** 2 / 2.0), 0.0)
        elif self.family == "normal0":
            out = special.ndtr(y / p["sigma"])
        else:  # laplace0
            b = p["scale"]
            out = np.where(y < 0, 0.5 * np.exp(y / b), 1.0 - 0.5 * np.exp(-y / b))
        return out if out.ndim else float(out)

    def quantile(self, u) -> np.ndarray:
        """Inverse CDF; closed forms for uniform/weibull/laplace0, special
        functions elsewhere."""
        u = np.asarray(u, dtype=float)
        if np.any((u <= 0) | (u >= 1)):
            raise ValueError("quantile levels must lie strictly inside (0, 1)")
        p = self.param_dict
        if self.family == "uniform":
            out = p["s"] * u
        elif self.family == "gamma":
            out = p["beta"] * special.gammaincinv(p["alpha"], u)
        elif self.family == "lognormal":
            out = np.exp(p["mu"] + p["sigma"] * special.ndtri(u))
        elif self.family == "weibull":
            out = (-np.log1p(-u)) ** (1.0 / p["p"])
        elif self.family == "genrayleigh":
            out = np.sqrt(2.0 * special.gammaincinv(p["nu"] / 2.0, u))
        elif self.family == "normal0":
            out = p["sigma"] * special.ndtri(u)
        else:  # laplace0
            b = p["scale"]
            out = np.where(u < 0.5, b * np.log(2.0 * u), -b * np.log(2.0 * (1.0 - u)))
        return out if out.ndim else float(out)

    # -- sampling ------------------------------------------------------------

    def sample(self, stream: SeededStream, size) -> np.ndarray:
        """Draw variates; deterministic given the stream's (seed, key).

        Inverse-CDF sampling where the quantile has a closed form
        (uniform, weibull, laplace0); standard transforms elsewhere.
        """
        rng = stream.generator
        p = self.param_dict
        if self.family == "uniform":
            return p["s"] * rng.random(size)
        if self.family == "gamma":
            return p["beta"] * rng.standard_gamma(p["alpha"], size)
        if self.family == "lognormal":
            return np.exp(p["mu"] + p["sigma"] * rng.standard_normal(size))
        if self.family == "weibull":
            return (-np.log1p(-rng.random(size))) ** (1.0 / p["p"])
        if self.family == "genrayleigh":
            return np.sqrt(2.0 * rng.standard_gamma(p["nu"] / 2.0, size))
        if self.family == "normal0":
            return p["sigma"] * rng.standard_normal(size)
        # laplace0
        u = rng.random(size)
        b = p["scale"]
        return np.where(u < 0.5, b * np.log(2.0 * u), -b * np.log(2.0 * (1.0 - u)))


# ---------------------------------------------------------------------------
# Spec-string parsing: the CLI and config-file contract.
# ---------------------------------------------------------------------------


def parse_distribution(text: str) -> DistributionSpec:
    """Parse ``family:key=value,...`` strings such as ``gamma:alpha=2,beta=1``."""
    head, sep, tail = text.partition(":")
    family = head.strip().lower()
    if family not in _FAMILY_PARAMS:
        raise SpecParseError(f"unknown distribution family {family!r}", text, 0)
    if not sep:
        raise SpecParseError(
            f"{family} requires parameters {_FAMILY_PARAMS[family]}", text, len(text)
        )
    values: dict[str, float] = {}
    pos = len(head) + 1
    for chunk in tail.split(","):
        key, eq, val = chunk.partition("=")
        if not eq:
            raise SpecParseError(f"expected key=value, got {chunk!r}", text, pos)
        key = key.strip()
        if key not in _FAMILY_PARAMS[family]:
            raise SpecParseError(
                f"{family} has no parameter {key!r}", text, pos
            )
        if key in values:
            raise SpecParseError(f"duplicate parameter {key!r}", text, pos)
        try:
            values[key] = float(val)
        except ValueError:
            raise SpecParseError(
                f"invalid number {val!r} for {key!r}", text, pos + len(key) + 1
            ) from None
        pos += len(chunk) + 1
    missing = [k for k in _FAMILY_PARAMS[family] if k not in values]
    if missing:
        raise SpecParseError(
            f"{family} is missing parameters {missing}", text, len(text)
        )
    try:
        return DistributionSpec(
            family, tuple((k, values[k]) for k in _FAMILY_PARAMS[family])
        )
    except ValueError as exc:
        raise SpecParseError(str(exc), text, len(head) + 1) from None


# ---------------------------------------------------------------------------
# Log-concavity condition checks.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of a grid concavity check for one theorem hypothesis."""

    condition_id: str
    grid: np.ndarray
    holds: bool
    worst_violation: float
    notes: str

    def to_dict(self) -> dict:
        return {
            "condition_id": self.condition_id,
            "holds": bool(self.holds),
            "worst_violation": float(self.worst_violation),
            "notes": self.notes,
            "grid": [float(x) for x in self.grid],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ConditionReport":
        return cls(
            condition_id=d["condition_id"],
            grid=np.asarray(d["grid"], dtype=float),
            holds=bool(d["holds"]),
            worst_violation=float(d["worst_violation"]),
            notes=d["notes"],
        )


def grid_concavity_report(
    xs: np.ndarray,
    values: np.ndarray,
    condition_id: str,
    tol: float = TOL_CONCAVITY,
) -> ConditionReport:
    """Check discrete concavity of ``values`` over the (sorted) grid ``xs``.

    At each interior point the value is compared against the chord through
    its neighbours; on a uniform grid this is the usual midpoint-concavity
    test, and the chord form stays correct on unevenly spaced grids.
    Defects are normalized by max(1, |value|); the report holds when the
    most negative normalized defect is >= -tol.  Non-finite triples
    (arguments outside a support) are skipped.
    """
    xs = np.asarray(xs, dtype=float)
    values = np.asarray(values, dtype=float)
    if xs.shape != values.shape or xs.ndim != 1 or xs.size < 3:
        raise ValueError("need matching 1-d grids with at least 3 points")
    lam = (xs[2:] - xs[1:-1]) / (xs[2:] - xs[:-2])
    chord = lam * values[:-2] + (1.0 - lam) * values[2:]
    defect = (values[1:-1] - chord) / np.maximum(1.0, np.abs(values[1:-1]))
    ok = np.isfinite(defect)
    n_skipped = int(np.size(defect) - np.count_nonzero(ok))
    if not np.any(ok):
        return ConditionReport(
            condition_id, xs, False, -np.inf,
            "no finite interior triples on the grid",
        )
    worst = float(np.min(defect[ok]))
    holds = worst >= -tol
    k = int(np.flatnonzero(ok)[np.argmin(defect[ok])]) + 1
    notes = (
        f"chord-concavity defects on {xs.size}-point grid; "
        f"worst at x={xs[k]:.6g} (triple {xs[k - 1]:.6g}, {xs[k]:.6g}, {xs[k + 1]:.6g})"
    )
    if n_skipped:
        notes += f"; {n_skipped} non-finite triples skipped"
    return ConditionReport(condition_id, xs, holds, worst, notes)


def _quantile_span(d: DistributionSpec) -> tuple[float, float]:
    lo = float(d.quantile(QUANTILE_EPS))
    hi = float(d.quantile(1.0 - QUANTILE_EPS))
    return lo, hi


def check_theorem1_condition(
    d: DistributionSpec, grid_size: int = CONDITION_GRID_SIZE
) -> ConditionReport:
    """Concavity of log f(e^x) in x, i.e. log-concavity of the density of
    log Y.  Requires support on (0, inf)."""
    if not d.positive_support:
        raise PreconditionError(
            f"{d.label()} is not supported on (0, inf); the log-weight "
            "comparison needs a positive variable"
        )
    lo, hi = _quantile_span(d)
    xs = np.linspace(np.log(lo), np.log(hi), grid_size)
    phi = d.logpdf(np.exp(xs))
    return grid_concavity_report(xs, phi, "Thm1")


def check_theorem2_condition(
    d: DistributionSpec, p: float, grid_size: int = CONDITION_GRID_SIZE
) -> ConditionReport:
    """Concavity in x > 0 of min{0, 2/p - 1} log x + log f(x^(1/p)), p > 1."""
    if not p > 1:
        raise ValueError(f"p must exceed 1, got {p}")
    if not d.positive_support:
        raise PreconditionError(
            f"{d.label()} is not supported on (0, inf)"
        )
    lo, hi = _quantile_span(d)
    xs = np.geomspace(lo**p, hi**p, grid_size)
    psi = min(0.0, 2.0 / p - 1.0) * np.log(xs) + d.logpdf(xs ** (1.0 / p))
    return grid_concavity_report(xs, psi, f"Thm2(p={p:g})")


def check_kr_condition(
    d: DistributionSpec, p: float, grid_size: int = CONDITION_GRID_SIZE
) -> ConditionReport:
    """Log-concavity of the density of Y^p for 0 < p < 1, i.e. of
    (1/p) x^(1/p-1) f(x^(1/p))."""
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if not d.positive_support:
        raise PreconditionError(f"{d.label()} is not supported on (0, inf)")
    lo, hi = _quantile_span(d)
    xs = np.geomspace(lo**p, hi**p, grid_size)
    vals = -np.log(p) + (1.0 / p - 1.0) * np.log(xs) + d.logpdf(xs ** (1.0 / p))
    return grid_concavity_report(xs, vals, f"ThmKR(p={p:g})")


def check_theorem4_condition(
    d: DistributionSpec, grid_size: int = CONDITION_GRID_SIZE
) -> ConditionReport:
    """Symmetry about zero plus log-concavity of the density itself."""
    if d.positive_support:
        raise PreconditionError(
            f"{d.label()} is not symmetric about zero; the identity-weight "
            "comparison needs a symmetric variable"
        )
    lo, hi = _quantile_span(d)
    ys = np.linspace(lo, hi, grid_size)
    vals = d.logpdf(ys)
    report = grid_concavity_report(ys, vals, "Thm4")
    asym = float(np.max(np.abs(vals - d.logpdf(-ys))))
    if asym > 1e-12:
        return ConditionReport(
            "Thm4", ys, False, -asym,
            report.notes + f"; density asymmetry {asym:.3g} exceeds 1e-12",
        )
    return report
