"""Majorization predicates and the weight transforms feeding them.

A vector b majorizes a (written a < b here, "a is majorized by b") when
both have equal totals and every top-k partial sum of b dominates the
corresponding partial sum of a.  The ordering theorems each compare
weighted sums after pushing the weights through a transform: elementwise
log, an elementwise q-th power, or nothing at all.  Random premise pairs
are generated by applying two-coordinate averaging (T-transform) steps,
which generate the entire majorization order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .streams import SeededStream

# Partial-sum comparisons tolerate 1e-9 relative to the vector scale so
# float accumulation can never flip the predicate.
TOL_SUM_REL = 1e-9


@dataclass(frozen=True)
class WeightVector:
    """Non-negative weights, length >= 2; log mode needs strict positivity."""

    values: tuple[float, ...]

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size < 2:
            raise ValueError("weight vectors need at least 2 entries")
        if not np.all(np.isfinite(vals)):
            raise ValueError("weights must be finite")
        if np.any(vals < 0):
            raise ValueError("weights must be non-negative")

    @classmethod
    def of(cls, values) -> "WeightVector":
        return cls(tuple(float(v) for v in values))

    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def __len__(self) -> int:
        return len(self.values)


def parse_weights(text: str) -> WeightVector:
    """Parse comma-separated decimals, e.g. ``2,0.5``."""
    try:
        return WeightVector.of(float(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad weight vector {text!r}: {exc}") from None


@dataclass(frozen=True)
class PremiseMode:
    """Which transform a theorem applies to the weights before majorizing.

    kind is one of ``thm1`` (log), ``thm2`` (power q = p/(p-1) > 1 from
    p > 1), ``kr`` (power q = p/(p-1) < 0 from 0 < p < 1) or ``thm4``
    (identity).  ``q`` is None for thm1/thm4.
    """

    kind: str
    q: float | None = None

    def __post_init__(self):
        if self.kind not in ("thm1", "thm2", "kr", "thm4"):
            raise ValueError(f"unknown premise mode {self.kind!r}")
        if self.kind == "thm2":
            if self.q is None or not self.q > 1:
                raise ValueError("thm2 mode requires conjugate exponent q > 1")
        elif self.kind == "kr":
            if self.q is None or not self.q < 0:
                raise ValueError("kr mode requires conjugate exponent q < 0")
        elif self.q is not None:
            raise ValueError(f"{self.kind} mode takes no exponent")

    @classmethod
    def thm1_log(cls) -> "PremiseMode":
        return cls("thm1")

    @classmethod
    def thm2_power(cls, p: float) -> "PremiseMode":
        if not p > 1:
            raise ValueError(f"thm2 mode needs p > 1, got {p}")
        return cls("thm2", p / (p - 1.0))

    @classmethod
    def kr_power(cls, p: float) -> "PremiseMode":
        if not 0 < p < 1:
            raise ValueError(f"kr mode needs 0 < p < 1, got {p}")
        return cls("kr", p / (p - 1.0))

    @classmethod
    def thm4_identity(cls) -> "PremiseMode":
        return cls("thm4")

    @property
    def p(self) -> float | None:
        """Recover p from the conjugate exponent (1/p + 1/q = 1)."""
        if self.q is None:
            return None
        return self.q / (self.q - 1.0)

    def label(self) -> str:
        if self.q is None:
            return self.kind
        return f"{self.kind}:p={self.p:g}"


def parse_mode(text: str) -> PremiseMode:
    """Parse ``thm1``, ``thm2:p=<p>``, ``kr:p=<p>``, ``thm4``."""
    head, sep, tail = text.partition(":")
    head = head.strip().lower()
    if head in ("thm1", "thm4"):
        if sep:
            raise ValueError(f"mode {head} takes no arguments, got {text!r}")
        return PremiseMode.thm1_log() if head == "thm1" else PremiseMode.thm4_identity()
    if head in ("thm2", "kr"):
        key, eq, val = tail.partition("=")
        if not sep or key.strip() != "p" or not eq:
            raise ValueError(f"mode {head} takes p=<value>, got {text!r}")
        try:
            p = float(val)
        except ValueError:
            raise ValueError(f"invalid p value {val!r} in mode {text!r}") from None
        return PremiseMode.thm2_power(p) if head == "thm2" else PremiseMode.kr_power(p)
    raise ValueError(f"unknown mode {text!r}; expected thm1, thm2:p=, kr:p= or thm4")


# ---------------------------------------------------------------------------
# The predicate and transforms.
# ---------------------------------------------------------------------------


def majorizes(b, a) -> bool:
    """True iff a is majorized by b (equal totals, b more spread out).

    Both vectors are rearranged in increasing order; a < b requires the
    tail sums sum(a_(i), i=k..n) <= sum(b_(i), i=k..n) for k = 2..n plus
    equal totals, all within a scale-relative tolerance.
    """
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.size} vs {b.size}")
    tol = TOL_SUM_REL * max(1.0, float(np.sum(np.abs(b))))
    if abs(float(np.sum(a) - np.sum(b))) > tol:
        return False
    # tail sums over the increasing rearrangements, k = 2..n
    tails_a = np.cumsum(a[::-1])[:-1]
    tails_b = np.cumsum(b[::-1])[:-1]
    return bool(np.all(tails_a <= tails_b + tol))


def transform(w: WeightVector, mode: PremiseMode) -> np.ndarray:
    """Push weights through the mode's transform (log, q-power, identity)."""
    vals = w.array()
    if mode.kind == "thm1":
        if np.any(vals <= 0):
            raise PreconditionError(
                "log-weight mode requires strictly positive weights"
            )
        return np.log(vals)
    if mode.kind == "thm2":
        return vals**mode.q
    if mode.kind == "kr":
        if np.any(vals <= 0):
            raise PreconditionError(
                "negative-power mode requires strictly positive weights"
            )
        return vals**mode.q
    return vals.copy()


def inverse_transform(transformed, mode: PremiseMode) -> np.ndarray:
    """Invert :func:`transform`; defined on the transform's range."""
    t = np.asarray(transformed, dtype=float)
    if mode.kind == "thm1":
        return np.exp(t)
    if mode.kind in ("thm2", "kr"):
        if np.any(t < 0):
            raise ValueError("power-transformed values cannot be negative")
        return t ** (1.0 / mode.q)
    return t.copy()


def premise_holds(a: WeightVector, b: WeightVector, mode: PremiseMode) -> bool:
    """Whether transform(a) is majorized by transform(b)."""
    return majorizes(transform(b, mode), transform(a, mode))


# Ranges the random transformed vectors are drawn from, per mode.  Log
# values may be negative; power values must stay positive (and bounded
# away from 0 where the inverse transform would blow up).
_DRAW_RANGE = {
    "thm1": (-1.5, 1.5),
    "thm2": (0.1, 2.0),
    "kr": (0.5, 2.0),
    "thm4": (0.1, 2.0),
}


def random_majorization_pair(
    n: int,
    mode: PremiseMode,
    stream: SeededStream,
    steps: int = 8,
) -> tuple[WeightVector, WeightVector]:
    """Draw (a, b) with transform(a) majorized by transform(b).

    The transformed b-vector is sampled i.i.d. from a bounded range; the
    transformed a-vector is produced by ``steps`` random two-coordinate
    averaging steps, each moving a random pair a uniform fraction of the
    way to its midpoint (same sum, strictly less spread).  The premise
    holds for every output pair by construction.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if steps < 0:
        raise ValueError("steps must be >= 0")
    rng = stream.generator
    lo, hi = _DRAW_RANGE[mode.kind]
    beta_t = rng.uniform(lo, hi, size=n)
    alpha_t = beta_t.copy()
    for _ in range(steps):
        i, j = rng.choice(n, size=2, replace=False)
        lam = rng.uniform(0.0, 1.0)
        gap = alpha_t[j] - alpha_t[i]
        alpha_t[i] += 0.5 * lam * gap
        alpha_t[j] -= 0.5 * lam * gap
    a = WeightVector.of(inverse_transform(alpha_t, mode))
    b = WeightVector.of(inverse_transform(beta_t, mode))
    return a, b
