"""Kolmogorov-Smirnov tests, weighted-mean comparisons and report aggregation."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

__all__ = [
    "EcdfView",
    "TestResult",
    "VerificationReport",
    "ecdf",
    "ks_two_sample",
    "ks_one_sample",
    "ks_pvalue",
    "kolmogorov_tail",
    "weighted_mean_compare",
    "aggregate",
    "UNDERFLOW_P",
]

UNDERFLOW_P = 1e-12


@dataclass(frozen=True)
class EcdfView:
    values: np.ndarray

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __call__(self, x):
        return np.searchsorted(self.values, x, side="right") / self.n

    def points(self) -> tuple[np.ndarray, np.ndarray]:
        """Sorted values with the ECDF value just after each."""
        return self.values, np.arange(1, self.n + 1) / self.n


def ecdf(xs) -> EcdfView:
    arr = np.sort(np.asarray(xs, dtype=np.float64).ravel())
    if arr.size == 0:
        raise ValueError("empty sample")
    arr.setflags(write=False)
    return EcdfView(arr)


@dataclass
class TestResult:
    __test__ = False  # not a pytest class

    name: str
    kind: str
    statistic: Optional[float]
    p_value: Optional[float]
    n_left: int
    n_right: int
    passed: bool = True
    note: str = ""
    # tests that carry their own pass rule skip the Bonferroni threshold
    fixed_rule: bool = False

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "statistic": _finite_or_none(self.statistic),
            "p_value": _finite_or_none(self.p_value),
            "n_left": self.n_left,
            "n_right": self.n_right,
            "pass": bool(self.passed),
            "note": self.note,
        }


def _finite_or_none(v):
    if v is None:
        return None
    v = float(v)
    return v if math.isfinite(v) else None


@dataclass
class VerificationReport:
    identity: str
    params: dict
    tests: list[TestResult]
    overall_pass: bool
    elapsed_seconds: float = 0.0
    version: str = ""
    alpha: float = 0.01
    threshold: float = 0.01

    def failing(self) -> list[TestResult]:
        return [r for r in self.tests if not r.passed]

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "params": self.params,
            "alpha": self.alpha,
            "threshold": self.threshold,
            "tests": [r.to_dict() for r in self.tests],
            "overall_pass": bool(self.overall_pass),
            "elapsed_seconds": self.elapsed_seconds,
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False)


def ks_two_sample(xs, ys) -> float:
    """Sup distance between the two ECDFs (ties handled by jumping both first)."""
    a = np.sort(np.asarray(xs, dtype=np.float64).ravel())
    b = np.sort(np.asarray(ys, dtype=np.float64).ravel())
    if a.size == 0 or b.size == 0:
        raise ValueError("ks_two_sample needs nonempty samples")
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / a.size
    fb = np.searchsorted(b, grid, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))


def ks_one_sample(xs, cdf: Callable[[np.ndarray], np.ndarray]) -> float:
    x = np.sort(np.asarray(xs, dtype=np.float64).ravel())
    n = x.size
    if n == 0:
        raise ValueError("ks_one_sample needs a nonempty sample")
    f = np.asarray(cdf(x), dtype=np.float64)
    if np.any(~np.isfinite(f)) or np.any(f < 0.0) or np.any(f > 1.0):
        raise ValueError("cdf values must lie in [0, 1]")
    if np.any(np.diff(f) < 0.0):
        raise ValueError("cdf must be nondecreasing")
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))


def kolmogorov_tail(lam: float) -> float:
    """``Q(lam) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lam^2)``."""
    if lam <= 0.0:
        return 1.0
    if lam < 0.6:
        # same function through the Jacobi theta identity; the alternating
        # series converges too slowly here
        s = 0.0
        k = 1
        while True:
            term = math.exp(-((2 * k - 1) ** 2) * math.pi**2 / (8.0 * lam * lam))
            s += term
            if term < 1e-16:
                break
            k += 1
        return min(1.0, max(0.0, 1.0 - math.sqrt(2.0 * math.pi) / lam * s))
    s = 0.0
    k = 1
    while True:
        term = 2.0 * math.exp(-2.0 * k * k * lam * lam)
        s += term if k % 2 == 1 else -term
        if term < 1e-12:
            break
        k += 1
    return min(1.0, max(0.0, s))


def ks_pvalue(d: float, n_left: int, n_right: Optional[int] = None) -> float:
    """Asymptotic KS p-value; pass ``n_right=None`` for the one-sample test."""
    if d <= 0.0:
        return 1.0
    ne = float(n_left) if n_right is None else n_left * n_right / (n_left + n_right)
    sq = math.sqrt(ne)
    p = kolmogorov_tail((sq + 0.12 + 0.11 / sq) * d)
    return 0.0 if p < UNDERFLOW_P else p


def _z_pvalue(z: float) -> float:
    if not math.isfinite(z):
        return 0.0
    return math.erfc(z / math.sqrt(2.0))


def weighted_mean_compare(
    left, right, weights, name: str = "weighted", z_max: float = 4.0
) -> TestResult:
    """Compare the mean of ``left`` with the self-normalised weighted mean of ``right``.

    ``z = |mean_L - sum(w f)/sum(w)| / sqrt(SE_L^2 + SE_W^2)`` where
    ``SE_W^2 = sum(w^2 (f - r)^2) / sum(w)^2`` is the delta-method variance of
    the ratio estimator ``r``.  The note records the effective sample size.
    """
    lv = np.asarray(left, dtype=np.float64)
    rv = np.asarray(right, dtype=np.float64)
    w = np.asarray(weights, dtype=np.float64)
    if np.any(w < 0.0):
        raise ValueError("weights must be nonnegative")
    sw = float(w.sum())
    if sw <= 0.0:
        raise ValueError("all weights are zero")
    ess = sw * sw / float(np.sum(w * w))
    mean_l = float(lv.mean())
    se_l2 = float(lv.var(ddof=1)) / lv.size if lv.size > 1 else 0.0
    r = float(np.sum(w * rv) / sw)
    se_w2 = float(np.sum(w * w * (rv - r) ** 2)) / (sw * sw)
    diff = abs(mean_l - r)
    se = math.sqrt(se_l2 + se_w2)
    note = f"left mean {mean_l:.6g}, weighted mean {r:.6g}, ess {ess:.1f}"
    if se == 0.0:
        z = 0.0 if diff == 0.0 else math.inf
        if diff != 0.0:
            note += "; zero variance on both sides"
    else:
        z = diff / se
    return TestResult(
        name=name,
        kind="weighted_z",
        statistic=z,
        p_value=_z_pvalue(z),
        n_left=int(lv.size),
        n_right=int(rv.size),
        passed=bool(z <= z_max),
        note=note,
        fixed_rule=True,
    )


def aggregate(
    results: Sequence[TestResult],
    alpha: float,
    identity: str = "",
    params: Optional[dict] = None,
    method: str = "bonferroni",
) -> VerificationReport:
    """Bonferroni over the p-value tests; fixed-rule tests keep their own flag."""
    if method != "bonferroni":
        raise ValueError(f"unsupported multiplicity method {method!r}")
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    adjustable = [r for r in results if not r.fixed_rule]
    m = max(1, len(adjustable))
    threshold = alpha / m
    for r in adjustable:
        r.passed = r.p_value is not None and r.p_value >= threshold
    overall = all(r.passed for r in results)
    return VerificationReport(
        identity=identity,
        params=dict(params or {}),
        tests=list(results),
        overall_pass=overall,
        alpha=alpha,
        threshold=threshold,
    )
