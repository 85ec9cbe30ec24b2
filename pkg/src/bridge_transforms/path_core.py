"""Piecewise-linear paths and the exact transformations acting on them.

A :class:`Path` is a continuous function on ``[0, t]`` given by strictly
increasing breakpoints and linear interpolation.  All transforms here are
closed on that class (except :func:`radial3`) and insert the crossing
breakpoints they create, so identities between them hold to rounding error.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path as FsPath
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K

__all__ = [
    "Path",
    "Path3",
    "make_uniform_path",
    "constant_path",
    "eval_at",
    "prefix_max",
    "suffix_min",
    "suffix_max",
    "affine",
    "combine",
    "pointwise_min",
    "pointwise_max",
    "abs_path",
    "pitman",
    "l_transform",
    "levy_second_component",
    "occupation_band",
    "occupation_density_zero",
    "gamma_last_return",
    "sigma_first_argmax",
    "tau_half",
    "radial3",
    "union_times",
    "read_path_csv",
    "write_path_csv",
    "read_path3_csv",
    "write_path3_csv",
]


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Path:
    """Continuous piecewise-linear function on ``[0, times[-1]]``."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        ts = _frozen(self.times)
        vs = _frozen(self.values)
        if ts.ndim != 1 or vs.ndim != 1 or ts.shape != vs.shape:
            raise ValueError("times and values must be 1-d arrays of equal length")
        if ts.size < 2:
            raise ValueError("a path needs at least two breakpoints")
        if not (np.all(np.isfinite(ts)) and np.all(np.isfinite(vs))):
            raise ValueError("path entries must be finite")
        if ts[0] != 0.0:
            raise ValueError("first breakpoint must be 0")
        if np.any(np.diff(ts) <= 0.0):
            raise ValueError("breakpoints must be strictly increasing")
        object.__setattr__(self, "times", ts)
        object.__setattr__(self, "values", vs)

    @classmethod
    def _trusted(cls, ts: np.ndarray, vs: np.ndarray) -> "Path":
        # kernel outputs are valid by construction; skip the O(n) checks
        obj = object.__new__(cls)
        ts.setflags(write=False)
        vs.setflags(write=False)
        object.__setattr__(obj, "times", ts)
        object.__setattr__(obj, "values", vs)
        return obj

    @property
    def horizon(self) -> float:
        return float(self.times[-1])

    @property
    def amplitude(self) -> float:
        return float(np.max(np.abs(self.values)))

    def __len__(self) -> int:
        return self.times.size

    def __call__(self, s):
        return eval_at(self, s)

    def __neg__(self) -> "Path":
        return Path._trusted(self.times.copy(), -self.values)

    def __add__(self, other: "Path") -> "Path":
        return combine(self, other, 1.0, 1.0)

    def __sub__(self, other: "Path") -> "Path":
        return combine(self, other, 1.0, -1.0)

    def __repr__(self) -> str:
        return f"Path(n={self.times.size}, horizon={self.horizon:g})"


@dataclass(frozen=True, eq=False)
class Path3:
    """Three components on one shared breakpoint sequence."""

    first: Path
    second: Path
    third: Path

    def __post_init__(self):
        ts = self.first.times
        for c in (self.second, self.third):
            if c.times.shape != ts.shape or np.any(c.times != ts):
                raise ValueError("Path3 components must share breakpoints")

    @property
    def times(self) -> np.ndarray:
        return self.first.times

    @property
    def components(self) -> tuple[Path, Path, Path]:
        return (self.first, self.second, self.third)


def make_uniform_path(horizon: float, values: Sequence[float]) -> Path:
    """Path with breakpoints ``k * horizon / n``, ``k = 0..n``."""
    if not (math.isfinite(horizon) and horizon > 0):
        raise ValueError("horizon must be positive and finite")
    vs = np.asarray(values, dtype=np.float64)
    if vs.ndim != 1 or vs.size < 2:
        raise ValueError("need at least two values")
    n = vs.size - 1
    return Path(K.uniform_times(float(horizon), n), vs)


def constant_path(horizon: float, value: float) -> Path:
    return Path(np.array([0.0, horizon]), np.array([value, value]))


def _check_same_horizon(p: Path, q: Path) -> None:
    if p.times[-1] != q.times[-1]:
        raise ValueError(f"horizon mismatch: {p.times[-1]} vs {q.times[-1]}")


def eval_at(p: Path, s):
    """Value of ``p`` at ``s`` (scalar or array), exact at breakpoints."""
    arr = np.asarray(s, dtype=np.float64)
    if np.any(arr < 0.0) or np.any(arr > p.times[-1]) or np.any(np.isnan(arr)):
        raise ValueError(f"evaluation time outside [0, {p.horizon}]")
    if arr.ndim == 0:
        return float(K.eval_at(p.times, p.values, float(arr)))
    return K.eval_many(p.times, p.values, arr.ravel()).reshape(arr.shape)


def prefix_max(p: Path) -> Path:
    """``s -> max_{0<=u<=s} p(u)``."""
    return Path._trusted(*K.running_max(p.times, p.values, 1.0, False))


def suffix_min(p: Path) -> Path:
    """``s -> min_{s<=u<=t} p(u)``, nondecreasing in ``s``."""
    return Path._trusted(*K.running_max(p.times, p.values, -1.0, True))


def suffix_max(p: Path) -> Path:
    """``s -> max_{s<=u<=t} p(u)``, nonincreasing in ``s``."""
    return Path._trusted(*K.running_max(p.times, p.values, 1.0, True))


def affine(p: Path, a: float, b_slope: float, c: float) -> Path:
    """``s -> a p(s) + b_slope s + c`` on the same breakpoints."""
    if not all(math.isfinite(v) for v in (a, b_slope, c)):
        raise ValueError("affine coefficients must be finite")
    return Path._trusted(p.times.copy(), a * p.values + b_slope * p.times + c)


def combine(p: Path, q: Path, a: float, b: float) -> Path:
    """``a p + b q`` on the union of breakpoints."""
    _check_same_horizon(p, q)
    return Path._trusted(*K.lincomb(p.times, p.values, float(a), q.times, q.values, float(b)))


def pointwise_min(p: Path, q: Path) -> Path:
    _check_same_horizon(p, q)
    return Path._trusted(*K.pointwise_extreme(p.times, p.values, q.times, q.values, 1.0))


def pointwise_max(p: Path, q: Path) -> Path:
    _check_same_horizon(p, q)
    return Path._trusted(*K.pointwise_extreme(p.times, p.values, q.times, q.values, -1.0))


def abs_path(p: Path) -> Path:
    return Path._trusted(*K.abs_path(p.times, p.values))


def pitman(p: Path) -> Path:
    """``2 max_{[0,s]} p - p(s)``."""
    return Path._trusted(*K.pitman(p.times, p.values))


def l_transform(p: Path, y: float) -> Path:
    """``-p(s) + min(2 min_{[s,t]} p, p(t) + y)``.

    ``l_transform(pitman(p), p(t))`` gives back ``p``.
    """
    if not math.isfinite(y):
        raise ValueError("y must be finite")
    return Path._trusted(*K.l_transform(p.times, p.values, float(y)))


def levy_second_component(p: Path) -> Path:
    """``min(max_{[0,s]} p, (max_{[s,t]} p)_+) - p(s)``."""
    return Path._trusted(*K.levy_second(p.times, p.values))


def occupation_band(p: Path, eps: float) -> Path:
    """Scaled occupation time ``(1/2eps) |{u <= s : |p(u)| < eps}|``.

    Computed segment by segment in closed form; band entry and exit times
    become breakpoints, so the result is exact.
    """
    if not (eps > 0 and math.isfinite(eps)):
        raise ValueError("eps must be positive")
    return Path._trusted(*K.band_occupation(p.times, p.values, float(eps)))


def occupation_density_zero(p: Path) -> Path:
    """Limit of :func:`occupation_band` as ``eps -> 0``, at the breakpoints of ``p``.

    A segment crossing zero contributes ``duration / |increment|``; one that
    only touches zero at an endpoint contributes half of that.  Each
    contribution is booked at the segment's right end.
    """
    return Path._trusted(p.times.copy(), K.density_at_zero(p.times, p.values))


def gamma_last_return(p: Path) -> float:
    """``sup{s : p(s) = p(0)}``."""
    return float(K.last_return(p.times, p.values))


def sigma_first_argmax(p: Path) -> float:
    """``inf{s : p(s) = max p}``."""
    return float(K.first_argmax(p.times, p.values))


def tau_half(lambda_path: Path) -> float:
    """First time a nondecreasing path reaches half of its terminal value.

    Returns 0 when the terminal value is 0.
    """
    if np.any(np.diff(lambda_path.values) < 0.0):
        raise ValueError("tau_half expects a nondecreasing path")
    return float(K.first_hit_half(lambda_path.times, lambda_path.values))


def radial3(p3: Path3) -> Path:
    """Euclidean norm of the components at each breakpoint.

    Not exact between breakpoints: the norm of a linear map is not linear.
    """
    a, b, c = (x.values for x in p3.components)
    return Path._trusted(p3.times.copy(), K.norm3(a, b, c))


def union_times(*paths: Path, extra: Iterable[float] = ()) -> np.ndarray:
    """Sorted union of all breakpoints (plus ``extra`` times)."""
    parts = [p.times for p in paths] + [np.asarray(list(extra), dtype=np.float64)]
    return np.unique(np.concatenate(parts))


# ---------------------------------------------------------------- CSV I/O


def _read_rows(src) -> tuple[list[str], list[list[float]]]:
    if isinstance(src, (str, FsPath)):
        with open(src, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    else:
        rows = list(csv.reader(src))
    if not rows:
        raise ValueError("empty CSV")
    header = [h.strip() for h in rows[0]]
    body = [[float(x) for x in r] for r in rows[1:] if r]
    return header, body


def _write_rows(dst, header: list[str], cols: list[np.ndarray]) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in zip(*cols):
        w.writerow([repr(float(v)) for v in row])
    text = buf.getvalue()
    if isinstance(dst, (str, FsPath)):
        with open(dst, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        dst.write(text)


def read_path_csv(src) -> Path:
    """Read ``time,value`` CSV (file path or text stream)."""
    header, body = _read_rows(src)
    if header != ["time", "value"]:
        raise ValueError(f"expected header time,value, got {','.join(header)}")
    arr = np.asarray(body, dtype=np.float64).reshape(-1, 2)
    return Path(arr[:, 0], arr[:, 1])


def write_path_csv(p: Path, dst) -> None:
    _write_rows(dst, ["time", "value"], [p.times, p.values])


def read_path3_csv(src) -> Path3:
    header, body = _read_rows(src)
    if header != ["time", "v1", "v2", "v3"]:
        raise ValueError(f"expected header time,v1,v2,v3, got {','.join(header)}")
    arr = np.asarray(body, dtype=np.float64).reshape(-1, 4)
    ts = arr[:, 0]
    return Path3(Path(ts, arr[:, 1]), Path(ts, arr[:, 2]), Path(ts, arr[:, 3]))


def write_path3_csv(p3: Path3, dst) -> None:
    _write_rows(dst, ["time", "v1", "v2", "v3"], [p3.times] + [c.values for c in p3.components])
