"""Exact grid samplers and reproducible seed derivation.

Randomness comes from a counter-based 64-bit mixer: the ``k``-th raw word of
the stream keyed by ``seed`` is ``mix64(seed + (k + 1) * GOLDEN)``.  Child
streams are keyed by :func:`derive_seed`, so replicate ``i`` of a run always
sees the same numbers no matter how replicates are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels as K
from .path_core import Path, Path3

__all__ = [
    "MASK64",
    "GOLDEN",
    "RunParams",
    "ScalarSample",
    "RejectionExhausted",
    "derive_seed",
    "sample_bm",
    "sample_bridge",
    "sample_bm3",
    "sample_bessel3",
    "sample_bessel3_with_future_min",
    "sample_meander",
    "sample_meander_conditioned",
    "sample_scalar",
    "SCALAR_KINDS",
]

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
SCALAR_KINDS = ("uniform01", "rademacher", "v_uniform_sym", "gaussian")


class RejectionExhausted(RuntimeError):
    """Conditioned sampling ran out of tries."""


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(base_seed: int, index: int) -> int:
    """Child seed for ``index`` under ``base_seed``.

    The golden-ratio counter is offset by one so that ``(0, 0)`` does not map
    to the finalizer's fixed point at zero.
    """
    return _mix64((base_seed + (index + 1) * GOLDEN) & MASK64)


def _u64(seed: int) -> np.uint64:
    return np.uint64(seed & MASK64)


@dataclass(frozen=True)
class RunParams:
    t: float = 1.0
    x: float = 0.0
    n_steps: int = 2048
    base_seed: int = 42
    replicates: int = 20000
    band_eps: Optional[float] = None
    trunc_factor: int = 256
    max_tries: int = 10000

    def __post_init__(self):
        if not (self.t > 0 and math.isfinite(self.t)):
            raise ValueError("t must be positive")
        if not math.isfinite(self.x):
            raise ValueError("x must be finite")
        if self.n_steps < 2:
            raise ValueError("n_steps must be >= 2")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if self.trunc_factor < 2:
            raise ValueError("trunc_factor must be >= 2")
        if self.band_eps is not None and not self.band_eps > 0:
            raise ValueError("band_eps must be positive")
        if not 0 <= self.base_seed <= MASK64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")

    @property
    def eps(self) -> float:
        """Band half-width, defaulting to the root of the finest refined step.

        Band sides refine up to ``REFINE_LEVELS`` times near the band edges, so
        the width follows that spacing rather than the coarse grid step.
        """
        if self.band_eps is not None:
            return float(self.band_eps)
        return math.sqrt(self.t / (self.n_steps * 2**K.REFINE_LEVELS))

    def echo(self) -> dict:
        return {
            "t": self.t,
            "x": self.x,
            "n_steps": self.n_steps,
            "replicates": self.replicates,
            "seed": self.base_seed,
            "band_eps": self.eps,
            "trunc_factor": self.trunc_factor,
        }


@dataclass(frozen=True)
class ScalarSample:
    value: float
    kind: str = field(default="uniform01")


def _grid(t: float, n_steps: int) -> np.ndarray:
    if not t > 0:
        raise ValueError("t must be positive")
    if n_steps < 1:
        raise ValueError("n_steps must be positive")
    return K.uniform_times(float(t), int(n_steps))


def sample_bm(t: float, n_steps: int, seed: int) -> Path:
    """Brownian motion at ``k t / n``: cumulative sums of N(0, t/n)."""
    ts = _grid(t, n_steps)
    return Path._trusted(ts, K.bm_values(float(t), int(n_steps), _u64(seed)))


def sample_bridge(x: float, t: float, n_steps: int, seed: int) -> Path:
    """Bridge from 0 to ``x``: ``B_k - (k/n) B_n + (k/n) x``; endpoint is exactly ``x``."""
    ts = _grid(t, n_steps)
    return Path._trusted(ts, K.bridge_values(float(x), float(t), int(n_steps), _u64(seed)))


def sample_bm3(t: float, n_steps: int, seed: int) -> Path3:
    ts = _grid(t, n_steps)
    a, b, c = K.bm3_values(float(t), int(n_steps), _u64(seed))
    return Path3(Path._trusted(ts, a), Path._trusted(ts.copy(), b), Path._trusted(ts.copy(), c))


def sample_bessel3(t: float, n_steps: int, seed: int) -> Path:
    """Bessel(3) from the origin, as the norm of :func:`sample_bm3` with the same seed."""
    ts = _grid(t, n_steps)
    a, b, c = K.bm3_values(float(t), int(n_steps), _u64(seed))
    return Path._trusted(ts, K.norm3(a, b, c))


def sample_bessel3_with_future_min(
    t: float, n_steps: int, trunc_factor: int, seed: int
) -> tuple[Path, float]:
    """Bessel(3) path on ``[0, t]`` and its grid minimum over ``[t, K t]``.

    The continuation uses a step four times coarser whenever ``n_steps`` is
    divisible by 4.
    """
    if trunc_factor < 2:
        raise ValueError("trunc_factor must be >= 2")
    ts = _grid(t, n_steps)
    s = _u64(seed)
    a, b, c = K.bm3_values(float(t), int(n_steps), s)
    fmin = K.future_radial_min(a, b, c, float(t), int(n_steps), int(trunc_factor), s)
    return Path._trusted(ts, K.norm3(a, b, c)), float(fmin)


def sample_meander(x: float, t: float, n_steps: int, seed: int) -> Path:
    """``sqrt(bridge_x^2 + B2^2 + B3^2)`` with three disjoint derived streams."""
    ts = _grid(t, n_steps)
    return Path._trusted(ts, K.meander_values(float(x), float(t), int(n_steps), _u64(seed)))


def sample_meander_conditioned(
    x_abs: float, t: float, n_steps: int, seed: int, max_tries: int = 10000
) -> Path:
    """Meander from 0 conditioned on its endpoint being at least ``x_abs``.

    Try ``j`` uses ``derive_seed(seed, j)``.
    """
    if x_abs < 0:
        raise ValueError("x_abs must be nonnegative")
    if max_tries < 1:
        raise ValueError("max_tries must be positive")
    ts = _grid(t, n_steps)
    vs, used = K.conditioned_meander_values(float(x_abs), float(t), int(n_steps), _u64(seed), int(max_tries))
    if vs.size == 0:
        raise RejectionExhausted(f"no endpoint >= {x_abs} in {max_tries} tries")
    return Path._trusted(ts, vs)


def sample_scalar(kind: str, seed: int) -> ScalarSample:
    """One draw of ``kind`` from the stream keyed by ``seed``."""
    s = _u64(seed)
    u = float(K.uniform_at(s, 0))
    if kind == "uniform01":
        return ScalarSample(u, kind)
    if kind == "rademacher":
        return ScalarSample(1.0 if u >= 0.5 else -1.0, kind)
    if kind == "v_uniform_sym":
        return ScalarSample(2.0 * u - 1.0, kind)
    if kind == "gaussian":
        z = np.empty(1)
        K.fill_normals(s, 0, z)
        return ScalarSample(float(z[0]), kind)
    raise ValueError(f"unknown scalar kind {kind!r}")
