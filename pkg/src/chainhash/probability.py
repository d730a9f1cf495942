"""Finite probability vectors and seeded i.i.d. key sampling.

A :class:`ProbabilityVector` plays three roles: the key distribution over
the universe, the induced slot distribution, and a user's access pattern
over slots.  Sampling is inverse-CDF over a precomputed cumulative array,
driven by the portable stream in :mod:`chainhash.rng`, so sequences are
reproducible bit-for-bit from (vector, seed, count).
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from . import rng

SUM_TOL = 1e-12


class ProbabilityVector:
    """Nonnegative weights normalized to sum to one.

    Construction divides by the exact sum once; the stored weights are never
    renormalized afterward.  Instances are immutable.
    """

    __slots__ = ("_weights", "_cdf")

    def __init__(self, weights: Sequence[float] | np.ndarray):
        arr = np.asarray(weights, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("weights must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("weights must be finite")
        if np.any(arr < 0.0):
            raise ValueError("weights must be nonnegative")
        total = float(arr.sum())
        if total <= 0.0:
            raise ValueError("weights must have a positive sum")
        arr = arr / total
        arr.flags.writeable = False
        self._weights = arr
        self._cdf: np.ndarray | None = None

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def cdf(self) -> np.ndarray:
        """Cumulative weights, computed once and cached."""
        if self._cdf is None:
            cdf = np.cumsum(self._weights)
            cdf.flags.writeable = False
            self._cdf = cdf
        return self._cdf

    def __len__(self) -> int:
        return self._weights.size

    def __repr__(self) -> str:
        return f"ProbabilityVector(size={len(self)})"


class KeySequence:
    """An ordered sequence of key indices drawn from {0, .., universe-1}."""

    __slots__ = ("_keys", "_universe")

    def __init__(self, keys: Sequence[int] | np.ndarray, universe: int):
        if universe < 1:
            raise ValueError("universe size must be positive")
        arr = np.asarray(keys, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("keys must be a 1-d sequence")
        if arr.size and (int(arr.min()) < 0 or int(arr.max()) >= universe):
            raise ValueError("key index out of range for universe size %d" % universe)
        arr.flags.writeable = False
        self._keys = arr
        self._universe = int(universe)

    @property
    def keys(self) -> np.ndarray:
        return self._keys

    @property
    def universe(self) -> int:
        return self._universe

    def __len__(self) -> int:
        return self._keys.size

    def __repr__(self) -> str:
        return f"KeySequence(m={len(self)}, universe={self._universe})"


def make_uniform(size: int) -> ProbabilityVector:
    """Uniform vector: every weight equals 1/size."""
    if size < 1:
        raise ValueError("size must be at least 1")
    return ProbabilityVector(np.full(size, 1.0 / size))


def make_zipf(size: int, exponent: float) -> ProbabilityVector:
    """Power-law vector with weight_i proportional to (i+1)**-exponent."""
    if size < 1:
        raise ValueError("size must be at least 1")
    if exponent < 0.0:
        raise ValueError("exponent must be nonnegative")
    ranks = np.arange(1, size + 1, dtype=np.float64)
    return ProbabilityVector(ranks**-exponent)


def make_restricted_uniform(size: int, alpha: float) -> ProbabilityVector:
    """Uniform over the first floor(alpha*size) entries, zero elsewhere.

    Models a user who only ever touches an alpha-fraction of the slots; the
    squared norm is exactly 1/floor(alpha*size).
    """
    if size < 1:
        raise ValueError("size must be at least 1")
    if not 0.0 < alpha <= 1.0:
        raise ValueError("alpha must lie in (0, 1]")
    active = int(math.floor(alpha * size))
    if active < 1:
        raise ValueError("floor(alpha*size) must be at least 1")
    weights = np.zeros(size)
    weights[:active] = 1.0 / active
    return ProbabilityVector(weights)


def make_point_mass(size: int, index: int = 0) -> ProbabilityVector:
    """All mass on a single entry."""
    if size < 1:
        raise ValueError("size must be at least 1")
    if not 0 <= index < size:
        raise ValueError("index out of range")
    weights = np.zeros(size)
    weights[index] = 1.0
    return ProbabilityVector(weights)


def norm_sq(pv: ProbabilityVector) -> float:
    """Sum of squared weights; equals the collision probability when pv is
    the slot distribution.  Always in [1/len(pv), 1]."""
    w = pv.weights
    return float(np.dot(w, w))


def sample(pv: ProbabilityVector, seed: int, count: int) -> KeySequence:
    """Draw ``count`` i.i.d. indices from ``pv``, deterministically from ``seed``.

    Inverse-CDF rule: for each uniform double u in [0, 1), the draw is the
    smallest index i with u * cdf[-1] < cdf[i].
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    return KeySequence(sample_from_cdf(pv.cdf, seed, count), len(pv))


def sample_from_cdf(cdf: np.ndarray, seed: int, count: int) -> np.ndarray:
    """Low-level inverse-CDF sampler over a precomputed cumulative array."""
    u = rng.stream_doubles(seed, count)
    idx = np.searchsorted(cdf, u * cdf[-1], side="right")
    return np.minimum(idx, cdf.size - 1).astype(np.int64)
