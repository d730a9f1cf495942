"""Collision counting and the pairwise collision-probability estimator.

The estimator is a U-statistic: with k_i keys in slot i out of m total,
``sum_i k_i(k_i-1) / (m(m-1))`` is an unbiased estimate of the collision
probability ||p||^2 of the slot distribution.  Everything here is exact
integer arithmetic until the final division.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hashing import HashModel, SlotCounts, count_slots, slot_probabilities
from .probability import KeySequence, ProbabilityVector, norm_sq


class EstimatorUndefinedError(ValueError):
    """Raised when the estimator's denominator m(m-1) vanishes (m < 2)."""


@dataclass(frozen=True)
class CollisionEstimate:
    """Empirical collision probability together with its exact ingredients."""

    empirical_cp: float
    m: int
    collision_pairs: int

    def __post_init__(self):
        if self.m < 2:
            raise EstimatorUndefinedError("estimator undefined for m < 2")
        if self.collision_pairs < 0:
            raise ValueError("collision_pairs must be nonnegative")
        if not 0.0 <= self.empirical_cp <= 1.0:
            raise ValueError("empirical_cp must lie in [0, 1]")


def collision_pairs(k: SlotCounts) -> int:
    """Number of colliding key pairs: sum_i C(k_i, 2), as an exact integer."""
    c = k.counts
    return int(np.dot(c, c - 1)) // 2


def empirical_collision_probability(k: SlotCounts) -> CollisionEstimate:
    """The pairwise estimate sum_i k_i(k_i-1) / (m(m-1)).

    Computed as an exact integer ratio, converted to floating point in one
    final division.  Requires m >= 2.
    """
    m = k.m
    if m < 2:
        raise EstimatorUndefinedError("estimator undefined for m < 2")
    pairs = collision_pairs(k)
    cp = (2 * pairs) / (m * (m - 1))
    return CollisionEstimate(empirical_cp=cp, m=m, collision_pairs=pairs)


def brute_force_collision_pairs(x: KeySequence, h: HashModel) -> int:
    """Oracle pair count via an explicit O(m^2) double loop.

    Counts index pairs j < j' with equal hash values; repeated keys in x
    collide with themselves.  Exists to cross-check the slot-count route.
    """
    slots = [h.slot_of(int(key)) for key in x.keys]
    m = len(slots)
    total = 0
    for j in range(m):
        sj = slots[j]
        for jp in range(j + 1, m):
            if sj == slots[jp]:
                total += 1
    return total


def true_collision_probability(q: ProbabilityVector, h: HashModel) -> float:
    """Probability that two independent keys are distinct yet share a slot.

    Equals ||p||^2 - ||q||^2 where p is the induced slot distribution; the
    tiny negative values that float rounding can produce are clamped to 0.
    """
    p = slot_probabilities(q, h)
    return max(0.0, norm_sq(p) - norm_sq(q))


def relative_error(est: CollisionEstimate, p_norm_sq: float) -> float:
    """Unsigned relative error |empirical_cp / p_norm_sq - 1|."""
    if p_norm_sq <= 0.0:
        raise ValueError("p_norm_sq must be positive")
    return abs(est.empirical_cp / p_norm_sq - 1.0)


def estimate_from_sequence(x: KeySequence, h: HashModel) -> CollisionEstimate:
    """Convenience: slot counts then estimate, in one call."""
    return empirical_collision_probability(count_slots(x, h))
