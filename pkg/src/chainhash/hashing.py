"""Hash-function models and per-slot occupancy counts.

A :class:`HashModel` is a fixed map from a finite key universe {0..U-1}
onto slots {0..n-1}.  Two modes cover everything the analysis needs:
``identity`` (U = n, so experiments can parametrize directly by the slot
distribution) and ``fixed-table`` (an explicit U-entry lookup table for
genuine many-to-one hashing).
"""

from __future__ import annotations

import numpy as np

from . import rng
from .probability import KeySequence, ProbabilityVector

# Guardrail against accidental huge allocations; both U and n must stay under it.
MAX_SIZE = 2**24


def _check_size(value: int, what: str) -> int:
    value = int(value)
    if value < 1:
        raise ValueError(f"{what} must be positive")
    if value > MAX_SIZE:
        raise ValueError(f"{what} exceeds the maximum supported size 2**24")
    return value


class HashModel:
    """Immutable map from keys {0..universe-1} to slots {0..slots-1}."""

    __slots__ = ("_mode", "_table", "_universe", "_slots")

    def __init__(self, mode: str, table: np.ndarray | None, universe: int, slots: int):
        # Use the classmethod constructors below rather than calling this directly.
        self._mode = mode
        self._table = table
        self._universe = universe
        self._slots = slots

    @classmethod
    def identity(cls, n: int) -> "HashModel":
        """Identity hash on a universe of exactly n keys (h(x) = x)."""
        n = _check_size(n, "slot count")
        return cls("identity", None, n, n)

    @classmethod
    def from_table(cls, table, n: int) -> "HashModel":
        """Explicit lookup table: table[key] is the slot of ``key``."""
        n = _check_size(n, "slot count")
        arr = np.asarray(table, dtype=np.int64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("table must be a nonempty 1-d sequence")
        _check_size(arr.size, "universe size")
        if int(arr.min()) < 0 or int(arr.max()) >= n:
            raise ValueError("table entries must lie in [0, n)")
        arr = arr.copy()
        arr.flags.writeable = False
        return cls("fixed-table", arr, arr.size, n)

    @classmethod
    def random_table(cls, universe: int, n: int, seed: int) -> "HashModel":
        """Pseudo-random table: the slot of key u is stream output u mod n.

        Reproducible by construction — the table is
        ``stream_uint64(seed, universe) % n`` (modulo bias is below 2**-39
        for the permitted n <= 2**24).
        """
        universe = _check_size(universe, "universe size")
        n = _check_size(n, "slot count")
        table = (rng.stream_uint64(seed, universe) % np.uint64(n)).astype(np.int64)
        table.flags.writeable = False
        return cls("fixed-table", table, universe, n)

    @classmethod
    def from_file(cls, path, n: int) -> "HashModel":
        """Load a fixed table: one decimal slot index per line, line number = key."""
        with open(path, "r", encoding="ascii") as fh:
            lines = fh.read().splitlines()
        while lines and not lines[-1].strip():
            lines.pop()
        if not lines:
            raise ValueError(f"table file {path!r} is empty")
        try:
            entries = [int(line.strip()) for line in lines]
        except ValueError as exc:
            raise ValueError(f"table file {path!r} has a non-integer line") from exc
        return cls.from_table(entries, n)

    @property
    def mode(self) -> str:
        return self._mode

    @property
    def universe(self) -> int:
        return self._universe

    @property
    def slots(self) -> int:
        return self._slots

    @property
    def table(self) -> np.ndarray | None:
        return self._table

    def slot_of(self, key: int) -> int:
        """Slot of a single key."""
        if not 0 <= key < self._universe:
            raise ValueError("key out of range")
        if self._table is None:
            return int(key)
        return int(self._table[key])

    def slots_of(self, keys: np.ndarray) -> np.ndarray:
        """Vectorized slot lookup for an int64 key array (bounds unchecked)."""
        if self._table is None:
            return keys
        return self._table[keys]

    def __repr__(self) -> str:
        return f"HashModel(mode={self._mode!r}, universe={self._universe}, slots={self._slots})"


class SlotCounts:
    """Per-slot key counts k_i with their total m = sum(k)."""

    __slots__ = ("_counts", "_m")

    def __init__(self, counts):
        arr = np.asarray(counts, dtype=np.int64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("counts must be a nonempty 1-d sequence")
        if arr.size and int(arr.min()) < 0:
            raise ValueError("counts must be nonnegative")
        arr = arr.copy()
        arr.flags.writeable = False
        self._counts = arr
        self._m = int(arr.sum())

    @property
    def counts(self) -> np.ndarray:
        return self._counts

    @property
    def m(self) -> int:
        return self._m

    def __len__(self) -> int:
        return self._counts.size

    def __repr__(self) -> str:
        return f"SlotCounts(n={len(self)}, m={self._m})"


def _check_keys(x: KeySequence, h: HashModel) -> None:
    if x.universe > h.universe:
        # The sequence's declared universe may be smaller than the model's
        # (every key still maps fine) but never larger.
        if len(x) and int(x.keys.max()) >= h.universe:
            raise ValueError("key sequence contains keys outside the hash universe")


def slot_probabilities(q: ProbabilityVector, h: HashModel) -> ProbabilityVector:
    """Push the key distribution through the hash: p_i = sum of q over h^-1(i)."""
    if len(q) != h.universe:
        raise ValueError("distribution size must equal the hash universe size")
    if h.table is None:
        return ProbabilityVector(q.weights)
    merged = np.bincount(h.table, weights=q.weights, minlength=h.slots)
    return ProbabilityVector(merged)


def count_slots(x: KeySequence, h: HashModel) -> SlotCounts:
    """k_i = number of keys of x (with multiplicity) hashing to slot i."""
    _check_keys(x, h)
    slots = h.slots_of(x.keys)
    return SlotCounts(np.bincount(slots, minlength=h.slots))


def distinct_counts(x: KeySequence, h: HashModel) -> SlotCounts:
    """Like :func:`count_slots` but each distinct key value counts once.

    This is the actual chain length in storage: duplicate insertions of a
    key land on the same stored entry.
    """
    _check_keys(x, h)
    uniq = np.unique(x.keys)
    slots = h.slots_of(uniq)
    return SlotCounts(np.bincount(slots, minlength=h.slots))
