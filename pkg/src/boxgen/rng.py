"""Seeded, splittable random streams for reproducible generation.

Built on numpy's Philox counter-based generator: the same seed and call
sequence produce identical values on every platform with IEEE doubles.
Child streams are derived with SeedSequence.spawn, so each generated RoI
can own an independent stream and generation order never changes results.
"""
from __future__ import annotations

import numpy as np

from .errors import ParameterError


class SeededRng:
    """A single-owner random stream; split with spawn() for parallel work."""

    def __init__(self, seed=None, *, _seq=None):
        if _seq is None:
            if seed is not None and not isinstance(seed, (int, np.integer)):
                raise ParameterError(f"seed must be an integer, got {seed!r}")
            _seq = np.random.SeedSequence(seed)
        self.seed = seed
        self._seq = _seq
        self._gen = np.random.Generator(np.random.Philox(_seq))

    def spawn(self, n):
        """Derive n independent child streams; deterministic given history."""
        return [SeededRng(self.seed, _seq=seq) for seq in self._seq.spawn(n)]

    def random(self):
        return float(self._gen.random())

    def uniform(self, low, high):
        return float(self._gen.uniform(low, high))

    def integers(self, low, high):
        """One integer in [low, high)."""
        return int(self._gen.integers(low, high))

    def standard_normal(self):
        return float(self._gen.standard_normal())

    def permutation(self, n):
        """Fisher-Yates permutation of range(n).

        Spelled out on top of integers() so the draw sequence is pinned by
        this package, not by numpy's shuffle implementation.
        """
        idx = np.arange(n)
        for i in range(n - 1, 0, -1):
            j = self.integers(0, i + 1)
            idx[i], idx[j] = idx[j], idx[i]
        return idx

    def weighted_index(self, cumulative):
        """Index drawn from the distribution with the given cumulative weights."""
        u = self.random() * cumulative[-1]
        idx = int(np.searchsorted(cumulative, u, side="right"))
        return min(idx, len(cumulative) - 1)
