"""Deterministic random stream shared by every stochastic component.

One RngStream per run; Poisson draws, Thompson samples and shuffling all
consume it in a fixed order, so a (config, seed) pair fully determines a
run.  The generator is splitmix64 (see kernels.py), giving identical
sequences across platforms and across the numba / pure-numpy backends.
"""

import math

import numpy as np

from . import kernels

POISSON_K_MAX = 100


class RngStream:
    """Counter-based 64-bit stream: same seed, same draws, everywhere."""

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._state = np.array([self.seed & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64)

    def uniform(self) -> float:
        """Draw in (0, 1]."""
        return kernels.rand_u01(self._state)

    def normal(self) -> float:
        return kernels.rand_normal(self._state)

    def poisson(self, lam: float) -> int:
        return rng_poisson(lam, self)

    def gaussian(self, mean: float, variance: float) -> float:
        return rng_gaussian(mean, variance, self)

    def shuffle(self, n: int) -> np.ndarray:
        """Fisher-Yates permutation of range(n)."""
        perm = np.arange(n)
        for i in range(n - 1, 0, -1):
            j = int(self.uniform() * (i + 1))
            if j > i:  # uniform() can return exactly 1.0
                j = i
            perm[i], perm[j] = perm[j], perm[i]
        return perm

    @property
    def state(self) -> int:
        return int(self._state[0])


def rng_poisson(lam: float, rng: RngStream, k_max: int = POISSON_K_MAX) -> int:
    if not math.isfinite(lam) or lam < 0:
        raise ValueError(f"Poisson rate must be finite and >= 0, got {lam}")
    return int(kernels.rand_poisson(rng._state, lam, k_max))


def rng_gaussian(mean: float, variance: float, rng: RngStream) -> float:
    if not variance > 0:
        raise ValueError(f"Gaussian variance must be > 0, got {variance}")
    return mean + math.sqrt(variance) * kernels.rand_normal(rng._state)
