"""Counter-seeded random streams shared by both kernel backends.

The per-run stream is SplitMix64 (Steele, Lea & Flood's mixer) started from a
scrambled seed, so that run ``i`` of a Monte Carlo batch depends only on
``(master_seed, i)`` and never on worker count or execution order.  Both the
compiled and the pure-Python kernels implement the identical draw sequence:
uint64 -> double in [0,1) via the top 53 bits, exponentials by inversion and
normals by Box-Muller with a per-run cached spare.
"""

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """Finalizing mixer of SplitMix64."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def run_seed(master_seed: int, run_index: int) -> int:
    """Seed of an individual Monte Carlo run.

    Scrambling the arithmetic progression keeps the per-run SplitMix64
    sequences at pseudo-random offsets from each other, so consecutive runs do
    not share overlapping stretches of the stream.
    """
    return mix64((master_seed + (run_index + 1) * GOLDEN) & MASK64)


def run_seeds(master_seed: int, n_runs: int, start: int = 0) -> np.ndarray:
    """Vector of per-run seeds for ``run_index = start .. start+n_runs-1``."""
    idx = np.arange(start + 1, start + n_runs + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(master_seed & MASK64) + idx * np.uint64(GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        z = z ^ (z >> np.uint64(31))
    return z


class SplitMix64:
    """Reference stream; the compiled kernel reproduces it bit for bit."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def next_double(self) -> float:
        return (self.next_u64() >> 11) * 1.1102230246251565e-16  # 2**-53
