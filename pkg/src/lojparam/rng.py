"""Deterministic sub-seeding for the randomized "generic choice" probes.

Every probe derives its own generator from the master seed and a key path
through splitmix64, so results do not depend on evaluation order.
"""

import numpy as np

from .gaussrat import GaussRat

_MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def subseed(seed: int, *keys: int) -> int:
    s = splitmix64(int(seed) & _MASK)
    for k in keys:
        s = splitmix64(s ^ (int(k) & _MASK))
    return s


def generator(seed: int, *keys: int) -> np.random.Generator:
    return np.random.default_rng(subseed(seed, *keys))


def unit_vectors(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    """``n`` complex unit vectors in C^m, uniform on the sphere."""
    z = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def dyadic_vector(z, bits: int = 20) -> list:
    return [GaussRat.dyadic(complex(x), bits) for x in z]
