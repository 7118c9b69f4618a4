"""Arithmetic primitives with no dependency on the term language."""

from __future__ import annotations

from math import isqrt

from .errors import CantorkitError

MASK64 = (1 << 64) - 1


def pair(a: int, b: int) -> int:
    """Cantor pairing: ``(a + b)(a + b + 1)/2 + b``."""
    if a < 0 or b < 0:
        raise CantorkitError("pair is defined on naturals")
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(n: int) -> tuple[int, int]:
    if n < 0:
        raise CantorkitError("unpair is defined on naturals")
    s = (isqrt(8 * n + 1) - 1) // 2
    b = n - s * (s + 1) // 2
    return s - b, b


def splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & MASK64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & MASK64
    z ^= z >> 31
    return z


def hashrows_bit(salt: int, k: int, i: int) -> int:
    if not (0 <= k < 1 << 32 and 0 <= i < 1 << 32):
        raise CantorkitError(f"hashrows is only defined for k, i < 2**32 (got k={k}, i={i})")
    return splitmix64(salt ^ ((k << 32) | i)) & 1
