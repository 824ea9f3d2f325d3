"""Primed harmonic sums (indices coprime to p) and their block variants.

Every denominator in these sums is a unit mod p^e, so each term can be
inverted exactly in the residue ring; termwise modular summation therefore
gives exactly the residue of the underlying rational sum.  Block boundaries
use the strict dichotomy 2*remainder < p^m (equality cannot occur for odd p).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .exact import PrimePowerModulus, Residue


class Half(enum.Enum):
    LOWER = "lower"  # {k/p^m} < p^m/2
    UPPER = "upper"  # {k/p^m} > p^m/2


class InnerIndex(enum.Enum):
    K_OVER_PL = "k"  # inner sum runs to floor(k/p^l)
    TWO_K_OVER_PL = "2k"  # inner sum runs to floor(2k/p^l)


@dataclass(frozen=True)
class PrimedSumQuery:
    upper: int
    d: int
    p: int
    e: int

    def __post_init__(self):
        if self.d < 1 or self.e < 1:
            raise ValueError("need d >= 1 and e >= 1")


def primed_power_sum(q: PrimedSumQuery) -> Residue:
    """sum'_{j<=upper} 1/j^d mod p^e."""
    mod = PrimePowerModulus(q.p, q.e)
    pe = mod.value
    acc = 0
    for j in range(1, q.upper + 1):
        if j % q.p:
            acc += pow(j, -q.d, pe)
    return Residue(acc, mod)


def primed_harmonic(upper: int, p: int, e: int) -> Residue:
    """Shorthand for the d = 1 primed sum."""
    return primed_power_sum(PrimedSumQuery(upper, 1, p, e))


def _block_range(n: int, block: int, half: Half) -> range:
    base = n * block
    if half is Half.LOWER:
        return range(base + 1, base + (block - 1) // 2 + 1)
    return range(base + (block + 1) // 2, base + block)


def block_inverse_square_sum(n: int, p: int, m: int, half: Half) -> Residue:
    """sum' 1/k^2 over the half block floor(k/p^m) = n, mod p^{m+1}."""
    if m < 1:
        raise ValueError("m must be >= 1")
    mod = PrimePowerModulus(p, m + 1)
    pe = mod.value
    acc = 0
    for k in _block_range(n, p ** m, half):
        if k % p:
            acc += pow(k, -2, pe)
    return Residue(acc, mod)


def nested_block_sum(n: int, p: int, l: int, inner: InnerIndex, half: Half) -> Residue:
    """sum' (1/k^2) * sum'_{j <= floor(k/p^l) or floor(2k/p^l)} 1/j over the
    half block floor(k/p^{l+1}) = n, mod p^{l+1}."""
    if l < 0:
        raise ValueError("l must be >= 0")
    mod = PrimePowerModulus(p, l + 1)
    pe = mod.value
    pl = p ** l
    ks = [k for k in _block_range(n, p ** (l + 1), half) if k % p]
    if not ks:
        return Residue(0, mod)
    # prefix table of primed harmonic sums up to the largest inner bound
    top = max(ks) * 2 // pl if inner is InnerIndex.TWO_K_OVER_PL else max(ks) // pl
    prefix = [0] * (top + 1)
    for j in range(1, top + 1):
        prefix[j] = prefix[j - 1] + (pow(j, -1, pe) if j % p else 0)
    acc = 0
    for k in ks:
        bound = 2 * k // pl if inner is InnerIndex.TWO_K_OVER_PL else k // pl
        acc += pow(k, -2, pe) * prefix[bound]
    return Residue(acc, mod)


def alternating_cubic_sum(p: int, m: int) -> Residue:
    """sum'_{k=1}^{(p^m-1)/2} (-1)^k / k^3 mod p."""
    if m < 1:
        raise ValueError("m must be >= 1")
    mod = PrimePowerModulus(p, 1)
    acc = 0
    for k in range(1, (p ** m - 1) // 2 + 1):
        if k % p:
            acc += -pow(k, -3, p) if k % 2 else pow(k, -3, p)
    return Residue(acc, mod)
