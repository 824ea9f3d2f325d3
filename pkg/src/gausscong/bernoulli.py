"""Exact Bernoulli numbers and the residue B_{p-3} mod p by two routes.

The exact table is built from the defining recurrence
sum_{j=0}^{n} C(n+1, j) B_j = 0 (B_0 = 1).  The modular route uses the
half-range cubic harmonic sum B_{p-3} = -(1/2) sum_{k<=(p-1)/2} k^{-3} mod p;
when both are available they are asserted to agree.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import CapExceeded, InternalMismatch
from .exact import PrimePowerModulus, Residue, is_prime, reduce_mod

#: Largest index the exact table will grow to.
DEFAULT_CAP = 2000

_table: list[Fraction] = [Fraction(1), Fraction(-1, 2)]


def bernoulli_exact(n: int, cap: int = DEFAULT_CAP) -> Fraction:
    """Exact B_n via the defining recurrence (cached table)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > cap:
        raise CapExceeded(f"B_{n} beyond cap {cap}")
    while len(_table) <= n:
        i = len(_table)
        if i % 2 == 1:
            # B_odd = 0 for odd i >= 3
            _table.append(Fraction(0))
            continue
        # C(i+1, i) B_i = -sum_{j<i} C(i+1, j) B_j; odd j > 1 contribute 0
        acc = comb(i + 1, 0) * _table[0] + comb(i + 1, 1) * _table[1]
        for j in range(2, i, 2):
            acc += comb(i + 1, j) * _table[j]
        _table.append(-acc / (i + 1))
    return _table[n]


def von_staudt_clausen_denominator(n: int) -> int:
    """Product of primes q with (q-1) | n, the denominator of B_n for even n >= 2."""
    if n <= 0 or n % 2 == 1:
        raise ValueError("defined for positive even n")
    d = 1
    for q in range(2, n + 2):
        if n % (q - 1) == 0 and is_prime(q):
            d *= q
    return d


def _b_pm3_harmonic(p: int) -> Residue:
    """B_{p-3} mod p via -(1/2) sum'_{k=1}^{(p-1)/2} 1/k^3 (O(p) modular ops)."""
    acc = 0
    for k in range(1, (p - 1) // 2 + 1):
        acc += pow(k, -3, p)
    mod = PrimePowerModulus(p, 1)
    return Residue(-acc * pow(2, -1, p), mod)


def b_pm3_provenance(p: int, cap: int = DEFAULT_CAP) -> str:
    """Which route backs b_pm3_mod_p at this prime: 'exact' or 'harmonic'."""
    return "exact" if p - 3 <= cap else "harmonic"


def b_pm3_mod_p(p: int, cap: int = DEFAULT_CAP) -> Residue:
    """B_{p-3} mod p; both routes are computed and compared when p-3 <= cap."""
    if p < 5 or not is_prime(p):
        raise ValueError(f"p must be a prime >= 5, got {p}")
    harmonic = _b_pm3_harmonic(p)
    if p - 3 <= cap:
        exact = reduce_mod(bernoulli_exact(p - 3), PrimePowerModulus(p, 1))
        if exact != harmonic:
            raise InternalMismatch(
                f"B_{p-3} mod {p}: exact route {exact.value} != harmonic {harmonic.value}"
            )
    return harmonic
