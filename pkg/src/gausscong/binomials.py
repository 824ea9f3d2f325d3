"""Binomial coefficients with the conventions the binomial sums rely on.

Two silent conventions matter:

* binom(top, bottom) is 0 outside 0 <= bottom <= top, *including* negative
  tops (combinatorial convention).  The eta and s18 closed forms contain tops
  like 4n-5k-1 that go negative; the recurrence cross-check in the sequences
  module validates the zero convention empirically.
* x^0 = 1 even for x = 0, so a factor like binom(2k, n)^t disappears at t = 0
  rather than killing the summand.
"""

from __future__ import annotations

from math import comb


def binom(top: int, bottom: int) -> int:
    """Binomial coefficient, 0 outside 0 <= bottom <= top (negative tops give 0)."""
    if bottom < 0 or top < 0 or bottom > top:
        return 0
    return comb(top, bottom)


def pow_conv(x: int, t: int) -> int:
    """x^t with the convention 0^0 = 1."""
    if t < 0:
        raise ValueError("exponent must be non-negative")
    if t == 0:
        return 1
    return x ** t


def summand(n: int, k: int, r: int, s: int, t: int) -> int:
    """binom(n,k)^r * binom(n+k,k)^s * binom(2k,n)^t with pow_conv semantics."""
    return (
        pow_conv(binom(n, k), r)
        * pow_conv(binom(n + k, k), s)
        * pow_conv(binom(2 * k, n), t)
    )
