"""Exact arithmetic substrate: p-adic valuation, rational congruences, residue rings.

Rationals are plain ``fractions.Fraction`` values (always normalized, sign in
the numerator, denominator positive), so ordering and equality come for free.
Residues carry their modulus; mixing moduli raises instead of coercing, since
the computations here juggle p^{m+1}, p^{3m} and p^{3m+1} side by side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DenominatorDivisibleByP, ModulusMismatch

RationalLike = Union[int, Fraction]

#: Sentinel for ord_p(0); compares greater than every finite valuation.
INFINITE_ORD = math.inf


def is_prime(n: int) -> bool:
    """Deterministic primality check by trial division (desk scale, n < 10^12)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def ord_p(x: RationalLike, p: int):
    """p-adic valuation of a rational; ord_p(0) is the +infinity sentinel."""
    if p < 2 or not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    x = Fraction(x)
    if x == 0:
        return INFINITE_ORD
    v = 0
    num = x.numerator
    while num % p == 0:
        num //= p
        v += 1
    den = x.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class PrimePowerModulus:
    """A modulus p^e with p a prime >= 5 (the standing hypothesis everywhere)."""

    p: int
    e: int

    def __post_init__(self):
        if self.p < 5 or not is_prime(self.p):
            raise ValueError(f"modulus prime must be >= 5 and prime, got {self.p}")
        if self.e < 1:
            raise ValueError(f"modulus exponent must be >= 1, got {self.e}")

    @property
    def value(self) -> int:
        return self.p ** self.e

    def __str__(self) -> str:
        return f"{self.p}^{self.e}"


@dataclass(frozen=True)
class Residue:
    """An element of Z/p^e, tagged with its modulus."""

    value: int
    modulus: PrimePowerModulus

    def __post_init__(self):
        if not 0 <= self.value < self.modulus.value:
            object.__setattr__(self, "value", self.value % self.modulus.value)

    def _check(self, other: "Residue") -> None:
        if self.modulus != other.modulus:
            raise ModulusMismatch(f"{self.modulus} vs {other.modulus}")

    def __add__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value + other.value, self.modulus)

    def __sub__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value - other.value, self.modulus)

    def __mul__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value * other.value, self.modulus)

    def __neg__(self) -> "Residue":
        return Residue(-self.value, self.modulus)

    def inverse(self) -> "Residue":
        if self.value % self.modulus.p == 0:
            raise DenominatorDivisibleByP(f"{self.value} not a unit mod {self.modulus}")
        return Residue(pow(self.value, -1, self.modulus.value), self.modulus)

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return f"{self.value} (mod {self.modulus})"


def rational_congruent(x: RationalLike, y: RationalLike, mod: PrimePowerModulus) -> bool:
    """True iff ord_p(x - y) >= e; requires both denominators coprime to p."""
    x, y = Fraction(x), Fraction(y)
    p = mod.p
    if x.denominator % p == 0 or y.denominator % p == 0:
        raise DenominatorDivisibleByP(f"denominator divisible by {p}")
    return ord_p(x - y, p) >= mod.e


def reduce_mod(x: RationalLike, mod: PrimePowerModulus) -> Residue:
    """The residue of a rational with p-free denominator mod p^e."""
    x = Fraction(x)
    if x.denominator % mod.p == 0:
        raise DenominatorDivisibleByP(f"denominator of {x} divisible by {mod.p}")
    pe = mod.value
    return Residue(x.numerator * pow(x.denominator, -1, pe) % pe, mod)


def floor_div_and_remainder(k: int, p: int, m: int) -> tuple[int, int]:
    """(floor(k/p^m), remainder of k divided by p^m)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if m < 0:
        raise ValueError("m must be non-negative")
    return divmod(k, p ** m)
