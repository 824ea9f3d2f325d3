"""The sporadic sequence families: recurrences, closed forms, cross-validation.

Three recurrence families are covered:

* second order in n^2 ("zagier"):  (n+1)^2 u_{n+1} - (A n^2 + A n + L) u_n + B n^2 u_{n-1} = 0
* third order in n^3 ("az"):       (n+1)^3 u_{n+1} - (2n+1)(a n^2 + a n + b) u_n + c n^3 u_{n-1} = 0
* the four-parameter extension ("cooper"), whose d = 0 case is "az":
                                   (n+1)^3 u_{n+1} - (2n+1)(a n^2 + a n + b) u_n + n(c n^2 + d) u_{n-1} = 0

all with u_{-1} = 0, u_0 = 1.  The three-factor binomial sums
A_n^(r,s,t) = sum_k binom(n,k)^r binom(n+k,k)^s binom(2k,n)^t (r >= 2)
subsume six of the fifteen named rows; every named row also carries its own
closed form so recurrence and formula can be cross-checked term by term.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Union

from .binomials import binom, summand
from .errors import CapExceeded, NoClosedForm

DEFAULT_INDEX_CAP = 5000


@dataclass(frozen=True)
class OSS:
    """A_n^(r,s,t) by its triple; r >= 2."""

    r: int
    s: int
    t: int

    def __post_init__(self):
        if self.r < 2 or self.s < 0 or self.t < 0:
            raise ValueError(f"need r >= 2 and s, t >= 0, got {self}")


@dataclass(frozen=True)
class ZagierRec:
    A: int
    B: int
    lam: int


@dataclass(frozen=True)
class AZRec:
    a: int
    b: int
    c: int


@dataclass(frozen=True)
class CooperRec:
    a: int
    b: int
    c: int
    d: int


@dataclass(frozen=True)
class Named:
    id: str

    def __post_init__(self):
        if self.id not in NAMED_SEQUENCES:
            raise ValueError(f"unknown sequence id {self.id!r}")


SequenceSpec = Union[OSS, ZagierRec, AZRec, CooperRec, Named]


def franel(n: int) -> int:
    return sum(binom(n, k) ** 3 for k in range(n + 1))


def _formula_A(n):
    return franel(n)


def _formula_B(n):
    return sum(
        (-1) ** k * 3 ** (n - 3 * k) * binom(n, 3 * k) * binom(3 * k, 2 * k) * binom(2 * k, k)
        for k in range(n // 3 + 1)
    )


def _formula_C(n):
    return sum(binom(n, k) ** 2 * binom(2 * k, k) for k in range(n + 1))


def _formula_D(n):
    return sum(binom(n, k) ** 2 * binom(n + k, k) for k in range(n + 1))


def _formula_E(n):
    return sum(
        4 ** (n - 2 * k) * binom(n, 2 * k) * binom(2 * k, k) ** 2 for k in range(n // 2 + 1)
    )


def _formula_F(n):
    return sum((-1) ** k * 8 ** (n - k) * binom(n, k) * franel(k) for k in range(n + 1))


def _formula_delta(n):
    return sum(
        (-1) ** k
        * 3 ** (n - 3 * k)
        * binom(n, 3 * k)
        * binom(n + k, k)
        * binom(3 * k, 2 * k)
        * binom(2 * k, k)
        for k in range(n // 3 + 1)
    )


def _formula_eta(n):
    return sum(
        (-1) ** k
        * binom(n, k) ** 3
        * (binom(4 * n - 5 * k - 1, 3 * n) + binom(4 * n - 5 * k, 3 * n))
        for k in range(n + 1)
    )


def _formula_alpha(n):
    return sum(
        binom(n, k) ** 2 * binom(2 * k, k) * binom(2 * n - 2 * k, n - k) for k in range(n + 1)
    )


def _formula_zeta(n):
    return sum(
        binom(n, k) ** 2 * binom(n, l) * binom(k, l) * binom(k + l, n)
        for k in range(n + 1)
        for l in range(n + 1)
    )


def _formula_s18(n):
    return sum(
        (-1) ** k
        * binom(n, k)
        * binom(2 * k, k)
        * binom(2 * n - 2 * k, n - k)
        * (binom(2 * n - 3 * k - 1, n) + binom(2 * n - 3 * k, n))
        for k in range(n + 1)
    )


@dataclass(frozen=True)
class NamedSequence:
    """A table row: its recurrence parameters and its closed-form evaluator."""

    id: str
    recurrence: Union[ZagierRec, CooperRec]
    formula: Callable[[int], int] = field(compare=False)
    oss: Optional[OSS] = None


NAMED_SEQUENCES: dict[str, NamedSequence] = {
    ns.id: ns
    for ns in [
        NamedSequence("A", ZagierRec(7, -8, 2), _formula_A, OSS(3, 0, 0)),
        NamedSequence("B", ZagierRec(9, 27, 3), _formula_B),
        NamedSequence("C", ZagierRec(10, 9, 3), _formula_C),
        NamedSequence("D", ZagierRec(11, -1, 3), _formula_D, OSS(2, 1, 0)),
        NamedSequence("E", ZagierRec(12, 32, 4), _formula_E),
        NamedSequence("F", ZagierRec(17, 72, 6), _formula_F),
        NamedSequence("delta", CooperRec(7, 3, 81, 0), _formula_delta),
        NamedSequence("eta", CooperRec(11, 5, 125, 0), _formula_eta),
        NamedSequence("alpha", CooperRec(10, 4, 64, 0), _formula_alpha),
        NamedSequence(
            "epsilon", CooperRec(12, 4, 16, 0), lambda n: oss_term_at(2, 0, 2, n), OSS(2, 0, 2)
        ),
        NamedSequence("zeta", CooperRec(9, 3, -27, 0), _formula_zeta),
        NamedSequence(
            "gamma", CooperRec(17, 5, 1, 0), lambda n: oss_term_at(2, 2, 0, n), OSS(2, 2, 0)
        ),
        NamedSequence(
            "s7", CooperRec(13, 4, -27, 3), lambda n: oss_term_at(2, 1, 1, n), OSS(2, 1, 1)
        ),
        NamedSequence(
            "s10", CooperRec(6, 2, -64, 4), lambda n: oss_term_at(4, 0, 0, n), OSS(4, 0, 0)
        ),
        NamedSequence("s18", CooperRec(14, 6, 192, -12), _formula_s18),
    ]
}

#: The six special-case rows of A_n^(r,s,t), triple -> sequence id.
OSS_SPECIAL_CASES: dict[tuple[int, int, int], str] = {
    (3, 0, 0): "A",
    (2, 1, 0): "D",
    (2, 0, 2): "epsilon",
    (2, 2, 0): "gamma",
    (2, 1, 1): "s7",
    (4, 0, 0): "s10",
}


def _resolve_recurrence(spec: SequenceSpec) -> Union[ZagierRec, CooperRec]:
    if isinstance(spec, Named):
        return NAMED_SEQUENCES[spec.id].recurrence
    if isinstance(spec, AZRec):
        return CooperRec(spec.a, spec.b, spec.c, 0)
    if isinstance(spec, (ZagierRec, CooperRec)):
        return spec
    if isinstance(spec, OSS):
        key = (spec.r, spec.s, spec.t)
        if key in OSS_SPECIAL_CASES:
            return NAMED_SEQUENCES[OSS_SPECIAL_CASES[key]].recurrence
    raise NoClosedForm(f"no recurrence known for {spec}")


def recurrence_terms(spec: SequenceSpec, count: int):
    """Yield u_0 .. u_{count-1} as exact rationals; integrality is not assumed."""
    rec = _resolve_recurrence(spec)
    u_prev, u = Fraction(0), Fraction(1)  # u_{-1}, u_0
    yield u
    for n in range(count - 1):
        if isinstance(rec, ZagierRec):
            rhs = (rec.A * n * n + rec.A * n + rec.lam) * u - rec.B * n * n * u_prev
            u_prev, u = u, rhs / ((n + 1) ** 2)
        else:
            rhs = (2 * n + 1) * (rec.a * n * n + rec.a * n + rec.b) * u - n * (
                rec.c * n * n + rec.d
            ) * u_prev
            u_prev, u = u, rhs / ((n + 1) ** 3)
        yield u


def term_by_recurrence(spec: SequenceSpec, n: int) -> Fraction:
    """u_n by the 3-term recurrence, as an exact rational."""
    if n < 0:
        raise ValueError("n must be non-negative")
    for i, u in enumerate(recurrence_terms(spec, n + 1)):
        if i == n:
            return u
    raise AssertionError("unreachable")


def term_by_formula(spec: SequenceSpec, n: int) -> int:
    """u_n by the closed-form binomial sum."""
    if isinstance(spec, OSS):
        return oss_term_at(spec.r, spec.s, spec.t, n)
    if isinstance(spec, Named):
        return NAMED_SEQUENCES[spec.id].formula(n)
    raise NoClosedForm(f"{spec} has no closed form")


@lru_cache(maxsize=4096)
def oss_term_at(r: int, s: int, t: int, n: int, cap: int = DEFAULT_INDEX_CAP) -> int:
    """A_n^(r,s,t) by direct summation; cached because congruence grids reuse terms."""
    if r < 2:
        raise ValueError("r must be >= 2")
    if n > cap:
        raise CapExceeded(f"index {n} beyond cap {cap}")
    return sum(summand(n, k, r, s, t) for k in range(n + 1))


@dataclass(frozen=True)
class ValidationReport:
    spec: SequenceSpec
    horizon: int
    agree: bool
    first_mismatch: Optional[int]  # index where recurrence != formula, if any
    nonintegral_at: Optional[int]  # index of first non-integral recurrence term, if any


def cross_validate(spec: SequenceSpec, horizon: int) -> ValidationReport:
    """Compare recurrence terms against the closed form up to the horizon."""
    first_mismatch = None
    nonintegral_at = None
    for n, u in enumerate(recurrence_terms(spec, horizon)):
        if u.denominator != 1 and nonintegral_at is None:
            nonintegral_at = n
        if u != term_by_formula(spec, n):
            first_mismatch = n
            break
    agree = first_mismatch is None and nonintegral_at is None
    return ValidationReport(spec, horizon, agree, first_mismatch, nonintegral_at)


def parse_spec(text: str) -> SequenceSpec:
    """Parse CLI spec syntax: named:D, oss:2,2,0, zagier:7,-8,2, az:17,5,1, cooper:12,4,16,0."""
    kind, _, rest = text.partition(":")
    if kind == "named":
        return Named(rest)
    nums = [int(x) for x in rest.split(",")] if rest else []
    if kind == "oss" and len(nums) == 3:
        return OSS(*nums)
    if kind == "zagier" and len(nums) == 3:
        return ZagierRec(*nums)
    if kind == "az" and len(nums) == 3:
        return AZRec(*nums)
    if kind == "cooper" and len(nums) == 4:
        return CooperRec(*nums)
    raise ValueError(f"cannot parse sequence spec {text!r}")


def spec_label(spec: SequenceSpec) -> str:
    """Inverse of parse_spec, for report records."""
    if isinstance(spec, Named):
        return f"named:{spec.id}"
    if isinstance(spec, OSS):
        return f"oss:{spec.r},{spec.s},{spec.t}"
    if isinstance(spec, ZagierRec):
        return f"zagier:{spec.A},{spec.B},{spec.lam}"
    if isinstance(spec, AZRec):
        return f"az:{spec.a},{spec.b},{spec.c}"
    return f"cooper:{spec.a},{spec.b},{spec.c},{spec.d}"
