"""Integrality searches over the two recurrence parameter boxes.

A candidate tuple survives if its recurrence solution stays integral through
the horizon; evaluation abandons a tuple at the first term whose exact
numerator is not divisible by the (n+1)^2 or (n+1)^3 leading coefficient
(most tuples die within the first three terms, so the sweep stays cheap).
Survivors are classified against the fifteen known sporadic rows by exact
comparison of leading terms.  "Integral to horizon" is evidence, not proof;
every report carries evidence_only = True.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .errors import BudgetExceeded
from .sequences import NAMED_SEQUENCES, Named, term_by_formula

DEFAULT_BUDGET = 10 ** 7
CLASSIFY_TERMS = 10

DEFAULT_ZAGIER_BOX = {"A": (0, 20), "B": (-100, 100), "lam": (0, 10)}
DEFAULT_COOPER_BOX = {"a": (0, 20), "b": (0, 10), "c": (-250, 250), "d": (-15, 15)}

#: Known sporadic rows by family, parameter tuple -> sequence id.
ZAGIER_SPORADIC = {
    (7, -8, 2): "A",
    (9, 27, 3): "B",
    (10, 9, 3): "C",
    (11, -1, 3): "D",
    (12, 32, 4): "E",
    (17, 72, 6): "F",
}
COOPER_SPORADIC = {
    (7, 3, 81, 0): "delta",
    (11, 5, 125, 0): "eta",
    (10, 4, 64, 0): "alpha",
    (12, 4, 16, 0): "epsilon",
    (9, 3, -27, 0): "zeta",
    (17, 5, 1, 0): "gamma",
    (13, 4, -27, 3): "s7",
    (6, 2, -64, 4): "s10",
    (14, 6, 192, -12): "s18",
}


@dataclass(frozen=True)
class SearchBox:
    family: str  # "zagier" | "cooper"
    ranges: dict  # name -> (lo, hi) inclusive
    horizon: int = 50

    def __post_init__(self):
        if self.family not in ("zagier", "cooper"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.horizon < 10:
            raise ValueError("horizon must be >= 10")

    def tuple_count(self) -> int:
        count = 1
        for lo, hi in self.ranges.values():
            count *= max(0, hi - lo + 1)
        return count


@dataclass(frozen=True)
class SearchHit:
    params: tuple
    first_terms: tuple
    classification: str  # "sporadic:<id>" | "degenerate" | "unclassified"


def zagier_terms(A: int, B: int, lam: int, horizon: int) -> Optional[list[int]]:
    """Integer terms u_0..u_{horizon-1}, or None at the first non-integral term."""
    terms = [1]
    u_prev, u = 0, 1
    for n in range(horizon - 1):
        num = (A * n * n + A * n + lam) * u - B * n * n * u_prev
        q, rem = divmod(num, (n + 1) * (n + 1))
        if rem:
            return None
        u_prev, u = u, q
        terms.append(q)
    return terms


def cooper_terms(a: int, b: int, c: int, d: int, horizon: int) -> Optional[list[int]]:
    """Integer terms u_0..u_{horizon-1}, or None at the first non-integral term."""
    terms = [1]
    u_prev, u = 0, 1
    for n in range(horizon - 1):
        num = (2 * n + 1) * (a * n * n + a * n + b) * u - n * (c * n * n + d) * u_prev
        q, rem = divmod(num, (n + 1) ** 3)
        if rem:
            return None
        u_prev, u = u, q
        terms.append(q)
    return terms


@lru_cache(maxsize=None)
def _known_prefixes() -> dict[tuple, str]:
    """First CLASSIFY_TERMS terms of each named row, for exact matching."""
    return {
        tuple(term_by_formula(Named(sid), n) for n in range(CLASSIFY_TERMS)): sid
        for sid in NAMED_SEQUENCES
    }


def classify(first_terms) -> str:
    """Match against the known rows, then apply degeneracy heuristics."""
    prefix = tuple(first_terms[:CLASSIFY_TERMS])
    known = _known_prefixes().get(prefix)
    if known is not None:
        return f"sporadic:{known}"
    if any(u == 0 for u in prefix):
        return "degenerate"
    # constant term ratio (geometric tail) over the classification window
    if all(prefix[i + 1] * prefix[1] == prefix[i] * prefix[2] for i in range(len(prefix) - 1)):
        return "degenerate"
    return "unclassified"


def run_search(box: SearchBox, budget: int = DEFAULT_BUDGET) -> list[SearchHit]:
    """All tuples in the box whose solution is integral through the horizon,
    in lexicographic parameter order."""
    if box.tuple_count() > budget:
        raise BudgetExceeded(f"{box.tuple_count()} tuples exceeds budget {budget}")
    hits = []
    if box.family == "zagier":
        names = ("A", "B", "lam")
        evaluate = zagier_terms
    else:
        names = ("a", "b", "c", "d")
        evaluate = cooper_terms
    axes = [range(box.ranges[name][0], box.ranges[name][1] + 1) for name in names]
    for params in itertools.product(*axes):
        terms = evaluate(*params, box.horizon)
        if terms is not None:
            hits.append(SearchHit(params, tuple(terms[:CLASSIFY_TERMS]), classify(terms)))
    return hits
