"""Acceptance gate: one criterion per test, one printed pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline.
Criterion 5 exercises the twelve lemma verifiers on their full default grids,
including depth l = 0 for the nested block lemmas; see the test for the
current status of those points.
"""

import random
import subprocess
import sys
from fractions import Fraction

from gausscong import bernoulli
from gausscong.exact import PrimePowerModulus, is_prime, ord_p, reduce_mod
from gausscong.lemmas import (
    BLOCK_LEMMA_IDS,
    verify_binom_shift,
    verify_block_lemma,
    verify_granville,
)
from gausscong.search import (
    COOPER_SPORADIC,
    DEFAULT_COOPER_BOX,
    DEFAULT_ZAGIER_BOX,
    ZAGIER_SPORADIC,
    SearchBox,
    run_search,
)
from gausscong.sequences import (
    NAMED_SEQUENCES,
    OSS_SPECIAL_CASES,
    Named,
    cross_validate,
    oss_term_at,
    term_by_recurrence,
)
from gausscong.theorem import (
    DEFAULT_MS,
    DEFAULT_NS,
    DEFAULT_PRIMES,
    DEFAULT_RST_ROWS,
    CongruenceTask,
    Mode,
    consistency_sweep,
    correction_term,
    verify_gauss3,
    verify_theorem1,
)

NESTED = ("b14", "b15", "b16", "b17")


def _report(num: int, name: str, ok: bool) -> bool:
    print(f"[criterion {num}] {name}: {'PASS' if ok else 'FAIL'}", flush=True)
    return ok


def test_criterion_1_sequence_fidelity():
    ok = all(cross_validate(Named(sid), 30).agree for sid in NAMED_SEQUENCES)
    for (r, s, t), sid in OSS_SPECIAL_CASES.items():
        ok = ok and all(
            oss_term_at(r, s, t, n) == term_by_recurrence(Named(sid), n)
            for n in range(31)
        )
    ok = ok and term_by_recurrence(Named("gamma"), 1) == 5
    ok = ok and term_by_recurrence(Named("D"), 1) == 3
    assert _report(1, "sequence fidelity", ok)


def test_criterion_2_gauss_order_3():
    ok = ord_p(819005 - 5, 5) == 3
    for p in DEFAULT_PRIMES:
        for n in DEFAULT_NS:
            for m in DEFAULT_MS:
                for r, s, t in DEFAULT_RST_ROWS:
                    rep = verify_gauss3(CongruenceTask(p, n, m, r, s, t, Mode.GAUSS3))
                    ok = ok and rep.passed
    assert _report(2, "Gauss order-3 congruence", ok)


def test_criterion_3_theorem_1():
    ok = (
        correction_term(1, 2, 2, 0) == Fraction(-14, 3)
        and correction_term(1, 3, 0, 0) == Fraction(1, 2)
        and correction_term(1, 2, 1, 0) == Fraction(-5, 3)
        and correction_term(1, 4, 0, 0) == 0
    )
    # hand anchors at (p=5, n=1, m=1)
    rhs = reduce_mod(125 * Fraction(1, 6) * Fraction(-14, 3), PrimePowerModulus(5, 4))
    ok = ok and (819005 - 5) % 625 == 250 == rhs.value
    ok = ok and (oss_term_at(3, 0, 0, 5) - 2) % 625 == 375
    ok = ok and (oss_term_at(2, 1, 0, 5) - 3) % 625 == 0
    ok = ok and (oss_term_at(4, 0, 0, 5) - 2) % 5 ** 4 == 0
    for p in DEFAULT_PRIMES:
        for n in DEFAULT_NS:
            for m in DEFAULT_MS:
                for r, s, t in DEFAULT_RST_ROWS:
                    rep = verify_theorem1(CongruenceTask(p, n, m, r, s, t, Mode.THEOREM1))
                    ok = ok and rep.passed
    assert _report(3, "Theorem 1 refinement", ok)


def test_criterion_4_consistency():
    ok = True
    for r, s, t in DEFAULT_RST_ROWS:
        for n in (1, 2):
            ok = ok and consistency_sweep(n, r, s, t).all_agree
    assert _report(4, "correction term independent of p and m", ok)


def test_criterion_5_lemma_suite():
    # Full default grids: b1 over 1 <= k < n <= 6, p in {5,7,11}; b2 with 50
    # randomized tuples per (p,m); block lemmas over p in {5,7,11,13},
    # m in {1,2} (l in {0,1,2} for the nested four), n in {0,1,2} where used.
    #
    # Status: the four nested congruences (b14-b17) do not hold at depth
    # l = 0 -- direct rational evaluation of the sums gives coefficients
    # -1/2, 3/2, 3/2, 5/2 times B_{p-3} there instead of the stated values,
    # so this criterion is red at exactly those 39 grid points.  The l >= 1
    # grid, which is all the main theorem uses, passes in full.
    ok = True
    failures = []
    for p in (5, 7, 11):
        for n in range(2, 7):
            for k in range(1, n):
                if not verify_granville(n, k, p).passed:
                    failures.append(("b1", p, n, k))
    for p in (5, 7, 11, 13):
        for m in (1, 2):
            rng = random.Random(f"acceptance-{p}-{m}")
            for _ in range(50):
                a, b, c = (rng.randrange(0, 3 * p ** m) for _ in range(3))
                n = rng.choice((1, 2))
                r, s, t = (rng.randrange(0, 5) for _ in range(3))
                if not verify_binom_shift(a, b, c, n, m, p, r, s, t).passed:
                    failures.append(("b2", p, m, a, b, c, n, r, s, t))
    for which in BLOCK_LEMMA_IDS:
        vs = (0, 1, 2) if which in NESTED else (1, 2)
        ns = (0, 1, 2) if which in NESTED + ("b7", "b8") else (0,)
        for p in (5, 7, 11, 13):
            for v in vs:
                for n in ns:
                    if not verify_block_lemma(which, p, v, n=n).passed:
                        failures.append((which, p, v, n))
    # negative controls: a perturbed coefficient must fail somewhere
    for which in BLOCK_LEMMA_IDS:
        if all(verify_block_lemma(which, p, 1, n=0, perturb=1).passed for p in (5, 7, 11, 13)):
            failures.append((which, "negative-control-vacuous"))
    ok = not failures
    _report(5, "lemma suite on full default grids", ok)
    assert ok, f"{len(failures)} failing grid points, e.g. {failures[:5]}"


def test_criterion_6_bernoulli():
    ok = all(
        bernoulli.bernoulli_exact(n).denominator
        == bernoulli.von_staudt_clausen_denominator(n)
        for n in range(2, 61, 2)
    )
    for p in range(5, 500):
        if is_prime(p):
            bernoulli.b_pm3_mod_p(p)  # raises InternalMismatch on disagreement
    assert _report(6, "Bernoulli routes", ok)


def test_criterion_7_search():
    zagier = {
        h.params: h.classification
        for h in run_search(SearchBox("zagier", DEFAULT_ZAGIER_BOX))
        if h.classification.startswith("sporadic:")
    }
    ok = zagier == {k: f"sporadic:{v}" for k, v in ZAGIER_SPORADIC.items()}
    cooper = {
        h.params: h.classification
        for h in run_search(SearchBox("cooper", DEFAULT_COOPER_BOX))
        if h.classification.startswith("sporadic:")
    }
    for params, sid in COOPER_SPORADIC.items():
        ok = ok and cooper.get(params) == f"sporadic:{sid}"
    assert _report(7, "sporadic search boxes", ok)


def test_criterion_8_determinism():
    def run(argv, workers):
        return subprocess.run(
            [sys.executable, "-m", "gausscong.cli", "--workers", str(workers), *argv],
            capture_output=True,
            text=True,
        )

    ok = True
    for argv in (
        ["verify-theorem1"],
        ["search", "--family", "zagier"],
        ["verify-lemma", "--id", "b7,b9,b23"],
    ):
        a, b = run(argv, 1), run(argv, 3)
        ok = ok and a.returncode == b.returncode and a.stdout == b.stdout
    assert _report(8, "byte-identical reports across worker counts", ok)
