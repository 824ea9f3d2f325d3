from fractions import Fraction

import pytest

from gausscong.errors import DegenerateArgs
from gausscong.lemmas import (
    ALL_LEMMA_IDS,
    BLOCK_LEMMA_IDS,
    verify_binom_shift,
    verify_block_lemma,
    verify_granville,
)

NESTED = ("b14", "b15", "b16", "b17")


def test_lemma_id_registry():
    assert set(ALL_LEMMA_IDS) == set(BLOCK_LEMMA_IDS) | {"b1", "b2"}
    assert len(ALL_LEMMA_IDS) == 12


@pytest.mark.parametrize("p", [5, 7, 11])
def test_granville_on_small_grid(p):
    for n in range(2, 7):
        for k in range(1, n):
            rep = verify_granville(n, k, p)
            assert rep.passed, (n, k, p, rep.achieved_exponent, rep.required_exponent)


def test_granville_hand_example():
    # n=2, k=1, p=5: binom(10,5)/binom(2,1) = 126; 1 - 2/3*125*B_2 = 1 - 250/18
    rep = verify_granville(2, 1, 5)
    assert rep.lhs == 126
    assert rep.rhs == 1 - Fraction(250, 18)
    assert rep.required_exponent == 4  # ord_5(2*1*1) + 4
    assert rep.passed


def test_granville_required_exponent_tracks_ord():
    # n=10, k=5: nk(n-k) = 250 has ord_5 = 3, so required = 7
    rep = verify_granville(10, 5, 5)
    assert rep.required_exponent == 7
    assert rep.passed


def test_granville_degenerate_args():
    with pytest.raises(DegenerateArgs):
        verify_granville(3, 0, 5)
    with pytest.raises(DegenerateArgs):
        verify_granville(3, 3, 5)


@pytest.mark.parametrize("p,m", [(5, 1), (5, 2), (7, 1), (11, 1)])
def test_binom_shift_systematic(p, m):
    for n in [1, 2]:
        for a in range(0, 2 * p ** m, max(1, p ** m // 3)):
            rep = verify_binom_shift(a, a + 1, 2 * a, n, m, p, 2, 1, 1)
            assert rep.passed, rep.params


def test_binom_shift_exponent_grid():
    # exercise each of r, s, t being zero and nonzero
    for r, s, t in [(0, 0, 0), (3, 0, 0), (0, 2, 0), (0, 0, 1), (1, 1, 1), (4, 3, 2)]:
        rep = verify_binom_shift(7, 9, 13, 1, 1, 5, r, s, t)
        assert rep.passed, (r, s, t)


@pytest.mark.parametrize("which", ["b7", "b8"])
@pytest.mark.parametrize("p", [5, 7, 11, 13])
@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("n", [0, 1, 2])
def test_half_block_lemmas(which, p, m, n, request):
    rep = verify_block_lemma(which, p, m, n=n)
    assert rep.passed, rep.params


@pytest.mark.parametrize("which", ["b9", "b12", "b13", "b23"])
@pytest.mark.parametrize("p", [5, 7, 11, 13])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_whole_range_lemmas(which, p, m):
    rep = verify_block_lemma(which, p, m)
    assert rep.passed, rep.params


@pytest.mark.parametrize("which", NESTED)
@pytest.mark.parametrize("p", [5, 7, 11, 13])
@pytest.mark.parametrize("l", [1, 2])
@pytest.mark.parametrize("n", [0, 1, 2])
def test_nested_lemmas_positive_depth(which, p, l, n):
    rep = verify_block_lemma(which, p, l, n=n)
    assert rep.passed, rep.params


def test_nested_lemmas_fail_at_depth_zero():
    # At l = 0 the stated coefficients do not match the sums: direct rational
    # evaluation gives -1/2, 3/2, 3/2, 5/2 times B_{p-3} instead of the
    # stated 1/3, 1/3, 4/3, 4/3.  The grid below avoids the coincidental
    # agreements (b14 at p=5, b15/b17 at p=7) to pin the failure.
    failing = {("b14", 7), ("b15", 5), ("b16", 5), ("b17", 5)}
    for which, p in failing:
        rep = verify_block_lemma(which, p, 0, n=1)
        assert not rep.passed, (which, p)


def test_nested_lemmas_depth_zero_true_coefficients():
    # At l = 0, n = 1 the sums equal c * B_{p-3} mod p with c as below rather
    # than the stated 1/3, 1/3, 4/3, 4/3.  The gap satisfies
    # 6*(lhs - rhs) = 6*(true - stated) * B_{p-3} mod p, and 6*(true - stated)
    # is an integer for every row.
    from gausscong.bernoulli import b_pm3_mod_p

    true_coeff = {"b14": Fraction(-1, 2), "b15": Fraction(3, 2), "b16": Fraction(3, 2), "b17": Fraction(5, 2)}
    stated = {"b14": Fraction(1, 3), "b15": Fraction(1, 3), "b16": Fraction(4, 3), "b17": Fraction(4, 3)}
    for which in NESTED:
        mult = 6 * (true_coeff[which] - stated[which])
        assert mult.denominator == 1
        for p in [5, 7, 11, 13]:
            rep = verify_block_lemma(which, p, 0, n=1)
            gap = (rep.lhs - rep.rhs).value
            b = b_pm3_mod_p(p).value
            assert (6 * gap - int(mult) * b) % p == 0, (which, p)


@pytest.mark.parametrize("which", BLOCK_LEMMA_IDS)
def test_negative_controls(which):
    # a wrong RHS coefficient must be detected on at least one grid point
    v = 1
    broken = [
        verify_block_lemma(which, p, v, n=0, perturb=1).passed for p in [5, 7, 11, 13]
    ]
    assert not all(broken), which


def test_unknown_block_lemma_rejected():
    with pytest.raises(ValueError):
        verify_block_lemma("b99", 5, 1)


def test_report_fields():
    rep = verify_block_lemma("b7", 5, 1, n=0)
    assert rep.lemma_id == "b7"
    assert rep.params == {"p": 5, "m": 1, "n": 0}
    assert rep.required_exponent == 2
    assert rep.passed == (rep.achieved_exponent >= rep.required_exponent)
