import pytest

from gausscong.errors import BudgetExceeded
from gausscong.search import (
    COOPER_SPORADIC,
    DEFAULT_COOPER_BOX,
    DEFAULT_ZAGIER_BOX,
    ZAGIER_SPORADIC,
    SearchBox,
    classify,
    cooper_terms,
    run_search,
    zagier_terms,
)
from gausscong.sequences import Named, term_by_recurrence


def test_terms_match_recurrence_module():
    assert zagier_terms(7, -8, 2, 8) == [
        term_by_recurrence(Named("A"), n) for n in range(8)
    ]
    assert cooper_terms(12, 4, 16, 0, 8) == [
        term_by_recurrence(Named("epsilon"), n) for n in range(8)
    ]


def test_early_abandon_returns_none():
    # u_1 = lam must be integral trivially; pick a tuple dying at n = 1:
    # 4*u_2 = (2A + lam)*lam - B, which is odd for A=1, B=0, lam=1 => 3/4
    assert zagier_terms(1, 0, 1, 10) is None
    assert cooper_terms(1, 1, 1, 1, 10) is None


def test_box_validation():
    with pytest.raises(ValueError):
        SearchBox("weird", {"A": (0, 1)})
    with pytest.raises(ValueError):
        SearchBox("zagier", DEFAULT_ZAGIER_BOX, horizon=5)


def test_budget():
    box = SearchBox("cooper", DEFAULT_COOPER_BOX)
    assert box.tuple_count() == 21 * 11 * 501 * 31
    with pytest.raises(BudgetExceeded):
        run_search(box, budget=1000)


def test_classify_categories():
    assert classify(tuple(zagier_terms(7, -8, 2, 10))) == "sporadic:A"
    assert classify((1, 0, 0, 0, 0, 0, 0, 0, 0, 0)) == "degenerate"
    assert classify(tuple(3 ** n for n in range(10))) == "degenerate"
    assert classify((1, 2, 5, 11, 23, 47, 95, 191, 383, 767)) == "unclassified"


def test_zagier_default_box_finds_exactly_the_six_rows():
    hits = run_search(SearchBox("zagier", DEFAULT_ZAGIER_BOX))
    sporadic = {
        h.params: h.classification.split(":", 1)[1]
        for h in hits
        if h.classification.startswith("sporadic:")
    }
    assert sporadic == ZAGIER_SPORADIC


def test_cooper_default_box_finds_all_nine_rows():
    hits = run_search(SearchBox("cooper", DEFAULT_COOPER_BOX))
    sporadic = {
        h.params: h.classification.split(":", 1)[1]
        for h in hits
        if h.classification.startswith("sporadic:")
    }
    # the box clips nothing: every known Cooper row lies inside it
    for params, sid in COOPER_SPORADIC.items():
        assert sporadic.get(params) == sid


def test_hits_in_lexicographic_order():
    box = SearchBox("zagier", {"A": (0, 12), "B": (-10, 10), "lam": (0, 4)})
    hits = run_search(box)
    assert hits == sorted(hits, key=lambda h: h.params)


def test_hit_terms_are_recorded():
    box = SearchBox("zagier", {"A": (7, 7), "B": (-8, -8), "lam": (2, 2)})
    (hit,) = run_search(box)
    assert hit.first_terms[:5] == (1, 2, 10, 56, 346)
    assert hit.classification == "sporadic:A"
