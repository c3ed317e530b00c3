import json
from itertools import product

import numpy as np
import pytest

from paucity.counting import (
    BudgetExceeded,
    SystemSpec,
    count_T,
    count_T_naive,
    count_fast,
    count_naive,
    nondiagonal_witnesses,
    orderings,
    shared_value_solutions,
    signature_histogram,
    v_split,
    v_split_naive,
    witness_from_json,
    witness_to_json,
)
from paucity.symfunc import verify_witness


def test_spec_exponents():
    assert SystemSpec.incomplete(3, 1).exponents == (1, 3)
    assert SystemSpec.incomplete(4, 0).exponents == (1, 2, 3)
    assert SystemSpec.full(2, 2).exponents == (1, 2)
    with pytest.raises(ValueError):
        SystemSpec.incomplete(3, 3)


def test_orderings():
    assert orderings((1, 1, 2)) == 3
    assert orderings((1, 2, 3)) == 6
    assert orderings((4, 4, 4, 4)) == 1


def test_count_T_small():
    assert count_T(1, 17) == 17
    assert count_T(2, 3) == 15
    for X in range(1, 30):
        assert count_T(2, X) == 2 * X * X - X


@pytest.mark.parametrize("s, X", [(1, 5), (2, 4), (3, 4), (3, 5), (4, 3)])
def test_count_T_against_brute_force(s, X):
    assert count_T(s, X) == count_T_naive(s, X)


@pytest.mark.parametrize("spec, X, expected", [
    (SystemSpec.incomplete(2, 0), 2, 6),
    (SystemSpec.incomplete(3, 1), 2, 20),
    (SystemSpec.incomplete(2, 0), 4, 44),
    (SystemSpec.full(2, 2), 2, 6),
])
def test_count_naive_examples(spec, X, expected):
    assert count_naive(spec, X) == expected
    assert count_fast(spec, X).I == expected


def test_count_naive_refuses_over_budget():
    with pytest.raises(BudgetExceeded):
        count_naive(SystemSpec.incomplete(5, 0), 64)


def test_count_fast_report():
    rep = count_fast(SystemSpec.incomplete(3, 1), 2)
    assert (rep.I, rep.T, rep.diff) == (20, 20, 0)
    for spec in (SystemSpec.incomplete(4, 1), SystemSpec.full(3, 2)):
        rep = count_fast(spec, 1)
        assert (rep.I, rep.T, rep.diff) == (1, 1, 0)
    d = count_fast(SystemSpec.incomplete(2, 0), 4).to_dict()
    assert d["diff"] == "16" and "elapsed_ms" not in d


def test_count_fast_memory_budget():
    with pytest.raises(BudgetExceeded) as info:
        count_fast(SystemSpec.incomplete(3, 0), 10, max_keys=5)
    assert info.value.attempted > 5


@pytest.mark.parametrize("k, d, X", [(k, d, X) for k in (2, 3) for d in range(k) for X in range(1, 6)])
def test_fast_equals_naive(k, d, X):
    spec = SystemSpec.incomplete(k, d)
    assert count_fast(spec, X).I == count_naive(spec, X)


def test_fast_equals_ordered_tuple_histogram():
    # independent numpy route over ordered tuples, k=5, d=0
    X = 20
    g = np.indices((X,) * 5).reshape(5, -1).T.astype(np.int64) + 1
    sig = np.stack([(g**j).sum(1) for j in (1, 2, 3, 4)], 1)
    _, c = np.unique(sig, axis=0, return_counts=True)
    expected = int((c.astype(object) ** 2).sum())
    rep = count_fast(SystemSpec.incomplete(5, 0), X)
    assert rep.I == expected
    assert rep.diff == 57600


def test_threads_do_not_change_result():
    spec = SystemSpec.incomplete(4, 1)
    one = signature_histogram(spec, 9, threads=1)
    many = signature_histogram(spec, 9, threads=3)
    assert list(one.items()) == list(many.items())
    assert count_fast(spec, 9, threads=2).I == count_fast(spec, 9).I


# --- witnesses ----------------------------------------------------------------

def test_witnesses_examples():
    assert nondiagonal_witnesses(2, 0, 2, 10) == []
    assert nondiagonal_witnesses(3, 0, 7, 0) == []
    ws = nondiagonal_witnesses(3, 0, 7, 100)
    pairs = [(w.x, w.y) for w in ws]
    assert ((1, 5, 6), (2, 3, 7)) in pairs
    w = ws[pairs.index(((1, 5, 6), (2, 3, 7)))]
    assert w.h == -36
    assert pairs == sorted(pairs)


def test_witnesses_are_genuine():
    for k, d, X in [(3, 0, 10), (3, 1, 10), (4, 0, 9)]:
        for w in nondiagonal_witnesses(k, d, X, 10**6):
            assert sorted(w.x) != sorted(w.y)
            assert not w.system_violations()


def test_witness_count_matches_diff():
    # each multiset pair contributes orderings(x) * orderings(y) ordered pairs
    k, d, X = 3, 0, 12
    ws = nondiagonal_witnesses(k, d, X, 10**6)
    total = sum(orderings(w.x) * orderings(w.y) for w in ws)
    assert total == count_fast(SystemSpec.incomplete(k, d), X).diff


def test_witness_json_round_trip():
    w = nondiagonal_witnesses(3, 0, 7, 1)[0]
    line = witness_to_json(w)
    obj = json.loads(line)
    assert isinstance(obj["h"], str)
    assert witness_from_json(line) == w
    assert verify_witness(witness_from_json(line)).passed


# --- V-split ------------------------------------------------------------------

def test_v_split_examples():
    v1, v2 = v_split(2, 0, 4, 2)
    assert (v1, v2) == (0, 16)
    assert v_split(2, 0, 2, 2) == (0, 0)
    v1, v2 = v_split(3, 0, 7, 3)
    rep = count_fast(SystemSpec.incomplete(3, 0), 7)
    assert v1 + v2 == rep.diff
    # both sides of ((1,5,6),(2,3,7)) have 3 distinct values, so that class sits in V2
    ws = [w for w in nondiagonal_witnesses(3, 0, 7, 10**6) if len(set(w.x)) < 3 and len(set(w.y)) < 3]
    assert all((1, 5, 6) not in (w.x, w.y) for w in ws)
    assert v1 == sum(orderings(w.x) * orderings(w.y) for w in ws)


@pytest.mark.parametrize("k, d, X, r", [(3, 0, 7, 2), (3, 0, 7, 3), (3, 1, 6, 2), (4, 0, 5, 3), (2, 0, 4, 2)])
def test_v_split_matches_brute_force(k, d, X, r):
    assert v_split(k, d, X, r) == v_split_naive(k, d, X, r)


def test_v1_vanishes_for_r2_d0():
    for X in range(1, 11):
        assert v_split(5, 0, X, 2)[0] == 0


def test_shared_values_force_diagonal():
    for k in (2, 3, 4):
        for d in range(k):
            assert shared_value_solutions(k, d, 6) == []
