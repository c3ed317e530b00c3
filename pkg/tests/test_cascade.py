import json
import random
from itertools import product
from math import gcd, prod

import pytest

from paucity.cascade import (
    DecompTable,
    ProductMatrix,
    b_products,
    cascade_extract,
    index_set_cardinalities,
    indices,
    matrix_from_alpha,
    matrix_from_witness,
    phi,
    phi_inv,
    reconstruct_verify,
    successor,
)
from paucity.counting import nondiagonal_witnesses
from paucity.exponents import psi

WORKED = ProductMatrix([[6, 10], [5, 3]], X=5)


def test_phi_examples():
    assert phi((2, 1), 2) == 5
    assert successor((2, 1), 2) == (0, 2)
    assert phi((0, 0, 0), 4) == 0
    with pytest.raises(StopIteration):
        successor((2, 2), 2)
    with pytest.raises(ValueError):
        phi((3, 0), 2)


@pytest.mark.parametrize("k, r", [(1, 2), (2, 2), (3, 3), (4, 2)])
def test_phi_bijection_and_successor_walk(k, r):
    n = (k + 1) ** r
    assert [phi(phi_inv(v, k, r), k) for v in range(n)] == list(range(n))
    seen = [(0,) * r]
    while True:
        try:
            seen.append(successor(seen[-1], k))
        except StopIteration:
            break
    assert len(seen) == n == len(set(seen))
    assert set(seen) == set(product(range(k + 1), repeat=r))
    assert seen == list(indices(k, r))


def test_worked_matrix():
    table = cascade_extract(WORKED)
    assert [table.alpha[i] for i in indices(1, 2)] == [2, 5, 3, 1]
    assert table.alpha[(0, 0)] == 2
    rep = reconstruct_verify(table, WORKED)
    assert rep.ok and rep.pigeonhole and rep.product_chain
    # u01 = a00 a01, u11 = a10 a11, u02 = a00 a10, u12 = a01 a11
    a = table.alpha
    assert a[(0, 0)] * a[(0, 1)] == 6
    assert a[(1, 0)] * a[(1, 1)] == 5
    assert a[(0, 0)] * a[(1, 0)] == 10
    assert a[(0, 1)] * a[(1, 1)] == 3


def test_zero_entry_rejected():
    with pytest.raises(ValueError):
        cascade_extract(ProductMatrix([[0, 10], [5, 3]], X=5))


def test_all_ones():
    m = ProductMatrix([[1] * 3 for _ in range(4)], X=1)
    table = cascade_extract(m)
    assert set(table.alpha.values()) == {1}
    rep = reconstruct_verify(table, m)
    assert rep.ok and rep.B == [1, 1, 1] and rep.pigeonhole


def test_first_alpha_is_gcd_of_row_zero():
    alpha = {i: (i[0] + 2 * i[1] + 1) for i in indices(2, 3)}
    m = matrix_from_alpha(alpha, 2, 3)
    table = cascade_extract(m)
    assert table.alpha[(0, 0, 0)] == gcd(*m.u[0])


def test_unbalanced_matrix_fails_reconstruction():
    m = ProductMatrix([[4, 6], [3, 5]], X=5)
    assert m.violations() == ["column products differ"]
    rep = reconstruct_verify(cascade_extract(m), m)
    assert not rep.ok and rep.mismatches


def test_balanced_matrices_reconstruct():
    # matrices drawn directly, not built from alpha tables; keep the balanced ones
    rng = random.Random(3)
    balanced = 0
    for _ in range(40000):
        k, r = rng.randint(1, 3), rng.randint(2, 3)
        m = ProductMatrix([[rng.randint(1, 12) for _ in range(r)] for _ in range(k + 1)], X=12)
        table = cascade_extract(m)  # divisions are exact by construction
        rep = reconstruct_verify(table, m)
        assert rep.ok == (not m.violations())
        balanced += rep.ok
    assert balanced > 100


def _random_alpha(rng, k, r):
    return {i: rng.randint(1, 20) for i in indices(k, r)}


def test_round_trip_random():
    rng = random.Random(7)
    for _ in range(100):
        k, r = rng.randint(1, 3), rng.randint(2, 3)
        m = matrix_from_alpha(_random_alpha(rng, k, r), k, r)
        assert not m.violations()
        table = cascade_extract(m)
        rep = reconstruct_verify(table, m)
        assert rep.ok, rep.mismatches
        assert rep.pigeonhole and rep.product_chain
        assert min(rep.B) ** r <= prod(rep.B) <= m.X**k


def test_round_trip_with_signs():
    rng = random.Random(11)
    done = 0
    while done < 50:
        k, r = rng.randint(1, 3), rng.randint(2, 3)
        signs = [[rng.choice((1, -1)) for _ in range(r)] for _ in range(k + 1)]
        m = matrix_from_alpha(_random_alpha(rng, k, r), k, r, signs)
        if m.violations():
            continue  # column sign products disagree
        done += 1
        table = cascade_extract(m)
        assert table.signs == signs
        assert reconstruct_verify(table, m).ok


def test_b_products_by_definition():
    alpha = {i: 2 + sum(i) for i in indices(3, 2)}
    table = DecompTable(3, 2, alpha, [[1, 1]] * 4)
    B = b_products(table)
    # p = 1: i_2 > i_1 > 0; p = 2: i_1 > i_2 > 0
    assert B[0] == prod(alpha[(a, b)] for a in range(1, 4) for b in range(1, 4) if b > a)
    assert B[1] == prod(alpha[(a, b)] for a in range(1, 4) for b in range(1, 4) if a > b)


def test_witness_matrices_balance_and_decompose():
    for k, d, X in [(3, 0, 12), (4, 0, 9), (3, 1, 14)]:
        for w in nondiagonal_witnesses(k, d, X, 10**6):
            for r in range(2, k + 1):
                if len(set(w.y)) < r:
                    continue
                m = matrix_from_witness(w, r, X)
                assert m.violations() == []
                table = cascade_extract(m)
                rep = reconstruct_verify(table, m)
                assert rep.ok and rep.pigeonhole and rep.product_chain


def test_decomp_table_json_round_trip():
    table = cascade_extract(WORKED)
    obj = json.loads(json.dumps(table.to_dict()))
    assert obj["alpha"][0] == {"i": [0, 0], "v": "2"}
    assert DecompTable.from_dict(obj) == table
    assert ProductMatrix.from_dict(json.loads(WORKED.to_json())) == WORKED


@pytest.mark.parametrize("k, r, expected", [((3), 2, (9, 6, 3)), (2, 2, (4, 2, 1))])
def test_index_set_examples(k, r, expected):
    assert index_set_cardinalities(k, r) == expected


def test_index_sets_closed_forms():
    for k in range(2, 6):
        for r in (2, 3):
            plus, star, p = index_set_cardinalities(k, r)
            assert plus == k**r and star == r * p


def test_psi_bound():
    for k in range(2, 21):
        for r in range(2, 6):
            assert psi(k, r) * r < k**r
