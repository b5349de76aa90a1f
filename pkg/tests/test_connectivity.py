import itertools

import pytest

from helpers import subsets, table_rank
from matroidkit import dual, uniform, vamos
from matroidkit.config import size_cap
from matroidkit.connectivity import (
    connectivity_report,
    lambda_,
    lambda_dual,
    lambda_set,
    local_conn_pair,
    multi_local_conn,
    multi_local_conn_preimage,
    nullity,
)
from matroidkit.errors import BudgetExceeded, NotAPartition

MATCHINGS = [{"01", "23"}, {"02", "13"}, {"03", "12"}]


def test_nullity():
    assert nullity(uniform(2, 3), "abc") == 1
    assert nullity(uniform(2, 3), "ab") == 0
    assert nullity(vamos(), "abcd") == 1


def test_local_conn_pair(get):
    assert local_conn_pair(uniform(2, 4), "ab", "cd") == 2
    assert local_conn_pair(uniform(3, 4), "ab", "ab") == 2
    k4 = get("graphic:K4")
    assert local_conn_pair(k4, {"01", "02", "12"}, {"01", "03", "13"}) == 1


def test_local_conn_pair_matches_rank_formula(get):
    m = get("graphic:K23")
    r = table_rank(m)
    sets = list(subsets(m.ground))[::3]
    for x, y in itertools.product(sets, repeat=2):
        assert local_conn_pair(m, x, y) == r(x) + r(y) - r(x | y)


def test_multi_local_conn(get):
    k4 = get("graphic:K4")
    assert multi_local_conn(k4, MATCHINGS) == 3
    assert multi_local_conn_preimage(k4, MATCHINGS) == 3
    m = uniform(2, 4)
    assert multi_local_conn(m, ["ab", "bc"]) == local_conn_pair(m, "ab", "bc")
    assert multi_local_conn(m, ["a", "b"]) == 0
    # overlapping parts: sum of ranks minus rank of the union no longer applies
    assert multi_local_conn(m, ["ab", "ab", "ab"]) == multi_local_conn_preimage(m, ["ab", "ab", "ab"])


def test_multi_local_conn_budget():
    with size_cap(16):
        with pytest.raises(BudgetExceeded):
            multi_local_conn_preimage(uniform(3, 8), ["abc", "def", "gh", "a"] * 20)


def test_lambda(get):
    assert lambda_(uniform(2, 4), ["ab", "cd"]) == 2
    m = get("fano")
    assert lambda_(m, [m.ground]) == 0
    k4 = get("graphic:K4")
    assert lambda_(k4, MATCHINGS) == 3
    assert lambda_dual(k4, MATCHINGS) == 3
    assert lambda_dual(k4, [k4.ground]) == 0
    with pytest.raises(NotAPartition):
        lambda_(k4, MATCHINGS[:2])


def test_lambda_set(get):
    assert lambda_set(uniform(2, 4), "ab") == 2
    m = get("vamos")
    assert lambda_set(m, m.ground) == 0
    # r(triangle) + r(complement) - r(K4) = 2 + 3 - 3
    k4 = get("graphic:K4")
    assert lambda_set(k4, {"01", "02", "12"}) == 2


def test_lambda_self_dual_on_two_parts(get):
    m = get("graphic:K23")
    for x in list(subsets(m.ground))[::4]:
        rest = set(m.ground) - x
        assert lambda_(m, [x, rest]) == lambda_dual(m, [x, rest]) == lambda_(dual(m), [x, rest])


def test_report(get):
    k4 = get("graphic:K4")
    rep = connectivity_report(k4, MATCHINGS)
    assert rep.lambda_ == rep.lambda_dual == 3
    assert len(rep.per_pair_local_conn) == 3
