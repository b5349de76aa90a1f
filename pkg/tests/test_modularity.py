import itertools

import pytest

from helpers import subsets, table_rank
from matroidkit import uniform, vamos
from matroidkit.errors import NotAFlat, NotAPartition
from matroidkit.flats import flats
from matroidkit.modularity import (
    PartitionFamily,
    complementary_flats,
    is_modular_flat,
    is_modular_matroid,
    is_modular_pair,
    is_skew_family,
    lines_meet_hyperplanes,
    modular_flat_routes,
    mutual_basis,
    require_partition,
)

S = [frozenset(p) for p in ("ab", "cd", "ef", "gh")]


def test_mutual_basis_examples():
    m = uniform(2, 3)
    w = mutual_basis(m, [{"a"}, {"a", "b"}])
    assert w.basis == frozenset("ab")
    assert mutual_basis(m, [{"a", "b"}, {"b", "c"}]) is None
    assert mutual_basis(m, []).basis == frozenset()


def test_mutual_basis_witness_is_checked_by_table(get):
    m = get("graphic:K4")
    r = table_rank(m)
    for x, y in itertools.combinations(list(subsets(m.ground))[::5], 2):
        w = mutual_basis(m, [x, y])
        if w is not None:
            b = w.basis
            assert r(b) == len(b)
            assert len(b & x) == r(x) and len(b & y) == r(y)


def test_modular_pair_examples(get):
    m = uniform(2, 3)
    assert not is_modular_pair(m, "ab", "bc")
    assert is_modular_pair(m, "ab", "ab")
    k4 = get("graphic:K4")
    t1 = {"01", "02", "12"}
    t2 = {"01", "03", "13"}
    assert is_modular_pair(k4, t1, t2)


def test_skew_examples():
    m = uniform(2, 4)
    assert is_skew_family(m, ["a", "b"])
    assert not is_skew_family(m, ["ab", "c"])
    assert is_skew_family(m, ["abc"])
    # loops are skew to everything
    assert is_skew_family(uniform(0, 2), ["a", "ab"])


def test_modular_flat_examples(get):
    v = vamos()
    assert is_modular_flat(v, v.ground)
    assert not is_modular_flat(v, S[2])
    fano = get("fano")
    for p in fano.ground:
        assert is_modular_flat(fano, {p})
    with pytest.raises(NotAFlat):
        is_modular_flat(uniform(2, 3), "ab")


def test_modular_flat_routes_agree(get):
    for name in ("graphic:K4", "uniform:3,5", "fano"):
        m = get(name)
        for f in flats(m).masks:
            assert len(set(modular_flat_routes(m, f).values())) == 1


def test_modular_matroid_verdicts(get):
    assert is_modular_matroid(get("fano"))
    assert is_modular_matroid(get("pg_2_3"))
    assert not is_modular_matroid(uniform(3, 4))
    assert not is_modular_matroid(vamos())
    for k, n in ((0, 3), (1, 3), (2, 2), (2, 5)):
        assert is_modular_matroid(uniform(k, n))
    assert not lines_meet_hyperplanes(uniform(3, 4))


def test_complementary_flats():
    assert complementary_flats(uniform(2, 4), "a") == [frozenset(x) for x in "bcd"]
    m = uniform(2, 4)
    assert complementary_flats(m, m.ground) == [frozenset()]
    # every flat disjoint from {a,b} whose join with it is E, not only the pair
    assert set(complementary_flats(uniform(3, 4), "ab")) == {frozenset("c"), frozenset("d"), frozenset("cd")}


def test_partition_family():
    m = uniform(2, 4)
    assert PartitionFamily.of(m, ["ab", "cd"]).is_partition
    assert not PartitionFamily.of(m, ["ab", "bcd"]).is_partition
    with pytest.raises(NotAPartition):
        require_partition(m, ["ab", "c"])
