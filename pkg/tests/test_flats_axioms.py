import itertools

from helpers import indep_sets, subsets, table_rank
from matroidkit import uniform, vamos
from matroidkit.axioms import check_axioms, check_matroid
from matroidkit.flats import circuits, flats, flats_by_covers, flats_exhaustive, hyperplanes, is_flat, lines, loops

S = [frozenset(p) for p in ("ab", "cd", "ef", "gh")]


def _flats_by_table(m):
    r = table_rank(m)
    out = set()
    for x in subsets(m.ground):
        rx = r(x)
        out.add(frozenset(e for e in m.ground if r(x | {e}) == rx))
    return out


def test_flat_counts(get):
    assert len(flats(get("fano"))) == 16
    fam = flats(uniform(3, 4))
    assert len(fam) == 12
    assert [len(fam.of_rank(k)) for k in range(4)] == [1, 4, 6, 1]
    only = flats(uniform(0, 2))
    assert only.sets() == [frozenset("ab")]


def test_flats_match_reference(get):
    for name in ("fano", "graphic:K4", "graphic:K23", "uniform:2,5", "loops:2"):
        m = get(name)
        assert set(flats(m).sets()) == _flats_by_table(m)
        assert flats_exhaustive(m).masks == flats_by_covers(m).masks


def test_flats_meet_closed(get):
    for name in ("vamos", "graphic:K23"):
        fam = flats(get(name))
        present = set(fam.masks)
        for a, b in itertools.combinations(fam.masks, 2):
            assert a & b in present


def test_circuits():
    assert circuits(uniform(2, 3)) == [frozenset("abc")]
    assert circuits(uniform(3, 3)) == []
    v = vamos()
    found = set(circuits(v))
    four = {S[i] | S[j] for i, j in itertools.combinations(range(4), 2) if (i, j) != (2, 3)}
    assert {c for c in found if len(c) == 4} == four
    fives = {frozenset(c) for c in itertools.combinations(v.ground, 5) if not any(f <= frozenset(c) for f in four)}
    assert {c for c in found if len(c) == 5} == fives
    assert len(found) == 41
    family = indep_sets(v)
    for c in found:
        assert c not in family and all(c - {e} in family for e in c)


def test_lines_hyperplanes_loops(get):
    k4 = get("graphic:K4")
    hyps = hyperplanes(k4)
    assert len(hyps) == 7
    assert sorted(len(h) for h in hyps) == [2, 2, 2, 3, 3, 3, 3]
    v = vamos()
    assert S[2] in lines(v) and is_flat(v, S[2])
    assert loops(uniform(0, 2)) == frozenset("ab")


def test_check_axioms():
    v = vamos()
    assert check_matroid(v)
    bad = check_axioms("ab", [(), ("a", "b")])
    assert not bad and bad.axiom == "I2"
    assert bad.witness == (frozenset("b"), frozenset("ab"))
    assert check_axioms("abc", [()])
    no_empty = check_axioms("a", [("a",)])
    assert no_empty.axiom == "I1"
    exch = check_axioms("abcd", [(), ("a",), ("b",), ("c",), ("d",), ("a", "b"), ("c", "d")])
    assert exch.axiom == "I3"
