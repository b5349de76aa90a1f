import itertools
import warnings

import pytest

from helpers import same, subsets, table_rank
from matroidkit import direct_sum, uniform, vamos
from matroidkit.connectivity import lambda_dual
from matroidkit.core import delete
from matroidkit.errors import InvalidModularCut, LabelCollision, TooManyFlats, UnionNotGround
from matroidkit.extensions import (
    CutViolation,
    ModularCut,
    enumerate_modular_cuts,
    extend_by,
    extension_cut,
    guts_cut,
    guts_descent,
    guts_project_iterate,
    lambda_dual_via_guts,
    project_by,
    validate_modular_cut,
)
from matroidkit.flats import flats

S = [frozenset(p) for p in ("ab", "cd", "ef", "gh")]


def brute_cut_count(m) -> int:
    """Count families of flats closed upward and under meets of modular pairs."""
    r = table_rank(m)
    fl = [frozenset(f) for f in flats(m).sets()]
    count = 0
    for k in range(len(fl) + 1):
        for fam in itertools.combinations(fl, k):
            present = set(fam)
            up = all(g in present for f in fam for g in fl if f <= g)
            mod = all(
                f & g in present
                for f in fam
                for g in fam
                if r(f) + r(g) == r(f | g) + r(f & g)
            )
            count += up and mod
    return count


def test_cut_counts():
    assert len(enumerate_modular_cuts(uniform(1, 2))) == 3
    assert len(enumerate_modular_cuts(uniform(2, 3))) == 6
    assert len(enumerate_modular_cuts(uniform(0, 1))) == 2


def test_cut_counts_match_brute_force(get):
    for name in ("uniform:2,4", "graphic:K4", "uniform:3,4", "loops:1", "free:3"):
        m = get(name)
        assert len(enumerate_modular_cuts(m)) == brute_cut_count(m)


def test_cut_listing_for_u12():
    cuts = {frozenset(c.flats()) for c in enumerate_modular_cuts(uniform(1, 2))}
    assert cuts == {frozenset(), frozenset({frozenset("ab")}), frozenset({frozenset(), frozenset("ab")})}


def test_validate_examples():
    m = uniform(2, 3)
    assert isinstance(validate_modular_cut(m, [m.ground]), ModularCut)
    assert isinstance(validate_modular_cut(m, []), ModularCut)
    bad = validate_modular_cut(m, ["ab"])
    assert isinstance(bad, CutViolation) and bad.clause == "flat"
    up = validate_modular_cut(m, ["a"])
    assert up.clause == "upward"
    meet = validate_modular_cut(m, ["a", "b", "abc"])
    assert meet.clause == "modular-pair" and meet.witness == (frozenset("a"), frozenset("b"), frozenset())


def test_vamos_guts_family():
    v = vamos()
    with pytest.warns(UserWarning):
        result = guts_cut(v, [S[0], S[1]], allow_partial=True)
    assert isinstance(result, CutViolation)
    assert S[2] in result.members and S[3] in result.members
    assert result.witness_for("modular-pair") == (S[2], S[3], frozenset())
    with pytest.raises(UnionNotGround):
        guts_cut(v, [S[0], S[1]])


def test_extend_by_examples():
    m = uniform(2, 3)
    ext = extend_by(m, "d", [m.ground])
    assert same(ext, uniform(2, 4))
    loop = extend_by(m, "x", flats(m).sets())
    assert loop.closure_mask(0) == 1 << 3
    coloop = extend_by(m, "x", [])
    assert same(coloop, direct_sum([m, uniform(1, 1, labels="x")]))
    with pytest.raises(LabelCollision):
        extend_by(m, "a", [])
    with pytest.raises(InvalidModularCut):
        extend_by(m, "x", ["a"])


def test_extension_cut_examples():
    m = uniform(2, 4)
    assert extension_cut(m, "d").flats() == [frozenset("abc")]
    base = uniform(2, 3)
    assert len(extension_cut(extend_by(base, "x", flats(base).sets()), "x")) == len(flats(base))
    assert len(extension_cut(extend_by(base, "x", []), "x")) == 0


def test_round_trip_and_distinct(get):
    for name in ("uniform:2,3", "graphic:K4", "uniform:1,3"):
        m = get(name)
        seen = []
        for cut in enumerate_modular_cuts(m):
            ext = extend_by(m, "_x", cut)
            assert extension_cut(ext, "_x") == cut
            assert same(delete(ext, ["_x"]), m)
            assert not any(same(ext, other) for other in seen)
            seen.append(ext)


def test_project_by_examples():
    m = uniform(2, 3)
    assert same(project_by(m, [m.ground]), uniform(1, 3))
    assert same(project_by(m, flats(m).sets()), m)
    assert same(project_by(m, []), m)


def test_guts_cut_examples():
    m = uniform(2, 4)
    assert guts_cut(m, ["ab", "cd"]).flats() == [frozenset("abcd")]
    split = direct_sum([uniform(1, 2, labels="ab"), uniform(1, 2, labels="cd")])
    assert frozenset() in guts_cut(split, ["ab", "cd"]).flats()


def test_guts_iteration():
    m = uniform(2, 4)
    fam = ["ab", "cd"]
    assert guts_project_iterate(m, fam, 0) is m
    assert same(guts_project_iterate(m, fam, 1), uniform(1, 4))
    two = guts_project_iterate(m, fam, 2)
    assert two.r == 0
    assert lambda_dual_via_guts(m, fam) == 2
    split = direct_sum([uniform(1, 2, labels="ab"), uniform(1, 2, labels="cd")])
    assert lambda_dual_via_guts(split, ["ab", "cd"]) == 0
    assert guts_descent(m, fam) == [(2, 2), (1, 1), (0, 0)]


def test_guts_iteration_k4(get):
    k4 = get("graphic:K4")
    fam = [{"01", "23"}, {"02", "13"}, {"03", "12"}]
    assert lambda_dual_via_guts(k4, fam) == 3 == lambda_dual(k4, fam)


def test_too_many_flats(get):
    with pytest.raises(TooManyFlats):
        enumerate_modular_cuts(get("vamos"))


def test_warning_free_when_covering():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        guts_cut(uniform(2, 4), ["ab", "cd"])
