import pytest

from helpers import same
from matroidkit import catalog, uniform
from matroidkit.core import contract, delete, materialize
from matroidkit.errors import GroundMismatch, NotAQuotient, OverlappingSets, PrerequisiteMismatch
from matroidkit.extensions import enumerate_modular_cuts, extend_by
from matroidkit.flats import flats
from matroidkit.quotients import (
    basis_pairs,
    compose_projections,
    discrepancy,
    is_quotient,
    lift_modular_cut,
    quotient_routes,
    quotient_to_projection,
    splice,
)


def test_is_quotient_examples(get):
    assert is_quotient(uniform(1, 3), uniform(2, 3))
    m = get("fano")
    assert is_quotient(m, m)
    assert not is_quotient(uniform(2, 3), uniform(1, 3))
    assert set(quotient_routes(uniform(1, 3), uniform(2, 3)).values()) == {True}
    with pytest.raises(GroundMismatch):
        is_quotient(uniform(1, 3), uniform(1, 4))


def test_discrepancy_examples(get):
    assert discrepancy(uniform(1, 3), uniform(2, 3), "abc") == 1
    m = get("graphic:K4")
    assert discrepancy(m, m, m.ground[:3]) == 0
    assert discrepancy(uniform(0, 3), uniform(2, 3), "a") == 1
    with pytest.raises(NotAQuotient):
        discrepancy(uniform(2, 3), uniform(1, 3))


def test_basis_pairs_nested():
    for pair in basis_pairs(uniform(1, 3), uniform(2, 3), "abc"):
        assert pair.n_basis <= pair.m_basis and pair.gap == 1


def test_quotient_to_projection_examples(get):
    w = quotient_to_projection(uniform(1, 3), uniform(2, 3))
    assert len(w.k) == 1
    (k,) = w.k
    assert same(w.p, uniform(2, 4, labels=("a", "b", "c", k)))
    m = get("graphic:K4")
    w = quotient_to_projection(m, m)
    assert same(w.p, m) and not w.k
    w = quotient_to_projection(uniform(0, 3), uniform(2, 3))
    assert len(w.k) == 2 and w.p.r == 2 and w.p.n == 5


def test_lift_modular_cut():
    m = uniform(2, 4)
    mc = contract(m, "a")
    cut = lift_modular_cut(m, "a", [mc.ground])
    assert cut.flats() == [frozenset("abcd")]
    assert lift_modular_cut(m, "", [m.ground]).flats() == [frozenset("abcd")]
    m3 = uniform(3, 4)
    mc3 = contract(m3, "a")
    lifted = lift_modular_cut(m3, "a", flats(mc3).sets())
    assert set(lifted.flats()) == {f | {"a"} for f in flats(mc3).sets()}


def test_lift_commutes_with_contraction(get):
    m = get("graphic:K4")
    c = m.ground[:1]
    mc = materialize(contract(m, c))
    for cut in enumerate_modular_cuts(mc):
        lifted = lift_modular_cut(m, c, cut)
        assert same(contract(extend_by(m, "_e", lifted), c), extend_by(mc, "_e", cut))


def test_splice_examples():
    m = uniform(2, 3)
    assert splice(m, m, (), ()) is m
    n = uniform(2, 4)
    assert same(splice(m, n, (), "d"), n)
    mc = materialize(contract(m, "a"))
    n2 = extend_by(mc, "d", [])
    p = splice(m, n2, "a", "d")
    assert p.n == 4
    assert same(delete(p, "d"), m) and same(contract(p, "a"), n2)
    with pytest.raises(OverlappingSets):
        splice(m, n, "a", "a")
    with pytest.raises(PrerequisiteMismatch):
        splice(m, uniform(1, 4), (), "d")


def test_compose_projections():
    m = uniform(2, 3)
    w = compose_projections([m])
    assert w.p is m and not w.k
    w = compose_projections([uniform(2, 3), uniform(1, 3)])
    assert len(w.k) == 1
    (k,) = w.k
    assert same(w.p, uniform(2, 4, labels=("a", "b", "c", k)))
    w = compose_projections([uniform(2, 4), uniform(1, 4), uniform(0, 4)])
    assert len(w.k) == 2


def test_catalog_quotient_pairs_reconstruct():
    ms = catalog.corpus(4, random_extra=False)
    for n in ms:
        for m in ms:
            if n.n == m.n and n.ground == m.ground and is_quotient(n, m):
                w = quotient_to_projection(n, m)
                assert len(w.k) == m.r - n.r
                assert same(delete(w.p, w.k), m) and same(contract(w.p, w.k), n)
