"""Property tests over random small matroids."""

import itertools

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from helpers import same, table_rank
from matroidkit import MatroidSpec, build, dual, uniform
from matroidkit.connectivity import lambda_, lambda_dual, local_conn_pair, nullity
from matroidkit.core import contract, delete, project_set
from matroidkit.extensions import enumerate_modular_cuts, extend_by, extension_cut, project_by
from matroidkit.flats import flats
from matroidkit.modularity import is_modular_pair, mutual_basis
from matroidkit.quotients import discrepancy, is_quotient, quotient_to_projection

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def matroids(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    kind = draw(st.sampled_from(["uniform", "linear", "graphic"]))
    if kind == "uniform":
        k = draw(st.integers(0, n))
        return uniform(k, n)
    if kind == "linear":
        rows = draw(st.integers(1, 4))
        cols = draw(st.lists(st.tuples(*[st.integers(0, 1)] * rows), min_size=n, max_size=n))
        return build(MatroidSpec("lin", "linear", field=2, columns=tuple(cols)))
    edges = draw(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=n, max_size=n))
    return build(MatroidSpec("g", "graphic", vertices=4, edges=tuple(edges)))


def subsets_of(m):
    return st.sets(st.sampled_from(m.ground)) if m.ground else st.just(set())


@SETTINGS
@given(st.data())
def test_rank_is_submodular_and_bounded(data):
    m = data.draw(matroids())
    x = data.draw(subsets_of(m))
    y = data.draw(subsets_of(m))
    r = m.rank
    assert 0 <= r(x) <= len(x)
    assert r(x | y) + r(x & y) <= r(x) + r(y)
    assert m.closure(m.closure(x)) == m.closure(x)


@SETTINGS
@given(st.data())
def test_modular_pair_iff_mutual_basis(data):
    m = data.draw(matroids())
    x = data.draw(subsets_of(m))
    y = data.draw(subsets_of(m))
    r = table_rank(m)
    identity = r(x) + r(y) == r(x | y) + r(x & y)
    assert is_modular_pair(m, x, y) == identity == (mutual_basis(m, [x, y]) is not None)


@SETTINGS
@given(st.data())
def test_local_connectivity_bounds(data):
    m = data.draw(matroids())
    x = data.draw(subsets_of(m))
    y = data.draw(subsets_of(m))
    lc = local_conn_pair(m, x, y)
    assert lc >= m.rank(x & y)
    assert (lc == m.rank(x & y)) == is_modular_pair(m, x, y)
    assert nullity(m, x) + nullity(m, y) <= nullity(m, x | y) + nullity(m, x & y)


@SETTINGS
@given(st.data())
def test_connectivity_self_dual(data):
    m = data.draw(matroids())
    x = data.draw(subsets_of(m))
    parts = [x, set(m.ground) - x]
    assert lambda_(m, parts) == lambda_dual(m, parts) == lambda_(dual(m), parts)
    assert same(dual(dual(m)), m)


@SETTINGS
@given(st.data())
def test_minors_of_dual(data):
    m = data.draw(matroids())
    x = data.draw(subsets_of(m))
    assert same(dual(contract(m, x)), delete(dual(m), x))
    p = project_set(m, x)
    assert is_quotient(p, m)
    assert discrepancy(p, m) == m.r - p.r


@SETTINGS
@given(st.data())
def test_extension_round_trip(data):
    m = data.draw(matroids(max_n=5))
    assume(len(flats(m)) <= 20)
    cuts = enumerate_modular_cuts(m)
    cut = data.draw(st.sampled_from(cuts))
    ext = extend_by(m, "_x", cut)
    assert extension_cut(ext, "_x") == cut
    assert same(delete(ext, ["_x"]), m)
    proj = project_by(m, cut)
    assert is_quotient(proj, m)
    assert m.r - proj.r in (0, 1)


@SETTINGS
@given(st.data())
def test_projection_reconstruction(data):
    m = data.draw(matroids(max_n=4))
    x = data.draw(subsets_of(m))
    n = project_set(m, x)
    w = quotient_to_projection(n, m)
    assert len(w.k) == m.r - n.r
    assert same(delete(w.p, w.k), m)
    assert same(contract(w.p, w.k), n)


@SETTINGS
@given(st.data())
def test_flats_meet_closed(data):
    m = data.draw(matroids())
    present = set(flats(m).masks)
    for a, b in itertools.combinations(present, 2):
        assert a & b in present
