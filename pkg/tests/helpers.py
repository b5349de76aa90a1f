"""Reference computations used only by the tests.

These deliberately avoid the library's greedy, closure and search code:
independence tables are read straight off the oracle and everything else
is derived from them here.
"""

from __future__ import annotations

import itertools

import networkx as nx


def gf2_rank(vectors) -> int:
    rows = [int("".join(map(str, v)), 2) if not isinstance(v, int) else v for v in vectors]
    rank = 0
    while rows:
        pivot = max(rows)
        rows.remove(pivot)
        if not pivot:
            continue
        rank += 1
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if r >> top & 1 else r for r in rows]
    return rank


def graph_rank(edges) -> int:
    g = nx.MultiGraph()
    g.add_edges_from(edges)
    return g.number_of_nodes() - nx.number_connected_components(g) if edges else 0


def indep_sets(m) -> set[frozenset]:
    return {m.labels(x) for x in range(m.full + 1) if m.indep_mask(x)}


def table_rank(m):
    family = indep_sets(m)
    return lambda x: max(len(i) for i in family if i <= frozenset(x))


def same(a, b) -> bool:
    return set(a.ground) == set(b.ground) and indep_sets(a) == indep_sets(b)


def subsets(ground):
    ground = list(ground)
    for k in range(len(ground) + 1):
        yield from (frozenset(c) for c in itertools.combinations(ground, k))
