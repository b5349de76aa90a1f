"""Nullity, local connectivity and the connectivity of partitions.

All basis choices are greedy in canonical order.  Where a value is known to
be independent of that choice, it is recomputed with a second basis (greedy
in reverse order) and the two results are compared.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .config import PREIMAGE_BUDGET
from .core import Label, Matroid, dual, popcount, preimage
from .errors import BudgetExceeded, InvariantBreach
from .modularity import PartitionFamily, as_family, require_partition


def _reverse_basis(m: Matroid, mask: int) -> int:
    return m.greedy_basis(mask, range(m.n - 1, -1, -1))


def dual_rank_mask(m: Matroid, x: int) -> int:
    return popcount(x) - m.r + m.rank_mask(m.full & ~x)


def nullity(m: Matroid, x: Iterable[Label]) -> int:
    xm = m.mask(x)
    return popcount(xm & ~m.basis_mask(xm))


def _pair_from_bases(m: Matroid, i: int, j: int) -> int:
    union = i | j
    return popcount(i & j) + popcount(union) - m.rank_mask(union)


def local_conn_pair(m: Matroid, x: Iterable[Label], y: Iterable[Label]) -> int:
    """|I & J| + nullity(I | J) for bases I of ``x`` and J of ``y``."""
    xm, ym = m.mask(x), m.mask(y)
    value = _pair_from_bases(m, m.basis_mask(xm), m.basis_mask(ym))
    by_rank = m.rank_mask(xm) + m.rank_mask(ym) - m.rank_mask(xm | ym)
    other = _pair_from_bases(m, _reverse_basis(m, xm), _reverse_basis(m, ym))
    if not value == by_rank == other:
        raise InvariantBreach(f"local connectivity routes disagree: {value}, {by_rank}, {other}")
    return value


def _parts_overlap(parts: list[int]) -> bool:
    return any(a & b for a, b in itertools.combinations(parts, 2))


def multi_local_conn_preimage(m: Matroid, fam) -> int:
    """Nullity of the union of the lifted bases inside the preimage on E x A."""
    fam = as_family(m, fam)
    parts = fam.masks(m)
    size = m.n * len(parts)
    if size > PREIMAGE_BUDGET:
        raise BudgetExceeded(f"preimage on E x A would have {size} elements, budget is {PREIMAGE_BUDGET}")
    f = {(e, a): e for a in range(len(parts)) for e in m.ground}
    lifted = preimage(m, f)
    chosen = []
    for a, p in enumerate(parts):
        chosen.extend((e, a) for e in m.ordered(m.basis_mask(p)))
    union = lifted.mask(chosen)
    value = popcount(union) - lifted.rank_mask(union)

    bases = [m.basis_mask(p) for p in parts]
    base_union = 0
    for b in bases:
        base_union |= b
    counts = sum(popcount(b) for b in bases) - popcount(base_union)
    decomposition = popcount(base_union) - m.rank_mask(base_union) + counts
    union_all = 0
    for p in parts:
        union_all |= p
    by_rank = sum(m.rank_mask(p) for p in parts) - m.rank_mask(union_all)
    if not value == decomposition == by_rank:
        raise InvariantBreach(f"multi-set local connectivity routes disagree: {value}, {decomposition}, {by_rank}")
    return value


def multi_local_conn(m: Matroid, fam) -> int:
    """Local connectivity of an indexed family of sets.

    Two disjoint parts (or fewer) go through the pair formula; anything else
    is lifted to the preimage on E x A.
    """
    fam = as_family(m, fam)
    parts = fam.masks(m)
    if len(parts) >= 3 or _parts_overlap(parts):
        return multi_local_conn_preimage(m, fam)
    if len(parts) < 2:
        return 0
    return local_conn_pair(m, *fam.parts)


def _lambda_from_bases(m: Matroid, bases: list[int]) -> int:
    union = 0
    for b in bases:
        union |= b
    return popcount(union) - m.rank_mask(union)


def lambda_(m: Matroid, fam) -> int:
    """Nullity of a union of bases of the parts of a partition."""
    fam = require_partition(m, fam)
    parts = fam.masks(m)
    value = _lambda_from_bases(m, [m.basis_mask(p) for p in parts])
    other = _lambda_from_bases(m, [_reverse_basis(m, p) for p in parts])
    if value != other:
        raise InvariantBreach(f"connectivity depends on the basis choice: {value} vs {other}")
    if len(parts) == 2:
        pair = local_conn_pair(m, fam.parts[0], fam.parts[1])
        if pair != value:
            raise InvariantBreach(f"two-part connectivity {value} differs from local connectivity {pair}")
    return value


def lambda_dual(m: Matroid, fam) -> int:
    fam = require_partition(m, fam)
    return lambda_(dual(m), fam)


def _lambda_relative(m: Matroid, x: int) -> int:
    # dual rank of X relative to X - I
    i = m.basis_mask(x)
    return dual_rank_mask(m, x) - dual_rank_mask(m, x & ~i)


def lambda_set(m: Matroid, x: Iterable[Label]) -> int:
    """Connectivity of the separation (x, E - x), via dual relative rank."""
    xm = m.mask(x)
    value = _lambda_relative(m, xm)
    by_partition = lambda_(m, PartitionFamily.of(m, [m.labels(xm), m.labels(m.full & ~xm)]))
    in_dual = _lambda_relative(dual(m), xm)
    if not value == by_partition == in_dual:
        raise InvariantBreach(f"set connectivity routes disagree: {value}, {by_partition}, {in_dual}")
    return value


@dataclass(frozen=True)
class ConnReport:
    host: Matroid
    family: PartitionFamily
    lambda_: int
    lambda_dual: int
    per_pair_local_conn: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.lambda_ == 0) != (self.lambda_dual == 0):
            raise InvariantBreach("connectivity is zero in exactly one of the matroid and its dual")
        if len(self.family) == 2 and self.lambda_ != self.lambda_dual:
            raise InvariantBreach("two-part connectivity is not self-dual")


def connectivity_report(m: Matroid, fam) -> ConnReport:
    fam = require_partition(m, fam)
    pairs = {
        (a, b): local_conn_pair(m, fam.parts[a], fam.parts[b])
        for a, b in itertools.combinations(range(len(fam)), 2)
    }
    return ConnReport(m, fam, lambda_(m, fam), lambda_dual(m, fam), pairs)
