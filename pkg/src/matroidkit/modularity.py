"""Mutual bases, modular pairs and flats, skew families, modular matroids.

Each predicate with several known characterizations evaluates more than one
of them and raises :class:`InvariantBreach` if they disagree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .config import require_size
from .core import Label, Matroid, iter_bits, popcount
from .errors import GroundTooLarge, InvariantBreach, NotAPartition
from .flats import circuit_masks, flats, hyperplane_masks, require_flat

FALLBACK_LIMIT = 12


@dataclass(frozen=True)
class PartitionFamily:
    """An indexed family of subsets of a ground set.

    ``is_partition`` records whether the parts are pairwise disjoint and
    cover the ground set.  Parts may repeat or be empty.
    """

    ground: tuple
    parts: tuple[frozenset, ...]
    is_partition: bool

    @classmethod
    def of(cls, m: Matroid, parts: Iterable[Iterable[Label]]) -> "PartitionFamily":
        frozen = tuple(frozenset(p) for p in parts)
        masks = [m.mask(p) for p in frozen]
        disjoint = all(not (a & b) for a, b in itertools.combinations(masks, 2))
        covering = 0
        for mask in masks:
            covering |= mask
        return cls(m.ground, frozen, disjoint and covering == m.full)

    def masks(self, m: Matroid) -> list[int]:
        return [m.mask(p) for p in self.parts]

    def __len__(self) -> int:
        return len(self.parts)


def as_family(m: Matroid, fam) -> PartitionFamily:
    if isinstance(fam, PartitionFamily):
        return fam
    return PartitionFamily.of(m, fam)


def require_partition(m: Matroid, fam) -> PartitionFamily:
    fam = as_family(m, fam)
    if not fam.is_partition:
        raise NotAPartition(f"family is not a partition of the ground set of {m.name}")
    return fam


@dataclass(frozen=True)
class MutualBasisWitness:
    host: Matroid
    family: PartitionFamily
    basis: frozenset


# -- mutual bases -------------------------------------------------------------


def _mutual_basis_search(m: Matroid, parts: Sequence[int]) -> int | None:
    """Backtracking search, including elements before excluding them.

    Every mutual basis contained in the union of the parts is a basis of that
    union, so all candidates have the same size and the first one found is
    the lexicographically least.
    """
    union = 0
    for p in parts:
        union |= p
    targets = [m.rank_mask(p) for p in parts]
    order = list(iter_bits(union))
    # remaining[k]: elements at positions >= k
    remaining = [0] * (len(order) + 1)
    for k in range(len(order) - 1, -1, -1):
        remaining[k] = remaining[k + 1] | (1 << order[k])
    relevant = [[j for j, p in enumerate(parts) if p >> i & 1] for i in order]

    def feasible(basis: int, k: int) -> bool:
        rest = remaining[k]
        for p, t in zip(parts, targets):
            if popcount(basis & p) + popcount(rest & p) < t:
                return False
        return True

    def dfs(basis: int, k: int) -> int | None:
        if k == len(order):
            for p, t in zip(parts, targets):
                if popcount(basis & p) != t:
                    return None
            return basis
        bit = 1 << order[k]
        trial = basis | bit
        if m.indep_mask(trial) and all(popcount(trial & parts[j]) <= targets[j] for j in relevant[k]):
            if feasible(trial, k + 1):
                found = dfs(trial, k + 1)
                if found is not None:
                    return found
        if feasible(basis, k + 1):
            return dfs(basis, k + 1)
        return None

    return dfs(0, 0)


def _is_mutual_basis(m: Matroid, basis: int, parts: Sequence[int]) -> bool:
    if not m.indep_mask(basis):
        return False
    return all(popcount(basis & p) == m.rank_mask(p) for p in parts)


def _mutual_basis_exhaustive(m: Matroid, parts: Sequence[int]) -> int | None:
    union = 0
    for p in parts:
        union |= p
    span = m.closure_mask(union)
    size = m.rank_mask(union)
    for combo in itertools.combinations(iter_bits(span), size):
        basis = 0
        for i in combo:
            basis |= 1 << i
        if _is_mutual_basis(m, basis, parts):
            return basis
    return None


def mutual_basis_mask(m: Matroid, parts: Sequence[int]) -> int | None:
    found = _mutual_basis_search(m, parts)
    if found is not None:
        return found
    union = 0
    for p in parts:
        union |= p
    if popcount(m.closure_mask(union)) <= FALLBACK_LIMIT:
        fallback = _mutual_basis_exhaustive(m, parts)
        if fallback is not None:
            raise InvariantBreach(f"backtracking missed the mutual basis {m.ordered(fallback)}")
    return None


def mutual_basis(m: Matroid, fam) -> MutualBasisWitness | None:
    """A mutual basis for the family, or ``None`` if there is none."""
    fam = as_family(m, fam)
    require_size(m.n, "mutual_basis")
    found = mutual_basis_mask(m, fam.masks(m))
    if found is None:
        return None
    return MutualBasisWitness(m, fam, m.labels(found))


# -- modular pairs --------------------------------------------------------------


def modular_pair_by_rank(m: Matroid, x: int, y: int) -> bool:
    return m.rank_mask(x) + m.rank_mask(y) == m.rank_mask(x | y) + m.rank_mask(x & y)


def is_modular_pair(m: Matroid, x: Iterable[Label], y: Iterable[Label]) -> bool:
    xm, ym = m.mask(x), m.mask(y)
    by_basis = mutual_basis_mask(m, [xm, ym]) is not None
    by_rank = modular_pair_by_rank(m, xm, ym)
    if by_basis != by_rank:
        raise InvariantBreach(f"modular pair verdicts differ on {m.ordered(xm)}, {m.ordered(ym)}")
    return by_basis


def is_modular_family(m: Matroid, fam) -> bool:
    fam = as_family(m, fam)
    return mutual_basis_mask(m, fam.masks(m)) is not None


# -- skewness ---------------------------------------------------------------------


def skew_by_rank(m: Matroid, parts: Sequence[int]) -> bool:
    union = 0
    for p in parts:
        union |= p
    return m.rank_mask(union) == sum(m.rank_mask(p) for p in parts)


def _skew_by_definition(m: Matroid, parts: Sequence[int]) -> bool:
    for a, b in itertools.combinations(parts, 2):
        if m.rank_mask(a & b):
            return False
    return mutual_basis_mask(m, parts) is not None


def _skew_by_circuits(m: Matroid, parts: Sequence[int]) -> bool:
    # loops never affect skewness, so strip them first
    loops = m.closure_mask(0)
    stripped = [p & ~loops for p in parts]
    union = 0
    for p in stripped:
        if union & p:
            return False
        union |= p
    for c in circuit_masks(m):
        if c & ~union:
            continue
        if not any(c & ~p == 0 for p in stripped):
            return False
    return True


def is_skew_family(m: Matroid, fam) -> bool:
    """Skewness, by definition, by rank sums, and by circuits; all must agree."""
    fam = as_family(m, fam)
    parts = fam.masks(m)
    routes = {
        "definition": _skew_by_definition(m, parts),
        "rank": skew_by_rank(m, parts),
    }
    try:
        routes["circuits"] = _skew_by_circuits(m, parts)
    except GroundTooLarge:
        pass
    if len(set(routes.values())) != 1:
        raise InvariantBreach(f"skewness routes disagree: {routes}")
    return routes["rank"]


# -- modular flats ------------------------------------------------------------------


def _flat_pair_skew(m: Matroid, f: int, g: int) -> bool:
    return m.rank_mask(f) + m.rank_mask(g) == m.rank_mask(f | g)


def complementary_flat_masks(m: Matroid, f: int) -> list[int]:
    loops = m.closure_mask(0)
    return [g for g in flats(m).masks if f & g == loops and m.closure_mask(f | g) == m.full]


def complementary_flats(m: Matroid, f: Iterable[Label]) -> list[frozenset]:
    fm = m.mask(f)
    require_flat(m, fm)
    return [m.labels(g) for g in complementary_flat_masks(m, fm)]


def modular_flat_routes(m: Matroid, f: int) -> dict[str, bool]:
    """Evaluate several equivalent characterizations of a modular flat."""
    fam = flats(m).masks
    routes: dict[str, bool] = {}
    routes["pairs"] = all(modular_pair_by_rank(m, f, g) for g in fam)
    ok = True
    for g in fam:
        # skewness of F - G and G - F in M / (F & G), with contracted ranks r(X | Z) - r(Z)
        meet = f & g
        rz = m.rank_mask(meet)
        left = m.rank_mask((f & ~g) | meet) - rz
        right = m.rank_mask((g & ~f) | meet) - rz
        if left + right != m.rank_mask(f | g) - rz:
            ok = False
            break
    routes["contracted-differences"] = ok
    routes["complements"] = all(_flat_pair_skew(m, f, g) for g in complementary_flat_masks(m, f))
    ok = True
    for f0 in fam:
        if f0 & ~f:
            continue
        for g in fam:
            if f & m.closure_mask(g | f0) != m.closure_mask((f & g) | f0):
                ok = False
                break
        if not ok:
            break
    routes["lower-distributive"] = ok
    ok = True
    for g1 in fam:
        for g2 in fam:
            if g1 & ~g2:
                continue
            if m.closure_mask(g1 | f) & g2 != m.closure_mask(g1 | (f & g2)):
                ok = False
                break
        if not ok:
            break
    routes["upper-distributive"] = ok
    return routes


def is_modular_flat_mask(m: Matroid, f: int) -> bool:
    routes = modular_flat_routes(m, f)
    if len(set(routes.values())) != 1:
        raise InvariantBreach(f"modular-flat routes disagree on {m.ordered(f)}: {routes}")
    return routes["pairs"]


def is_modular_flat(m: Matroid, f: Iterable[Label]) -> bool:
    fm = m.mask(f)
    require_flat(m, fm)
    require_size(m.n, "is_modular_flat")
    return is_modular_flat_mask(m, fm)


def lines_meet_hyperplanes(m: Matroid) -> bool:
    fam = flats(m)
    hyps = hyperplane_masks(m)
    return all(line & h for line in fam.of_rank(2) for h in hyps)


def is_modular_matroid(m: Matroid) -> bool:
    """Every flat modular; for loopless matroids also checks the line-hyperplane test."""
    require_size(m.n, "is_modular_matroid")
    verdict = all(is_modular_flat_mask(m, f) for f in flats(m).masks)
    if m.closure_mask(0) == 0:
        if lines_meet_hyperplanes(m) != verdict:
            raise InvariantBreach(f"line-hyperplane test disagrees with flat-by-flat test on {m.name}")
    return verdict
