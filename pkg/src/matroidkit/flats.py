"""Flats, lines, hyperplanes, circuits and loops of a finite matroid."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .config import require_size
from .core import Label, Matroid, mask_key, popcount
from .errors import NotAFlat


@dataclass(frozen=True)
class FlatFamily:
    """All flats of ``host`` in canonical order (by rank, then lexicographic)."""

    host: Matroid
    masks: tuple[int, ...]
    ranks: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self):
        return iter(self.sets())

    def __contains__(self, x) -> bool:
        return self.host.mask(x) in self.index

    @property
    def index(self) -> dict[int, int]:
        cached = self.host.cache.get(("flat-index", self.masks))
        if cached is None:
            cached = {mask: i for i, mask in enumerate(self.masks)}
            self.host.cache[("flat-index", self.masks)] = cached
        return cached

    def sets(self) -> list[frozenset]:
        return [self.host.labels(mask) for mask in self.masks]

    def of_rank(self, k: int) -> list[int]:
        return [mask for mask, r in zip(self.masks, self.ranks) if r == k]

    def rank_of(self, mask: int) -> int:
        return self.ranks[self.index[mask]]


def _canonical(m: Matroid, found: Iterable[int]) -> FlatFamily:
    ordered = sorted(set(found), key=lambda f: (m.rank_mask(f), mask_key(f)))
    return FlatFamily(m, tuple(ordered), tuple(m.rank_mask(f) for f in ordered))


def flats_exhaustive(m: Matroid) -> FlatFamily:
    """Closures of all 2^|E| subsets."""
    require_size(m.n, "flats")
    return _canonical(m, (m.closure_mask(mask) for mask in range(m.full + 1)))


def flats_by_covers(m: Matroid) -> FlatFamily:
    """Grow the lattice upward from cl(empty) through covering flats cl(F + e)."""
    require_size(m.n, "flats")
    bottom = m.closure_mask(0)
    seen = {bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for f in frontier:
            rest = m.full & ~f
            while rest:
                low = rest & -rest
                g = m.closure_mask(f | low)
                rest &= ~g
                if g not in seen:
                    seen.add(g)
                    nxt.append(g)
        frontier = nxt
    return _canonical(m, seen)


def flats(m: Matroid) -> FlatFamily:
    cached = m.cache.get("flats")
    if cached is not None:
        return cached
    if 2 * m.r < m.n:
        family = flats_by_covers(m)
    else:
        family = flats_exhaustive(m)
    m.cache["flats"] = family
    return family


def is_flat_mask(m: Matroid, mask: int) -> bool:
    return m.closure_mask(mask) == mask


def is_flat(m: Matroid, x: Iterable[Label]) -> bool:
    return is_flat_mask(m, m.mask(x))


def require_flat(m: Matroid, mask: int) -> None:
    if not is_flat_mask(m, mask):
        raise NotAFlat(f"{sorted(map(str, m.labels(mask)))} is not a flat of {m.name}")


def circuit_masks(m: Matroid) -> list[int]:
    cached = m.cache.get("circuits")
    if cached is not None:
        return cached
    require_size(m.n, "circuits")
    out = []
    for mask in sorted(range(m.full + 1), key=lambda x: (popcount(x), mask_key(x))):
        if m.indep_mask(mask):
            continue
        sub = mask
        minimal = True
        while sub:
            low = sub & -sub
            if not m.indep_mask(mask & ~low):
                minimal = False
                break
            sub ^= low
        if minimal:
            out.append(mask)
    m.cache["circuits"] = out
    return out


def circuits(m: Matroid) -> list[frozenset]:
    return [m.labels(c) for c in circuit_masks(m)]


def lines(m: Matroid) -> list[frozenset]:
    fam = flats(m)
    return [m.labels(f) for f in fam.of_rank(2)]


def hyperplane_masks(m: Matroid) -> list[int]:
    fam = flats(m)
    r = m.r
    return fam.of_rank(r - 1) if r > 0 else []


def hyperplanes(m: Matroid) -> list[frozenset]:
    return [m.labels(h) for h in hyperplane_masks(m)]


def loops(m: Matroid) -> frozenset:
    return m.labels(m.closure_mask(0))
