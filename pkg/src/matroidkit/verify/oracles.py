"""Brute-force reference computations.

Everything here is derived from a one-time enumeration of the independent
sets; nothing calls back into the greedy, closure or search code that the
suites are checking.
"""

from __future__ import annotations

from functools import cached_property

from ..config import require_size


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class Brute:
    """Tables for one matroid: independence, rank, closure, flats, circuits."""

    def __init__(self, m):
        require_size(m.n, "brute-force oracle")
        self.m = m
        self.n = m.n
        self.full = (1 << m.n) - 1
        self.indep = [bool(m.indep_mask(x)) for x in range(self.full + 1)]

    @cached_property
    def rank(self) -> list[int]:
        # r(X) = |X| if X is independent, else max r(X - e)
        r = [0] * (self.full + 1)
        for x in range(1, self.full + 1):
            if self.indep[x]:
                r[x] = bin(x).count("1")
            else:
                r[x] = max(r[x & ~(1 << i)] for i in _bits(x))
        return r

    @cached_property
    def closure(self) -> list[int]:
        r = self.rank
        out = []
        for x in range(self.full + 1):
            cl = x
            for i in range(self.n):
                if r[x | (1 << i)] == r[x]:
                    cl |= 1 << i
            out.append(cl)
        return out

    @cached_property
    def flats(self) -> list[int]:
        return sorted(set(self.closure))

    @cached_property
    def circuits(self) -> list[int]:
        out = []
        for x in range(self.full + 1):
            if not self.indep[x] and all(self.indep[x & ~(1 << i)] for i in _bits(x)):
                out.append(x)
        return out

    @property
    def r(self) -> int:
        return self.rank[self.full]

    def dual_rank(self, x: int) -> int:
        return bin(x).count("1") - self.r + self.rank[self.full & ~x]

    def nullity(self, x: int) -> int:
        return bin(x).count("1") - self.rank[x]

    def modular_pair(self, x: int, y: int) -> bool:
        r = self.rank
        return r[x] + r[y] == r[x | y] + r[x & y]

    def skew(self, parts) -> bool:
        union = 0
        for p in parts:
            union |= p
        return self.rank[union] == sum(self.rank[p] for p in parts)

    def local_conn(self, x: int, y: int) -> int:
        r = self.rank
        return r[x] + r[y] - r[x | y]

    def lambda_partition(self, parts) -> int:
        return sum(self.rank[p] for p in parts) - self.r

    def lambda_dual_partition(self, parts) -> int:
        return sum(self.dual_rank(p) for p in parts) - self.dual_rank(self.full)

    def has_mutual_basis(self, parts) -> bool:
        """Scan every independent set for one meeting each part in a basis of it."""
        r = self.rank
        for b in range(self.full + 1):
            if self.indep[b] and all(bin(b & p).count("1") == r[p] for p in parts):
                return True
        return False

    def lines_meet_hyperplanes(self) -> bool:
        r = self.rank
        lines = [f for f in self.flats if r[f] == 2]
        hyps = [f for f in self.flats if r[f] == self.r - 1]
        return all(a & h for a in lines for h in hyps)

    def is_modular(self) -> bool:
        return all(self.modular_pair(f, g) for f in self.flats for g in self.flats)

    def is_modular_cut(self, members) -> bool:
        present = set(members)
        for f in present:
            if self.closure[f] != f:
                return False
            for g in self.flats:
                if f & ~g == 0 and g not in present:
                    return False
        for f in present:
            for g in present:
                if self.modular_pair(f, g) and f & g not in present:
                    return False
        return True


def brute_axioms(n: int, family: set[int]) -> bool:
    """(I1)-(I3) in their textbook form, by direct quantification."""
    if 0 not in family:
        return False
    for x in family:
        for i in _bits(x):
            if x & ~(1 << i) not in family:
                return False
    for i in family:
        ci = bin(i).count("1")
        for j in family:
            if bin(j).count("1") > ci:
                if not any(i | (1 << e) in family for e in _bits(j & ~i)):
                    return False
    return True


def same_oracle(a, b) -> bool:
    """Label-respecting comparison of two matroids on all subsets."""
    if set(a.ground) != set(b.ground):
        return False
    pos = [1 << b.index[label] for label in a.ground]
    for x in range(1 << a.n):
        y = 0
        for i in _bits(x):
            y |= pos[i]
        if bool(a.indep_mask(x)) != bool(b.indep_mask(y)):
            return False
    return True
