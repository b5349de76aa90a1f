"""Matroids behind a uniform independence oracle.

A :class:`Matroid` is a ground set of opaque, hashable labels together with a
predicate on subsets of that ground set.  Subsets are passed around
internally as bitmasks over the canonical (construction) order of the
ground set; the public, label-level API converts at the boundary.

Only finite matroids are represented, so the infinite-matroid axiom (IM),
which asks for maximal independent subsets of every set, holds automatically
and is not checked anywhere.

Every operation in this module returns a new matroid and never mutates its
arguments.  Oracles are memoized per instance.
"""

from __future__ import annotations

import itertools
import threading
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .config import require_size
from .errors import (
    GroundOverlap,
    ImageOutsideGround,
    NotInGround,
    OverlappingSets,
)

Label = Hashable
Oracle = Callable[[int], bool]


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def iter_bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def remap(mask: int, bits: Sequence[int]) -> int:
    """Send bit ``i`` of ``mask`` to the bitmask ``bits[i]``."""
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= bits[i]
        mask >>= 1
        i += 1
    return out


def submasks(mask: int):
    """All submasks of ``mask``, in increasing numeric order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def mask_key(mask: int) -> tuple[int, ...]:
    """Sort key putting sets in canonical (lexicographic index) order."""
    return tuple(iter_bits(mask))


class Matroid:
    """A finite matroid given by an independence oracle on bitmasks.

    ``oracle(mask)`` must answer whether the subset encoded by ``mask`` is
    independent; bit ``i`` stands for ``ground[i]``.  The oracle is trusted:
    use :func:`matroidkit.axioms.check_axioms` to validate an untrusted one.
    """

    def __init__(
        self,
        ground: Iterable[Label],
        oracle: Oracle,
        *,
        name: str = "",
        provenance: tuple = ("explicit",),
    ):
        labels = tuple(ground)
        index: dict[Label, int] = {}
        for i, label in enumerate(labels):
            if label in index:
                raise ValueError(f"duplicate label {label!r} in ground set")
            index[label] = i
        self.ground = labels
        self.index = index
        self.n = len(labels)
        self.full = (1 << self.n) - 1
        self.name = name or f"matroid[{self.n}]"
        self.provenance = provenance
        self._oracle = oracle
        self._indep: dict[int, bool] = {}
        self._basis: dict[int, int] = {}
        self._lock = threading.Lock()
        # derived structures (flats, circuits, ...) keyed by module
        self.cache: dict = {}

    def __repr__(self) -> str:
        return f"<Matroid {self.name} |E|={self.n} r={self.rank_mask(self.full)}>"

    # -- label <-> mask ---------------------------------------------------

    def mask(self, labels: Iterable[Label]) -> int:
        out = 0
        index = self.index
        for label in labels:
            try:
                out |= 1 << index[label]
            except KeyError:
                raise NotInGround(f"{label!r} is not in the ground set of {self.name}") from None
        return out

    def labels(self, mask: int) -> frozenset:
        ground = self.ground
        return frozenset(ground[i] for i in iter_bits(mask))

    def ordered(self, mask: int) -> tuple:
        ground = self.ground
        return tuple(ground[i] for i in iter_bits(mask))

    def sort(self, labels: Iterable[Label]) -> tuple:
        """Labels in canonical ground order."""
        return self.ordered(self.mask(labels))

    # -- mask-level queries ----------------------------------------------

    def indep_mask(self, mask: int) -> bool:
        try:
            return self._indep[mask]
        except KeyError:
            pass
        value = bool(self._oracle(mask))
        with self._lock:
            self._indep[mask] = value
        return value

    def basis_mask(self, mask: int) -> int:
        """Greedy basis of ``mask``, scanning in canonical order."""
        try:
            return self._basis[mask]
        except KeyError:
            pass
        basis = 0
        for i in iter_bits(mask):
            trial = basis | (1 << i)
            if self.indep_mask(trial):
                basis = trial
        with self._lock:
            self._basis[mask] = basis
        return basis

    def greedy_basis(self, mask: int, order: Sequence[int]) -> int:
        """Basis of ``mask`` built greedily along the index sequence ``order``."""
        basis = 0
        for i in order:
            bit = 1 << i
            if mask & bit and self.indep_mask(basis | bit):
                basis |= bit
        return basis

    def rank_mask(self, mask: int) -> int:
        return popcount(self.basis_mask(mask))

    def closure_mask(self, mask: int) -> int:
        basis = self.basis_mask(mask)
        out = mask
        for i in range(self.n):
            bit = 1 << i
            if not out & bit and not self.indep_mask(basis | bit):
                out |= bit
        return out

    # -- label-level queries ---------------------------------------------

    def is_independent(self, x: Iterable[Label]) -> bool:
        return self.indep_mask(self.mask(x))

    def rank(self, x: Iterable[Label] | None = None) -> int:
        return self.rank_mask(self.full if x is None else self.mask(x))

    def closure(self, x: Iterable[Label]) -> frozenset:
        return self.labels(self.closure_mask(self.mask(x)))

    def basis(self, x: Iterable[Label] | None = None) -> frozenset:
        return self.labels(self.basis_mask(self.full if x is None else self.mask(x)))

    @property
    def r(self) -> int:
        return self.rank_mask(self.full)


# -- spec-level query functions ---------------------------------------------


def rank(m: Matroid, x: Iterable[Label]) -> int:
    return m.rank(x)


def closure(m: Matroid, x: Iterable[Label]) -> frozenset:
    return m.closure(x)


def relative_rank(m: Matroid, y: Iterable[Label], x: Iterable[Label]) -> int:
    """Rank of ``y`` relative to ``x``: r(x | y) - r(x)."""
    xm = m.mask(x)
    ym = m.mask(y)
    return m.rank_mask(xm | ym) - m.rank_mask(xm)


def nullity_mask(m: Matroid, mask: int) -> int:
    return popcount(mask) - m.rank_mask(mask)


# -- constructions -----------------------------------------------------------


def _bits_into(child_ground: Sequence[Label], parent: Matroid) -> list[int]:
    return [1 << parent.index[label] for label in child_ground]


def dual(m: Matroid) -> Matroid:
    """Dual matroid: I is independent iff E - I is spanning in ``m``."""
    full = m.full
    r = m.rank_mask(full)

    def oracle(mask: int) -> bool:
        return m.rank_mask(full & ~mask) == r

    return Matroid(m.ground, oracle, name=f"dual({m.name})", provenance=("dual", m))


def minor(m: Matroid, contract: Iterable[Label] = (), delete: Iterable[Label] = ()) -> Matroid:
    """Contract ``contract`` and delete ``delete``.

    Independence in the minor is tested against a fixed (greedy) basis of
    the contracted set; the result does not depend on that choice.
    """
    cm = m.mask(contract)
    dm = m.mask(delete)
    if cm & dm:
        raise OverlappingSets(f"contract and delete share {sorted(map(str, m.labels(cm & dm)))}")
    if not cm and not dm:
        return m
    removed = cm | dm
    ground = [label for i, label in enumerate(m.ground) if not removed >> i & 1]
    bits = _bits_into(ground, m)
    bc = m.basis_mask(cm)

    def oracle(mask: int) -> bool:
        return m.indep_mask(remap(mask, bits) | bc)

    parts = []
    if cm:
        parts.append("/" + ",".join(map(str, m.ordered(cm))))
    if dm:
        parts.append("\\" + ",".join(map(str, m.ordered(dm))))
    return Matroid(
        ground,
        oracle,
        name=f"{m.name}{''.join(parts)}",
        provenance=("minor", m, m.labels(cm), m.labels(dm)),
    )


def contract(m: Matroid, c: Iterable[Label]) -> Matroid:
    return minor(m, c, ())


def delete(m: Matroid, d: Iterable[Label]) -> Matroid:
    return minor(m, (), d)


def restrict(m: Matroid, x: Iterable[Label]) -> Matroid:
    keep = m.mask(x)
    return minor(m, (), m.labels(m.full & ~keep))


def project_set(m: Matroid, x: Iterable[Label]) -> Matroid:
    """Projection of ``m`` by ``x``: same ground set, elements of ``x`` become loops.

    Its independent sets are exactly those of ``m / x``.
    """
    xm = m.mask(x)
    if not xm:
        return m
    bx = m.basis_mask(xm)

    def oracle(mask: int) -> bool:
        if mask & xm:
            return False
        return m.indep_mask(mask | bx)

    return Matroid(
        m.ground,
        oracle,
        name=f"{m.name}//{{{','.join(map(str, m.ordered(xm)))}}}",
        provenance=("project_set", m, m.labels(xm)),
    )


def preimage(m: Matroid, f: Mapping[Label, Label]) -> Matroid:
    """Pull ``m`` back along ``f`` (new label -> ground label).

    I is independent iff ``f`` is injective on I and f(I) is independent.
    """
    ground = list(f)
    targets = []
    for new in ground:
        old = f[new]
        if old not in m.index:
            raise ImageOutsideGround(f"{new!r} maps to {old!r}, which is not in {m.name}")
        targets.append(1 << m.index[old])

    def oracle(mask: int) -> bool:
        image = 0
        count = 0
        i = 0
        while mask:
            if mask & 1:
                image |= targets[i]
                count += 1
            mask >>= 1
            i += 1
        if popcount(image) != count:
            return False
        return m.indep_mask(image)

    return Matroid(ground, oracle, name=f"preimage({m.name})", provenance=("preimage", m, dict(f)))


def direct_sum(ms: Sequence[Matroid]) -> Matroid:
    ms = list(ms)
    if len(ms) == 1:
        return ms[0]
    seen: set = set()
    ground: list = []
    for part in ms:
        overlap = seen.intersection(part.ground)
        if overlap:
            raise GroundOverlap(f"ground sets overlap in {sorted(map(str, overlap))}")
        seen.update(part.ground)
        ground.extend(part.ground)
    offsets = []
    pos = 0
    for part in ms:
        offsets.append((pos, part))
        pos += part.n

    def oracle(mask: int) -> bool:
        for start, part in offsets:
            if not part.indep_mask((mask >> start) & part.full):
                return False
        return True

    return Matroid(
        ground,
        oracle,
        name="(+)".join(part.name for part in ms) or "empty",
        provenance=("direct_sum", tuple(ms)),
    )


def relabel(m: Matroid, mapping: Mapping[Label, Label], name: str | None = None) -> Matroid:
    """Rename elements; labels missing from ``mapping`` keep their name."""
    ground = [mapping.get(label, label) for label in m.ground]
    return Matroid(ground, m.indep_mask, name=name or m.name, provenance=("relabel", m))


def reorder(m: Matroid, order: Sequence[Label]) -> Matroid:
    """The same matroid with its ground set listed in ``order``."""
    if tuple(order) == m.ground:
        return m
    if set(order) != set(m.ground) or len(order) != m.n:
        raise NotInGround("reorder needs a permutation of the ground set")
    bits = _bits_into(order, m)

    def oracle(mask: int) -> bool:
        return m.indep_mask(remap(mask, bits))

    return Matroid(order, oracle, name=m.name, provenance=("reorder", m))


def materialize(m: Matroid) -> Matroid:
    """Tabulate the oracle of ``m`` over all subsets.

    Cuts the chain of derived oracles short; useful after long sequences of
    extensions and contractions.
    """
    require_size(m.n, "materialize")
    table = bytearray(m.full + 1)
    for mask in range(m.full + 1):
        table[mask] = m.indep_mask(mask)
    return Matroid(m.ground, table.__getitem__, name=m.name, provenance=m.provenance)


# -- comparison ---------------------------------------------------------------


def difference_witness(a: Matroid, b: Matroid):
    """A label set on which the oracles of ``a`` and ``b`` disagree, or ``None``.

    Ground sets must agree as sets; a ground mismatch is reported as the
    symmetric difference of the ground sets.
    """
    if set(a.ground) != set(b.ground):
        return frozenset(set(a.ground) ^ set(b.ground))
    require_size(a.n, "oracle comparison")
    bits = _bits_into(a.ground, b)
    for mask in range(a.full + 1):
        if a.indep_mask(mask) != b.indep_mask(remap(mask, bits)):
            return a.labels(mask)
    return None


def same_matroid(a: Matroid, b: Matroid) -> bool:
    return difference_witness(a, b) is None


def independent_masks(m: Matroid) -> list[int]:
    require_size(m.n, "independent-set enumeration")
    return [mask for mask in range(m.full + 1) if m.indep_mask(mask)]


def bases_masks(m: Matroid) -> list[int]:
    r = m.r
    out = []
    for combo in itertools.combinations(range(m.n), r):
        mask = 0
        for i in combo:
            mask |= 1 << i
        if m.indep_mask(mask):
            out.append(mask)
    return out


def bases(m: Matroid) -> list[tuple]:
    return [m.ordered(b) for b in bases_masks(m)]
