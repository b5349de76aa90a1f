"""Exhaustive checking of the independence axioms.

The checker works on an explicitly enumerated family of sets and shares no
code with the oracle constructions, so it can be used to validate them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable

from .config import require_size


@dataclass(frozen=True)
class AxiomVerdict:
    ok: bool
    axiom: str = ""
    witness: tuple = ()
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _check_masks(n: int, family: set[int]) -> AxiomVerdict:
    full = (1 << n) - 1
    if 0 not in family:
        return AxiomVerdict(False, "I1", (0,), "the empty set is not independent")
    for mask in family:
        if mask & ~full:
            return AxiomVerdict(False, "ground", (mask,), "a member is not a subset of the ground set")
        # one-element deletions suffice for downward closure
        sub = mask
        while sub:
            low = sub & -sub
            if mask & ~low not in family:
                return AxiomVerdict(False, "I2", (mask & ~low, mask), "not closed under subsets")
            sub ^= low
    # For a finite family, (I3) is equivalent to augmentation between sets of
    # consecutive sizes, which is much cheaper to check.
    by_size: dict[int, list[int]] = {}
    for mask in family:
        by_size.setdefault(bin(mask).count("1"), []).append(mask)
    for size, members in by_size.items():
        for j_mask in by_size.get(size + 1, ()):
            for i_mask in members:
                extra = j_mask & ~i_mask
                ok = False
                while extra:
                    low = extra & -extra
                    if i_mask | low in family:
                        ok = True
                        break
                    extra ^= low
                if not ok:
                    return AxiomVerdict(False, "I3", (i_mask, j_mask), "augmentation fails")
    return AxiomVerdict(True)


def check_axioms(ground: Iterable[Hashable], family: Iterable[Iterable[Hashable]]) -> AxiomVerdict:
    """Verify (I1)-(I3) for ``family`` as the independent sets on ``ground``.

    On failure the witness is a pair of label sets (or a single set for I1).
    """
    labels = tuple(ground)
    require_size(len(labels), "check_axioms")
    index = {label: i for i, label in enumerate(labels)}
    masks: set[int] = set()
    for member in family:
        mask = 0
        for label in member:
            if label not in index:
                return AxiomVerdict(False, "ground", (frozenset(member),), f"{label!r} is not in the ground set")
            mask |= 1 << index[label]
        masks.add(mask)
    verdict = _check_masks(len(labels), masks)
    if verdict.ok:
        return verdict

    def to_set(mask: int) -> frozenset:
        return frozenset(labels[i] for i in range(len(labels)) if mask >> i & 1)

    return AxiomVerdict(False, verdict.axiom, tuple(to_set(w) for w in verdict.witness), verdict.message)


def check_matroid(m) -> AxiomVerdict:
    """Enumerate the oracle of ``m`` and check the axioms."""
    require_size(m.n, "check_axioms")
    family = {mask for mask in range(m.full + 1) if m.indep_mask(mask)}
    verdict = _check_masks(m.n, family)
    if verdict.ok:
        return verdict
    return AxiomVerdict(False, verdict.axiom, tuple(m.labels(w) for w in verdict.witness), verdict.message)
