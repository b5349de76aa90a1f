"""Modular cuts and single-element extensions and projections.

For finite matroids a modular cut is an upward-closed family of flats that
contains the meet of every modular pair of its members.  The clause about
infinite modular chains is vacuous here and is not implemented.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Iterable

from .axioms import check_matroid
from .config import require_size
from .connectivity import lambda_, lambda_dual
from .core import Label, Matroid, contract, delete, difference_witness, mask_key, materialize
from .errors import (
    InvalidModularCut,
    InvariantBreach,
    IterationCapExceeded,
    LabelCollision,
    NotInGround,
    TooManyFlats,
    UnionNotGround,
)
from .flats import flats, is_flat_mask
from .modularity import as_family, modular_pair_by_rank, require_partition

MAX_CUT_FLATS = 20
EAGER_CHECK_SIZE = 10


class ModularCut:
    """A validated modular cut of ``host``; ``members`` are flat bitmasks.

    Two cuts are equal when they have the same ground set and the same
    member flats as label sets, so cuts of equal matroids built separately
    compare equal.
    """

    __slots__ = ("host", "members")

    def __init__(self, host: Matroid, members: Iterable[int]):
        self.host = host
        self.members = frozenset(members)

    def _key(self):
        return frozenset(self.host.ground), frozenset(self.host.labels(f) for f in self.members)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModularCut):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x) -> bool:
        mask = x if isinstance(x, int) else self.host.mask(x)
        return mask in self.members

    def masks(self) -> list[int]:
        return sorted(self.members, key=lambda f: (self.host.rank_mask(f), mask_key(f)))

    def flats(self) -> list[frozenset]:
        return [self.host.labels(f) for f in self.masks()]

    def sort_key(self):
        return len(self.members), [(self.host.rank_mask(f), mask_key(f)) for f in self.masks()]

    def __repr__(self) -> str:
        shown = ", ".join("{" + ",".join(map(str, self.host.ordered(f))) + "}" for f in self.masks())
        return f"ModularCut({self.host.name}: [{shown}])"


@dataclass(frozen=True)
class CutViolation:
    """Why a candidate family is not a modular cut.

    ``violations`` holds one ``(clause, witness)`` entry for each failed
    clause, in the order ``"flat"``, ``"upward"``, ``"modular-pair"``.  The
    witnesses are: the non-flat member; a member and a missing superflat;
    a modular pair of members and their missing intersection.
    ``members`` is the candidate family.
    """

    violations: tuple
    members: tuple

    def __bool__(self) -> bool:
        return False

    @property
    def clause(self) -> str:
        return self.violations[0][0]

    @property
    def witness(self) -> tuple:
        return self.violations[0][1]

    def clauses(self) -> list[str]:
        return [c for c, _ in self.violations]

    def witness_for(self, clause: str) -> tuple | None:
        for c, w in self.violations:
            if c == clause:
                return w
        return None


def _first_violations(m: Matroid, fam: list[int]):
    present = set(fam)
    for f in fam:
        if not is_flat_mask(m, f):
            yield "flat", (m.labels(f),)
            # the remaining clauses only make sense for flats
            return
    all_flats = flats(m).masks
    for f in fam:
        missing = next((g for g in all_flats if g != f and f & ~g == 0 and g not in present), None)
        if missing is not None:
            yield "upward", (m.labels(f), m.labels(missing))
            break
    for f, g in itertools.combinations(fam, 2):
        meet = f & g
        if meet not in present and modular_pair_by_rank(m, f, g):
            yield "modular-pair", (m.labels(f), m.labels(g), m.labels(meet))
            break


def validate_modular_cut_masks(m: Matroid, members: Iterable[int]) -> ModularCut | CutViolation:
    require_size(m.n, "validate_modular_cut")
    fam = sorted(set(members), key=lambda f: (m.rank_mask(f), mask_key(f)))
    violations = tuple(_first_violations(m, fam))
    if violations:
        return CutViolation(violations, tuple(m.labels(f) for f in fam))
    return ModularCut(m, fam)


def validate_modular_cut(m: Matroid, fam: Iterable[Iterable[Label]]) -> ModularCut | CutViolation:
    return validate_modular_cut_masks(m, [m.mask(f) for f in fam])


def require_cut(m: Matroid, fam) -> ModularCut:
    if isinstance(fam, ModularCut):
        return fam
    result = validate_modular_cut(m, fam)
    if isinstance(result, CutViolation):
        raise InvalidModularCut(f"not a modular cut: fails {result.clause}", result)
    return result


def enumerate_modular_cuts(m: Matroid) -> list[ModularCut]:
    """Every modular cut of ``m``, in canonical order.

    Flats are decided from the top of the lattice down.  A flat may join
    only once all its superflats have, and a flat forced in as the meet of
    a modular pair can never be left out.
    """
    family = flats(m)
    if len(family) > MAX_CUT_FLATS:
        raise TooManyFlats(f"{m.name} has {len(family)} flats, limit is {MAX_CUT_FLATS}")
    order = sorted(family.masks, key=lambda f: (-m.rank_mask(f), mask_key(f)))
    supers = {f: [g for g in order if g != f and f & ~g == 0] for f in order}
    out: list[ModularCut] = []

    def dfs(k: int, chosen: list[int], required: frozenset) -> None:
        if k == len(order):
            out.append(ModularCut(m, chosen))
            return
        f = order[k]
        chosen_set = set(chosen)
        if all(g in chosen_set for g in supers[f]):
            forced = set(required)
            for g in chosen:
                if modular_pair_by_rank(m, f, g):
                    forced.add(f & g)
            dfs(k + 1, chosen + [f], frozenset(forced))
        if f not in required:
            dfs(k + 1, chosen, required)

    dfs(0, [], frozenset())
    for cut in out:
        if isinstance(validate_modular_cut_masks(m, cut.members), CutViolation):
            raise InvariantBreach(f"enumeration produced an invalid cut {cut!r}")
    out.sort(key=ModularCut.sort_key)
    return out


# -- extensions ---------------------------------------------------------------


def extend_by(m: Matroid, e: Label, cut, check: bool | None = None) -> Matroid:
    """Single-element extension of ``m`` by ``e`` along ``cut``.

    I + e is independent exactly when I is independent and cl(I) is not in
    the cut.  The result is axiom-checked when it is small enough, or when
    ``check`` is true.
    """
    if e in m.index:
        raise LabelCollision(f"{e!r} is already in the ground set of {m.name}")
    cut = require_cut(m, cut)
    if cut.host is not m and frozenset(cut.host.ground) != frozenset(m.ground):
        raise InvalidModularCut("cut belongs to a different matroid")
    members = frozenset(m.mask(cut.host.labels(f)) for f in cut.members)
    bit = 1 << m.n
    base_full = m.full

    def oracle(mask: int) -> bool:
        rest = mask & base_full
        if not m.indep_mask(rest):
            return False
        if not mask & bit:
            return True
        return m.closure_mask(rest) not in members

    ext = Matroid(
        m.ground + (e,),
        oracle,
        name=f"{m.name}+{e}",
        provenance=("extend_by", m, e, members),
    )
    if check is None:
        check = ext.n <= EAGER_CHECK_SIZE
    if check:
        verdict = check_matroid(ext)
        if not verdict:
            raise InvariantBreach(f"extension fails {verdict.axiom}: {verdict.message}")
        if difference_witness(delete(ext, [e]), m) is not None:
            raise InvariantBreach("deleting the new element does not recover the original matroid")
        for f in flats(m).masks:
            if bool(ext.closure_mask(f) & bit) != (f in members):
                raise InvariantBreach(f"new element spanned by {m.ordered(f)} disagrees with the cut")
    return ext


def extension_cut(mext: Matroid, e: Label) -> ModularCut:
    """The flats of ``mext \\ e`` whose closure in ``mext`` contains ``e``."""
    if e not in mext.index:
        raise NotInGround(f"{e!r} is not in the ground set of {mext.name}")
    base = delete(mext, [e])
    bit = 1 << mext.index[e]
    members = []
    for f in flats(base).masks:
        if mext.closure_mask(mext.mask(base.labels(f))) & bit:
            members.append(f)
    result = validate_modular_cut_masks(base, members)
    if isinstance(result, CutViolation):
        raise InvariantBreach(f"extension cut fails {result.clause}")
    return result


def fresh_label(m: Matroid, prefix: str = "_e") -> str:
    for i in itertools.count():
        label = f"{prefix}{i}"
        if label not in m.index:
            return label
    raise AssertionError("unreachable")


def project_by(m: Matroid, cut) -> Matroid:
    """(m + e) / e for the extension along ``cut``, with the same ground as ``m``."""
    cut = require_cut(m, cut)
    e = fresh_label(m)
    projected = contract(extend_by(m, e, cut), [e])
    out = materialize(projected) if m.n <= 16 else projected
    out.name = f"{m.name}//cut"
    out.provenance = ("project_by", m, cut)
    return out


# -- guts cuts ------------------------------------------------------------------


def _skew_after_projection(m: Matroid, parts: list[int], f: int) -> bool:
    rf = m.rank_mask(f)
    union = f
    total = 0
    for p in parts:
        union |= p
        total += m.rank_mask(p | f) - rf
    return total == m.rank_mask(union) - rf


def guts_family_masks(m: Matroid, parts: list[int]) -> list[int]:
    return [f for f in flats(m).masks if _skew_after_projection(m, parts, f)]


def guts_family(m: Matroid, fam) -> list[frozenset]:
    fam = as_family(m, fam)
    return [m.labels(f) for f in guts_family_masks(m, fam.masks(m))]


def guts_cut(m: Matroid, fam, allow_partial: bool = False) -> ModularCut | CutViolation:
    """Flats F such that the family is skew after projecting ``m`` by F.

    When the parts do not cover the ground set the family need not be a
    modular cut.  That raises :class:`UnionNotGround` unless
    ``allow_partial`` is set, in which case a warning is issued and the
    validation result (possibly a :class:`CutViolation`) is returned.
    """
    fam = as_family(m, fam)
    parts = fam.masks(m)
    union = 0
    for p in parts:
        union |= p
    members = guts_family_masks(m, parts)
    if union != m.full:
        if not allow_partial:
            raise UnionNotGround("the parts of the family do not cover the ground set")
        warnings.warn("guts family of a non-covering family; returning it unvalidated", stacklevel=2)
        return validate_modular_cut_masks(m, members)
    result = validate_modular_cut_masks(m, members)
    if isinstance(result, CutViolation):
        raise InvariantBreach(f"guts family of a covering family fails {result.clause}")
    return result


def guts_project_iterate(m: Matroid, fam, k: int) -> Matroid:
    fam = require_partition(m, fam)
    current = m
    for _ in range(k):
        current = project_by(current, guts_cut(current, fam))
    return current


def guts_descent(m: Matroid, fam) -> list[tuple[int, int]]:
    """(connectivity, dual connectivity) after each guts projection, until skew.

    Stops at the first matroid in which the family is skew; raises
    :class:`IterationCapExceeded` after r(m) + 1 projections.
    """
    fam = require_partition(m, fam)
    cap = m.r + 1
    current = m
    steps = [(lambda_(current, fam), lambda_dual(current, fam))]
    while steps[-1][0] != 0:
        if len(steps) > cap:
            raise IterationCapExceeded(f"guts projection did not reach a skew family within {cap} steps")
        current = project_by(current, guts_cut(current, fam))
        steps.append((lambda_(current, fam), lambda_dual(current, fam)))
    return steps


def lambda_dual_via_guts(m: Matroid, fam) -> int:
    """Least k such that the family is skew after k guts projections."""
    steps = guts_descent(m, fam)
    k = len(steps) - 1
    expected = lambda_dual(m, fam)
    if k != expected:
        raise InvariantBreach(f"guts iteration count {k} differs from dual connectivity {expected}")
    return k


def cut_rank_drop(m: Matroid, cut: ModularCut) -> int:
    """Rank lost by projecting along ``cut``: 1 if E is in the cut but cl(empty) is not."""
    return int(m.full in cut.members and m.closure_mask(0) not in cut.members)

