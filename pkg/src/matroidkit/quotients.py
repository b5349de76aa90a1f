"""Quotients, discrepancy, and building a matroid P with P \\ K = M and P / K = N.

A quotient N of M has the same ground set and cl_M(X) inside cl_N(X) for
every X.  Finite quotients always arise as projections; the constructions
here produce the witnessing P explicitly and verify it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .config import require_size
from .core import (
    Label,
    Matroid,
    contract,
    delete,
    difference_witness,
    dual,
    iter_bits,
    materialize,
    popcount,
    reorder,
    submasks,
)
from .errors import (
    GroundMismatch,
    InternalDescentFailure,
    InvariantBreach,
    NotAQuotient,
    NotASingleElementProjection,
    OverlappingSets,
    PrerequisiteMismatch,
)
from .extensions import (
    CutViolation,
    ModularCut,
    enumerate_modular_cuts,
    extend_by,
    extension_cut,
    fresh_label,
    project_by,
    require_cut,
    validate_modular_cut_masks,
)
from .flats import circuit_masks, flats

# relative-rank route checks every nested pair up to this size, covers above it
NESTED_PAIR_LIMIT = 10
MOREOVER_CHECK_SIZE = 12


def _aligned(n: Matroid, m: Matroid) -> Matroid:
    if set(n.ground) != set(m.ground) or n.n != m.n:
        raise GroundMismatch(f"{n.name} and {m.name} have different ground sets")
    return reorder(n, m.ground)


# -- the quotient predicate ----------------------------------------------------


def _closure_contained(small: Matroid, big: Matroid, masks: Iterable[int]) -> bool:
    # cl_small(X) inside cl_big(X) for each X in masks
    return all(small.closure_mask(x) & ~big.closure_mask(x) == 0 for x in masks)


def _route_definition(n: Matroid, m: Matroid) -> bool:
    for x in range(m.full + 1):
        rn = n.rank_mask(x)
        rm = m.rank_mask(x)
        for i in iter_bits(m.full & ~x):
            bit = 1 << i
            if m.rank_mask(x | bit) == rm and n.rank_mask(x | bit) != rn:
                return False
    return True


def _route_dual(n: Matroid, m: Matroid) -> bool:
    return _closure_contained(dual(n), dual(m), range(m.full + 1))


def _route_closure(n: Matroid, m: Matroid) -> bool:
    return _closure_contained(m, n, range(m.full + 1))


def _route_closure_independent(n: Matroid, m: Matroid) -> bool:
    return _closure_contained(m, n, (x for x in range(m.full + 1) if m.indep_mask(x)))


def _route_flats(n: Matroid, m: Matroid) -> bool:
    return all(m.closure_mask(f) == f for f in flats(n).masks)


def _route_circuits(n: Matroid, m: Matroid) -> bool:
    n_circuits = circuit_masks(n)
    for c in circuit_masks(m):
        covered = 0
        for d in n_circuits:
            if d & ~c == 0:
                covered |= d
        if covered != c:
            return False
    return True


def _route_relative_rank(n: Matroid, m: Matroid) -> bool:
    nested = m.n <= NESTED_PAIR_LIMIT
    for x in range(m.full + 1):
        base = m.full & ~x
        if nested:
            extras = submasks(base)
        else:
            extras = (1 << i for i in iter_bits(base))
        for extra in extras:
            y = x | extra
            if n.rank_mask(y) - n.rank_mask(x) > m.rank_mask(y) - m.rank_mask(x):
                return False
    return True


QUOTIENT_ROUTES = {
    "definition": _route_definition,
    "dual": _route_dual,
    "closure": _route_closure,
    "closure-independent": _route_closure_independent,
    "flats": _route_flats,
    "circuits": _route_circuits,
    "relative-rank": _route_relative_rank,
}


def quotient_routes(n: Matroid, m: Matroid) -> dict[str, bool]:
    n = _aligned(n, m)
    require_size(m.n, "is_quotient")
    return {name: route(n, m) for name, route in QUOTIENT_ROUTES.items()}


def is_quotient(n: Matroid, m: Matroid) -> bool:
    """Whether ``n`` is a quotient of ``m``; all seven characterizations must agree."""
    routes = quotient_routes(n, m)
    if len(set(routes.values())) != 1:
        raise InvariantBreach(f"quotient characterizations disagree: {routes}")
    return routes["closure"]


def _is_quotient_fast(n: Matroid, m: Matroid) -> bool:
    return _route_closure(_aligned(n, m), m)


def require_quotient(n: Matroid, m: Matroid) -> Matroid:
    if not is_quotient(n, m):
        raise NotAQuotient(f"{n.name} is not a quotient of {m.name}")
    return _aligned(n, m)


# -- discrepancy -----------------------------------------------------------------


@dataclass(frozen=True)
class BasisPair:
    """An N-basis ``n_basis`` of ``set`` inside an M-basis ``m_basis`` of it."""

    set: frozenset
    n_basis: frozenset
    m_basis: frozenset

    @property
    def gap(self) -> int:
        return len(self.m_basis - self.n_basis)


def _bases_of(m: Matroid, x: int) -> list[int]:
    r = m.rank_mask(x)
    out = []
    for combo in itertools.combinations(iter_bits(x), r):
        mask = 0
        for i in combo:
            mask |= 1 << i
        if m.indep_mask(mask):
            out.append(mask)
    return out


def basis_pair_masks(n: Matroid, m: Matroid, x: int) -> list[tuple[int, int]]:
    m_bases = _bases_of(m, x)
    return [(i0, i) for i0 in _bases_of(n, x) for i in m_bases if i0 & ~i == 0]


def basis_pairs(n: Matroid, m: Matroid, x: Iterable[Label]) -> list[BasisPair]:
    n = _aligned(n, m)
    xm = m.mask(x)
    return [BasisPair(m.labels(xm), m.labels(i0), m.labels(i)) for i0, i in basis_pair_masks(n, m, xm)]


def discrepancy_mask(n: Matroid, m: Matroid, x: int) -> int:
    """Minimum gap over all basis pairs of ``x``; ``n`` must already be aligned."""
    gaps = {popcount(i & ~i0) for i0, i in basis_pair_masks(n, m, x)}
    if not gaps:
        raise InvariantBreach(f"no basis pair for {m.ordered(x)}")
    if len(gaps) != 1:
        raise InvariantBreach(f"basis pairs for {m.ordered(x)} have different gaps {sorted(gaps)}")
    value = gaps.pop()
    if n.rank_mask(x) + value != m.rank_mask(x):
        raise InvariantBreach("discrepancy does not close the rank gap")
    return value


def discrepancy(n: Matroid, m: Matroid, x: Iterable[Label] | None = None) -> int:
    n = require_quotient(n, m)
    return discrepancy_mask(n, m, m.full if x is None else m.mask(x))


# -- projections ---------------------------------------------------------------------


@dataclass(frozen=True)
class ProjectionWitness:
    """A matroid ``p`` and a set ``k`` with p \\ k = m and p / k = n (checked)."""

    p: Matroid
    k: frozenset
    m: Matroid
    n: Matroid

    def __post_init__(self):
        if difference_witness(delete(self.p, self.k), self.m) is not None:
            raise InvariantBreach("projection witness: deleting K does not give M")
        if difference_witness(contract(self.p, self.k), self.n) is not None:
            raise InvariantBreach("projection witness: contracting K does not give N")


def tight_flats(n: Matroid, m: Matroid) -> list[int]:
    """Flats F of ``m`` with N // F = M // F, for an aligned quotient ``n``.

    Since N // F is a quotient of M // F, the two are equal exactly when
    their ranks agree.
    """
    rn, rm = n.r, m.r
    return [f for f in flats(m).masks if rn - n.rank_mask(f) == rm - m.rank_mask(f)]


def lift_modular_cut(m: Matroid, c: Iterable[Label], cut) -> ModularCut:
    """Lift a modular cut of m / c to the cut {F | c} of ``m``."""
    cm = m.mask(c)
    minor = contract(m, m.labels(cm))
    cut = require_cut(minor, cut)
    members = [m.mask(cut.host.labels(f)) | cm for f in cut.members]
    lifted = validate_modular_cut_masks(m, members)
    if isinstance(lifted, CutViolation):
        raise InvariantBreach(f"lifted cut fails {lifted.clause}")
    if cm and m.n + 1 <= MOREOVER_CHECK_SIZE:
        e = fresh_label(m)
        up = contract(extend_by(m, e, lifted), m.labels(cm))
        down = extend_by(minor, e, ModularCut(minor, (minor.mask(cut.host.labels(f)) for f in cut.members)))
        if difference_witness(up, down) is not None:
            raise InvariantBreach("extending and contracting do not commute for the lifted cut")
    return lifted


def splice(m: Matroid, n: Matroid, c: Iterable[Label], d: Iterable[Label]) -> Matroid:
    """A matroid P with P \\ d = m and P / c = n, given m / c = n \\ d."""
    c = frozenset(c)
    d = frozenset(d)
    if c & d:
        raise OverlappingSets(f"c and d share {sorted(map(str, c & d))}")
    witness = difference_witness(contract(m, c), delete(n, d))
    if witness is not None:
        raise PrerequisiteMismatch("m / c differs from n \\ d", witness=witness)
    p = _splice(m, n, c, d)
    if difference_witness(delete(p, d), m) is not None or difference_witness(contract(p, c), n) is not None:
        raise InvariantBreach("splice result fails one of its identities")
    return p


def _splice(m: Matroid, n: Matroid, c: frozenset, d: frozenset) -> Matroid:
    if not d:
        return m
    e = n.ordered(n.mask(d))[-1]
    smaller = materialize(delete(n, [e]))
    p_prev = _splice(m, smaller, c, d - {e})
    cut = extension_cut(n, e)
    minor = contract(p_prev, c)
    translated = ModularCut(minor, (minor.mask(cut.host.labels(f)) for f in cut.members))
    lifted = lift_modular_cut(p_prev, c, translated)
    p = materialize(extend_by(p_prev, e, lifted))
    p.name = f"splice({m.name},{n.name})"
    return p


def _find_cut(current: Matroid, target: Matroid) -> ModularCut | None:
    target = reorder(target, current.ground)
    for cut in enumerate_modular_cuts(current):
        if difference_witness(project_by(current, cut), target) is None:
            return cut
    return None


def _fresh(taken: set, prefix: str = "_k") -> str:
    for i in itertools.count():
        label = f"{prefix}{i}"
        if label not in taken:
            return label
    raise AssertionError("unreachable")


def compose_projections(ms: Sequence[Matroid], cuts: Sequence[ModularCut] | None = None) -> ProjectionWitness:
    """Combine single-element projections M_0 -> M_1 -> ... into one P and K.

    ``cuts[i]`` is the modular cut of ``ms[i]`` projecting it to ``ms[i+1]``;
    when omitted it is found by searching all modular cuts.
    """
    ms = list(ms)
    if not ms:
        raise ValueError("compose_projections needs at least one matroid")
    first = ms[0]
    taken = set(first.ground)
    p = first
    k: list = []
    for i in range(len(ms) - 1):
        cur = reorder(ms[i], first.ground) if ms[i].ground != first.ground else ms[i]
        if cuts is not None:
            cut = require_cut(cur, cuts[i])
            if difference_witness(project_by(cur, cut), ms[i + 1]) is not None:
                raise NotASingleElementProjection(f"cut {i} does not project matroid {i} to matroid {i + 1}", i)
        else:
            cut = _find_cut(cur, ms[i + 1])
            if cut is None:
                raise NotASingleElementProjection(f"matroid {i + 1} is not a single-element projection of matroid {i}", i)
        e = _fresh(taken)
        taken.add(e)
        q = materialize(extend_by(cur, e, cut))
        p = splice(p, q, k, [e])
        k.append(e)
    return ProjectionWitness(p, frozenset(k), first, ms[-1])


def quotient_to_projection(n: Matroid, m: Matroid) -> ProjectionWitness:
    """Realize a quotient ``n`` of ``m`` as P / K with P \\ K = m and |K| = discrepancy.

    Each round projects by the cut of flats on which the current matroid
    already agrees with ``n``; that lowers the discrepancy by exactly one.
    """
    n = require_quotient(n, m)
    delta = discrepancy_mask(n, m, m.full)
    chain = [m]
    cuts: list[ModularCut] = []
    current = m
    while difference_witness(current, n) is not None:
        if len(cuts) >= delta:
            raise InternalDescentFailure(f"still not equal after {delta} projections")
        fam = validate_modular_cut_masks(current, tight_flats(n, current))
        if isinstance(fam, CutViolation):
            raise InternalDescentFailure(f"tight family fails {fam.clause}")
        nxt = project_by(current, fam)
        if not _is_quotient_fast(n, nxt):
            raise InternalDescentFailure("target is not a quotient of the projected matroid")
        if discrepancy_mask(n, nxt, nxt.full) != delta - len(cuts) - 1:
            raise InternalDescentFailure("projection did not lower the discrepancy by one")
        cuts.append(fam)
        chain.append(nxt)
        current = nxt
    witness = compose_projections(chain, cuts)
    if len(witness.k) != delta:
        raise InternalDescentFailure(f"|K| = {len(witness.k)} but the discrepancy is {delta}")
    return ProjectionWitness(witness.p, witness.k, m, n)
