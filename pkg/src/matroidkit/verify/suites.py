"""Per-theorem verification suites.

Each suite walks a family of instances drawn from the catalog corpus and
compares a library computation against the brute-force tables in
:mod:`matroidkit.verify.oracles`.  Instances are enumerated exhaustively on
ground sets of at most ``exhaustive_up_to`` elements and sampled (with a
seeded generator) above that.
"""

from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .. import catalog
from ..axioms import check_axioms
from ..build import VAMOS_PAIRS, uniform, vamos
from ..connectivity import lambda_set, local_conn_pair, nullity
from ..core import (
    Matroid,
    contract,
    delete,
    direct_sum,
    dual,
    materialize,
    preimage,
    project_set,
    relabel,
    reorder,
)
from ..errors import UnknownSuite
from ..extensions import (
    CutViolation,
    enumerate_modular_cuts,
    extend_by,
    extension_cut,
    guts_cut,
    project_by,
)
from ..flats import flats
from ..modularity import PartitionFamily, is_modular_matroid, is_skew_family, mutual_basis_mask
from ..quotients import discrepancy_mask, is_quotient, lift_modular_cut, quotient_to_projection, splice
from .oracles import Brute, brute_axioms, same_oracle

DEFAULT_SAMPLES = 200


@dataclass
class SuiteReport:
    suite: str
    instances: int = 0
    status: str = "pass"
    regime: str = "exhaustive"
    counterexample: str | None = None
    seed: int = 0

    def row(self) -> str:
        return f"{self.suite}\t{self.instances}\t{self.status}"


@dataclass
class Context:
    max_size: int
    seed: int
    exhaustive_up_to: int
    samples: int
    rng: random.Random
    sampled: bool = False
    _corpus: list | None = field(default=None, repr=False)

    def corpus(self, limit: int | None = None) -> list[Matroid]:
        if self._corpus is None:
            self._corpus = catalog.corpus(self.max_size)
        cap = self.max_size if limit is None else min(limit, self.max_size)
        return [m for m in self._corpus if m.n <= cap]

    def exhaustive(self, n: int) -> bool:
        if n <= self.exhaustive_up_to:
            return True
        self.sampled = True
        return False

    def masks(self, n: int) -> list[int]:
        full = (1 << n) - 1
        if self.exhaustive(n):
            return list(range(full + 1))
        return sorted(self.rng.randrange(full + 1) for _ in range(self.samples))

    def pairs(self, n: int) -> list[tuple[int, int]]:
        full = (1 << n) - 1
        if self.exhaustive(n):
            return [(x, y) for x in range(full + 1) for y in range(full + 1)]
        return [(self.rng.randrange(full + 1), self.rng.randrange(full + 1)) for _ in range(self.samples)]

    def pick(self, items: list, n: int) -> list:
        if len(items) <= self.samples or self.exhaustive(n):
            return items
        chosen = sorted(self.rng.sample(range(len(items)), self.samples))
        return [items[i] for i in chosen]


Instance = Iterator[tuple[str, bool]]


def _desc(m: Matroid, *sets) -> str:
    shown = ["{" + ",".join(map(str, m.ordered(s))) + "}" for s in sets]
    return f"{m.name} " + " ".join(shown)


def set_partitions(n: int, max_parts: int) -> list[list[int]]:
    """Partitions of range(n) into at most ``max_parts`` nonempty blocks, as masks."""
    out = []

    def rec(i: int, blocks: list[int]) -> None:
        if i == n:
            out.append(list(blocks))
            return
        for k in range(len(blocks)):
            blocks[k] |= 1 << i
            rec(i + 1, blocks)
            blocks[k] &= ~(1 << i)
        if len(blocks) < max_parts:
            blocks.append(1 << i)
            rec(i + 1, blocks)
            blocks.pop()

    if n == 0:
        return [[]]
    rec(0, [])
    return out


def _family(m: Matroid, masks) -> PartitionFamily:
    return PartitionFamily.of(m, [m.labels(p) for p in masks])


def _quotient_pairs(ctx: Context, limit: int) -> list[tuple[Matroid, Matroid]]:
    """Ordered pairs (n, m) of corpus matroids on one ground set with n a quotient of m (brute)."""
    groups: dict[frozenset, list[Matroid]] = {}
    for m in ctx.corpus(limit):
        groups.setdefault(frozenset(m.ground), []).append(m)
    out = []
    for members in groups.values():
        for n, m in itertools.product(members, repeat=2):
            bn, bm = Brute(n), Brute(m)
            pos = [1 << n.index[label] for label in m.ground]

            def to_n(x: int) -> int:
                y = 0
                for i, bit in enumerate(pos):
                    if x >> i & 1:
                        y |= bit
                return y

            if all(to_n(bm.closure[x]) & ~bn.closure[to_n(x)] == 0 for x in range(m.full + 1)):
                out.append((n, m))
    return out


# -- suites ---------------------------------------------------------------------


def suite_axioms(ctx: Context) -> Instance:
    for m in ctx.corpus():
        derived = [m, dual(m)]
        if m.n:
            first, last = m.ground[0], m.ground[-1]
            derived += [contract(m, [first]), delete(m, [last]), project_set(m, m.ground[:2])]
            derived.append(preimage(m, {**{x: x for x in m.ground}, ("dup", first): first}))
        if m.n < ctx.max_size:
            derived.append(direct_sum([m, relabel(uniform(1, 1), {"a": "_s"})]))
        if m.n < ctx.max_size and len(flats(m)) <= 20:
            cuts = enumerate_modular_cuts(m)
            for cut in cuts if ctx.exhaustive(m.n) else cuts[:3]:
                derived.append(extend_by(m, "_x", cut, check=False))
                derived.append(project_by(m, cut))
        for d in derived:
            family = [d.ordered(x) for x in range(d.full + 1) if d.indep_mask(x)]
            masks = {x for x in range(d.full + 1) if d.indep_mask(x)}
            yield d.name, bool(check_axioms(d.ground, family)) and brute_axioms(d.n, masks)


def suite_modpairiffbasis(ctx: Context) -> Instance:
    for m in ctx.corpus():
        b = Brute(m)
        for x, y in ctx.pairs(m.n):
            found = mutual_basis_mask(m, [x, y]) is not None
            yield _desc(m, x, y), found == b.modular_pair(x, y)


def _disjoint_families(ctx: Context, n: int, parts: int) -> list[list[int]]:
    out = []
    for assign in itertools.product(range(parts + 1), repeat=n):
        fam = [0] * parts
        for i, a in enumerate(assign):
            if a:
                fam[a - 1] |= 1 << i
        out.append(fam)
    return ctx.pick(out, n)


def suite_skewequiv(ctx: Context) -> Instance:
    for m in ctx.corpus():
        b = Brute(m)
        for fam in _disjoint_families(ctx, m.n, 3):
            verdict = is_skew_family(m, _family(m, fam))
            yield _desc(m, *fam), verdict == b.skew(fam)


def suite_skewrank(ctx: Context) -> Instance:
    for m in ctx.corpus():
        b = Brute(m)
        for x, y in ctx.pairs(m.n):
            z = (x ^ y) & ((1 << m.n) - 1)
            for fam in ([x, y], [x, y, z]):
                yield _desc(m, *fam), is_skew_family(m, _family(m, fam)) == b.skew(fam)


def suite_quotequiv(ctx: Context) -> Instance:
    groups: dict[frozenset, list[Matroid]] = {}
    for m in ctx.corpus():
        groups.setdefault(frozenset(m.ground), []).append(m)
    for members in groups.values():
        for n, m in itertools.product(members, repeat=2):
            if not ctx.exhaustive(m.n) and ctx.rng.random() > 0.5:
                continue
            bn, bm = Brute(n), Brute(m)
            pos = [1 << n.index[label] for label in m.ground]

            def to_n(x: int) -> int:
                return sum(bit for i, bit in enumerate(pos) if x >> i & 1)

            expected = all(to_n(bm.closure[x]) & ~bn.closure[to_n(x)] == 0 for x in range(m.full + 1))
            # is_quotient raises InvariantBreach unless all seven routes agree
            yield f"{n.name} <= {m.name}", is_quotient(n, m) == expected


def suite_discgood(ctx: Context) -> Instance:
    for n, m in _quotient_pairs(ctx, ctx.max_size):
        n2 = reorder(n, m.ground)
        bn, bm = Brute(n2), Brute(m)
        for x in ctx.masks(m.n):
            delta = discrepancy_mask(n2, m, x)
            ok = delta == bm.rank[x] - bn.rank[x] and bn.nullity(x) == bm.nullity(x) + delta
            yield _desc(m, x) + f" over {n.name}", ok


def _guts_chain(m: Matroid, fam: PartitionFamily) -> tuple[list[Matroid], bool]:
    """Guts projections until the family is skew, checking each brute step."""
    chain = [m]
    ok = True
    masks = fam.masks(m)
    cur = m
    while Brute(cur).lambda_partition(masks) != 0:
        if len(chain) > m.r + 1:
            return chain, False
        nxt = project_by(cur, guts_cut(cur, fam))
        before = Brute(cur).lambda_dual_partition(masks)
        after = Brute(nxt).lambda_dual_partition(masks)
        ok = ok and after == before - 1
        chain.append(nxt)
        cur = nxt
    return chain, ok


def suite_lambdadualeq(ctx: Context) -> Instance:
    for m in ctx.corpus():
        b = Brute(m)
        for blocks in ctx.pick(set_partitions(m.n, 3), m.n):
            fam = _family(m, blocks)
            chain, steps_ok = _guts_chain(m, fam)
            yield _desc(m, *blocks), steps_ok and len(chain) - 1 == b.lambda_dual_partition(blocks)


def suite_gpsub(ctx: Context) -> Instance:
    for m in ctx.corpus():
        b = Brute(m)
        for blocks in ctx.pick(set_partitions(m.n, 3), m.n):
            if b.skew(blocks):
                continue
            fam = _family(m, blocks)
            nxt = project_by(m, guts_cut(m, fam))
            ok = Brute(nxt).lambda_dual_partition(blocks) == b.lambda_dual_partition(blocks) - 1
            yield _desc(m, *blocks), ok


def suite_modcutextension(ctx: Context) -> Instance:
    for m in ctx.corpus(min(ctx.max_size, 6)):
        if len(flats(m)) > 20:
            continue
        b = Brute(m)
        cuts = enumerate_modular_cuts(m)
        seen = []
        for cut in cuts:
            ext = extend_by(m, "_x", cut, check=False)
            be = Brute(ext)
            bit = 1 << m.n
            ok = brute_axioms(ext.n, {x for x in range(ext.full + 1) if be.indep[x]})
            ok = ok and all(be.indep[x] == b.indep[x] for x in range(m.full + 1))
            ok = ok and all(bool(be.closure[f] & bit) == (f in cut.members) for f in b.flats)
            ok = ok and extension_cut(ext, "_x") == cut
            ok = ok and b.is_modular_cut(cut.members)
            ok = ok and not any(same_oracle(ext, other) for other in seen)
            seen.append(ext)
            yield f"{cut!r}", ok
        # the census is complete: every brute-valid upward family appears
        if len(b.flats) <= 12:
            count = 0
            for k in range(len(b.flats) + 1):
                for fam in itertools.combinations(b.flats, k):
                    count += b.is_modular_cut(fam)
            yield f"{m.name} cut count", count == len(cuts)


def suite_lcmod(ctx: Context) -> Instance:
    for m in ctx.corpus():
        b = Brute(m)
        for x, y in ctx.pairs(m.n):
            value = local_conn_pair(m, m.labels(x), m.labels(y))
            inter = b.rank[x & y]
            ok = value == b.local_conn(x, y) and value >= inter and (value == inter) == b.modular_pair(x, y)
            yield _desc(m, x, y), ok


def suite_connselfdual(ctx: Context) -> Instance:
    for m in ctx.corpus():
        b = Brute(m)
        bd = Brute(dual(m))
        for x in ctx.masks(m.n):
            rest = m.full & ~x
            primal = b.rank[x] + b.rank[rest] - b.r
            dual_value = bd.rank[x] + bd.rank[rest] - bd.r
            yield _desc(m, x), lambda_set(m, m.labels(x)) == primal == dual_value


def suite_conneqrelrank(ctx: Context) -> Instance:
    for m in ctx.corpus():
        b = Brute(m)
        for x in ctx.masks(m.n):
            value = lambda_set(m, m.labels(x))
            r = b.rank[x]
            ok = True
            for combo in itertools.combinations([i for i in range(m.n) if x >> i & 1], r):
                i_mask = sum(1 << i for i in combo)
                if b.indep[i_mask]:
                    ok = ok and value == b.dual_rank(x) - b.dual_rank(x & ~i_mask)
            yield _desc(m, x), ok


def suite_nullity_supermod(ctx: Context) -> Instance:
    for m in ctx.corpus():
        b = Brute(m)
        for x, y in ctx.pairs(m.n):
            nx, ny = nullity(m, m.labels(x)), nullity(m, m.labels(y))
            ok = nx == b.nullity(x) and ny == b.nullity(y)
            ok = ok and nx + ny <= b.nullity(x | y) + b.nullity(x & y)
            yield _desc(m, x, y), ok


def suite_modularlinehyperplane(ctx: Context) -> Instance:
    for m in ctx.corpus():
        b = Brute(m)
        if b.closure[0]:
            continue
        verdict = is_modular_matroid(m)
        yield m.name, verdict == b.lines_meet_hyperplanes() == b.is_modular()


def suite_contractmodularcut(ctx: Context) -> Instance:
    for m in ctx.corpus(min(ctx.max_size, 5)):
        b = Brute(m)
        for k in range(3):
            for c in itertools.combinations(m.ground, k):
                minor = contract(m, c)
                if len(flats(minor)) > 20:
                    continue
                for cut in enumerate_modular_cuts(minor):
                    lifted = lift_modular_cut(m, c, cut)
                    yield _desc(m, m.mask(c)) + f" {cut!r}", b.is_modular_cut(lifted.members)


def _brute_minor_ok(p: Matroid, k, target: Matroid, mode: str) -> bool:
    bp = Brute(p)
    kmask = p.mask(k)
    rk = bp.rank[kmask]
    for x in range(target.full + 1):
        y = p.mask(target.labels(x))
        if mode == "delete":
            expected = bp.indep[y]
        else:
            expected = bp.rank[y | kmask] == bin(y).count("1") + rk
        if bool(target.indep_mask(x)) != expected:
            return False
    return set(target.ground) == set(p.ground) - set(k)


def suite_quotientisproject(ctx: Context) -> Instance:
    for n, m in _quotient_pairs(ctx, min(ctx.max_size, 5)):
        w = quotient_to_projection(n, m)
        delta = Brute(m).r - Brute(n).r
        ok = len(w.k) == delta and _brute_minor_ok(w.p, w.k, m, "delete") and _brute_minor_ok(w.p, w.k, n, "contract")
        yield f"{n.name} <= {m.name}", ok


def splice_instances(ctx: Context, limit: int) -> Iterator[tuple[Matroid, frozenset, frozenset]]:
    for p0 in ctx.corpus(limit):
        options = []
        for kc in range(3):
            for c in itertools.combinations(p0.ground, kc):
                rest = [e for e in p0.ground if e not in c]
                for kd in range(3):
                    for d in itertools.combinations(rest, kd):
                        options.append((frozenset(c), frozenset(d)))
        for c, d in ctx.pick(options, p0.n):
            yield p0, c, d


def suite_majorofminor(ctx: Context) -> Instance:
    for p0, c, d in splice_instances(ctx, min(ctx.max_size, 5)):
        m = materialize(delete(p0, d))
        n = materialize(contract(p0, c))
        p = splice(m, n, c, d)
        ok = _brute_minor_ok(p, d, m, "delete") and _brute_minor_ok(p, c, n, "contract")
        yield f"{p0.name} C={sorted(c)} D={sorted(d)}", ok


def suite_vamos_guts(ctx: Context) -> Instance:
    v = vamos()
    s = [frozenset(pair) for pair in VAMOS_PAIRS]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        result = guts_cut(v, [s[0], s[1]], allow_partial=True)
    # a valid cut here would contradict the counterexample: report it as a failure
    ok = isinstance(result, CutViolation) and result.witness_for("modular-pair") == (s[2], s[3], frozenset())
    yield "vamos <S1,S2>", ok


@dataclass(frozen=True)
class TheoremSuite:
    id: str
    run: Callable[[Context], Instance]
    exhaustive_up_to: int
    expected_failure: bool = False


SUITES = {
    s.id: s
    for s in [
        TheoremSuite("axioms", suite_axioms, 8),
        TheoremSuite("modpairiffbasis", suite_modpairiffbasis, 6),
        TheoremSuite("skewequiv", suite_skewequiv, 6),
        TheoremSuite("skewrank", suite_skewrank, 6),
        TheoremSuite("quotequiv", suite_quotequiv, 8),
        TheoremSuite("discgood", suite_discgood, 6),
        TheoremSuite("lambdadualeq", suite_lambdadualeq, 6),
        TheoremSuite("gpsub", suite_gpsub, 6),
        TheoremSuite("modcutextension", suite_modcutextension, 6),
        TheoremSuite("lcmod", suite_lcmod, 6),
        TheoremSuite("connselfdual", suite_connselfdual, 8),
        TheoremSuite("conneqrelrank", suite_conneqrelrank, 8),
        TheoremSuite("nullity-supermod", suite_nullity_supermod, 6),
        TheoremSuite("modularlinehyperplane", suite_modularlinehyperplane, 8),
        TheoremSuite("contractmodularcut", suite_contractmodularcut, 5),
        TheoremSuite("quotientisproject", suite_quotientisproject, 5),
        TheoremSuite("majorofminor", suite_majorofminor, 6),
        TheoremSuite("vamos-guts", suite_vamos_guts, 8, expected_failure=True),
    ]
}


def run_suite(
    suite_id: str,
    max_size: int,
    seed: int = 0,
    exhaustive_up_to: int | None = None,
    samples: int = DEFAULT_SAMPLES,
) -> SuiteReport:
    """Run one suite and report the instance count and the first counterexample.

    Expected-failure suites report ``expected-failure`` when the known
    counterexample is reproduced and ``fail`` otherwise.
    """
    if suite_id not in SUITES:
        raise UnknownSuite(f"unknown suite {suite_id!r}; known: {', '.join(SUITES)}")
    suite = SUITES[suite_id]
    limit = suite.exhaustive_up_to if exhaustive_up_to is None else exhaustive_up_to
    ctx = Context(max_size, seed, limit, samples, random.Random(f"{seed}:{suite_id}"))
    report = SuiteReport(suite_id, seed=seed)
    for description, ok in suite.run(ctx):
        report.instances += 1
        if not ok:
            report.status = "fail"
            report.counterexample = description
            break
    else:
        if suite.expected_failure:
            report.status = "expected-failure"
    report.regime = "sampled" if ctx.sampled else "exhaustive"
    return report


def run_all(max_size: int, seed: int = 0, **kwargs) -> list[SuiteReport]:
    return [run_suite(suite_id, max_size, seed, **kwargs) for suite_id in SUITES]
