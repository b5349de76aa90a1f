"""Constructor-level matroid descriptions and the matroids they build."""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass
from typing import Hashable, Sequence

from .axioms import check_matroid
from .config import require_size
from .core import Matroid, popcount
from .errors import InvalidSpec, NotAMatroid

KINDS = ("uniform", "linear", "graphic", "explicit_bases", "explicit_circuits")


@dataclass(frozen=True)
class MatroidSpec:
    """Serializable recipe for a matroid.

    Only the fields relevant to ``kind`` are set:

    - ``uniform``: ``rank``, ``size``
    - ``linear``: ``field`` (a prime p), ``columns`` (vectors over GF(p))
    - ``graphic``: ``vertices``, ``edges`` (pairs of vertex numbers)
    - ``explicit_bases`` / ``explicit_circuits``: ``sets``
    """

    name: str
    kind: str
    rank: int | None = None
    size: int | None = None
    field: int | None = None
    columns: tuple[tuple[int, ...], ...] | None = None
    vertices: int | None = None
    edges: tuple[tuple[int, int], ...] | None = None
    sets: tuple[tuple[Hashable, ...], ...] | None = None
    labels: tuple[Hashable, ...] | None = None

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown kind {self.kind!r}")
        if self.labels is not None and len(set(self.labels)) != len(self.labels):
            raise InvalidSpec("duplicate labels")
        n = self.element_count()
        if self.labels is not None and len(self.labels) != n:
            raise InvalidSpec(f"{len(self.labels)} labels given for {n} elements")
        if self.kind == "uniform":
            if self.rank is None or self.size is None:
                raise InvalidSpec("uniform needs rank and size")
            if not 0 <= self.rank <= self.size:
                raise InvalidSpec(f"uniform needs 0 <= rank <= size, got {self.rank}, {self.size}")
        elif self.kind == "linear":
            if self.field is None or self.columns is None:
                raise InvalidSpec("linear needs field and columns")
            if not is_prime(self.field):
                raise InvalidSpec(f"field size {self.field} is not prime")
            lengths = {len(col) for col in self.columns}
            if len(lengths) > 1:
                raise InvalidSpec("columns have different lengths")
            for col in self.columns:
                if any(not 0 <= x < self.field for x in col):
                    raise InvalidSpec(f"column {col} has entries outside [0, {self.field})")
        elif self.kind == "graphic":
            if self.vertices is None or self.edges is None:
                raise InvalidSpec("graphic needs vertices and edges")
            for u, v in self.edges:
                if not (0 <= u < self.vertices and 0 <= v < self.vertices):
                    raise InvalidSpec(f"edge {(u, v)} uses a vertex outside range({self.vertices})")
        else:
            if self.sets is None:
                raise InvalidSpec(f"{self.kind} needs sets")
            for member in self.sets:
                if len(set(member)) != len(member):
                    raise InvalidSpec(f"set {member} repeats an element")
            if self.kind == "explicit_bases":
                if not self.sets:
                    raise InvalidSpec("explicit_bases needs at least one basis")
                if len({len(b) for b in self.sets}) != 1:
                    raise InvalidSpec("bases have different sizes")
            known = set(self.element_labels())
            for member in self.sets:
                for label in member:
                    if label not in known:
                        raise InvalidSpec(f"{label!r} is not a listed label")

    def element_count(self) -> int:
        if self.kind == "uniform":
            return self.size or 0
        if self.kind == "linear":
            return len(self.columns or ())
        if self.kind == "graphic":
            return len(self.edges or ())
        if self.labels is not None:
            return len(self.labels)
        return len(_first_appearance(self.sets or ()))

    def element_labels(self) -> tuple:
        if self.labels is not None:
            return tuple(self.labels)
        if self.kind == "uniform":
            return letter_labels(self.size or 0)
        if self.kind == "linear":
            return tuple(str(i + 1) for i in range(len(self.columns or ())))
        if self.kind == "graphic":
            return edge_labels(self.edges or (), self.vertices or 0)
        return _first_appearance(self.sets or ())


def _first_appearance(sets) -> tuple:
    seen: dict = {}
    for member in sets:
        for label in member:
            seen.setdefault(label, None)
    return tuple(seen)


def letter_labels(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple(string.ascii_lowercase[:n])
    return tuple(f"e{i}" for i in range(n))


def edge_labels(edges, vertices: int) -> tuple[str, ...]:
    sep = "" if vertices <= 10 else "-"
    out: list[str] = []
    counts: dict[str, int] = {}
    for u, v in edges:
        base = f"{u}{sep}{v}"
        k = counts.get(base, 0)
        counts[base] = k + 1
        out.append(base if k == 0 else f"{base}'{k}")
    return tuple(out)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


# -- oracles -------------------------------------------------------------------


def gf_rank(vectors: Sequence[Sequence[int]], p: int) -> int:
    """Rank of a list of vectors over GF(p) by Gaussian elimination."""
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    width = len(rows[0])
    rank = 0
    for col in range(width):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                factor = rows[r][col]
                rows[r] = [(a - factor * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def uniform(k: int, n: int, labels: Sequence[Hashable] | None = None, name: str | None = None) -> Matroid:
    labels = tuple(labels) if labels is not None else letter_labels(n)
    return build(MatroidSpec(name or f"uniform:{k},{n}", "uniform", rank=k, size=n, labels=labels))


def _linear(spec: MatroidSpec, labels) -> Matroid:
    p = spec.field
    columns = [tuple(c) for c in spec.columns]

    def oracle(mask: int) -> bool:
        chosen = [columns[i] for i in range(len(columns)) if mask >> i & 1]
        return gf_rank(chosen, p) == len(chosen)

    return Matroid(labels, oracle, name=spec.name, provenance=("linear", spec))


def _graphic(spec: MatroidSpec, labels) -> Matroid:
    edges = list(spec.edges)

    def oracle(mask: int) -> bool:
        parent = list(range(spec.vertices))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, (u, v) in enumerate(edges):
            if mask >> i & 1:
                ru, rv = find(u), find(v)
                if ru == rv:
                    return False
                parent[ru] = rv
        return True

    return Matroid(labels, oracle, name=spec.name, provenance=("graphic", spec))


def _set_masks(sets, labels) -> list[int]:
    index = {label: i for i, label in enumerate(labels)}
    out = []
    for member in sets:
        mask = 0
        for label in member:
            mask |= 1 << index[label]
        out.append(mask)
    return out


def _explicit_bases(spec: MatroidSpec, labels) -> Matroid:
    require_size(len(labels), "explicit_bases validation")
    basis_masks = sorted(set(_set_masks(spec.sets, labels)))
    basis_set = set(basis_masks)
    # basis exchange, pairwise
    for b1 in basis_masks:
        for b2 in basis_masks:
            for i in range(len(labels)):
                if b1 >> i & 1 and not b2 >> i & 1:
                    base = b1 & ~(1 << i)
                    if not any(
                        b2 >> j & 1 and not b1 >> j & 1 and (base | (1 << j)) in basis_set
                        for j in range(len(labels))
                    ):
                        witness = tuple(frozenset(labels[k] for k in range(len(labels)) if b >> k & 1) for b in (b1, b2))
                        raise NotAMatroid(
                            f"basis exchange fails for {sorted(map(str, witness[0]))}, "
                            f"{sorted(map(str, witness[1]))} at {labels[i]!r}",
                            witness=witness,
                        )
    independent: set[int] = set()
    for b in basis_masks:
        sub = b
        while True:
            independent.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & b
    return Matroid(labels, independent.__contains__, name=spec.name, provenance=("explicit_bases", spec))


def _explicit_circuits(spec: MatroidSpec, labels) -> Matroid:
    circuit_masks = sorted(set(_set_masks(spec.sets, labels)))

    def oracle(mask: int) -> bool:
        return not any(c & mask == c for c in circuit_masks)

    m = Matroid(labels, oracle, name=spec.name, provenance=("explicit_circuits", spec))
    verdict = check_matroid(m)
    if not verdict:
        raise NotAMatroid(f"circuit family fails {verdict.axiom}: {verdict.message}", witness=verdict.witness)
    return m


def build(spec: MatroidSpec) -> Matroid:
    spec.validate()
    labels = spec.element_labels()
    if spec.kind == "uniform":
        k = spec.rank
        return Matroid(labels, lambda mask: popcount(mask) <= k, name=spec.name, provenance=("uniform", spec))
    if spec.kind == "linear":
        return _linear(spec, labels)
    if spec.kind == "graphic":
        return _graphic(spec, labels)
    if spec.kind == "explicit_bases":
        return _explicit_bases(spec, labels)
    return _explicit_circuits(spec, labels)


# -- named matroids --------------------------------------------------------------

VAMOS_LABELS = ("a", "b", "c", "d", "e", "f", "g", "h")
VAMOS_PAIRS = (("a", "b"), ("c", "d"), ("e", "f"), ("g", "h"))


def vamos_nonspanning_circuits() -> list[frozenset]:
    """The five 4-element circuits: S_i | S_j for i < j except (3, 4)."""
    out = []
    for i, j in itertools.combinations(range(4), 2):
        if (i, j) != (2, 3):
            out.append(frozenset(VAMOS_PAIRS[i] + VAMOS_PAIRS[j]))
    return out


def vamos() -> Matroid:
    """The rank-4 Vamos matroid, completed from its nonspanning circuits as a paving matroid."""
    labels = VAMOS_LABELS
    index = {label: i for i, label in enumerate(labels)}
    circuits = []
    for c in vamos_nonspanning_circuits():
        mask = 0
        for label in c:
            mask |= 1 << index[label]
        circuits.append(mask)

    def oracle(mask: int) -> bool:
        if popcount(mask) > 4:
            return False
        return not any(c & mask == c for c in circuits)

    return Matroid(labels, oracle, name="vamos", provenance=("vamos",))


def fano_spec() -> MatroidSpec:
    columns = tuple(tuple(int(b) for b in format(i, "03b")) for i in range(1, 8))
    return MatroidSpec("fano", "linear", field=2, columns=columns)


def pg23_spec() -> MatroidSpec:
    """PG(2,3): one normalized representative per 1-dimensional subspace of GF(3)^3."""
    columns = []
    for vec in itertools.product(range(3), repeat=3):
        if any(vec):
            lead = next(x for x in vec if x)
            if lead == 1:
                columns.append(vec)
    return MatroidSpec("pg_2_3", "linear", field=3, columns=tuple(columns))


def complete_graph_spec(n: int) -> MatroidSpec:
    edges = tuple(itertools.combinations(range(n), 2))
    return MatroidSpec(f"graphic:K{n}", "graphic", vertices=n, edges=edges)


def complete_bipartite_spec(p: int, q: int) -> MatroidSpec:
    edges = tuple((u, v) for u in range(p) for v in range(p, p + q))
    return MatroidSpec(f"graphic:K{p}{q}", "graphic", vertices=p + q, edges=edges)
