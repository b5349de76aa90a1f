"""Named matroids and the fixed test corpus.

Catalog names are stable identifiers used by the CLI:

- ``uniform:k,n`` for 0 <= k <= n <= 8
- ``fano``, ``pg_2_3``, ``vamos``
- ``graphic:K4``, ``graphic:K23``
- ``free:n`` and ``loops:n`` for n <= 8
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import lru_cache

from .axioms import check_matroid
from .build import (
    MatroidSpec,
    build,
    complete_bipartite_spec,
    complete_graph_spec,
    fano_spec,
    pg23_spec,
    vamos,
)
from .config import size_cap
from .core import Matroid, bases_masks
from .errors import UnknownName
from .flats import circuit_masks, flats
from .modularity import is_modular_matroid

CATALOG_SEED = 0xA11CE
MAX_UNIFORM = 8
RANDOM_SIZES = (4, 5, 6, 7)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    spec: MatroidSpec | None
    expected: dict = field(default_factory=dict)

    def build(self) -> Matroid:
        return vamos() if self.spec is None else build(self.spec)


def _vamos_circuit_spec() -> MatroidSpec:
    m = vamos()
    sets = tuple(m.ordered(c) for c in circuit_masks(m))
    return MatroidSpec("vamos", "explicit_circuits", sets=sets, labels=m.ground)


# Frozen values; each was recomputed by brute force before being recorded.
ENTRIES = {
    "fano": CatalogEntry("fano", fano_spec(), {"size": 7, "rank": 3, "flats": 16, "circuits": 14, "modular": True}),
    "pg_2_3": CatalogEntry("pg_2_3", pg23_spec(), {"size": 13, "rank": 3, "flats": 28, "circuits": 286, "modular": True}),
    "vamos": CatalogEntry("vamos", None, {"size": 8, "rank": 4, "flats": 79, "circuits": 41, "modular": False}),
    "graphic:K4": CatalogEntry(
        "graphic:K4", complete_graph_spec(4), {"size": 6, "rank": 3, "flats": 15, "circuits": 7, "modular": False}
    ),
    "graphic:K23": CatalogEntry(
        "graphic:K23", complete_bipartite_spec(2, 3), {"size": 6, "rank": 4, "flats": 34, "circuits": 3, "modular": False}
    ),
}


def _uniform_spec(k: int, n: int, name: str) -> MatroidSpec:
    return MatroidSpec(name, "uniform", rank=k, size=n)


def _parse_name(name: str) -> CatalogEntry:
    if name in ENTRIES:
        return ENTRIES[name]
    match = re.fullmatch(r"uniform:(\d+),(\d+)", name)
    if match:
        k, n = int(match.group(1)), int(match.group(2))
        if 0 <= k <= n <= MAX_UNIFORM:
            return CatalogEntry(name, _uniform_spec(k, n, name))
    match = re.fullmatch(r"(free|loops):(\d+)", name)
    if match:
        n = int(match.group(2))
        if n <= MAX_UNIFORM:
            k = n if match.group(1) == "free" else 0
            return CatalogEntry(name, _uniform_spec(k, n, name))
    raise UnknownName(f"no catalog matroid named {name!r}")


def names() -> list[str]:
    out = list(ENTRIES)
    out += [f"uniform:{k},{n}" for n in range(MAX_UNIFORM + 1) for k in range(n + 1)]
    out += [f"free:{n}" for n in range(MAX_UNIFORM + 1)]
    out += [f"loops:{n}" for n in range(MAX_UNIFORM + 1)]
    return out


def self_test(entry: CatalogEntry, m: Matroid) -> None:
    """Recompute every expected value of ``entry`` on ``m``."""
    exp = entry.expected
    found = {"size": m.n, "rank": m.r}
    with size_cap(max(16, m.n)):
        if m.n <= 8:
            verdict = check_matroid(m)
            if not verdict:
                raise AssertionError(f"catalog entry {entry.name} fails {verdict.axiom}")
        if "flats" in exp:
            found["flats"] = len(flats(m))
        if "circuits" in exp:
            found["circuits"] = len(circuit_masks(m))
        if "modular" in exp:
            found["modular"] = is_modular_matroid(m)
    for key, value in exp.items():
        if found[key] != value:
            raise AssertionError(f"catalog entry {entry.name}: {key} is {found[key]}, expected {value}")


@lru_cache(maxsize=None)
def _checked(name: str) -> bool:
    entry = _parse_name(name)
    self_test(entry, entry.build())
    return True


def get(name: str) -> Matroid:
    """A freshly built matroid; the entry's expected values are checked once per process."""
    entry = _parse_name(name)
    _checked(name)
    return entry.build()


def entry(name: str) -> CatalogEntry:
    return _parse_name(name)


def spec_of(name: str) -> MatroidSpec:
    """A serializable spec for a catalog matroid (Vamos as its explicit circuits)."""
    entry_ = _parse_name(name)
    return entry_.spec if entry_.spec is not None else _vamos_circuit_spec()


# -- random matroids ------------------------------------------------------------


def random_binary(n: int, rank: int, rng: random.Random, name: str) -> Matroid:
    """Matroid of ``n`` random GF(2) columns of length ``rank``, stored as explicit bases."""
    columns = tuple(tuple(rng.randrange(2) for _ in range(rank)) for _ in range(n))
    linear = build(MatroidSpec(name, "linear", field=2, columns=columns, labels=tuple(_letters(n))))
    bases = tuple(linear.ordered(b) for b in bases_masks(linear))
    spec = MatroidSpec(name, "explicit_bases", sets=bases, labels=linear.ground)
    return build(spec)


def _letters(n: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(n)]


def random_matroids(max_size: int, seed: int = CATALOG_SEED) -> list[Matroid]:
    rng = random.Random(seed)
    out = []
    for n in RANDOM_SIZES:
        rank = rng.randrange(1, n)
        m = random_binary(n, rank, rng, f"random:{seed:x}:{n}")
        if n <= max_size:
            out.append(m)
    return out


def corpus(max_size: int, seed: int = CATALOG_SEED, random_extra: bool = True) -> list[Matroid]:
    """Every catalog matroid on at most ``max_size`` elements, then seeded random ones.

    ``free:n`` and ``loops:n`` duplicate ``uniform:n,n`` and ``uniform:0,n``,
    so only the uniform names appear here.
    """
    out = [get("uniform:0,0")]
    for n in range(1, min(max_size, MAX_UNIFORM) + 1):
        out += [get(f"uniform:{k},{n}") for k in range(n + 1)]
    for name, entry_ in ENTRIES.items():
        if entry_.expected["size"] <= max_size:
            out.append(get(name))
    if random_extra:
        out += random_matroids(max_size, seed)
    return out
