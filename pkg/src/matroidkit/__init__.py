"""Finite matroids behind independence oracles: modular cuts, extensions,
quotients, connectivity, and brute-force verification suites."""

__version__ = "0.1.0"

from .build import MatroidSpec, build, uniform, vamos
from .core import (
    Matroid,
    closure,
    contract,
    delete,
    direct_sum,
    dual,
    minor,
    preimage,
    project_set,
    rank,
    relative_rank,
)

__all__ = [
    "Matroid",
    "MatroidSpec",
    "__version__",
    "build",
    "closure",
    "contract",
    "delete",
    "direct_sum",
    "dual",
    "minor",
    "preimage",
    "project_set",
    "rank",
    "relative_rank",
    "uniform",
    "vamos",
]
