"""Global size cap for operations that enumerate subsets of the ground set."""

from __future__ import annotations

import os
from contextlib import contextmanager

from .errors import GroundTooLarge

DEFAULT_MAX_SIZE = 16
ENV_VAR = "MATROID_MAX_SIZE"

# preimages on E x A only need greedy rank queries, never enumeration
PREIMAGE_BUDGET = 512

_override: int | None = None


def max_size() -> int:
    if _override is not None:
        return _override
    raw = os.environ.get(ENV_VAR)
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_MAX_SIZE


def set_max_size(value: int | None) -> None:
    global _override
    _override = value


@contextmanager
def size_cap(value: int):
    global _override
    previous = _override
    _override = value
    try:
        yield
    finally:
        _override = previous


def require_size(n: int, what: str = "operation") -> None:
    cap = max_size()
    if n > cap:
        raise GroundTooLarge(f"{what}: ground set has {n} elements, cap is {cap}")
