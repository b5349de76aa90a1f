"""Spec files and result documents.

A spec file is a JSON object with a ``name``, a ``kind`` and the fields of
that kind.  Serialization uses sorted keys and fixed indentation so that
digests of the same spec are stable.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field, fields

from . import __version__
from .build import KINDS, MatroidSpec
from .errors import InvalidSpec, ParseError, SemanticError

_FIELDS = {f.name for f in fields(MatroidSpec)}
_NESTED = ("columns", "edges", "sets")


class _DuplicateKey(ValueError):
    def __init__(self, key: str):
        super().__init__(f"duplicate key {key!r}")
        self.key = key


def _reject_duplicate_keys(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            raise _DuplicateKey(key)
        out[key] = value
    return out


def _position(text: str, needle: str, last: bool = False) -> tuple[int, int]:
    index = text.rfind(needle) if last else text.find(needle)
    if index < 0:
        return 1, 1
    line = text.count("\n", 0, index) + 1
    column = index - (text.rfind("\n", 0, index) + 1) + 1
    return line, column


def _freeze(value):
    if isinstance(value, list):
        return tuple(_freeze(v) for v in value)
    return value


def parse_spec(text: str) -> MatroidSpec:
    try:
        raw = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    except _DuplicateKey as exc:
        raise ParseError(str(exc), *_position(text, f'"{exc.key}"', last=True)) from None
    if not isinstance(raw, dict):
        raise ParseError("a spec must be a JSON object", 1, 1)
    for key in ("name", "kind"):
        if not isinstance(raw.get(key), str):
            raise ParseError(f"missing or non-string field {key!r}", *_position(text, f'"{key}"'))
    unknown = set(raw) - _FIELDS
    if unknown:
        key = sorted(unknown)[0]
        raise ParseError(f"unknown field {key!r}", *_position(text, f'"{key}"'))
    if raw["kind"] not in KINDS:
        raise ParseError(f"unknown kind {raw['kind']!r}", *_position(text, f'"{raw["kind"]}"'))
    labels = raw.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or any(isinstance(x, (list, dict)) for x in labels):
            raise ParseError("labels must be a list of strings or numbers", *_position(text, '"labels"'))
        if len(set(labels)) != len(labels):
            raise ParseError("duplicate labels", *_position(text, '"labels"'))
    for key in _NESTED:
        if key in raw and raw[key] is not None:
            if not isinstance(raw[key], list) or not all(isinstance(row, list) for row in raw[key]):
                raise ParseError(f"{key} must be a list of lists", *_position(text, f'"{key}"'))
    kwargs = {key: _freeze(value) for key, value in raw.items()}
    spec = MatroidSpec(**kwargs)
    try:
        spec.validate()
    except InvalidSpec as exc:
        raise SemanticError(str(exc)) from None
    return spec


def _thaw(value):
    if isinstance(value, tuple):
        return [_thaw(v) for v in value]
    return value


def spec_to_dict(spec: MatroidSpec) -> dict:
    return {key: _thaw(value) for key, value in asdict(spec).items() if value is not None}


def serialize_spec(spec: MatroidSpec) -> str:
    return json.dumps(spec_to_dict(spec), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()


@dataclass
class ResultDocument:
    """Everything needed to reproduce one CLI invocation."""

    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: list[tuple[str, str]] = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def add(self, key: str, value: str) -> None:
        self.outputs.append((key, value))

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": [[k, v] for k, v in self.outputs],
            "provenance": {"version": __version__, **self.provenance},
        }
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
