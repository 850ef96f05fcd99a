"""Map-specification files and run reports.

A map specification is a JSON object with a ``kind`` of ``explicit``,
``monomial``, ``matinv`` or ``fab`` and a ``field`` of ``"Z"`` or
``{"prime": "<decimal>"}``.  Large integers are always decimal strings.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import jsonschema

from .fab import fab_spec
from .linalg import IntMatrix
from .matinv import MatMapSpec, build_I, build_J, build_K
from .monomial import MonomialMap, projectivize
from .oracle import ComposedMap, RationalMapSpec
from .polys import MonoSumPoly

__all__ = [
    "MAP_SCHEMA",
    "SpecError",
    "LoadedMap",
    "validate_spec",
    "load_spec",
    "dump_spec",
    "parse_matrix",
    "load_json_arg",
    "canonical_json",
    "RunReport",
]

_INT = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^[+-]?[0-9]+$"}]}
_FIELD = {
    "oneOf": [
        {"const": "Z"},
        {
            "type": "object",
            "properties": {"prime": {"type": "string", "pattern": r"^[0-9]+$"}},
            "required": ["prime"],
            "additionalProperties": False,
        },
    ]
}
_TERM = {
    "type": "object",
    "properties": {
        "exponents": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
        "coeff": _INT,
    },
    "required": ["exponents", "coeff"],
    "additionalProperties": False,
}

MAP_SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "dyndeg map specification",
    "type": "object",
    "required": ["kind"],
    "properties": {"kind": {"enum": ["explicit", "monomial", "matinv", "fab"]}, "label": {"type": "string"}},
    "allOf": [
        {
            "if": {"properties": {"kind": {"const": "explicit"}}},
            "then": {
                "properties": {
                    "k": {"type": "integer", "minimum": 1},
                    "components": {"type": "array", "minItems": 2, "items": {"type": "array", "items": _TERM}},
                    "field": _FIELD,
                },
                "required": ["components"],
            },
        },
        {
            "if": {"properties": {"kind": {"const": "monomial"}}},
            "then": {
                "properties": {
                    "matrix": {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": _INT}},
                    "field": {"const": "Z"},
                },
                "required": ["matrix"],
            },
        },
        {
            "if": {"properties": {"kind": {"const": "matinv"}}},
            "then": {
                "properties": {
                    "q": {"type": "integer", "minimum": 2},
                    "which": {"enum": ["J", "I", "K"]},
                    "mode": {"enum": ["symbolic", "oracle"]},
                    "field": {"const": "Z"},
                },
                "required": ["q", "which"],
            },
        },
        {
            "if": {"properties": {"kind": {"const": "fab"}}},
            "then": {
                "properties": {"a": _INT, "b": _INT, "field": _FIELD},
                "required": ["a", "b"],
            },
        },
    ],
}


class SpecError(ValueError):
    """Malformed or inconsistent map specification (CLI exit code 2)."""


@dataclass
class LoadedMap:
    map: RationalMapSpec | ComposedMap
    kind: str
    warnings: list[str] = field(default_factory=list)
    meta: dict = field(default_factory=dict)


def _prime_of(doc: dict) -> int | None:
    f = doc.get("field", "Z")
    if f == "Z":
        return None
    p = int(f["prime"])
    if p < 3 or p % 2 == 0 or p >= 1 << 62:
        raise SpecError(f"field prime must be an odd prime below 2^62, got {p}")
    return p


def parse_matrix(data: Any) -> IntMatrix:
    """Square integer matrix from a JSON array (ints or decimal strings)."""
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise SpecError("matrix must be a JSON array of arrays")
    if any(isinstance(v, (float, bool)) for row in data for v in row):
        raise SpecError("matrix entries must be integers or decimal strings")
    try:
        rows = [[int(v) if not isinstance(v, str) else int(v.strip()) for v in row] for row in data]
    except (TypeError, ValueError) as exc:
        raise SpecError(f"malformed matrix entry: {exc}") from None
    if not rows or any(len(r) != len(rows) for r in rows):
        raise SpecError(f"matrix must be square, got {len(rows)} rows of lengths {[len(r) for r in rows]}")
    return IntMatrix(rows)


def validate_spec(doc: dict) -> LoadedMap:
    """Schema validation followed by the mathematical checks.

    An explicit tuple sharing a monomial factor is normalized and a warning
    recorded; inhomogeneous components, unequal degrees or a variable-count
    mismatch are rejected.
    """
    try:
        jsonschema.validate(doc, MAP_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise SpecError(f"schema violation at '{path}': {exc.message}") from None
    kind = doc["kind"]
    label = doc.get("label", "")
    warnings: list[str] = []
    try:
        if kind == "explicit":
            prime = _prime_of(doc)
            comps_json = doc["components"]
            nvars = len(comps_json)
            if "k" in doc and doc["k"] + 1 != nvars:
                raise SpecError(f"k = {doc['k']} but {nvars} components given")
            comps = []
            for i, cj in enumerate(comps_json):
                for t in cj:
                    if len(t["exponents"]) != nvars:
                        raise SpecError(f"component {i}: exponent vector of length {len(t['exponents'])}, expected {nvars}")
                comps.append(MonoSumPoly.from_json(cj, nvars=nvars, prime=prime))
            bad = [i for i, c in enumerate(comps) if not c.is_homogeneous()]
            if bad:
                raise SpecError(f"components {bad} are not homogeneous")
            degs = [c.degree for c in comps if not c.is_zero()]
            if len(set(degs)) > 1:
                raise SpecError(f"components have unequal degrees {[c.degree for c in comps]}")
            spec, mono = RationalMapSpec.normalized(comps, label)
            if mono.degree:
                warnings.append(f"removed common monomial factor {mono}")
            return LoadedMap(spec, kind, warnings, {"degree": spec.degree})
        if kind == "monomial":
            A = parse_matrix(doc["matrix"])
            mm = MonomialMap(A)
            return LoadedMap(projectivize(mm), kind, warnings, {"matrix": A.to_json()})
        if kind == "matinv":
            q, which = doc["q"], doc["which"]
            mode = doc.get("mode", "symbolic" if which != "K" or q <= 4 else "oracle")
            mspec: MatMapSpec
            if which == "J":
                mspec = build_J(q)
            elif which == "I":
                mspec = build_I(q)
            else:
                mspec = build_K(q, mode=mode)
            return LoadedMap(mspec.map, kind, warnings, {"q": q, "which": which, "mode": mode})
        if kind == "fab":
            prime = _prime_of(doc)
            a, b = int(doc["a"]), int(doc["b"])
            if prime is not None:
                a, b = a % prime, b % prime
            return LoadedMap(fab_spec(a, b, prime), kind, warnings, {"a": str(a), "b": str(b)})
    except SpecError:
        raise
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecError(str(exc)) from None
    raise SpecError(f"unknown kind {kind!r}")


def load_spec(source: str | os.PathLike | dict) -> LoadedMap:
    """Accepts a dict, a path to a JSON file, or an inline JSON string."""
    if isinstance(source, dict):
        return validate_spec(source)
    return validate_spec(load_json_arg(source))


def load_json_arg(source: str | os.PathLike) -> Any:
    """Parse ``source`` as inline JSON when it starts with a bracket, else as a
    path to a JSON file (falling back to inline JSON)."""
    text = str(source)
    inline = text.lstrip()[:1] in ("{", "[")
    try:
        if not inline and Path(text).is_file():
            text = Path(text).read_text()
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"not valid JSON (and not a file): {exc}") from None
    except OSError as exc:
        raise SpecError(str(exc)) from None


def dump_spec(m: RationalMapSpec) -> str:
    """Canonical explicit-kind serialization."""
    return canonical_json(m.to_json())


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _sha256(obj: Any) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


@dataclass
class RunReport:
    """Everything needed to replay one CLI invocation.

    ``results`` is a pure function of ``command`` and ``input``; timing and
    version live outside it so that replays can be compared byte for byte.
    """

    command: list[str]
    input: Any
    provenance: dict
    results: dict
    wall_clock: float
    version: str
    warnings: list[str] = field(default_factory=list)

    @property
    def input_hash(self) -> str:
        return _sha256(self.input)

    @property
    def results_digest(self) -> str:
        return _sha256(self.results)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "input": self.input,
            "input_sha256": self.input_hash,
            "provenance": self.provenance,
            "results": self.results,
            "results_sha256": self.results_digest,
            "warnings": self.warnings,
            "wall_clock_seconds": self.wall_clock,
            "version": self.version,
        }

    def dumps(self) -> str:
        return canonical_json(self.to_json())
