"""Spec file reading and writing.

A spec file is JSON: a manifold (dimension plus labeled holonomy
matrices), one map (its linear part and optional translation), an
optional second map for coincidence problems, and tolerances.  All
matrix entries are integers or exact "p/q" strings; floats are
rejected so that every downstream computation stays exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import as_rational
from .errors import InvalidSpecFile
from .manifolds import (AffineMapSpec, ManifoldSpec, ensure_compatible,
                        validate_spec)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class SpecOptions:
    tolerance: float = 1e-10
    n_max: int = 12
    degree_bound_override: int | None = None


@dataclass(frozen=True)
class ParsedSpec:
    """A validated spec file: manifold, map(s), options."""

    spec: ManifoldSpec
    mapping: AffineMapSpec
    mapping2: AffineMapSpec | None = None
    options: SpecOptions = SpecOptions()

    @property
    def is_coincidence(self) -> bool:
        return self.mapping2 is not None


def _entry_from_json(v) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise InvalidSpecFile(
            f"matrix entries must be integers or 'p/q' strings, got {v!r}")
    try:
        return as_rational(v)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise InvalidSpecFile(f"bad rational entry {v!r}: {e}") from None


def _entry_to_json(x: Fraction):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _matrix_from_json(rows, what: str) -> list[list[Fraction]]:
    if (not isinstance(rows, list) or not rows
            or not all(isinstance(r, list) for r in rows)):
        raise InvalidSpecFile(f"{what} must be a list of rows")
    return [[_entry_from_json(v) for v in row] for row in rows]


def _matrix_to_json(m) -> list:
    return [[_entry_to_json(x) for x in row] for row in m.rows]


def _parse_map(obj, what: str) -> AffineMapSpec:
    if not isinstance(obj, dict) or "label" not in obj or "D" not in obj:
        raise InvalidSpecFile(f"{what} needs 'label' and 'D'")
    translation = None
    if obj.get("translation") is not None:
        translation = [_entry_from_json(v) for v in obj["translation"]]
    return AffineMapSpec.make(str(obj["label"]),
                              _matrix_from_json(obj["D"], f"{what}.D"),
                              translation)


def parse_spec_data(data: dict) -> ParsedSpec:
    """Build and validate a ParsedSpec from decoded JSON."""
    if not isinstance(data, dict):
        raise InvalidSpecFile("spec file must be a JSON object")
    if data.get("schema") != SCHEMA_VERSION:
        raise InvalidSpecFile(
            f"unsupported schema {data.get('schema')!r}; expected "
            f"{SCHEMA_VERSION}")
    for field in ("name", "dimension", "holonomy", "map"):
        if field not in data:
            raise InvalidSpecFile(f"missing field {field!r}")
    if not isinstance(data["dimension"], int):
        raise InvalidSpecFile("dimension must be an integer")
    holonomy = []
    if not isinstance(data["holonomy"], list):
        raise InvalidSpecFile("holonomy must be a list")
    for item in data["holonomy"]:
        if not isinstance(item, dict) or "label" not in item or "matrix" not in item:
            raise InvalidSpecFile("each holonomy item needs 'label' and 'matrix'")
        holonomy.append((str(item["label"]),
                         _matrix_from_json(item["matrix"], "holonomy matrix")))
    spec = ManifoldSpec.make(str(data["name"]), data["dimension"], holonomy)
    validate_spec(spec)
    mapping = _parse_map(data["map"], "map")
    ensure_compatible(spec, mapping)
    mapping2 = None
    if data.get("map2") is not None:
        mapping2 = _parse_map(data["map2"], "map2")
        ensure_compatible(spec, mapping2)
    raw_opts = data.get("options") or {}
    if not isinstance(raw_opts, dict):
        raise InvalidSpecFile("options must be an object")
    defaults = SpecOptions()
    override = raw_opts.get("degree_bound_override", defaults.degree_bound_override)
    options = SpecOptions(
        tolerance=float(raw_opts.get("tolerance", defaults.tolerance)),
        n_max=int(raw_opts.get("n_max", defaults.n_max)),
        degree_bound_override=None if override is None else int(override))
    if options.n_max < 1:
        raise InvalidSpecFile("options.n_max must be >= 1")
    if options.tolerance <= 0:
        raise InvalidSpecFile("options.tolerance must be positive")
    return ParsedSpec(spec, mapping, mapping2, options)


def parse_spec_file(path) -> ParsedSpec:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidSpecFile(f"not valid JSON: {e}") from None
    return parse_spec_data(data)


def _map_to_json(m: AffineMapSpec) -> dict:
    out = {"label": m.label, "D": _matrix_to_json(m.linear)}
    if m.translation is not None:
        out["translation"] = [_entry_to_json(x) for x in m.translation]
    return out


def serialize_spec(parsed: ParsedSpec) -> dict:
    """Inverse of parse_spec_data, with options written out explicitly
    so the result is deterministic regardless of what the source file
    omitted."""
    data = {
        "schema": SCHEMA_VERSION,
        "name": parsed.spec.name,
        "dimension": parsed.spec.dimension,
        "holonomy": [{"label": l, "matrix": _matrix_to_json(m)}
                     for l, m in parsed.spec.holonomy],
        "map": _map_to_json(parsed.mapping),
    }
    if parsed.mapping2 is not None:
        data["map2"] = _map_to_json(parsed.mapping2)
    data["options"] = {
        "tolerance": parsed.options.tolerance,
        "n_max": parsed.options.n_max,
        "degree_bound_override": parsed.options.degree_bound_override,
    }
    return data


def write_spec_file(parsed: ParsedSpec, path) -> None:
    Path(path).write_text(json.dumps(serialize_spec(parsed), indent=2) + "\n")
