"""JSON/CSV file formats for measures, sequences and reports.

Measure files::

    {"type": "discrete", "atoms": [{"re": 0.5, "im": 0.0, "weight": 0.5}, ...]}
    {"type": "grid", "nr": 256, "ntheta": 256, "total": 1.0}

Sequence files::

    {"points": [{"re": 0.5, "im": 0.0}, ...]}

Unknown fields are rejected. Errors carry the line of the offending item.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Iterable

import jsonschema
import numpy as np

from .disk import BOUNDARY_GUARD
from .measures import DiscreteMeasure, Measure, build_sigma_grid
from .sequences import PointSequence

_NUMBER = {"type": "number"}

DISCRETE_SCHEMA = {
    "type": "object",
    "properties": {
        "type": {"const": "discrete"},
        "atoms": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "re": _NUMBER,
                    "im": _NUMBER,
                    "weight": {"type": "number", "exclusiveMinimum": 0},
                },
                "required": ["re", "im", "weight"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["type", "atoms"],
    "additionalProperties": False,
}

GRID_SCHEMA = {
    "type": "object",
    "properties": {
        "type": {"const": "grid"},
        "nr": {"type": "integer", "minimum": 8},
        "ntheta": {"type": "integer", "minimum": 8},
        "total": {"type": "number", "exclusiveMinimum": 0},
    },
    "required": ["type", "nr", "ntheta", "total"],
    "additionalProperties": False,
}

SEQUENCE_SCHEMA = {
    "type": "object",
    "properties": {
        "points": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"re": _NUMBER, "im": _NUMBER},
                "required": ["re", "im"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["points"],
    "additionalProperties": False,
}


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = source or "<input>"
        if line is not None:
            where = f"{where}:{line}"
        super().__init__(f"{where}: {message}")


def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i] in " \t\r\n":
        i += 1
    return i


def _locate(text: str, path: Iterable) -> int:
    """Character offset of the value at ``path`` (best effort)."""
    dec = json.JSONDecoder()
    i = _skip_ws(text, 0)
    for key in path:
        if i >= len(text):
            break
        if text[i] == "{":
            i = _skip_ws(text, i + 1)
            while i < len(text) and text[i] != "}":
                k, i = dec.raw_decode(text, i)
                i = _skip_ws(text, _skip_ws(text, i) + 1)
                if k == key:
                    break
                _, i = dec.raw_decode(text, i)
                i = _skip_ws(text, i)
                if i < len(text) and text[i] == ",":
                    i = _skip_ws(text, i + 1)
            else:
                return i
        elif text[i] == "[":
            i = _skip_ws(text, i + 1)
            for _ in range(int(key)):
                _, i = dec.raw_decode(text, i)
                i = _skip_ws(text, i)
                if i < len(text) and text[i] == ",":
                    i = _skip_ws(text, i + 1)
        else:
            break
    return i


def _line_of(text: str, path) -> int:
    return text.count("\n", 0, _locate(text, list(path))) + 1


def _parse(text: str, source: str | None) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno, source) from None


def _validate(data: Any, schema: dict, text: str, source: str | None) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(map(str, e.absolute_path)))
    if not errors:
        return
    err = errors[0]
    path = list(err.absolute_path)
    if err.validator == "additionalProperties" and isinstance(err.instance, dict):
        extra = sorted(set(err.instance) - set(err.schema.get("properties", {})))
        if extra:
            path = path + [extra[0]]
    raise FormatError(err.message, _line_of(text, path), source)


def _check_point(z: complex, text: str, path: list, source: str | None) -> None:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)) or 1.0 - abs(z) < BOUNDARY_GUARD:
        raise FormatError(f"point {z} is not strictly inside the unit disk",
                          _line_of(text, path), source)


def measure_from_text(text: str, source: str | None = None) -> Measure:
    data = _parse(text, source)
    kind = data.get("type") if isinstance(data, dict) else None
    if kind == "grid":
        _validate(data, GRID_SCHEMA, text, source)
        return build_sigma_grid(data["nr"], data["ntheta"], data["total"])
    if kind != "discrete":
        raise FormatError("measure 'type' must be 'discrete' or 'grid'",
                          _line_of(text, ["type"]), source)
    _validate(data, DISCRETE_SCHEMA, text, source)
    points, weights = [], []
    for n, atom in enumerate(data["atoms"]):
        z = complex(atom["re"], atom["im"])
        _check_point(z, text, ["atoms", n], source)
        points.append(z)
        weights.append(atom["weight"])
    return DiscreteMeasure(np.array(points, dtype=complex), np.array(weights, dtype=float))


def sequence_from_text(text: str, source: str | None = None) -> PointSequence:
    data = _parse(text, source)
    _validate(data, SEQUENCE_SCHEMA, text, source)
    seen: dict[complex, int] = {}
    points = []
    for n, item in enumerate(data["points"]):
        z = complex(item["re"], item["im"])
        _check_point(z, text, ["points", n], source)
        if z in seen:
            raise FormatError(f"duplicate point {z} (first at index {seen[z]})",
                              _line_of(text, ["points", n]), source)
        seen[z] = n
        points.append(z)
    return PointSequence(np.array(points, dtype=complex))


def load_measure(path) -> Measure:
    path = Path(path)
    return measure_from_text(path.read_text(), str(path))


def load_sequence(path) -> PointSequence:
    path = Path(path)
    return sequence_from_text(path.read_text(), str(path))


def measure_to_data(mu: Measure) -> dict:
    if isinstance(mu, DiscreteMeasure):
        return {
            "type": "discrete",
            "atoms": [{"re": z.real, "im": z.imag, "weight": a} for z, a in mu.atoms],
        }
    nr, nt = mu.shape
    ref = build_sigma_grid(nr, nt, mu.mass)
    same = (
        np.array_equal(ref.r_edges, mu.r_edges)
        and np.array_equal(ref.theta_edges, mu.theta_edges)
        and np.allclose(ref.weights, mu.weights, rtol=1e-12, atol=0)
    )
    if not same:
        raise ValueError("only uniform area grids can be written to a measure file")
    return {"type": "grid", "nr": nr, "ntheta": nt, "total": mu.mass}


def sequence_to_data(seq: PointSequence) -> dict:
    return {"points": [{"re": z.real, "im": z.imag} for z in seq]}


def _clean(obj: Any, exact: bool = False) -> Any:
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x if exact else float(f"{x:.12g}")
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _clean(obj.real, exact), "im": _clean(obj.imag, exact)}
    if isinstance(obj, dict):
        return {str(k): _clean(v, exact) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v, exact) for v in obj]
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    return obj


def dumps(obj: Any, exact: bool = False) -> str:
    """Deterministic JSON: insertion-ordered keys, floats to 12 significant digits.

    ``exact=True`` keeps full round-trip precision (used for data files, where
    rounding could merge nearby points).
    """
    return json.dumps(_clean(obj, exact), indent=2, allow_nan=False) + "\n"


def series_csv(series) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "margin"])
    for n, v in series:
        writer.writerow([int(n), f"{float(v):.12g}"])
    return buf.getvalue()


def witness_csv(curve) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["re", "im", "value"])
    for w, v in curve:
        writer.writerow([f"{w.real:.12g}", f"{w.imag:.12g}", f"{float(v):.12g}"])
    return buf.getvalue()
