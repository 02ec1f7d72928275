"""JSON readers and writers for forms, broken lines, sails and scenes.

Every reader validates against the schema shipped in ``llsgeom/schemas``
before building objects; writers emit exactly what the readers accept.
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .errors import InvalidInput
from .exactnum import scalar_from_json, scalar_to_json
from .forms import BinaryQuadraticForm
from .geometry import BrokenLine, Point

__all__ = [
    "load_json",
    "validate",
    "read_form",
    "read_line",
    "read_sail",
    "read_scene",
    "form_to_json",
    "line_to_json",
    "sail_to_json",
    "dumps",
]


@lru_cache(maxsize=None)
def _schema(kind: str) -> dict:
    text = resources.files("llsgeom.schemas").joinpath(f"{kind}.schema.json").read_text()
    return json.loads(text)


def validate(obj, kind: str):
    try:
        jsonschema.validate(obj, _schema(kind))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InvalidInput(f"invalid {kind} at {where}: {exc.message}") from None
    return obj


def load_json(source: str):
    """Parse inline JSON text, or read it from a file path."""
    text = source.strip()
    if not text.startswith(("{", "[")):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InvalidInput(f"cannot read {source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed JSON: {exc}") from None


def _point(p):
    return Point(scalar_from_json(p[0]), scalar_from_json(p[1]))


def read_form(obj) -> BinaryQuadraticForm:
    validate(obj, "form")
    if "factors" in obj:
        l1, l2 = (_point(c) for c in obj["factors"])
        scale = scalar_from_json(obj.get("scale", 1))
        return BinaryQuadraticForm.from_factors(l1, l2, scale)
    return BinaryQuadraticForm(*(scalar_from_json(obj[k]) for k in "ABC"))


def read_line(obj) -> BrokenLine:
    validate(obj, "line")
    return BrokenLine(tuple(_point(p) for p in obj["vertices"]))


def read_sail(obj):
    from .sail import Angle, Sail

    validate(obj, "sail")
    r1, r2 = (_point(r) for r in obj["rays"])
    period = obj.get("period")
    cert = obj.get("certified")
    return Sail(
        Angle(r1, r2),
        tuple(_point(p) for p in obj["vertices"]),
        tuple(tuple(row) for row in period) if period else None,
        obj.get("period_length", 0),
        obj.get("period_start", 0),
        tuple(cert) if cert else None,
        tuple(obj.get("finite", (False, False))),
    )


def read_scene(obj) -> dict:
    validate(obj, "scene")
    for o in obj["objects"]:
        if o["type"] == "kernel":
            validate(o["form"], "form")
    return obj


def _point_json(p):
    return [scalar_to_json(p[0]), scalar_to_json(p[1])]


def form_to_json(f: BinaryQuadraticForm) -> dict:
    return {k: scalar_to_json(getattr(f, k)) for k in "ABC"}


def line_to_json(b) -> dict:
    return {"vertices": [_point_json(p) for p in b]}


def sail_to_json(s) -> dict:
    return {
        "rays": [_point_json(s.angle.r1), _point_json(s.angle.r2)],
        "vertices": [_point_json(p) for p in s.vertices],
        "period": [list(row) for row in s.period] if s.period else None,
        "period_length": s.period_length,
        "period_start": s.period_start,
        "certified": list(s.certified) if s.certified else None,
        "finite": list(s.finite),
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
