"""JSON documents holding a tiling.

Layout::

    {
      "format_version": 1,
      "braid_index": 4,
      "trivial_discs": 0,
      "vertices": [{"id": "1", "axis_rank": 0, "parity": "+"}, ...],
      "boundary_points": [{"id": "p+", "component": 0, "link_rank": 4}, ...],
      "tiles": [{"id": "Tp", "kind": "aa", "sign": "+", "theta_rank": 0,
                 "vertices": ["1", "2"], "endpoints": ["p-", "p+"]}, ...]
    }

Tile vertices and endpoints are listed in counterclockwise corner order
starting at a positive vertex.  Serialization is canonical: records sorted by
id, fixed key order and indentation, so a load/dump round trip is exact.
Schema problems are reported with the path of the offending field.
"""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from braidfoliation.tiling import Tiling, TilingError, build_tiling

FORMAT_VERSION = 1

_SIGN = {"enum": ["+", "-"]}
_ID = {"type": "string", "minLength": 1}
_COUNT = {"type": "integer", "minimum": 0}
SCHEMA = {
    "type": "object",
    "required": ["braid_index", "vertices", "boundary_points", "tiles"],
    "additionalProperties": False,
    "properties": {
        "format_version": {"const": FORMAT_VERSION},
        "braid_index": _COUNT,
        "trivial_discs": _COUNT,
        "vertices": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "axis_rank", "parity"],
                "additionalProperties": False,
                "properties": {"id": _ID, "axis_rank": _COUNT, "parity": _SIGN},
            },
        },
        "boundary_points": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "component", "link_rank"],
                "additionalProperties": False,
                "properties": {"id": _ID, "component": _COUNT, "link_rank": _COUNT},
            },
        },
        "tiles": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "kind", "sign", "theta_rank", "vertices", "endpoints"],
                "additionalProperties": False,
                "properties": {
                    "id": _ID,
                    "kind": {"enum": ["aa", "ab", "bb", "bc", "cc"]},
                    "sign": _SIGN,
                    "theta_rank": _COUNT,
                    "vertices": {"type": "array", "items": _ID},
                    "endpoints": {"type": "array", "items": _ID},
                },
            },
        },
    },
}


class DocumentError(TilingError):
    """The text is not a readable tiling document."""


def to_document(t: Tiling) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "braid_index": t.braid_index,
        "trivial_discs": t.trivial_discs,
        "vertices": [{"id": v.id, "axis_rank": v.axis_rank, "parity": str(v.parity)} for v in t.vertices],
        "boundary_points": [
            {"id": p.id, "component": p.component, "link_rank": p.link_rank} for p in t.boundary_points
        ],
        "tiles": [
            {
                "id": x.id,
                "kind": x.kind,
                "sign": str(x.sign),
                "theta_rank": x.theta_rank,
                "vertices": list(x.vertices),
                "endpoints": list(x.endpoints),
            }
            for x in t.tiles
        ],
    }


def dumps(t: Tiling) -> str:
    return json.dumps(to_document(t), indent=2) + "\n"


def loads(text: str) -> Tiling:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    return from_document(raw)


def from_document(raw) -> Tiling:
    error = jsonschema.exceptions.best_match(jsonschema.Draft202012Validator(SCHEMA).iter_errors(raw))
    if error is not None:
        path = "".join(f"[{k}]" if isinstance(k, int) else f".{k}" for k in error.absolute_path)
        raise DocumentError(f"schema: ${path}: {error.message}")
    return build_tiling(raw)


def load(path: str | Path) -> Tiling:
    return loads(Path(path).read_text())


def dump(t: Tiling, path: str | Path) -> None:
    Path(path).write_text(dumps(t))
