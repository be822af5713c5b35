"""JSON file formats for matrices, matroids and maps.

Matrix::

    {"field": "Q" | {"GF": p}, "rows": [ids], "cols": [ids],
     "entries": [[row, col, value], ...]}

Values are canonical strings (``"-3/4"``, ``"5"``); zeros and duplicate
cells are rejected. Matroid::

    {"kind": "vector", "matrix": <matrix>}          # elements are the columns
    {"kind": "uniform", "rank": r, "ground": [ids]}
    {"kind": "family", "ground": [ids], "independent": [[ids], ...]}

Canonical rendering is ``json.dumps`` with default separators plus a newline,
keys in the order above, entries sorted by row then column.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from .errors import FormatError, ThinsumError
from .exactfield import FieldSpec, parse_field, parse_value, render_field, render_value
from .linalg import SparseMatrix
from .matroid import Matroid, family_matroid, matrix_matroid, uniform_matroid

MATRIX_KEYS = ["field", "rows", "cols", "entries"]


def dumps(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False) + "\n"


def loads(text: str, what: str = "input") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"{what}: line {e.lineno}, column {e.colno}: {e.msg}") from None


def _ids(obj, path: str) -> list[str]:
    if not isinstance(obj, list):
        raise FormatError(f"{path}: expected a list of ids")
    seen = set()
    for k, x in enumerate(obj):
        if not isinstance(x, str) or not x:
            raise FormatError(f"{path}[{k}]: ids must be non-empty strings")
        if x in seen:
            raise FormatError(f"{path}[{k}]: duplicate id {x!r}")
        seen.add(x)
    return obj


def matrix_from_obj(obj, field: Optional[FieldSpec] = None, path: str = "$") -> SparseMatrix:
    if not isinstance(obj, dict):
        raise FormatError(f"{path}: matrix must be a JSON object")
    if sorted(obj) != sorted(MATRIX_KEYS):
        raise FormatError(f"{path}: matrix keys must be exactly {MATRIX_KEYS}, got {list(obj)}")
    try:
        declared = parse_field(obj["field"])
    except ThinsumError as e:
        raise FormatError(f"{path}.field: {e}") from None
    field = field or declared
    rows = _ids(obj["rows"], f"{path}.rows")
    cols = _ids(obj["cols"], f"{path}.cols")
    rset, cset = set(rows), set(cols)
    if not isinstance(obj["entries"], list):
        raise FormatError(f"{path}.entries: expected a list")
    entries = {}
    for k, item in enumerate(obj["entries"]):
        where = f"{path}.entries[{k}]"
        if not (isinstance(item, list) and len(item) == 3):
            raise FormatError(f"{where}: expected [row, col, value]")
        r, c, v = item
        if r not in rset:
            raise FormatError(f"{where}: unknown row {r!r}")
        if c not in cset:
            raise FormatError(f"{where}: unknown column {c!r}")
        if (r, c) in entries:
            raise FormatError(f"{where}: duplicate entry ({r}, {c})")
        try:
            value = parse_value(field, v)
        except ThinsumError as e:
            raise FormatError(f"{where}: {e}") from None
        if value.is_zero():
            raise FormatError(f"{where}: explicit zero entries are not allowed")
        entries[r, c] = value
    return SparseMatrix(field, rows, cols, entries)


def matrix_to_obj(m: SparseMatrix) -> dict:
    entries = [
        [r, c, render_value(m.entries[r, c])] for r in m.row_ids for c in m.col_ids if (r, c) in m.entries
    ]
    return {"field": render_field(m.field), "rows": list(m.row_ids), "cols": list(m.col_ids), "entries": entries}


def parse_matrix(text: str, field: Optional[FieldSpec] = None) -> SparseMatrix:
    return matrix_from_obj(loads(text, "matrix"), field)


def render_matrix(m: SparseMatrix) -> str:
    return dumps(matrix_to_obj(m))


def parse_matroid(text: str, field: Optional[FieldSpec] = None) -> Matroid:
    obj = loads(text, "matroid")
    if not isinstance(obj, dict) or "kind" not in obj:
        raise FormatError('$: matroid must be an object with a "kind"')
    kind = obj["kind"]
    if kind == "vector":
        if sorted(obj) != ["kind", "matrix"]:
            raise FormatError('$: vector matroid needs exactly "kind" and "matrix"')
        return matrix_matroid(matrix_from_obj(obj["matrix"], field, "$.matrix"))
    if kind == "uniform":
        if sorted(obj) != ["ground", "kind", "rank"]:
            raise FormatError('$: uniform matroid needs exactly "kind", "rank" and "ground"')
        r = obj["rank"]
        if isinstance(r, bool) or not isinstance(r, int) or r < 0:
            raise FormatError("$.rank: expected a non-negative integer")
        ground = _ids(obj["ground"], "$.ground")
        if r > len(ground):
            raise FormatError(f"$.rank: {r} exceeds the ground size {len(ground)}")
        return uniform_matroid(r, ground)
    if kind == "family":
        if sorted(obj) != ["ground", "independent", "kind"]:
            raise FormatError('$: family needs exactly "kind", "ground" and "independent"')
        ground = _ids(obj["ground"], "$.ground")
        if not isinstance(obj["independent"], list):
            raise FormatError("$.independent: expected a list of id lists")
        family = []
        for k, s in enumerate(obj["independent"]):
            members = _ids(s, f"$.independent[{k}]")
            if not set(members) <= set(ground):
                raise FormatError(f"$.independent[{k}]: elements outside the ground set")
            family.append(members)
        return family_matroid(ground, family)
    raise FormatError(f"$.kind: unknown matroid kind {kind!r}")


def parse_subset(text: str, m: Matroid, what: str) -> frozenset:
    obj = loads(text, what)
    members = _ids(obj, what)
    unknown = [x for x in members if x not in m.groundset]
    if unknown:
        raise FormatError(f"{what}: not ground elements: {unknown}")
    return frozenset(members)


def parse_map(text: str) -> dict:
    """A column -> row map, either bare or wrapped as a ``solve`` result."""
    obj = loads(text, "map")
    if isinstance(obj, dict) and obj.get("result") == "injection" and "map" in obj:
        obj = obj["map"]
    if not isinstance(obj, dict) or not all(isinstance(k, str) and isinstance(v, str) for k, v in obj.items()):
        raise FormatError("map: expected an object of string ids to string ids")
    return obj


def parse_field_flag(text: str) -> FieldSpec:
    """``Q`` or ``GF:p`` as given on the command line."""
    if text == "Q":
        return FieldSpec.rationals()
    if text.startswith("GF:") and text[3:].isdigit():
        try:
            return FieldSpec.prime(int(text[3:]))
        except ThinsumError as e:
            raise FormatError(f"--field: {e}") from None
    raise FormatError(f"--field: expected Q or GF:p, got {text!r}")
