"""JSON interchange for bundles ("tpa-algebra/1") and reports ("tpa-report/1").

Scalars are always JSON strings ("3", "-1/2") so exactness survives any
JSON reader.  Output is deterministic: sorted keys, ops and maps ordered by
name, table rows ordered by input tuple.
"""
from __future__ import annotations

import json
from typing import Iterable

import jsonschema

from .axioms import CheckReport, ViolationWitness
from .core import AlgebraBundle, BasisSpace, Element, LinearMap, MultiLinearOp
from .fields import Field, field_from_descriptor
from .search import SearchReport

ALGEBRA_FORMAT = "tpa-algebra/1"
REPORT_FORMAT = "tpa-report/1"

_SCALAR = {"type": "string"}
ALGEBRA_SCHEMA = {
    "type": "object",
    "required": ["format", "field", "basis", "ops"],
    "additionalProperties": False,
    "properties": {
        "format": {"const": ALGEBRA_FORMAT},
        "field": {"oneOf": [
            {"const": "Q"},
            {"type": "object", "required": ["gf"], "additionalProperties": False,
             "properties": {"gf": {"type": "integer"}}},
        ]},
        "basis": {"type": "array", "minItems": 1, "items": {"type": "string"}},
        "ops": {"type": "array", "items": {
            "type": "object",
            "required": ["name", "arity", "symmetry", "table"],
            "additionalProperties": False,
            "properties": {
                "name": {"type": "string", "minLength": 1},
                "arity": {"type": "integer", "minimum": 1},
                "symmetry": {"enum": ["none", "symmetric", "alternating"]},
                "table": {"type": "array", "items": {
                    "type": "object", "required": ["in", "out"], "additionalProperties": False,
                    "properties": {
                        "in": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                        "out": {"type": "object",
                                "propertyNames": {"pattern": "^[0-9]+$"},
                                "additionalProperties": _SCALAR},
                    }}},
            }}},
        "maps": {"type": "array", "items": {
            "type": "object", "required": ["name", "matrix"], "additionalProperties": False,
            "properties": {
                "name": {"type": "string", "minLength": 1},
                "matrix": {"type": "array", "items": {"type": "array", "items": _SCALAR}},
            }}},
        "metadata": {"type": "object", "additionalProperties": {"type": "string"}},
    },
}


class FormatError(ValueError):
    """Malformed or inconsistent interchange file."""


def _dumps(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


# -- algebra files ------------------------------------------------------------------------

def op_to_json(op: MultiLinearOp) -> dict:
    f = op.field
    rows = []
    for key in sorted(op.table):
        rows.append({"in": list(key), "out": {str(i): f.format(c) for i, c in op.table[key].support()}})
    return {"name": op.name, "arity": op.arity, "symmetry": op.symmetry, "table": rows}


def map_to_json(m: LinearMap) -> dict:
    return {"name": m.name, "matrix": [[m.field.format(c) for c in row] for row in m.matrix]}


def bundle_to_json(bundle: AlgebraBundle) -> dict:
    return {
        "format": ALGEBRA_FORMAT,
        "field": bundle.field.descriptor(),
        "basis": list(bundle.space.labels),
        "ops": [op_to_json(bundle.ops[k]) for k in sorted(bundle.ops)],
        "maps": [map_to_json(bundle.maps[k]) for k in sorted(bundle.maps)],
        "metadata": dict(sorted(bundle.metadata.items())),
    }


def emit_algebra(bundle: AlgebraBundle) -> bytes:
    return _dumps(bundle_to_json(bundle))


def _scalar(text: str, field: Field, where: str):
    try:
        return field.parse(text)
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from None


def _op_from_json(doc: dict, d: int, field: Field, where: str) -> MultiLinearOp:
    raw = {}
    for k, row in enumerate(doc["table"]):
        here = f"{where}.table[{k}]"
        key = tuple(row["in"])
        if len(key) != doc["arity"]:
            raise FormatError(f"{here}.in: expected {doc['arity']} indices, got {len(key)}")
        if any(i >= d for i in key):
            raise FormatError(f"{here}.in: index out of range for dimension {d}")
        coeffs = [field.zero] * d
        for idx, text in row["out"].items():
            i = int(idx)
            if i >= d:
                raise FormatError(f"{here}.out: index {i} out of range for dimension {d}")
            coeffs[i] = _scalar(text, field, f"{here}.out[{idx}]")
        value = Element(coeffs, field)
        if key in raw and raw[key] != value:
            raise FormatError(f"{here}.in: duplicate key {list(key)} with a different value")
        raw[key] = value
    try:
        return MultiLinearOp(doc["name"], doc["arity"], doc["symmetry"], raw, d, field)
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from None


def algebra_from_json(doc) -> AlgebraBundle:
    try:
        jsonschema.validate(doc, ALGEBRA_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise FormatError(f"{exc.json_path}: {exc.message}") from None
    try:
        field = field_from_descriptor(doc["field"])
    except ValueError as exc:
        raise FormatError(f"$.field: {exc}") from None
    try:
        space = BasisSpace(tuple(doc["basis"]))
    except ValueError as exc:
        raise FormatError(f"$.basis: {exc}") from None
    d = space.dim
    ops, maps = {}, {}
    for k, od in enumerate(doc["ops"]):
        if od["name"] in ops:
            raise FormatError(f"$.ops[{k}].name: duplicate op name {od['name']!r}")
        ops[od["name"]] = _op_from_json(od, d, field, f"$.ops[{k}]")
    for k, md in enumerate(doc.get("maps", [])):
        where = f"$.maps[{k}]"
        if md["name"] in maps or md["name"] in ops:
            raise FormatError(f"{where}.name: duplicate name {md['name']!r}")
        rows = md["matrix"]
        if len(rows) != d or any(len(r) != d for r in rows):
            raise FormatError(f"{where}.matrix: expected a {d}x{d} matrix")
        entries = [[_scalar(t, field, f"{where}.matrix[{i}][{j}]") for j, t in enumerate(r)]
                   for i, r in enumerate(rows)]
        maps[md["name"]] = LinearMap(entries, field, md["name"])
    return AlgebraBundle(space, field, ops, maps, doc.get("metadata", {}))


def parse_algebra(data: bytes | str) -> AlgebraBundle:
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    return algebra_from_json(doc)


# -- reports ---------------------------------------------------------------------------------

def _vec(e: Element) -> list:
    return [e.field.format(c) for c in e.coeffs]


def witness_to_json(w: ViolationWitness) -> dict:
    return {"axiom": w.axiom, "indices": list(w.indices), "labels": list(w.labels),
            "equation": w.equation, "left": _vec(w.left), "right": _vec(w.right)}


def check_to_json(r: CheckReport) -> dict:
    return {"kind": "check", "axiom": r.axiom, "holds": r.holds,
            "tuples_checked": r.tuples_checked, "binding": dict(sorted(r.binding.items())),
            "witness": witness_to_json(r.witness) if r.witness is not None else None}


def _value_to_json(v):
    if isinstance(v, MultiLinearOp):
        return {"op": op_to_json(v)}
    if isinstance(v, LinearMap):
        return {"map": map_to_json(v)}
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    return str(v)


def search_to_json(r: SearchReport) -> dict:
    return {
        "kind": "search", "target": r.target, "candidates": r.candidates, "seed": r.seed,
        "verdict": r.verdict, "partial": r.partial,
        "hits": [_value_to_json(h) for h in r.hits],
        "counterexamples": [{"description": desc, "witness": witness_to_json(w)}
                            for desc, w in r.counterexamples],
        "details": {str(k): _value_to_json(v) for k, v in sorted(r.details.items())},
    }


def result_to_json(r) -> dict:
    if isinstance(r, CheckReport):
        return check_to_json(r)
    if isinstance(r, SearchReport):
        return search_to_json(r)
    if isinstance(r, dict):
        return r
    raise TypeError(f"cannot serialize {type(r).__name__}")


def emit_report(reports: Iterable, subject: str = "") -> bytes:
    return _dumps({"format": REPORT_FORMAT, "subject": subject,
                   "results": [result_to_json(r) for r in reports]})


def parse_report(data: bytes | str) -> dict:
    doc = json.loads(data)
    if not isinstance(doc, dict) or doc.get("format") != REPORT_FORMAT:
        raise FormatError(f"$.format: expected {REPORT_FORMAT!r}")
    return doc


def reverify_json_witness(bundle: AlgebraBundle, witness: dict, binding=None) -> bool:
    """Replay a serialized witness; True when both recorded sides are reproduced and differ."""
    from .axioms import evaluate_identity

    left, right = evaluate_identity(bundle, witness["axiom"], witness["indices"], binding)[
        witness["equation"]]
    return left != right and _vec(left) == witness["left"] and _vec(right) == witness["right"]
