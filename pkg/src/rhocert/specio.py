"""JSON pair specifications: parsing, validation and echo."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from jsonschema import Draft202012Validator
from jsonschema.exceptions import best_match

from .errors import InvalidSpec
from .weights import SL, SO, Generic, PairSpec, SLBlocks, SOBlocks, SOinSL

_NAT = {"type": "integer", "minimum": 0}
_POS = {"type": "integer", "minimum": 1}
_RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]*[1-9][0-9]*)?$"},
    ]
}
_WEIGHT_LIST = {
    "type": "array",
    "items": {
        "type": "array",
        "prefixItems": [{"type": "array", "items": _RATIONAL}, _NAT],
        "minItems": 2,
        "maxItems": 2,
    },
}

TOP_SCHEMA = {
    "type": "object",
    "required": ["ambient", "subgroup"],
    "additionalProperties": False,
    "properties": {
        "ambient": {
            "type": "object",
            "required": ["family"],
            "properties": {"family": {"enum": ["SL", "SO"]}},
        },
        "subgroup": {
            "type": "object",
            "required": ["type"],
            "properties": {"type": {"enum": ["sl_blocks", "so_blocks", "so_in_sl", "generic"]}},
        },
        "label": {"type": "string"},
    },
}


def _closed(props: dict, required: list[str]) -> dict:
    return {"type": "object", "required": required, "additionalProperties": False, "properties": props}


AMBIENT_SCHEMAS = {
    "SL": _closed({"family": {"const": "SL"}, "n": _POS}, ["family", "n"]),
    "SO": _closed({"family": {"const": "SO"}, "p": _NAT, "q": _NAT}, ["family", "p", "q"]),
}

SUBGROUP_SCHEMAS = {
    "sl_blocks": _closed(
        {"type": {"const": "sl_blocks"}, "blocks": {"type": "array", "items": _POS}},
        ["type", "blocks"],
    ),
    "so_blocks": _closed(
        {
            "type": {"const": "so_blocks"},
            "blocks": {
                "type": "array",
                "items": {"type": "array", "items": _NAT, "minItems": 2, "maxItems": 2},
            },
        },
        ["type", "blocks"],
    ),
    "so_in_sl": _closed({"type": {"const": "so_in_sl"}, "p": _NAT, "q": _NAT}, ["type", "p", "q"]),
    "generic": _closed(
        {
            "type": {"const": "generic"},
            "dim_a": _NAT,
            "g_weights": _WEIGHT_LIST,
            "h_weights": _WEIGHT_LIST,
        },
        ["type", "dim_a", "g_weights"],
    ),
}


def _path(prefix: str, error) -> str:
    out = prefix
    for part in error.absolute_path:
        out += f"[{part}]" if isinstance(part, int) else f".{part}"
    return out


def _validate(instance: Any, schema: dict, prefix: str) -> None:
    err = best_match(Draft202012Validator(schema).iter_errors(instance))
    if err is not None:
        raise InvalidSpec(err.message, _path(prefix, err))


def spec_from_dict(doc: Any) -> PairSpec:
    """Build and validate a :class:`PairSpec` from a decoded JSON document."""
    _validate(doc, TOP_SCHEMA, "$")
    amb, sub = doc["ambient"], doc["subgroup"]
    _validate(amb, AMBIENT_SCHEMAS[amb["family"]], "$.ambient")
    _validate(sub, SUBGROUP_SCHEMAS[sub["type"]], "$.subgroup")

    ambient = SL(amb["n"]) if amb["family"] == "SL" else SO(amb["p"], amb["q"])
    kind = sub["type"]
    if kind == "sl_blocks":
        subgroup = SLBlocks(tuple(sub["blocks"]))
    elif kind == "so_blocks":
        subgroup = SOBlocks(tuple((a, b) for a, b in sub["blocks"]))
    elif kind == "so_in_sl":
        subgroup = SOinSL(sub["p"], sub["q"])
    else:
        dim = sub["dim_a"]
        lists = {}
        for key in ("g_weights", "h_weights"):
            entries = []
            for i, (vec, mult) in enumerate(sub.get(key, [])):
                if len(vec) != dim:
                    raise InvalidSpec(
                        f"weight has length {len(vec)}, expected dim_a = {dim}",
                        f"$.subgroup.{key}[{i}][0]",
                    )
                try:
                    entries.append((tuple(_exact(Fraction(x)) for x in vec), mult))
                except ZeroDivisionError:
                    raise InvalidSpec("zero denominator", f"$.subgroup.{key}[{i}][0]") from None
            lists[key] = tuple(entries)
        subgroup = Generic(dim, lists["g_weights"], lists["h_weights"])
    spec = PairSpec(ambient, subgroup, doc.get("label", ""))
    spec.validate()
    return spec


def parse_spec(document: str | bytes) -> PairSpec:
    """Parse a JSON pair specification.

    >>> parse_spec('{"ambient":{"family":"SL","n":3},"subgroup":{"type":"sl_blocks","blocks":[2,1]}}')
    PairSpec(ambient=SL(n=3), subgroup=SLBlocks(parts=(2, 1)), label='')
    """
    try:
        doc = json.loads(document)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InvalidSpec(f"malformed JSON: {exc}") from None
    return spec_from_dict(doc)


def _exact(x: Fraction) -> int | Fraction:
    return x.numerator if x.denominator == 1 else x


def rational(x) -> int | str:
    """Exact JSON form of a rational: an int, or a ``"num/den"`` string."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def spec_to_dict(spec: PairSpec) -> dict:
    a, s = spec.ambient, spec.subgroup
    amb = {"family": "SL", "n": a.n} if isinstance(a, SL) else {"family": "SO", "p": a.p, "q": a.q}
    if isinstance(s, SLBlocks):
        sub = {"type": "sl_blocks", "blocks": list(s.parts)}
    elif isinstance(s, SOBlocks):
        sub = {"type": "so_blocks", "blocks": [list(b) for b in s.blocks]}
    elif isinstance(s, SOinSL):
        sub = {"type": "so_in_sl", "p": s.p, "q": s.q}
    else:
        sub = {
            "type": "generic",
            "dim_a": s.dim_a,
            "g_weights": [[[rational(x) for x in v], m] for v, m in s.g_weights],
            "h_weights": [[[rational(x) for x in v], m] for v, m in s.h_weights],
        }
    out = {"ambient": amb, "subgroup": sub}
    if spec.label:
        out["label"] = spec.label
    return out
