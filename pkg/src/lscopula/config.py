"""Run-configuration schemas for the command-line front end.

Each subcommand validates its UTF-8 JSON config against one JSON Schema.
Unknown fields are rejected and every default is written back into the
config, so a report can echo the fully-resolved run.
"""

from __future__ import annotations

import copy

from jsonschema import Draft202012Validator, validators
from jsonschema.exceptions import best_match

from .baselines import FAMILIES
from .calculus import TWO_LOG_INTERPRETATIONS
from .copulas import COPULA_FAMILIES
from .orders import OrderRelation
from .theorems import CONCLUSION_DOMAINS, TOLERANCE_PROFILES, TheoremId

COMMANDS = ("check-order", "check-theorem", "suite", "search", "simulate", "catalog")
U64_MAX = 2**64 - 1

_POS = {"type": "number", "exclusiveMinimum": 0}
_NUM_ARRAY = {"type": "array", "items": {"type": "number"}, "minItems": 1}
_POS_ARRAY = {"type": "array", "items": _POS, "minItems": 1}

BASELINE = {
    "type": "object",
    "additionalProperties": False,
    "required": ["family"],
    "properties": {
        "family": {"enum": list(FAMILIES)},
        "shape": {**_POS, "default": 1.0},
        "rate": {**_POS, "default": 1.0},
    },
}

GENERATOR = {
    "type": ["object", "null"],
    "additionalProperties": False,
    "required": ["family"],
    "properties": {
        "family": {"enum": list(COPULA_FAMILIES)},
        "theta": {"type": "number", "default": 1.0},
    },
}

SYSTEM = {
    "type": "object",
    "additionalProperties": False,
    "required": ["baseline", "scales"],
    "properties": {
        "baseline": BASELINE,
        "scales": _POS_ARRAY,
        "locations": {**_NUM_ARRAY, "description": "defaults to zeros"},
        "dependence": {**GENERATOR, "default": None},
        "structure": {"enum": ["series", "parallel"], "default": "series"},
    },
}

_COMMON = {
    "seed": {"type": "integer", "minimum": 0, "maximum": U64_MAX, "default": 0},
    "tolerance_profile": {"enum": list(TOLERANCE_PROFILES), "default": "default"},
    "grid": {
        "type": "object",
        "additionalProperties": False,
        "default": {},
        "properties": {
            "levels": {"type": ["integer", "null"], "minimum": 16, "default": None},
            "domain": {"enum": list(CONCLUSION_DOMAINS), "default": "active"},
        },
    },
    "csv": {"type": "boolean", "default": False},
}

_RELATIONS = {"type": "array", "items": {"enum": [r.value for r in OrderRelation]}, "uniqueItems": True}
_THEOREM = {"enum": [t.value for t in TheoremId]}
_INTERP = {"enum": list(TWO_LOG_INTERPRETATIONS), "default": "default"}


def _command(props: dict, required=()) -> dict:
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "additionalProperties": False,
        "required": list(required),
        "properties": {**_COMMON, **props},
    }


SCHEMAS = {
    "check-order": _command(
        {
            "x": SYSTEM,
            "y": SYSTEM,
            "relations": {**_RELATIONS, "default": [r.value for r in OrderRelation]},
            "assert": {**_RELATIONS, "description": "relations that must hold; defaults to all requested"},
        },
        ["x", "y"],
    ),
    "check-theorem": _command(
        {
            "theorem": _THEOREM,
            "F": BASELINE,
            "G": {**BASELINE, "description": "defaults to F"},
            "lam": _NUM_ARRAY,
            "sigma": _POS_ARRAY,
            "mu": {**_NUM_ARRAY, "description": "defaults to lam"},
            "xi": {**_POS_ARRAY, "description": "defaults to sigma"},
            "psi1": {**GENERATOR, "default": None},
            "psi2": {**GENERATOR, "default": None},
            "cone": {"enum": ["Dplus", "Eplus", None], "default": None},
            "sub_case": {"type": ["string", "null"], "default": None},
            "n1": {"type": ["integer", "null"], "minimum": 1, "default": None},
            "n2": {"type": ["integer", "null"], "minimum": 1, "default": None},
            "interpretation": _INTERP,
        },
        ["theorem", "F", "lam", "sigma"],
    ),
    "suite": _command(
        {
            "theorems": {"type": "array", "items": _THEOREM, "uniqueItems": True, "default": [t.value for t in TheoremId]},
            "trials": {"type": "integer", "minimum": 1, "default": 100},
            "sizes": {"type": "array", "items": {"type": "integer", "minimum": 2}, "minItems": 1, "default": [2, 3, 5]},
            "blocks": {
                "type": "array",
                "minItems": 1,
                "items": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 2, "maxItems": 2},
                "default": [[1, 1], [2, 2], [3, 1]],
            },
            "alternatives": {"type": "boolean", "default": True},
        }
    ),
    "search": _command(
        {
            "theorem": _THEOREM,
            "trials": {"type": "integer", "minimum": 0, "default": 200},
            "mutate": {"type": ["string", "null"], "default": None},
            "n": {"type": "integer", "minimum": 2, "default": 3},
            "interpretation": _INTERP,
        },
        ["theorem"],
    ),
    "simulate": _command(
        {
            "system": SYSTEM,
            "count": {"type": "integer", "minimum": 100, "default": 20000},
            "alpha": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1, "default": 0.01},
        },
        ["system"],
    ),
    "catalog": _command({}),
}


def _extend_with_default(cls):
    """Validator that fills in ``default`` values before descending into properties."""
    validate_properties = cls.VALIDATORS["properties"]

    def set_defaults(validator, properties, instance, schema):
        if isinstance(instance, dict):
            for name, sub in properties.items():
                if "default" in sub and name not in instance:
                    instance[name] = copy.deepcopy(sub["default"])
        yield from validate_properties(validator, properties, instance, schema)

    return validators.extend(cls, {"properties": set_defaults})


_Filling = _extend_with_default(Draft202012Validator)


class ConfigError(ValueError):
    """Config rejected; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _json_path(error) -> str:
    path = "$"
    for p in error.absolute_path:
        path += f"[{p}]" if isinstance(p, int) else f".{p}"
    return path


def _doc_order(doc, path) -> tuple:
    """Position of ``path`` in ``doc`` as a tuple of key/item indices (filled defaults sort last)."""
    out = []
    for p in path:
        if isinstance(doc, dict):
            keys = list(doc)
            out.append(keys.index(p) if p in keys else len(keys))
            doc = doc.get(p)
        elif isinstance(doc, list) and isinstance(p, int):
            out.append(p)
            doc = doc[p] if p < len(doc) else None
        else:
            break
    return tuple(out)


def resolve(command: str, raw: dict) -> dict:
    """Validated copy of ``raw`` with every default filled in; raises ConfigError."""
    if command not in SCHEMAS:
        raise ConfigError("$", f"unknown command {command!r}")
    if not isinstance(raw, dict):
        raise ConfigError("$", "config must be a JSON object")
    cfg = copy.deepcopy(raw)
    errors = list(_Filling(SCHEMAS[command]).iter_errors(cfg))
    if errors:
        first = min(_doc_order(raw, e.absolute_path) for e in errors)
        err = best_match(e for e in errors if _doc_order(raw, e.absolute_path)[: len(first)] == first)
        raise ConfigError(_json_path(err), err.message)
    for key in ("x", "y", "system"):
        if key in cfg:
            _resolve_system(cfg[key], f"$.{key}")
    if command == "check-order" and "assert" not in cfg:
        cfg["assert"] = list(cfg["relations"])
    if command == "check-theorem":
        cfg.setdefault("G", copy.deepcopy(cfg["F"]))
        cfg.setdefault("mu", list(cfg["lam"]))
        cfg.setdefault("xi", list(cfg["sigma"]))
        if len(cfg["sigma"]) != len(cfg["xi"]):
            raise ConfigError("$.xi", "must have the same length as sigma")
        for key, ref in (("lam", "sigma"), ("mu", "xi")):
            if len(cfg[key]) not in (1, len(cfg[ref])):
                raise ConfigError(f"$.{key}", f"must have length 1 or len({ref})")
    return cfg


def _resolve_system(system: dict, where: str):
    n = len(system["scales"])
    system.setdefault("locations", [0.0] * n)
    if len(system["locations"]) != n:
        raise ConfigError(f"{where}.locations", "must have the same length as scales")
