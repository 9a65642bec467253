"""JSON Schemas (draft 2020-12) for the reports printed by the command line.

A command given a list of instances prints a JSON list whose items follow the
single-instance schema.
"""

MOVE = {
    "type": "object",
    "properties": {"cycle": {"type": "integer", "minimum": 0}, "dir": {"enum": ["F", "B"]}},
    "required": ["cycle", "dir"],
    "additionalProperties": False,
}

FAMILY = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["1-connected", "2-connected", "generalized", "unrecognized"]},
        "a": {"type": "integer"},
        "b": {"type": "integer"},
        "relevant": {"type": "array", "items": {"type": "integer"}},
    },
    "required": ["kind"],
}

GROUP_KIND = {"enum": ["Symmetric", "Alternating", "SpecialS5", "Other"]}

INSTANCE = {
    "type": "object",
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "cycles": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2}},
        "colors": {"type": "integer", "minimum": 1},
        "start": {"type": "array", "items": {"type": "integer"}},
        "target": {"type": "array", "items": {"type": "integer"}},
        "budget": {"type": ["integer", "null"], "minimum": 0},
        "roles": {"type": "object"},
    },
    "required": ["n", "cycles", "start", "target"],
}

CLASSIFY = {
    "type": "object",
    "properties": {
        "n": {"type": "integer"},
        "family": FAMILY,
        "group": GROUP_KIND,
        "order": {"type": "integer", "minimum": 1},
        "components": {"type": "integer", "minimum": 1},
        "source": {"enum": ["theorem", "engine"]},
    },
    "required": ["n", "family", "group", "order", "components", "source"],
    "additionalProperties": False,
}

SOLVE = {
    "type": "object",
    "oneOf": [
        {
            "properties": {
                "reachable": {"const": True},
                "length": {"type": "integer", "minimum": 0},
                "moves": {"type": "array", "items": MOVE},
                "provenance": {"type": "array", "items": {"type": "string"}},
                "family": FAMILY,
                "group": GROUP_KIND,
                "verified": {"type": "boolean"},
            },
            "required": ["reachable", "length", "moves", "provenance"],
        },
        {
            "properties": {"reachable": {"enum": [False, None]}, "reason": {"type": "string"}},
            "required": ["reachable", "reason"],
        },
    ],
}

DISTANCE = {
    "type": "object",
    "properties": {
        "distance": {"type": ["integer", "null"], "minimum": 0},
        "reachable": {"type": "boolean"},
        "explored": {"type": "integer", "minimum": 0},
        "witness": {"type": ["array", "null"], "items": MOVE},
        "budget": {"type": "integer", "minimum": 0},
        "decision": {"enum": ["yes", "no", "unknown"]},
        "reason": {"type": "string"},
    },
    "required": ["explored"],
    "anyOf": [{"required": ["distance"]}, {"required": ["decision"]}],
}

EXTRACT = {
    "type": "object",
    "oneOf": [
        {
            "properties": {
                "valid": {"const": True},
                "matching": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                "triplets": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
            },
            "required": ["valid", "matching", "triplets"],
        },
        {
            "properties": {"valid": {"const": False}, "reason": {"type": "string"}},
            "required": ["valid", "reason"],
        },
    ],
}

GEN = {"type": "array", "items": INSTANCE}

REPORTS = {
    "classify": CLASSIFY,
    "solve": SOLVE,
    "distance": DISTANCE,
    "reduce3dm": INSTANCE,
    "extract": EXTRACT,
    "gen": GEN,
}
