"""JSON Schemas for the documents read and written by the CLI."""

COMPLEX = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}

STATE = {
    "type": "object",
    "oneOf": [
        {"required": ["a"], "properties": {"a": {"type": "array", "items": COMPLEX, "minItems": 4, "maxItems": 4}}},
        {"required": ["n", "amps"],
         "properties": {"n": {"type": "integer", "minimum": 1}, "amps": {"type": "array", "items": COMPLEX}}},
    ],
}

POLY = {
    "type": "object",
    "required": ["terms"],
    "properties": {
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["exp", "num", "den"],
                "properties": {
                    "exp": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 4, "maxItems": 4},
                    "num": {"type": "string", "pattern": "^-?[0-9]+$"},
                    "den": {"type": "string", "pattern": "^[1-9][0-9]*$"},
                },
            },
        }
    },
}

INVARIANT_REPORT = {
    "type": "object",
    "required": ["E0", "E1", "E2", "E3", "F1", "F3", "F4", "F6", "delta", "gamma"],
    "additionalProperties": COMPLEX,
}

EVAL = {
    "type": "object",
    "required": ["kind"],
    "oneOf": [
        {"properties": {"kind": {"const": "a"}, "report": INVARIANT_REPORT}, "required": ["report"]},
        {"properties": {"kind": {"const": "full"}, "n": {"enum": [2, 3, 4]},
                        "f2": COMPLEX, "f4": COMPLEX, "bilinear_form": COMPLEX,
                        "orbit_dim": {"type": "integer"}, "generic": {"type": "boolean"}},
         "required": ["n"]},
    ],
}

OPT_RESULT = {
    "type": "object",
    "required": ["best_z", "best_value", "grad_residual", "per_restart", "exceeds_conjecture"],
    "properties": {
        "best_z": {"type": "array", "items": COMPLEX, "minItems": 4, "maxItems": 4},
        "best_value": {"type": "number", "minimum": 0},
        "grad_residual": {"type": "number", "minimum": 0},
        "conjectured_max": {"type": "number"},
        "exceeds_conjecture": {"type": "boolean"},
        "per_restart": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["restart", "value", "iterations", "residual", "converged"],
                "properties": {
                    "restart": {"type": "integer"},
                    "value": {"type": "number"},
                    "iterations": {"type": "integer"},
                    "residual": {"type": "number"},
                    "converged": {"type": "boolean"},
                },
            },
        },
    },
}

VERIFY = {
    "type": "object",
    "required": ["suite", "passed", "failed", "checks"],
    "properties": {
        "checks": {
            "type": "array",
            "items": {"type": "object", "required": ["check", "claim", "status", "residual", "suite"],
                      "properties": {"status": {"enum": ["pass", "fail"]}}},
        }
    },
}
