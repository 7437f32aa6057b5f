"""JSON schemas for the CLI payloads."""
from __future__ import annotations

_INT = {"type": "integer"}
_STR = {"type": "string"}
_BOOL = {"type": "boolean"}

_PRESENTATION = {
    "type": "object",
    "required": ["rank", "relators", "ramification_words"],
    "properties": {
        "rank": _INT,
        "names": {"type": ["array", "null"], "items": _STR},
        "relators": {"type": "array", "items": _STR},
        "ramification_words": {
            "type": "array",
            "items": {"type": "object", "required": ["label", "word"],
                      "properties": {"label": _STR, "word": _STR}},
        },
    },
}

_ABELIAN = {
    "type": "object",
    "required": ["free_rank", "torsion"],
    "properties": {"free_rank": _INT, "torsion": {"type": "array", "items": _INT}},
}

PAYLOADS = {
    "present": {
        "type": "object",
        "required": ["presentation", "text"],
        "properties": {"presentation": _PRESENTATION, "text": _STR},
    },
    "abelianize": {
        "type": "object",
        "required": ["abelianization"],
        "properties": {"abelianization": _ABELIAN},
    },
    "fill": {
        "type": "object",
        "required": ["filled", "presentation", "simplified", "abelianization"],
        "properties": {"filled": {"type": "array", "items": _STR}, "presentation": _PRESENTATION,
                       "simplified": _PRESENTATION, "abelianization": _ABELIAN},
    },
    "kernel-basis": {
        "type": "object",
        "required": ["basis", "rank", "check", "index", "kind"],
        "properties": {
            "basis": {"type": "array", "items": {"type": "object", "required": ["label", "word"],
                                                 "properties": {"label": _STR, "word": _STR}}},
            "rank": _INT, "check": _INT, "index": _INT, "kind": _STR,
            "rewrite": {"type": "object"},
        },
    },
    "rewrite": {
        "type": "object",
        "required": ["word", "factors", "verified"],
        "properties": {
            "word": _STR,
            "factors": {"type": "array", "items": {"type": "object", "required": ["label", "exp"],
                                                   "properties": {"label": _STR, "exp": _INT}}},
            "verified": _BOOL,
        },
    },
    "quotient": {
        "type": "object",
        "required": ["order", "kernel_order", "cayley_table"],
        "properties": {"order": _INT, "kernel_order": _INT, "quotient_spec": {"type": ["string", "null"]},
                       "cayley_table": {"type": "array", "items": {"type": "array", "items": _INT}}},
    },
    "covers": {
        "type": "object",
        "required": ["genus", "punctures", "group", "class", "hom_count", "epi_count", "aut_count",
                     "cover_count"],
        "properties": {"genus": _INT, "punctures": _INT, "group": _STR, "class": _STR,
                       "hom_count": _INT, "epi_count": _INT, "aut_count": _INT, "cover_count": _INT,
                       "epimorphisms": {"type": "array", "items": {"type": "array", "items": _INT}}},
    },
    "verify": {
        "type": "object",
        "required": ["suite", "cases", "passed", "failed"],
        "properties": {
            "suite": _STR, "passed": _INT, "failed": _INT,
            "cases": {"type": "array", "items": {"type": "object", "required": ["case", "pass"],
                                                 "properties": {"case": _STR, "pass": _BOOL}}},
        },
    },
}

RESULT = {
    "type": "object",
    "required": ["command", "parameters", "payload", "elapsed_ms", "version"],
    "properties": {"command": _STR, "parameters": {"type": "object"}, "payload": {"type": "object"},
                   "elapsed_ms": {"type": "number"}, "version": _STR},
}
