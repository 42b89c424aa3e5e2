"""JSON schemas for root systems, algebras, modules and characters.

All rationals are rendered as 'p' or 'p/q' strings; arrays are sorted so that
output is byte-stable.  A schema field keyed by SCHEMA_VERSION guards every
document; the disk cache uses it for invalidation.
"""

import json

from .character import GradedCharacter
from .chevalley import build_algebra
from .current import CurrentModule
from .rational import QQ, rat_parse, rat_str

SCHEMA_VERSION = 1


def _schema(kind):
    return "curfusion/%s/v%d" % (kind, SCHEMA_VERSION)


def _check_schema(doc, kind):
    if doc.get("schema") != _schema(kind):
        raise ValueError("expected schema %s, got %r" % (_schema(kind), doc.get("schema")))


def root_system_dict(rs):
    return {
        "schema": _schema("rootsystem"),
        "type": rs.type_label,
        "rank": rs.rank,
        "cartan_matrix": [list(row) for row in rs.cartan],
        "positive_roots": [list(r) for r in rs.positive_roots],
        "highest_root": list(rs.highest_root),
        "bilinear_form": [[rat_str(x) for x in row] for row in rs.form_matrix],
        "d_alpha": [rs.d_alpha(r) for r in rs.positive_roots],
    }


def algebra_dict(alg):
    brackets = []
    for (i, j), combo in sorted(alg.bracket_table.items()):
        if i < j:
            brackets.append([i, j, sorted([k, v] for k, v in combo.items())])
    return {
        "schema": _schema("algebra"),
        "type": alg.type_label,
        "sign_convention": "extraspecial-positive",
        "dimension": alg.dim,
        "basis": list(alg.labels),
        "brackets": brackets,
    }


def vector_entries(vec):
    return [[j, rat_str(c)] for j, c in sorted(vec.items())]


def vector_from_entries(entries):
    return {int(j): rat_parse(c) for j, c in entries}


def module_dict(mod, alg=None):
    alg = alg or mod.alg
    action = []
    for (x, s) in sorted(mod.ops):
        mat = mod.ops[(x, s)]
        entries = [[i, j, rat_str(v)] for j in sorted(mat) for i, v in sorted(mat[j].items())]
        if entries:
            action.append({"x": alg.labels[x], "s": s, "entries": entries})
    return {
        "schema": _schema("module"),
        "algebra": alg.type_label,
        "graded": mod.graded,
        "basis": [
            {"label": "b%d" % i, "grade": g, "weight": list(w)}
            for i, (g, w) in enumerate(zip(mod.grades, mod.weights))
        ],
        "action": action,
        "generator": vector_entries(mod.generator) if mod.generator else None,
    }


def module_from_dict(doc):
    _check_schema(doc, "module")
    alg = build_algebra(doc["algebra"])
    label_index = {lab: i for i, lab in enumerate(alg.labels)}
    grades = [b["grade"] for b in doc["basis"]]
    weights = [tuple(b["weight"]) for b in doc["basis"]]
    ops = {}
    for block in doc["action"]:
        x = label_index[block["x"]]
        mat = {}
        for i, j, v in block["entries"]:
            mat.setdefault(int(j), {})[int(i)] = rat_parse(v)
        ops[(x, int(block["s"]))] = mat
    gen = vector_from_entries(doc["generator"]) if doc.get("generator") else None
    return CurrentModule(alg, grades, weights, ops, generator=gen, graded=doc.get("graded", True))


def character_dict(ch, algebra=None):
    doc = {"schema": _schema("character"), "entries": ch.rows(), "total": ch.total_dimension}
    if algebra:
        doc["algebra"] = algebra
    return doc


def character_from_dict(doc):
    _check_schema(doc, "character")
    return GradedCharacter.from_rows(doc["entries"])


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=1)


def loads(text):
    return json.loads(text)
