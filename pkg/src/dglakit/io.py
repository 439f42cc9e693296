"""JSON interchange format for dglas, group actions and morphisms.

Schema (all coefficients are strings "p" or "p/q"; ints are accepted)::

    {
      "format_version": "1.0",
      "basis": [{"name": "x", "degree": 1}, ...],
      "differential": [{"from": "z", "to": "x1", "coeff": "1"}, ...],
      "bracket": [{"left": "x", "right": "x",
                   "terms": [{"basis": "y", "coeff": "2"}]}, ...],
      "group": {"kind": "finite",
                "generators": [{"name": "s",
                                "matrices": [{"degree": 1, "rows": [["-1"]]}]}],
                "relations": [["s", "s"]]}
             | {"kind": "torus", "rank": 1,
                "weights": [{"basis": "x", "weight": [1]}]}
    }

Bracket entries are literal: every ordered pair with a nonzero bracket is
listed, so antisymmetry is checked rather than assumed.  A morphism file is
``{"format_version": "1.0", "map": [{"from": a, "to": b, "coeff": c}]}``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .dgla import Dgla, DglaMorphism, Truncation, validate_dgla
from .equivariant import GroupAction, validate_action
from .errors import ParseError, ValidationError
from .linalg import Matrix, format_rational

FORMAT_VERSION = "1.0"


def _coeff(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"{where}: coefficient must be a string or integer, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{where}: cannot parse {value!r} as a rational") from None


def _field(obj, key, where, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    v = obj[key]
    if kind is not None and not isinstance(v, kind) or isinstance(v, bool) and kind is int:
        raise ParseError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}")
    return v


def _name(index, name, where) -> int:
    if name not in index:
        raise ParseError(f"{where}: unknown basis name {name!r}")
    return index[name]


def dgla_from_dict(doc) -> tuple[Dgla, GroupAction | None]:
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    version = _field(doc, "format_version", "document", str)
    if version.split(".")[0] != FORMAT_VERSION.split(".")[0]:
        raise ParseError(f"format_version: unsupported version {version!r}")
    labels, degrees = [], []
    for k, entry in enumerate(_field(doc, "basis", "document", list)):
        where = f"basis[{k}]"
        name = _field(entry, "name", where, str)
        deg = _field(entry, "degree", where, int)
        if name in labels:
            raise ParseError(f"{where}.name: duplicate basis name {name!r}")
        labels.append(name)
        degrees.append(deg)
    index = {l: i for i, l in enumerate(labels)}
    d: dict = {}
    for k, entry in enumerate(doc.get("differential", [])):
        where = f"differential[{k}]"
        i = _name(index, _field(entry, "from", where, str), f"{where}.from")
        j = _name(index, _field(entry, "to", where, str), f"{where}.to")
        c = _coeff(_field(entry, "coeff", where), f"{where}.coeff")
        if c:
            row = d.setdefault(i, {})
            row[j] = row.get(j, 0) + c
    br: dict = {}
    for k, entry in enumerate(doc.get("bracket", [])):
        where = f"bracket[{k}]"
        i = _name(index, _field(entry, "left", where, str), f"{where}.left")
        j = _name(index, _field(entry, "right", where, str), f"{where}.right")
        row = br.setdefault((i, j), {})
        for t, term in enumerate(_field(entry, "terms", where, list)):
            tw = f"{where}.terms[{t}]"
            m = _name(index, _field(term, "basis", tw, str), f"{tw}.basis")
            c = _coeff(_field(term, "coeff", tw), f"{tw}.coeff")
            row[m] = row.get(m, 0) + c
    d = {i: {j: c for j, c in row.items() if c} for i, row in d.items()}
    br = {p: {j: c for j, c in row.items() if c} for p, row in br.items()}
    trunc = None
    if "truncation" in doc:
        t = doc["truncation"]
        lo, hi = _field(t, "exact_degrees", "truncation", list)
        trunc = Truncation(_field(t, "max_length", "truncation", int),
                           (float("-inf") if lo is None else lo, float("inf") if hi is None else hi))
    g = Dgla(tuple(labels), tuple(degrees), {i: r for i, r in d.items() if r},
             {p: r for p, r in br.items() if r}, trunc)
    act = _group_from_dict(doc["group"], g) if doc.get("group") is not None else None
    return g, act


def _group_from_dict(doc, g: Dgla) -> GroupAction:
    kind = _field(doc, "kind", "group", str)
    if kind == "torus":
        rank = _field(doc, "rank", "group", int)
        weights = {}
        for k, entry in enumerate(_field(doc, "weights", "group", list)):
            where = f"group.weights[{k}]"
            name = _field(entry, "basis", where, str)
            _name(g._index, name, f"{where}.basis")
            w = _field(entry, "weight", where, list)
            if len(w) != rank or not all(isinstance(x, int) for x in w):
                raise ParseError(f"{where}.weight: expected {rank} integers")
            weights[name] = tuple(w)
        return GroupAction.torus(rank, weights)
    if kind != "finite":
        raise ParseError(f"group.kind: unknown kind {kind!r}")
    gens, mats = [], {}
    for k, entry in enumerate(_field(doc, "generators", "group", list)):
        where = f"group.generators[{k}]"
        name = _field(entry, "name", where, str)
        if name in mats:
            raise ParseError(f"{where}.name: duplicate generator {name!r}")
        per = {}
        for m, block in enumerate(entry.get("matrices", [])):
            bw = f"{where}.matrices[{m}]"
            n = _field(block, "degree", bw, int)
            rows = _field(block, "rows", bw, list)
            dim = g.dim_in(n)
            if len(rows) != dim or any(not isinstance(r, list) or len(r) != dim for r in rows):
                raise ParseError(f"{bw}.rows: expected a {dim}x{dim} matrix for degree {n}")
            per[n] = Matrix.from_rows([[_coeff(x, f"{bw}.rows") for x in r] for r in rows], dim)
        gens.append(name)
        mats[name] = per
    rels = []
    for k, word in enumerate(doc.get("relations", [])):
        if not isinstance(word, list) or any(w not in mats for w in word):
            raise ParseError(f"group.relations[{k}]: relation must list generator names")
        rels.append(tuple(word))
    return GroupAction("finite", tuple(gens), mats, tuple(rels))


def dgla_to_dict(g: Dgla, act: GroupAction | None = None) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "basis": [{"name": l, "degree": n} for l, n in zip(g.labels, g.degrees)],
        "differential": [{"from": g.labels[i], "to": g.labels[j], "coeff": format_rational(c)}
                         for i in sorted(g.d) for j, c in sorted(g.d[i].items()) if c],
        "bracket": [{"left": g.labels[i], "right": g.labels[j],
                     "terms": [{"basis": g.labels[k], "coeff": format_rational(c)}
                               for k, c in sorted(v.items()) if c]}
                    for (i, j), v in sorted(g.bracket.items()) if any(v.values())],
    }
    if g.truncation is not None and g.truncation.exact_degrees is not None:
        lo, hi = g.truncation.exact_degrees
        doc["truncation"] = {"max_length": g.truncation.max_length,
                             "exact_degrees": [None if lo == float("-inf") else lo,
                                               None if hi == float("inf") else hi]}
    if act is not None:
        doc["group"] = group_to_dict(act, g)
    return doc


def group_to_dict(act: GroupAction, g: Dgla) -> dict:
    if act.kind == "torus":
        return {"kind": "torus", "rank": act.rank,
                "weights": [{"basis": l, "weight": list(act.weights[l])}
                            for l in g.labels if l in act.weights]}
    return {"kind": "finite",
            "generators": [{"name": s,
                            "matrices": [{"degree": n,
                                          "rows": [[format_rational(x) for x in M.row(i)] for i in range(M.rows)]}
                                         for n, M in sorted(act.matrices[s].items())]}
                           for s in act.generators],
            "relations": [list(r) for r in act.relations]}


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def serialize_dgla(g: Dgla, act: GroupAction | None = None) -> str:
    return dumps(dgla_to_dict(g, act))


def _load(path) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None


def loads_dgla(text: str, validate: bool = True):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    return _checked(doc, validate)


def parse_dgla(path, validate: bool = True) -> tuple[Dgla, GroupAction | None]:
    """Read a dgla file; runs the axiom and action checks unless told not to."""
    return _checked(_load(path), validate)


def _checked(doc, validate):
    g, act = dgla_from_dict(doc)
    if validate:
        report = validate_dgla(g)
        if report:
            raise ValidationError("; ".join(str(v) for v in report[:5]), report)
        if act is not None:
            report = validate_action(g, act)
            if report:
                raise ValidationError("group action: " + "; ".join(str(v) for v in report[:5]), report)
    return g, act


def parse_morphism(path, source: Dgla, target: Dgla) -> DglaMorphism:
    doc = _load(path)
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    images: dict = {}
    for k, entry in enumerate(_field(doc, "map", "document", list)):
        where = f"map[{k}]"
        i = _name(source._index, _field(entry, "from", where, str), f"{where}.from")
        j = _name(target._index, _field(entry, "to", where, str), f"{where}.to")
        c = _coeff(_field(entry, "coeff", where), f"{where}.coeff")
        row = images.setdefault(i, {})
        row[j] = row.get(j, 0) + c
    images = {i: {j: c for j, c in r.items() if c} for i, r in images.items()}
    return DglaMorphism(source, target, {i: r for i, r in images.items() if r})


def morphism_to_dict(f: DglaMorphism) -> dict:
    return {"format_version": FORMAT_VERSION,
            "map": [{"from": f.source.labels[i], "to": f.target.labels[j], "coeff": format_rational(c)}
                    for i in sorted(f.images) for j, c in sorted(f.images[i].items()) if c]}
