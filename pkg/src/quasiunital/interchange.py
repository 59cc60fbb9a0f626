"""JSON documents for complexes, maps and finite categories.

A complex document::

    {"dim_bound": 2,
     "levels": {"0": ["a", "b"], "1": ["f"]},
     "faces": {"1": {"f": ["b", "a"]}},
     "marking": ["f"],              # optional
     "truncated": true,             # optional: levels above dim_bound are unknown
     "augmented": true,             # optional: levels/faces include dimension -1 / 0
     "degeneracies": {"0": {"0": {"a": "f"}}}}   # optional: n -> i -> s_i table

Cell ids are strings. Non-string ids are written with :func:`cell_name`.
"""
from __future__ import annotations

import json
from typing import Any

from .category import CategoryError, FiniteCategory
from .maps import MapError, SSetMap
from .simplicial import SimplicialSet
from .sset import AugmentedSSet, MalformedComplexError, MarkedSSet, SemiSimplicialSet, underlying


class DocumentError(ValueError):
    """A document that does not parse; ``where`` names the offending field or id."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


def cell_name(cell) -> str:
    if isinstance(cell, str):
        return cell
    if isinstance(cell, tuple):
        return "(" + ",".join(cell_name(c) for c in cell) + ")"
    return str(cell)


def _names(X: SemiSimplicialSet) -> list[dict]:
    """Per-level string names; positional names replace colliding ones."""
    out = []
    for n, level in enumerate(X.levels):
        names = {c: cell_name(c) for c in level}
        if len(set(names.values())) != len(names):
            names = {c: f"{n}:{k}" for k, c in enumerate(level)}
        out.append(names)
    return out


# -- emit ------------------------------------------------------------------------


def emit_complex(X, provenance: dict | None = None) -> dict:
    """Document for a (marked, augmented or simplicial) complex."""
    degen = None
    aug = None
    if isinstance(X, SimplicialSet):
        degen, X = X, X.base
    if isinstance(X, AugmentedSSet):
        aug, X = X, X.base
    C = underlying(X)
    names = _names(C)
    doc: dict[str, Any] = {"dim_bound": C.dim_bound}
    levels = {str(n): [names[n][c] for c in C.level(n)] for n in range(C.dim_bound + 1)}
    faces = {
        str(n): {names[n][c]: [names[n - 1][f] for f in C.faces_of(n, c)] for c in C.level(n)}
        for n in range(1, C.dim_bound + 1)
    }
    if aug is not None:
        bottom = {c: cell_name(c) for c in aug.bottom}
        if len(set(bottom.values())) != len(bottom):
            bottom = {c: f"-1:{k}" for k, c in enumerate(aug.bottom)}
        levels = {"-1": [bottom[c] for c in aug.bottom], **levels}
        faces = {"0": {names[0][x]: [bottom[aug.augmentation[x]]] for x in C.level(0)} if C.dim_bound >= 0 else {}, **faces}
        doc["augmented"] = True
    doc["levels"] = levels
    doc["faces"] = faces
    if C.truncated:
        doc["truncated"] = True
    if isinstance(X, MarkedSSet):
        doc["marking"] = [names[1][e] for e in C.level(1) if e in X.marked] if C.dim_bound >= 1 else []
    if degen is not None:
        doc["degeneracies"] = {
            str(n): {
                str(i): {names[n][c]: names[n + 1][degen.s(n, i, c)] for c in C.level(n)} for i in range(n + 1)
            }
            for n in range(C.dim_bound)
        }
    if provenance:
        doc["provenance"] = provenance
    return doc


def emit_map(f: SSetMap) -> dict:
    S, T = underlying(f.source), underlying(f.target)
    sn, tn = _names(S), _names(T)
    return {
        "kind": "map",
        "source": emit_complex(f.source),
        "target": emit_complex(f.target),
        "components": {
            str(n): {sn[n][c]: tn[n][f(n, c)] for c in S.level(n)} for n in range(S.dim_bound + 1)
        },
    }


def emit_category(C: FiniteCategory) -> dict:
    return {
        "kind": "category",
        "name": C.name,
        "objects": [cell_name(x) for x in C.objects],
        "morphisms": [{"id": cell_name(f), "src": cell_name(s), "dst": cell_name(t)} for f, (s, t) in C.morphisms.items()],
        "compose": [[cell_name(f), cell_name(g), cell_name(h)] for (f, g), h in C.compose.items()],
        "identities": {cell_name(x): cell_name(i) for x, i in C.identities.items()},
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)


# -- parse -----------------------------------------------------------------------


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e.msg}", f"line {e.lineno} column {e.colno}") from None
    if not isinstance(doc, dict):
        raise DocumentError("a document must be a JSON object")
    return doc


def load(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as e:
        raise DocumentError(str(e.strerror), path) from None


def _dim_key(k, where) -> int:
    try:
        return int(k)
    except (TypeError, ValueError):
        raise DocumentError(f"dimension key {k!r} is not an integer", where) from None


def _expect(doc, key, kind, where=""):
    if key not in doc:
        raise DocumentError("missing field", f"{where}{key}")
    v = doc[key]
    if not isinstance(v, kind):
        raise DocumentError(f"expected {getattr(kind, '__name__', kind)}", f"{where}{key}")
    return v


def parse_complex(doc: dict, where: str = ""):
    """Complex, :class:`MarkedSSet`, :class:`AugmentedSSet` or :class:`SimplicialSet` from a document."""
    dim_bound = _expect(doc, "dim_bound", int, where)
    raw_levels = _expect(doc, "levels", dict, where)
    raw_faces = doc.get("faces", {})
    if not isinstance(raw_faces, dict):
        raise DocumentError("expected object", f"{where}faces")
    augmented = bool(doc.get("augmented", False))
    levels = {}
    for k, ids in raw_levels.items():
        n = _dim_key(k, f"{where}levels")
        if not isinstance(ids, list) or not all(isinstance(i, str) for i in ids):
            raise DocumentError("expected a list of string ids", f"{where}levels.{k}")
        if n > dim_bound or n < (-1 if augmented else 0):
            raise DocumentError(f"dimension {n} outside 0..dim_bound", f"{where}levels.{k}")
        levels[n] = ids
    faces = {}
    for k, table in raw_faces.items():
        n = _dim_key(k, f"{where}faces")
        if not isinstance(table, dict):
            raise DocumentError("expected an object of id -> face list", f"{where}faces.{k}")
        for c, fs in table.items():
            if not isinstance(fs, list):
                raise DocumentError("expected a list of face ids", f"{where}faces.{k}.{c}")
            if c not in set(levels.get(n, ())):
                raise DocumentError(f"faces given for unknown {n}-simplex {c!r}", f"{where}faces.{k}.{c}")
        faces[n] = table
    try:
        base = SemiSimplicialSet(
            [levels.get(n, []) for n in range(dim_bound + 1)],
            {n: faces.get(n, {}) for n in range(1, dim_bound + 1)},
            truncated=bool(doc.get("truncated", False)),
        )
    except MalformedComplexError as e:
        raise DocumentError(str(e), f"{where}faces.{e.dim}.{e.cell}" if e.cell is not None else f"{where}levels") from None
    X: Any = base
    if "marking" in doc:
        marking = doc["marking"]
        if not isinstance(marking, list):
            raise DocumentError("expected a list of edge ids", f"{where}marking")
        try:
            X = MarkedSSet(base, frozenset(marking))
        except MalformedComplexError as e:
            raise DocumentError(str(e), f"{where}marking") from None
    if augmented:
        bottom = levels.get(-1, [])
        aug = {}
        for x in base.level(0) if base.dim_bound >= 0 else ():
            fs = faces.get(0, {}).get(x)
            if not fs or len(fs) != 1:
                raise DocumentError("vertex needs exactly one augmentation face", f"{where}faces.0.{x}")
            aug[x] = fs[0]
        try:
            return AugmentedSSet(base, bottom, aug)
        except MalformedComplexError as e:
            raise DocumentError(str(e), f"{where}faces.0.{e.cell}") from None
    if "degeneracies" in doc:
        raw = doc["degeneracies"]
        degen = []
        for n in range(base.dim_bound):
            row = []
            for i in range(n + 1):
                table = raw.get(str(n), {}).get(str(i))
                if not isinstance(table, dict):
                    raise DocumentError("missing degeneracy table", f"{where}degeneracies.{n}.{i}")
                row.append(table)
            degen.append(row)
        return SimplicialSet(base, degen)
    return X


def parse_map(doc: dict) -> SSetMap:
    src = parse_complex(_expect(doc, "source", dict), "source.")
    dst = parse_complex(_expect(doc, "target", dict), "target.")
    src = src.base if isinstance(src, SimplicialSet) else src
    dst = dst.base if isinstance(dst, SimplicialSet) else dst
    comps = {}
    for k, table in _expect(doc, "components", dict).items():
        comps[_dim_key(k, "components")] = table
    try:
        return SSetMap(src, dst, comps)
    except MapError as e:
        raise DocumentError(str(e), "components") from None


def parse_category(doc: dict) -> FiniteCategory:
    objects = _expect(doc, "objects", list)
    mor = {}
    for k, m in enumerate(_expect(doc, "morphisms", list)):
        if not isinstance(m, dict) or not {"id", "src", "dst"} <= set(m):
            raise DocumentError("expected {id, src, dst}", f"morphisms[{k}]")
        mor[m["id"]] = (m["src"], m["dst"])
    comp = {}
    for k, row in enumerate(_expect(doc, "compose", list)):
        if not isinstance(row, list) or len(row) != 3:
            raise DocumentError("expected [f, g, g.f]", f"compose[{k}]")
        comp[(row[0], row[1])] = row[2]
    try:
        return FiniteCategory(objects, mor, _expect(doc, "identities", dict), comp, name=doc.get("name", ""))
    except CategoryError as e:
        raise DocumentError(str(e), "category") from None


def parse(doc: dict):
    """Dispatch on the document shape."""
    kind = doc.get("kind")
    if kind == "map" or "components" in doc:
        return parse_map(doc)
    if kind == "category" or "objects" in doc:
        return parse_category(doc)
    return parse_complex(doc)
