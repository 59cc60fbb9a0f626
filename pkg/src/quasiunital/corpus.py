"""The deterministic test corpus: nerves of small categories and simplicial shapes."""
from __future__ import annotations

import os
from dataclasses import dataclass, field

from .category import FiniteCategory, chain_poset, codiscrete_groupoid, cyclic_group
from .simplicial import SimplicialSet, nerve
from .sset import SemiSimplicialSet, boundary, disjoint_union, horn, standard_simplex, terminal_truncated

DEFAULT_DIM = 4


def default_dim() -> int:
    """Default truncation, overridable through ``QUASIUNITAL_DIM``."""
    raw = os.environ.get("QUASIUNITAL_DIM")
    if raw is None:
        return DEFAULT_DIM
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"QUASIUNITAL_DIM must be an integer, got {raw!r}") from None


@dataclass
class CorpusEntry:
    name: str
    kind: str
    complex: SemiSimplicialSet
    simplicial: SimplicialSet | None = None
    category: FiniteCategory | None = None


@dataclass
class CorpusSpec:
    """``generators`` is a list of ``{"kind": ..., **params}``; ``N`` the truncation of nerves."""

    generators: list = field(default_factory=list)
    N: int = DEFAULT_DIM

    @classmethod
    def default(cls, N: int | None = None) -> "CorpusSpec":
        gens = [{"kind": "group", "order": 2}, {"kind": "group", "order": 3}]
        gens += [{"kind": "poset", "length": k} for k in range(4)]
        gens += [{"kind": "groupoid", "objects": 2}]
        gens += [{"kind": "simplex", "n": n} for n in range(4)]
        gens += [{"kind": "boundary", "n": n} for n in range(4)]
        gens += [{"kind": "horn", "n": n, "i": i} for n in range(1, 4) for i in range(n + 1)]
        gens += [{"kind": "custom", "name": "edge-and-bare-loop"}]
        return cls(gens, default_dim() if N is None else N)

    @classmethod
    def from_json(cls, doc: dict) -> "CorpusSpec":
        gens = doc.get("generators", [])
        if not isinstance(gens, list) or not all(isinstance(g, dict) and "kind" in g for g in gens):
            raise ValueError("generators must be a list of objects with a 'kind'")
        return cls(gens, int(doc.get("N", default_dim())))

    def to_json(self) -> dict:
        return {"generators": self.generators, "N": self.N}


def bare_loop() -> SemiSimplicialSet:
    """One vertex with one loop and nothing above."""
    return SemiSimplicialSet([["x"], ["e"]], {1: {"e": ["x", "x"]}})


CUSTOM = {
    "bare-loop": bare_loop,
    "edge-and-bare-loop": lambda: disjoint_union(standard_simplex(1), bare_loop()),
}


def _from_category(C: FiniteCategory, name: str, kind: str, N: int) -> CorpusEntry:
    S = nerve(C, N)
    return CorpusEntry(name, kind, S.base, S, C)


def build_entry(gen: dict, N: int) -> CorpusEntry:
    kind = gen["kind"]
    if kind == "group":
        k = int(gen["order"])
        return _from_category(cyclic_group(k), f"nerve-Z{k}", kind, N)
    if kind == "poset":
        k = int(gen["length"])
        return _from_category(chain_poset(k + 1), f"nerve-chain{k}", kind, N)
    if kind == "groupoid":
        k = int(gen.get("objects", 2))
        return _from_category(codiscrete_groupoid(k), f"nerve-groupoid{k}", kind, N)
    if kind == "custom-category":
        from .interchange import parse_category

        C = parse_category(gen["category"])
        return _from_category(C, gen.get("name", C.name or "category"), kind, N)
    if kind == "simplex":
        n = int(gen["n"])
        return CorpusEntry(f"simplex{n}", kind, standard_simplex(n))
    if kind == "boundary":
        n = int(gen["n"])
        return CorpusEntry(f"boundary{n}", kind, boundary(n))
    if kind == "horn":
        n, i = int(gen["n"]), int(gen["i"])
        return CorpusEntry(f"horn{n}-{i}", kind, horn(n, i))
    if kind == "terminal":
        return CorpusEntry(f"terminal{N}", kind, terminal_truncated(N))
    if kind == "custom":
        name = gen["name"]
        if name not in CUSTOM:
            raise ValueError(f"unknown custom complex {name!r}; known: {', '.join(CUSTOM)}")
        return CorpusEntry(name, kind, CUSTOM[name]())
    raise ValueError(f"unknown corpus kind {kind!r}")


def build_corpus(spec: CorpusSpec | None = None) -> list:
    spec = spec or CorpusSpec.default()
    return [build_entry(g, spec.N) for g in spec.generators]


def write_corpus(spec: CorpusSpec, directory: str) -> list:
    """One document per entry (plus one per category); returns the written paths."""
    from .interchange import dumps, emit_category, emit_complex

    os.makedirs(directory, exist_ok=True)
    paths = []
    for e in build_corpus(spec):
        doc = emit_complex(e.simplicial if e.simplicial is not None else e.complex, {"corpus": e.name, "kind": e.kind})
        path = os.path.join(directory, f"{e.name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps(doc) + "\n")
        paths.append(path)
        if e.category is not None:
            cpath = os.path.join(directory, f"{e.name}.category.json")
            with open(cpath, "w", encoding="utf-8") as fh:
                fh.write(dumps(emit_category(e.category)) + "\n")
            paths.append(cpath)
    return paths
