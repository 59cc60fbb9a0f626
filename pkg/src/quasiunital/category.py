"""Finite categories given by explicit composition tables."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Mapping


class CategoryError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteCategory:
    """Objects, morphisms ``id -> (src, dst)``, identities and composition.

    ``compose[(f, g)]`` is ``g . f`` for ``dst f == src g``.
    """

    objects: tuple
    morphisms: Mapping[Hashable, tuple]
    identities: Mapping[Hashable, Hashable]
    compose: Mapping[tuple, Hashable]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "morphisms", dict(self.morphisms))
        object.__setattr__(self, "identities", dict(self.identities))
        object.__setattr__(self, "compose", dict(self.compose))
        self.check()

    def check(self):
        objs = set(self.objects)
        if len(objs) != len(self.objects):
            raise CategoryError("duplicate objects")
        for f, (s, t) in self.morphisms.items():
            if s not in objs or t not in objs:
                raise CategoryError(f"morphism {f!r} has an unknown endpoint")
        for x in self.objects:
            i = self.identities.get(x)
            if i is None or self.morphisms.get(i) != (x, x):
                raise CategoryError(f"object {x!r} lacks an identity loop")
        for f, g in self.composable_pairs():
            h = self.compose.get((f, g))
            if h is None:
                raise CategoryError(f"composite of {f!r} then {g!r} is missing")
            if self.morphisms.get(h) != (self.src(f), self.dst(g)):
                raise CategoryError(f"composite of {f!r} then {g!r} has the wrong endpoints")
        for f in self.morphisms:
            if self.compose[(self.identities[self.src(f)], f)] != f or self.compose[(f, self.identities[self.dst(f)])] != f:
                raise CategoryError(f"identities are not units at {f!r}")
        for f, g in self.composable_pairs():
            for h in self.out(self.dst(g)):
                if self.compose[(self.compose[(f, g)], h)] != self.compose[(f, self.compose[(g, h)])]:
                    raise CategoryError(f"composition is not associative at {(f, g, h)!r}")

    def src(self, f):
        return self.morphisms[f][0]

    def dst(self, f):
        return self.morphisms[f][1]

    def out(self, x):
        return [f for f, (s, _) in self.morphisms.items() if s == x]

    def hom(self, x, y) -> list:
        return [f for f, st in self.morphisms.items() if st == (x, y)]

    def composable_pairs(self):
        for f, g in product(self.morphisms, repeat=2):
            if self.dst(f) == self.src(g):
                yield f, g

    def then(self, f, g):
        """``g . f``."""
        return self.compose[(f, g)]

    def is_isomorphism(self, f) -> bool:
        s, t = self.morphisms[f]
        return any(
            self.compose[(f, g)] == self.identities[s] and self.compose[(g, f)] == self.identities[t]
            for g in self.hom(t, s)
        )


def cyclic_group(n: int) -> FiniteCategory:
    """The one-object category of Z/n; morphism ``g{k}`` is the class of k."""
    if n < 1:
        raise CategoryError("group order must be positive")
    g = [f"g{k}" for k in range(n)]
    return FiniteCategory(
        objects=("*",),
        morphisms={m: ("*", "*") for m in g},
        identities={"*": "g0"},
        compose={(g[a], g[b]): g[(a + b) % n] for a in range(n) for b in range(n)},
        name=f"Z/{n}",
    )


def chain_poset(k: int) -> FiniteCategory:
    """The linear order ``0 < 1 < ... < k-1`` with morphisms ``'i->j'`` for ``i <= j``."""
    objs = tuple(range(k))
    mor = {f"{i}->{j}": (i, j) for i in objs for j in objs if i <= j}
    comp = {(f"{i}->{j}", f"{j}->{l}"): f"{i}->{l}" for i in objs for j in objs for l in objs if i <= j <= l}
    return FiniteCategory(objs, mor, {i: f"{i}->{i}" for i in objs}, comp, name=f"[{k - 1}]")


def codiscrete_groupoid(k: int = 2) -> FiniteCategory:
    """Exactly one morphism ``'i->j'`` between every ordered pair of objects."""
    objs = tuple(range(k))
    mor = {f"{i}->{j}": (i, j) for i in objs for j in objs}
    comp = {(f"{i}->{j}", f"{j}->{l}"): f"{i}->{l}" for i in objs for j in objs for l in objs}
    return FiniteCategory(objs, mor, {i: f"{i}->{i}" for i in objs}, comp, name=f"codiscrete({k})")


def empty_category() -> FiniteCategory:
    return FiniteCategory((), {}, {}, {}, name="empty")
