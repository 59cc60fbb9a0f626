"""Maps of (marked) semi-simplicial sets, Hom-set enumeration, pushouts and pullbacks."""
from __future__ import annotations

from typing import Iterable, Mapping

from . import search
from .sset import (
    Cell,
    MalformedComplexError,
    MarkedSSet,
    SemiSimplicialSet,
    standard_simplex,
    underlying,
)


class MapError(ValueError):
    """Components that do not define a (marking-preserving) map."""


class SSetMap:
    """A levelwise function commuting with faces.

    ``components[n]`` maps source n-cells to target n-cells. Source and target
    may be :class:`MarkedSSet`, in which case marked edges must go to marked
    edges.
    """

    __slots__ = ("source", "target", "_comp", "_key")

    def __init__(self, source, target, components: Mapping[int, Mapping] | Iterable, check: bool = True):
        S = underlying(source)
        if isinstance(components, Mapping):
            comp = tuple(dict(components.get(n, {})) for n in range(S.dim_bound + 1))
        else:
            comp = tuple(dict(c) for c in components)
            comp = comp + tuple({} for _ in range(S.dim_bound + 1 - len(comp)))
        self.source = source
        self.target = target
        self._comp = comp
        self._key = None
        if check:
            self.check()

    @classmethod
    def from_key(cls, source, target, key, check=True) -> "SSetMap":
        S = underlying(source)
        comp = [dict(zip(S.level(n), row)) for n, row in enumerate(key)]
        f = cls(source, target, comp, check=check)
        f._key = tuple(tuple(row) for row in key)
        return f

    def check(self):
        S, T = underlying(self.source), underlying(self.target)
        for n in range(S.dim_bound + 1):
            table = self._comp[n]
            for c in S.level(n):
                if c not in table:
                    raise MapError(f"{c!r} (dim {n}) has no image")
                t = table[c]
                if not T.contains(n, t):
                    raise MapError(f"image {t!r} of {c!r} is not a {n}-simplex of the target")
                if n:
                    lower = self._comp[n - 1]
                    if tuple(lower[f] for f in S.faces_of(n, c)) != T.faces_of(n, t):
                        raise MapError(f"faces of {c!r} (dim {n}) do not commute")
        if isinstance(self.source, MarkedSSet) and isinstance(self.target, MarkedSSet):
            for e in self.source.marked:
                if self._comp[1][e] not in self.target.marked:
                    raise MapError(f"marked edge {e!r} goes to an unmarked edge")

    def __call__(self, n: int, cell: Cell) -> Cell:
        return self._comp[n][cell]

    def component(self, n: int) -> Mapping:
        return self._comp[n] if n < len(self._comp) else {}

    @property
    def components(self) -> tuple:
        return self._comp

    @property
    def key(self) -> tuple:
        """Images listed in the canonical order of the source; hashable."""
        if self._key is None:
            S = underlying(self.source)
            self._key = tuple(tuple(self._comp[n][c] for c in S.level(n)) for n in range(S.dim_bound + 1))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, SSetMap):
            return NotImplemented
        return self.key == other.key and underlying(self.source) == underlying(other.source) and (
            underlying(self.target) == underlying(other.target)
        )

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"<SSetMap {underlying(self.source).sizes()} -> {underlying(self.target).sizes()}>"


def identity(X) -> SSetMap:
    S = underlying(X)
    return SSetMap(X, X, [{c: c for c in S.level(n)} for n in range(S.dim_bound + 1)], check=False)


def inclusion(sub, sup) -> SSetMap:
    """The map sending each cell of ``sub`` to the cell with the same id in ``sup``."""
    S = underlying(sub)
    return SSetMap(sub, sup, [{c: c for c in S.level(n)} for n in range(S.dim_bound + 1)])


def compose(g: SSetMap, f: SSetMap) -> SSetMap:
    """``g . f`` (apply ``f`` first)."""
    S = underlying(f.source)
    comps = [{c: g(n, f(n, c)) for c in S.level(n)} for n in range(S.dim_bound + 1)]
    return SSetMap(f.source, g.target, comps, check=False)


def is_levelwise_injective(f: SSetMap) -> bool:
    S = underlying(f.source)
    for n in range(S.dim_bound + 1):
        images = [f(n, c) for c in S.level(n)]
        if len(set(images)) != len(images):
            return False
    return True


def is_isomorphism(f: SSetMap) -> bool:
    S, T = underlying(f.source), underlying(f.target)
    if S.truncated != T.truncated or S.dim_bound != T.dim_bound:
        return False
    if not is_levelwise_injective(f) or S.sizes() != T.sizes():
        return False
    if isinstance(f.source, MarkedSSet) and isinstance(f.target, MarkedSSet):
        return {f(1, e) for e in f.source.marked} == set(f.target.marked)
    return True


def to_terminal(X, N: int | None = None) -> SSetMap:
    """The unique map to the terminal complex (sharp when ``X`` is marked)."""
    from .sset import sharp, terminal_truncated

    S = underlying(X)
    T = terminal_truncated(S.dim_bound if N is None else N)
    if isinstance(X, MarkedSSet):
        T = sharp(T)
    return SSetMap(X, T, [{c: "*" for c in S.level(n)} for n in range(S.dim_bound + 1)], check=False)


def enumerate_maps(J, X, fixed=None) -> list:
    """Every map ``J -> X`` (marking-preserving when both are marked)."""
    return list(search.extensions(J, X, fixed=fixed))


def find_isomorphism(A, B) -> SSetMap | None:
    """First levelwise-bijective map ``A -> B`` in canonical order, if any."""
    SA, SB = underlying(A), underlying(B)
    if SA.truncated != SB.truncated or SA.sizes() != SB.sizes():
        return None
    for f in search.extensions(A, B, injective=True):
        if is_isomorphism(f):
            return f
    return None


def simplex_map(X, n: int, cell: Cell) -> SSetMap:
    """The Yoneda map ``Delta^n_s -> X`` classifying an n-simplex."""
    D = standard_simplex(n)
    S = underlying(X)
    comps = [{s: S.subface(n, cell, s) for s in D.level(k)} for k in range(n + 1)]
    return SSetMap(D, S, comps, check=False)


def vertex_map(X, x: Cell) -> SSetMap:
    return simplex_map(X, 0, x)


def image(f: SSetMap) -> SemiSimplicialSet:
    T = underlying(f.target)
    S = underlying(f.source)
    keep = [{f(n, c) for c in S.level(n)} for n in range(S.dim_bound + 1)]
    return T.restrict(keep + [set() for _ in range(T.dim_bound + 1 - len(keep))])


# -- colimits and limits ---------------------------------------------------


def _fresh(taken: set, cell, tag="+"):
    new = (tag, cell)
    while new in taken:
        new = (tag, new)
    return new


class Pushout:
    """Result of :func:`pushout`: the complex and the two legs into it."""

    def __init__(self, complex, from_left: SSetMap, from_right: SSetMap):
        self.complex = complex
        self.from_left = from_left    # B -> P (along the injective leg)
        self.from_right = from_right  # C -> P

    def __iter__(self):
        return iter((self.complex, self.from_left, self.from_right))


def pushout(f: SSetMap, g: SSetMap, tag="+") -> Pushout:
    """Levelwise pushout of ``B <-f- A -g-> C`` with ``f`` injective.

    Cells of ``C`` keep their ids; cells of ``B`` outside the image of ``f``
    are added as ``(tag, b)``.
    """
    if not is_levelwise_injective(f):
        raise MapError("pushout needs a levelwise injective leg")
    A, B, C = underlying(f.source), underlying(f.target), underlying(g.target)
    if underlying(g.source) != A:
        raise MapError("pushout legs must share a source")
    truncated = B.truncated or C.truncated
    top = max(B.dim_bound, C.dim_bound)
    if truncated:
        top = min(X.dim_bound for X in (B, C) if X.truncated)
    inv = [{f(n, a): a for a in A.level(n)} for n in range(A.dim_bound + 1)]
    levels, faces, b_to_p = [], {}, []
    for n in range(top + 1):
        cl = list(C.level(n)) if C.knows(n) else []
        taken = set(cl)
        bmap = {}
        for b in (B.level(n) if B.knows(n) else ()):
            if n < len(inv) and b in inv[n]:
                bmap[b] = g(n, inv[n][b])
            else:
                new = _fresh(taken, b, tag)
                taken.add(new)
                bmap[b] = new
                cl.append(new)
        b_to_p.append(bmap)
        levels.append(cl)
        if n:
            table = {c: C.faces_of(n, c) for c in C.level(n)}
            for b, p in bmap.items():
                if p not in table:
                    table[p] = [b_to_p[n - 1][x] for x in B.faces_of(n, b)]
            faces[n] = table
    P = SemiSimplicialSet(levels, faces, truncated=truncated)
    if any(isinstance(X, MarkedSSet) for X in (f.target, g.target)):
        marked = set()
        if isinstance(g.target, MarkedSSet):
            marked |= g.target.marked
        if isinstance(f.target, MarkedSSet):
            marked |= {b_to_p[1][e] for e in f.target.marked}
        P = MarkedSSet(P, frozenset(marked))
    left = SSetMap(f.target, P, b_to_p, check=False)
    right = SSetMap(g.target, P, [{c: c for c in C.level(n)} for n in range(min(C.dim_bound, top) + 1)], check=False)
    return Pushout(P, left, right)


def pullback(f: SSetMap, g: SSetMap) -> tuple:
    """Levelwise fiber product of ``X -f-> Z <-g- Y``; returns ``(P, to_X, to_Y)``."""
    X, Y = underlying(f.source), underlying(g.source)
    top = min(X.dim_bound, Y.dim_bound)
    levels, faces = [], {}
    for n in range(top + 1):
        byimg = {}
        for y in Y.level(n):
            byimg.setdefault(g(n, y), []).append(y)
        cells = [(x, y) for x in X.level(n) for y in byimg.get(f(n, x), ())]
        levels.append(cells)
        if n:
            faces[n] = {
                (x, y): list(zip(X.faces_of(n, x), Y.faces_of(n, y))) for x, y in cells
            }
    P = SemiSimplicialSet(levels, faces, truncated=X.truncated or Y.truncated)
    if isinstance(f.source, MarkedSSet) and isinstance(g.source, MarkedSSet):
        marked = {(x, y) for x, y in P.level(1) if x in f.source.marked and y in g.source.marked} if top >= 1 else set()
        P = MarkedSSet(P, frozenset(marked))
    px = SSetMap(P, f.source, [{c: c[0] for c in underlying(P).level(n)} for n in range(top + 1)], check=False)
    py = SSetMap(P, g.source, [{c: c[1] for c in underlying(P).level(n)} for n in range(top + 1)], check=False)
    return P, px, py


__all__ = [
    "MapError",
    "MalformedComplexError",
    "Pushout",
    "SSetMap",
    "compose",
    "enumerate_maps",
    "find_isomorphism",
    "identity",
    "image",
    "inclusion",
    "is_isomorphism",
    "is_levelwise_injective",
    "pullback",
    "pushout",
    "simplex_map",
    "to_terminal",
    "vertex_map",
]
