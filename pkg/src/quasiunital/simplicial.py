"""Truncated simplicial sets, nerves and the free simplicial set on a semi-simplicial one.

A :class:`SimplicialSet` is a truncated semi-simplicial set plus degeneracy
tables ``s_i : X_n -> X_{n+1}`` for every ``n + 1`` inside the truncation.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .category import FiniteCategory
from .maps import SSetMap
from .sset import Cell, SemiSimplicialSet, TruncationError, underlying


@dataclass(frozen=True)
class IdentityViolation:
    identity: str
    dim: int
    cell: Cell

    def __str__(self):
        return f"{self.identity} fails on {self.cell!r} (dim {self.dim})"


class SimplicialSet:
    """Faces from ``base``; ``degeneracies[n][i]`` maps ``X_n -> X_{n+1}``."""

    def __init__(self, base: SemiSimplicialSet, degeneracies):
        self.base = base
        top = base.dim_bound
        self._s = tuple(
            tuple(dict(degeneracies[n][i]) for i in range(n + 1)) for n in range(top)
        )

    @property
    def dim_bound(self) -> int:
        return self.base.dim_bound

    def level(self, n):
        return self.base.level(n)

    def d(self, n: int, i: int, cell: Cell) -> Cell:
        return self.base.face(n, cell, i)

    def s(self, n: int, i: int, cell: Cell) -> Cell:
        if n >= len(self._s):
            raise TruncationError(f"s_{i} on dimension {n} leaves the truncation at {self.dim_bound}")
        return self._s[n][i][cell]

    def degeneracy_table(self, n: int, i: int):
        return self._s[n][i]

    def identity_violations(self) -> list:
        """Every failure of the simplicial identities and of injectivity of the ``s_i``."""
        out = []
        X = self.base
        for n in range(len(self._s)):
            for i in range(n + 1):
                table = self._s[n][i]
                if set(table) != set(X.level(n)):
                    out.append(IdentityViolation(f"s_{i} total", n, None))
                    continue
                if len(set(table.values())) != len(table):
                    out.append(IdentityViolation(f"s_{i} injective", n, None))
                for x in X.level(n):
                    y = table[x]
                    if not X.contains(n + 1, y):
                        out.append(IdentityViolation(f"s_{i} lands in X_{n + 1}", n, x))
                        continue
                    fs = X.faces_of(n + 1, y)
                    if fs[i] != x or fs[i + 1] != x:
                        out.append(IdentityViolation(f"d_{i} s_{i} = d_{i + 1} s_{i} = id", n, x))
                    for k in range(n + 2):
                        if k < i:
                            want = self._s[n - 1][i - 1][X.face(n, x, k)]
                        elif k > i + 1:
                            want = self._s[n - 1][i][X.face(n, x, k - 1)]
                        else:
                            continue
                        if fs[k] != want:
                            out.append(IdentityViolation(f"d_{k} s_{i}", n, x))
                    if n + 1 < len(self._s):
                        for j in range(i, n + 1):
                            if self._s[n + 1][i][self._s[n][j][x]] != self._s[n + 1][j + 1][self._s[n][i][x]]:
                                out.append(IdentityViolation(f"s_{i} s_{j} = s_{j + 1} s_{i}", n, x))
        return out

    def __repr__(self):
        return f"<SimplicialSet sizes={self.base.sizes()}>"


def forget(X: SimplicialSet) -> SemiSimplicialSet:
    """Drop the degeneracies, keeping every simplex."""
    return X.base


# -- nerves ----------------------------------------------------------------


def nerve(C: FiniteCategory, N: int) -> SimplicialSet:
    """Nerve truncated at ``N``: vertices are objects, n-cells n-tuples of composable morphisms.

    For a chain ``(f_1, ..., f_n)``, ``d_0`` drops ``f_1``, ``d_n`` drops ``f_n`` and
    an inner ``d_i`` composes ``f_{i+1} . f_i``. ``d_0`` of an edge is its target.
    """
    if N < 0:
        raise ValueError("nerve needs N >= 0")
    levels = [list(C.objects)]
    if N >= 1:
        levels.append([(f,) for f in C.morphisms])
    for n in range(2, N + 1):
        levels.append([c + (g,) for c in levels[-1] for g in C.out(C.dst(c[-1]))])

    def d(n, c, i):
        if n == 1:
            return C.dst(c[0]) if i == 0 else C.src(c[0])
        if i == 0:
            return c[1:]
        if i == n:
            return c[:-1]
        return c[: i - 1] + (C.then(c[i - 1], c[i]),) + c[i + 1:]

    def vertex(n, c, k):
        if n == 0:
            return c
        return C.src(c[0]) if k == 0 else C.dst(c[k - 1])

    faces = {n: {c: [d(n, c, i) for i in range(n + 1)] for c in levels[n]} for n in range(1, N + 1)}
    base = SemiSimplicialSet(levels, faces, truncated=True)
    degen = []
    for n in range(N):
        row = []
        for i in range(n + 1):
            table = {}
            for c in levels[n]:
                idm = C.identities[vertex(n, c, i)]
                table[c] = (idm,) if n == 0 else c[:i] + (idm,) + c[i:]
            row.append(table)
        degen.append(row)
    return SimplicialSet(base, degen)


def identity_edges(C: FiniteCategory) -> set:
    return {(C.identities[x],) for x in C.objects}


def isomorphism_edges(C: FiniteCategory) -> set:
    return {(f,) for f in C.morphisms if C.is_isomorphism(f)}


# -- free simplicial sets ----------------------------------------------------


def surjections(n: int, m: int):
    """Monotone surjections ``[n] -> [m]`` as value tuples, in lexicographic order."""
    if m > n or m < 0:
        return
    for cuts in combinations(range(1, n + 1), m):
        a, v = [], 0
        for k in range(n + 1):
            if v < m and k == cuts[v]:
                v += 1
            a.append(v)
        yield tuple(a)


def drop_entry(a: tuple, i: int):
    """Remove entry ``i``; return ``(normalized surjection, missing value or None)``."""
    b = a[:i] + a[i + 1:]
    v = a[i]
    if v in b:
        return b, None
    return tuple(x - 1 if x > v else x for x in b), v


def free_simplicial(J, N: int) -> SimplicialSet:
    """The free simplicial set on ``J``, truncated at ``N``; cells are ``(surjection, simplex)``."""
    J = underlying(J)
    if J.truncated and J.dim_bound < N:
        raise TruncationError(f"free_simplicial up to {N} needs J known up to {N}, have {J.dim_bound}")
    top = J.dim if not J.truncated else N
    levels = []
    for n in range(N + 1):
        levels.append([(a, s) for m in range(min(n, top) + 1) for a in surjections(n, m) for s in J.level(m)])
    faces = {}
    for n in range(1, N + 1):
        table = {}
        for a, s in levels[n]:
            m = a[-1]
            row = []
            for i in range(n + 1):
                b, v = drop_entry(a, i)
                row.append((b, s) if v is None else (b, J.face(m, s, v)))
            table[(a, s)] = row
        faces[n] = table
    base = SemiSimplicialSet(levels, faces, truncated=True)
    degen = [
        [{(a, s): (a[: i + 1] + a[i:], s) for a, s in levels[n]} for i in range(n + 1)] for n in range(N)
    ]
    return SimplicialSet(base, degen)


def unit(J, N: int) -> SSetMap:
    """``u : J -> forget(free_simplicial(J, N))``, ``sigma -> (id, sigma)``."""
    LJ = free_simplicial(J, N)
    S = underlying(J)
    comps = [{s: (tuple(range(n + 1)), s) for s in S.level(n)} for n in range(min(S.dim_bound, N) + 1)]
    src = S.truncate(N) if S.dim_bound > N else S
    return SSetMap(src, LJ.base, comps)


def apply_surjection(X: SimplicialSet, a: tuple, y: Cell) -> Cell:
    """The degeneracy operator ``a^*`` applied to ``y in X_m`` where ``a : [n] -> [m]``."""
    for i in range(len(a) - 1):
        if a[i] == a[i + 1]:
            inner = apply_surjection(X, a[: i + 1] + a[i + 2:], y)
            return X.s(len(a) - 2, i, inner)
    return y


def counit(X: SimplicialSet, N: int | None = None) -> SSetMap:
    """``free_simplicial(forget X) -> X``, ``(a, y) -> a^* y``, as a map of underlying complexes."""
    N = X.dim_bound if N is None else N
    L = free_simplicial(X.base, N)
    comps = [{(a, y): apply_surjection(X, a, y) for a, y in L.base.level(n)} for n in range(N + 1)]
    return SSetMap(L.base, X.base.truncate(N), comps)


def extend_along_unit(f: SSetMap, X: SimplicialSet, N: int | None = None) -> SSetMap:
    """Extend ``f : J -> forget(X)`` over the unit: ``g(a, sigma) = a^* f(sigma)``.

    This is the adjunct ``L(J) -> X`` composed with the counit, so ``g . u = f``.
    """
    J = underlying(f.source)
    N = X.dim_bound if N is None else N
    L = free_simplicial(J, N)
    comps = [{(a, s): apply_surjection(X, a, f(a[-1], s)) for a, s in L.base.level(n)} for n in range(N + 1)]
    return SSetMap(L.base, X.base.truncate(N), comps)


def simplicial_map_commutes(g: SSetMap, A: SimplicialSet, B: SimplicialSet) -> bool:
    """Whether ``g`` also commutes with every degeneracy inside the truncation."""
    top = min(len(A._s), len(B._s), underlying(g.source).dim_bound)
    for n in range(top):
        for i in range(n + 1):
            for x in A.level(n):
                if g(n + 1, A.s(n, i, x)) != B.s(n, i, g(n, x)):
                    return False
    return True


def simplicial_product(A: SimplicialSet, B: SimplicialSet) -> SimplicialSet:
    """Levelwise cartesian product, truncated at the smaller bound."""
    N = min(A.dim_bound, B.dim_bound)
    levels = [[(x, y) for x in A.level(n) for y in B.level(n)] for n in range(N + 1)]
    faces = {
        n: {(x, y): list(zip(A.base.faces_of(n, x), B.base.faces_of(n, y))) for x, y in levels[n]}
        for n in range(1, N + 1)
    }
    base = SemiSimplicialSet(levels, faces, truncated=True)
    degen = [
        [{(x, y): (A.s(n, i, x), B.s(n, i, y)) for x, y in levels[n]} for i in range(n + 1)] for n in range(N)
    ]
    return SimplicialSet(base, degen)
