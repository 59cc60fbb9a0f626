"""Finite semi-simplicial sets, markings and maps between them.

A complex is stored as a list of levels, each an ordered tuple of opaque
hashable cell ids, together with face tables ``faces[n][cell] = (d_0, ..., d_n)``.
Level order is the canonical order used by every search in the package.

Complexes are either *finite* (every level above ``dim_bound`` is empty) or
*truncated* (levels above ``dim_bound`` exist but are not materialized).
Asking a truncated complex for a level it does not know raises
:class:`TruncationError` instead of silently answering "empty".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

Cell = Hashable


class TruncationError(ValueError):
    """A computation needs a level beyond the known truncation of a complex."""


class MalformedComplexError(ValueError):
    """Face tables that are not total, have the wrong arity or name unknown cells."""

    def __init__(self, message, dim=None, cell=None):
        super().__init__(message)
        self.dim = dim
        self.cell = cell


class _Index:
    """Integer-indexed view of a complex used by the search engine."""

    __slots__ = ("pos", "fidx", "by_face", "by_boundary", "cofaces")

    def __init__(self, X: "SemiSimplicialSet"):
        levels = X._levels
        self.pos = [{c: k for k, c in enumerate(level)} for level in levels]
        self.fidx = [()]
        self.by_face = [()]
        self.by_boundary = [{}]
        for n in range(1, len(levels)):
            below = self.pos[n - 1]
            table = X._faces[n]
            rows = [tuple(below[f] for f in table[c]) for c in levels[n]]
            self.fidx.append(rows)
            buckets = [dict() for _ in range(n + 1)]
            boundary = {}
            for k, row in enumerate(rows):
                for i, f in enumerate(row):
                    buckets[i].setdefault(f, []).append(k)
                boundary.setdefault(row, []).append(k)
            self.by_face.append([{f: tuple(v) for f, v in b.items()} for b in buckets])
            self.by_boundary.append({f: tuple(v) for f, v in boundary.items()})
        self.cofaces = [[[] for _ in level] for level in levels]
        for n in range(1, len(levels)):
            for k, row in enumerate(self.fidx[n]):
                for i, f in enumerate(row):
                    self.cofaces[n - 1][f].append((k, i))


class SemiSimplicialSet:
    """A finite (possibly truncated) semi-simplicial set.

    ``levels[n]`` lists the n-simplices; ``faces`` maps ``n >= 1`` to a table
    ``cell -> (d_0 cell, ..., d_n cell)``. Values are immutable after
    construction.
    """

    def __init__(
        self,
        levels: Sequence[Iterable[Cell]],
        faces: Mapping[int, Mapping[Cell, Sequence[Cell]]] | Sequence | None = None,
        *,
        truncated: bool = False,
    ):
        lv = [tuple(level) for level in levels]
        if isinstance(faces, Mapping):
            fget = lambda n: faces.get(n, {})  # noqa: E731
        elif faces is None:
            fget = lambda n: {}  # noqa: E731
        else:
            fget = lambda n: faces[n] if n < len(faces) else {}  # noqa: E731
        if not truncated:
            while lv and not lv[-1]:
                lv.pop()
        table = [dict()]
        for n in range(1, len(lv)):
            given = fget(n)
            below = set(lv[n - 1])
            t = {}
            for c in lv[n]:
                if c not in given:
                    raise MalformedComplexError(f"missing faces for {c!r} in dimension {n}", n, c)
                fs = tuple(given[c])
                if len(fs) != n + 1:
                    raise MalformedComplexError(
                        f"cell {c!r} in dimension {n} has {len(fs)} faces, expected {n + 1}", n, c
                    )
                for f in fs:
                    if f not in below:
                        raise MalformedComplexError(
                            f"face {f!r} of {c!r} is not a {n - 1}-simplex", n, c
                        )
                t[c] = fs
            table.append(t)
        for n, level in enumerate(lv):
            if len(set(level)) != len(level):
                raise MalformedComplexError(f"duplicate cell ids in dimension {n}", n)
        self._levels = tuple(lv)
        self._faces = tuple(table)
        self.truncated = bool(truncated)

    # -- basic access -------------------------------------------------------

    @property
    def dim_bound(self) -> int:
        """Highest dimension whose level is materialized (-1 for the empty complex)."""
        return len(self._levels) - 1

    @property
    def dim(self) -> int:
        """Highest populated dimension (-1 if empty)."""
        for n in range(len(self._levels) - 1, -1, -1):
            if self._levels[n]:
                return n
        return -1

    def knows(self, n: int) -> bool:
        return n <= self.dim_bound or not self.truncated

    def level(self, n: int) -> tuple:
        if n < 0:
            raise ValueError("negative dimension")
        if n < len(self._levels):
            return self._levels[n]
        if self.truncated:
            raise TruncationError(f"level {n} is beyond the truncation at {self.dim_bound}")
        return ()

    @property
    def levels(self) -> tuple:
        return self._levels

    def sizes(self) -> tuple:
        return tuple(len(level) for level in self._levels)

    def face(self, n: int, cell: Cell, i: int) -> Cell:
        return self._faces[n][cell][i]

    def faces_of(self, n: int, cell: Cell) -> tuple:
        return self._faces[n][cell] if n > 0 else ()

    def face_table(self, n: int) -> Mapping:
        return self._faces[n] if 0 < n < len(self._faces) else {}

    def contains(self, n: int, cell: Cell) -> bool:
        return n < len(self._levels) and cell in self._ix.pos[n]

    def index(self, n: int, cell: Cell) -> int:
        return self._ix.pos[n][cell]

    def cells(self):
        """Yield ``(n, cell)`` in canonical order."""
        for n, level in enumerate(self._levels):
            for c in level:
                yield n, c

    def vertices(self, n: int, cell: Cell) -> tuple:
        """The ordered vertices of an n-simplex."""
        return tuple(self.subface(n, cell, (k,)) for k in range(n + 1))

    def subface(self, n: int, cell: Cell, keep: Sequence[int]) -> Cell:
        """The face of an n-simplex spanned by the sorted vertex indices ``keep``."""
        keep = sorted(keep)
        c, m = cell, n
        for drop in range(n, -1, -1):
            if drop not in keep:
                c = self._faces[m][c][drop]
                m -= 1
        return c

    def edge(self, n: int, cell: Cell, i: int, j: int) -> Cell:
        return self.subface(n, cell, (i, j))

    @cached_property
    def _ix(self) -> _Index:
        return _Index(self)

    # -- derived complexes --------------------------------------------------

    def truncate(self, N: int) -> "SemiSimplicialSet":
        if N >= self.dim_bound:
            return self
        return SemiSimplicialSet(
            self._levels[: N + 1], self._faces[: N + 1], truncated=self.truncated or N < self.dim
        )

    def restrict(self, keep: Mapping[int, Iterable[Cell]] | Sequence) -> "SemiSimplicialSet":
        """Sub-complex on the given cells (must be closed under faces)."""
        if isinstance(keep, Mapping):
            keep = [set(keep.get(n, ())) for n in range(len(self._levels))]
        else:
            keep = [set(k) for k in keep]
        levels = [[c for c in self._levels[n] if c in keep[n]] for n in range(len(keep))]
        faces = {n: {c: self._faces[n][c] for c in levels[n]} for n in range(1, len(levels))}
        return SemiSimplicialSet(levels, faces, truncated=self.truncated)

    def relabel(self, names: Mapping[int, Mapping[Cell, Cell]]) -> "SemiSimplicialSet":
        levels = [[names[n][c] for c in level] for n, level in enumerate(self._levels)]
        faces = {
            n: {names[n][c]: [names[n - 1][f] for f in fs] for c, fs in self._faces[n].items()}
            for n in range(1, len(self._levels))
        }
        return SemiSimplicialSet(levels, faces, truncated=self.truncated)

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SemiSimplicialSet):
            return NotImplemented
        return (
            self.truncated == other.truncated
            and self._levels == other._levels
            and self._faces == other._faces
        )

    def __hash__(self):
        return hash((self._levels, self.truncated))

    def __repr__(self):
        t = f", truncated at {self.dim_bound}" if self.truncated else ""
        return f"<SemiSimplicialSet sizes={self.sizes()}{t}>"


@dataclass(frozen=True)
class MarkedSSet:
    """A semi-simplicial set with a distinguished subset of edges."""

    carrier: SemiSimplicialSet
    marked: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        marked = frozenset(self.marked)
        object.__setattr__(self, "marked", marked)
        if marked:
            edges = set(self.carrier.level(1)) if self.carrier.knows(1) else set()
            stray = marked - edges
            if stray:
                raise MalformedComplexError(f"marked cells {sorted(map(repr, stray))} are not edges", 1)

    def is_marked(self, edge: Cell) -> bool:
        return edge in self.marked

    def __repr__(self):
        return f"<MarkedSSet sizes={self.carrier.sizes()} marked={len(self.marked)}>"


def flat(X) -> MarkedSSet:
    return MarkedSSet(underlying(X), frozenset())


def sharp(X) -> MarkedSSet:
    X = underlying(X)
    return MarkedSSet(X, frozenset(X.level(1)) if X.knows(1) else frozenset())


def underlying(X) -> SemiSimplicialSet:
    return X.carrier if isinstance(X, MarkedSSet) else X


def marking_of(X):
    """The marked edge set, or ``None`` for an unmarked complex."""
    return X.marked if isinstance(X, MarkedSSet) else None


# -- validation ------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    dim: int
    i: int
    j: int
    cell: Cell

    def __str__(self):
        return f"d_{self.i} d_{self.j} != d_{self.j - 1} d_{self.i} on {self.cell!r} (dim {self.dim})"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid


def validate(X) -> ValidationReport:
    """Check every semi-simplicial identity ``d_i d_j = d_{j-1} d_i`` (i < j)."""
    X = underlying(X)
    out = []
    for n in range(2, X.dim_bound + 1):
        top, below = X._faces[n], X._faces[n - 1]
        for c in X.level(n):
            fs = top[c]
            for j in range(n + 1):
                for i in range(j):
                    if below[fs[j]][i] != below[fs[i]][j - 1]:
                        out.append(Violation(n, i, j, c))
    return ValidationReport(tuple(out))


# -- elementary constructors ----------------------------------------------


def empty() -> SemiSimplicialSet:
    return SemiSimplicialSet([])


def _simplex_faces(subsets_by_dim):
    faces = {}
    for n in range(1, len(subsets_by_dim)):
        faces[n] = {s: [s[:i] + s[i + 1:] for i in range(n + 1)] for s in subsets_by_dim[n]}
    return faces


def _subsets(n: int, keep=lambda s: True):
    levels = []
    for k in range(n + 1):
        levels.append([s for s in combinations(range(n + 1), k + 1) if keep(s)])
    return levels


def standard_simplex(n: int) -> SemiSimplicialSet:
    """The semi-simplicial n-simplex; its k-cells are the (k+1)-subsets of [n]."""
    if n < 0:
        return empty()
    levels = _subsets(n)
    return SemiSimplicialSet(levels, _simplex_faces(levels))


def boundary(n: int) -> SemiSimplicialSet:
    if n < 0:
        raise ValueError("boundary needs n >= 0")
    top = tuple(range(n + 1))
    levels = _subsets(n, lambda s: s != top)
    return SemiSimplicialSet(levels, _simplex_faces(levels))


def horn(n: int, i: int) -> SemiSimplicialSet:
    """The horn omitting the top cell and the face opposite vertex ``i``."""
    if n < 1 or not 0 <= i <= n:
        raise ValueError(f"invalid horn ({n}, {i})")
    top = tuple(range(n + 1))
    missing = top[:i] + top[i + 1:]
    levels = _subsets(n, lambda s: s != top and s != missing)
    return SemiSimplicialSet(levels, _simplex_faces(levels))


def terminal_truncated(N: int) -> SemiSimplicialSet:
    """The terminal semi-simplicial set, one cell ``'*'`` per dimension, known up to N."""
    levels = [["*"] for _ in range(N + 1)]
    faces = {n: {"*": ["*"] * (n + 1)} for n in range(1, N + 1)}
    return SemiSimplicialSet(levels, faces, truncated=True)


def marked_simplex(n: int, marked: Iterable = ()) -> MarkedSSet:
    return MarkedSSet(standard_simplex(n), frozenset(tuple(e) for e in marked))


def disjoint_union(*parts) -> SemiSimplicialSet | MarkedSSet:
    """Coproduct; cells are tagged ``(k, cell)`` by summand index."""
    carriers = [underlying(p) for p in parts]
    truncated = any(c.truncated for c in carriers)
    top = max((c.dim_bound for c in carriers), default=-1)
    if truncated:
        top = min(c.dim_bound for c in carriers if c.truncated)
    levels, faces = [], {}
    for n in range(top + 1):
        levels.append([(k, c) for k, X in enumerate(carriers) for c in X.level(n)])
        if n:
            faces[n] = {
                (k, c): [(k, f) for f in X.faces_of(n, c)] for k, X in enumerate(carriers) for c in X.level(n)
            }
    out = SemiSimplicialSet(levels, faces, truncated=truncated)
    if any(isinstance(p, MarkedSSet) for p in parts):
        marked = {(k, e) for k, p in enumerate(parts) if isinstance(p, MarkedSSet) for e in p.marked}
        return MarkedSSet(out, frozenset(marked))
    return out


def from_tables(levels: Mapping[int, Sequence], faces: Mapping[int, Mapping] = None, **kw) -> SemiSimplicialSet:
    """Build from ``{dim: [ids]}`` and ``{dim: {id: [faces]}}`` dictionaries."""
    top = max(levels, default=-1)
    return SemiSimplicialSet([levels.get(n, ()) for n in range(top + 1)], faces or {}, **kw)


def fully_marked(X: MarkedSSet) -> SemiSimplicialSet:
    """Simplices all of whose edges are marked (every vertex qualifies)."""
    C = X.carrier
    keep = [set(C.level(0))] if C.dim_bound >= 0 else []
    for n in range(1, C.dim_bound + 1):
        if n == 1:
            keep.append({e for e in C.level(1) if e in X.marked})
        else:
            keep.append({c for c in C.level(n) if all(f in keep[n - 1] for f in C.faces_of(n, c))})
    return C.restrict(keep)


class AugmentedSSet:
    """A complex with a level -1: ``bottom`` cells and ``augmentation: X_0 -> X_{-1}``.

    The positive part is an ordinary :class:`SemiSimplicialSet`. The only extra
    identity is that both endpoints of an edge have the same augmentation.
    """

    def __init__(self, base: SemiSimplicialSet, bottom: Iterable[Cell], augmentation: Mapping[Cell, Cell]):
        self.base = base
        self.bottom = tuple(bottom)
        self.augmentation = dict(augmentation)
        bset = set(self.bottom)
        if len(bset) != len(self.bottom):
            raise MalformedComplexError("duplicate cell ids in dimension -1", -1)
        for x in base.level(0) if base.dim_bound >= 0 else ():
            if self.augmentation.get(x) not in bset:
                raise MalformedComplexError(f"vertex {x!r} has no augmentation", 0, x)

    def level(self, n: int) -> tuple:
        return self.bottom if n == -1 else self.base.level(n)

    def face(self, n: int, cell: Cell, i: int) -> Cell:
        if n == 0:
            return self.augmentation[cell]
        return self.base.face(n, cell, i)

    def sizes(self) -> tuple:
        return (len(self.bottom),) + self.base.sizes()

    def violations(self) -> list:
        out = list(validate(self.base).violations)
        if self.base.dim_bound >= 1:
            for e in self.base.level(1):
                d0, d1 = self.base.faces_of(1, e)
                if self.augmentation[d0] != self.augmentation[d1]:
                    out.append(Violation(1, 0, 1, e))
        return out

    def fiber(self, p: Cell) -> SemiSimplicialSet:
        """Cells lying over ``p`` (those whose vertices augment to ``p``)."""
        keep = [{x for x in self.base.level(0) if self.augmentation[x] == p}] if self.base.dim_bound >= 0 else []
        for n in range(1, self.base.dim_bound + 1):
            keep.append({c for c in self.base.level(n) if self.base.faces_of(n, c)[0] in keep[n - 1]})
        return self.base.restrict(keep)

    def __repr__(self):
        return f"<AugmentedSSet sizes={self.sizes()}>"
