"""Slices under and over a map, free augmented slices, terminal extensions and Hom^L."""
from __future__ import annotations

from dataclasses import dataclass

from .maps import SSetMap, compose
from .monoidal import coface, join, join_map
from .search import assignments
from .sset import (
    AugmentedSSet,
    Cell,
    SemiSimplicialSet,
    TruncationError,
    standard_simplex,
    terminal_truncated,
    underlying,
)


@dataclass(frozen=True)
class SlicePoint:
    """An n-cell of a slice: a map out of the cone restricting to ``p``."""

    n: int
    witness: SSetMap

    @property
    def key(self):
        return self.witness.key


class Slice:
    """A slice complex plus its projection to ``X`` and the witnessing maps of its cells."""

    def __init__(self, complex: SemiSimplicialSet, projection: SSetMap, points: dict):
        self.complex = complex
        self.projection = projection
        self.points = points  # (n, cell) -> SlicePoint

    def point(self, n: int, cell) -> SlicePoint:
        return self.points[(n, cell)]


def _require(X, need: int, what: str):
    if X.truncated and X.dim_bound < need:
        raise TruncationError(f"{what} needs X known up to dimension {need}, have {X.dim_bound}")


def _identity(S) -> SSetMap:
    return SSetMap(S, S, [{c: c for c in S.level(n)} for n in range(S.dim_bound + 1)], check=False)


def _slice(X, p: SSetMap, N: int, under: bool) -> Slice:
    SX, J = underlying(X), underlying(p.source)
    _require(SX, N + J.dim + 1, "slice up to N")
    tag = "L" if under else "R"
    cones, points, levels, faces = [], {}, [], {}
    for n in range(N + 1):
        D = standard_simplex(n)
        cone = join(J, D) if under else join(D, J)
        cones.append(cone)
        fixed = {}
        for k in range(J.dim_bound + 1):
            for s in J.level(k):
                fixed.setdefault(k, {})[(tag, s)] = p(k, s)
        C = cone.carrier
        # the cell id is the restriction of the witness to the cone cells outside J
        free_pos = [[i for i, c in enumerate(C.level(k)) if c[0] != tag] for k in range(C.dim_bound + 1)]
        tl = [SX.level(k) for k in range(C.dim_bound + 1)]
        cells = []
        for raw in assignments(C, SX, fixed=fixed):
            key = tuple(tuple(tl[k][row[i]] for i in free_pos[k]) for k, row in enumerate(raw))
            full = tuple(tuple(tl[k][i] for i in row) for k, row in enumerate(raw))
            cells.append(key)
            points[(n, key)] = SlicePoint(n, SSetMap.from_key(C, SX, full, check=False))
        levels.append(cells)
        if n:
            small = cones[n - 1]
            plans = []
            for i in range(n + 1):
                d = coface(n, i)
                idJ = _identity(J)
                phi = join_map(idJ, d, small, cone) if under else join_map(d, idJ, small, cone)
                plans.append(phi)
            faces[n] = {
                key: [_restricted_key(compose(points[(n, key)].witness, phi), tag) for phi in plans]
                for key in cells
            }
    truncated = SX.truncated or N < SX.dim - J.dim - 1
    S = SemiSimplicialSet(levels, faces, truncated=truncated)
    top_tag = lambda n: ("R", tuple(range(n + 1))) if under else ("L", tuple(range(n + 1)))  # noqa: E731
    proj = SSetMap(
        S,
        SX,
        [{key: points[(n, key)].witness(n, top_tag(n)) for key in levels[n]} for n in range(len(levels))],
        check=False,
    )
    return Slice(S, proj, points)


def _restricted_key(h: SSetMap, tag):
    C = underlying(h.source)
    return tuple(tuple(h(k, c) for c in C.level(k) if c[0] != tag) for k in range(C.dim_bound + 1))


def slice_under(X, p: SSetMap, N: int) -> Slice:
    """``X_{p/}`` up to ``N``: maps ``J * Delta^n -> X`` restricting to ``p``."""
    return _slice(X, p, N, under=True)


def slice_over(X, p: SSetMap, N: int) -> Slice:
    """``X_{/p}`` up to ``N``: maps ``Delta^n * J -> X`` restricting to ``p``."""
    return _slice(X, p, N, under=False)


def free_slice(X, J, N: int, under: bool = True) -> AugmentedSSet:
    """``X_{J/}``: level n is every map ``J * Delta^n -> X``; level -1 is every map ``J -> X``."""
    SX, SJ = underlying(X), underlying(J)
    _require(SX, N + SJ.dim + 1, "free slice up to N")
    tag = "L" if under else "R"
    bottom = [
        tuple(tuple(SX.level(k)[i] for i in row) for k, row in enumerate(raw)) for raw in assignments(SJ, SX)
    ]
    cones, levels, faces, aug = [], [], {}, {}
    for n in range(N + 1):
        D = standard_simplex(n)
        cone = join(SJ, D) if under else join(D, SJ)
        cones.append(cone)
        C = cone.carrier
        tl = [SX.level(k) for k in range(C.dim_bound + 1)]
        jpos = [[i for i, c in enumerate(C.level(k)) if c[0] == tag] for k in range(C.dim_bound + 1)]
        cells = []
        for raw in assignments(C, SX):
            full = tuple(tuple(tl[k][i] for i in row) for k, row in enumerate(raw))
            cells.append(full)
            if n == 0:
                aug[full] = tuple(tuple(full[k][i] for i in jpos[k]) for k in range(SJ.dim_bound + 1))
        levels.append(cells)
        if n:
            plans = []
            for i in range(n + 1):
                d = coface(n, i)
                idJ = _identity(SJ)
                phi = join_map(idJ, d, cones[n - 1], cone) if under else join_map(d, idJ, cones[n - 1], cone)
                plans.append(phi)
            faces[n] = {h: [compose(SSetMap.from_key(C, SX, h, check=False), phi).key for phi in plans] for h in cells}
    truncated = SX.truncated or N < SX.dim - SJ.dim - 1
    base = SemiSimplicialSet(levels, faces, truncated=truncated)
    return AugmentedSSet(base, bottom, aug)


# -- terminal extensions ------------------------------------------------------


@dataclass(frozen=True)
class TerminalExtension:
    """Cells ``c_0 = y, c_1, ..., c_N`` with every face of ``c_n`` equal to ``c_{n-1}``."""

    base: Cell
    cells: tuple

    @property
    def N(self) -> int:
        return len(self.cells) - 1

    def as_map(self, X) -> SSetMap:
        T = terminal_truncated(self.N)
        return SSetMap(T, X, [{"*": c} for c in self.cells])


@dataclass(frozen=True)
class Exhausted:
    """No extension exists; ``reached`` is the highest dimension any partial chain got to."""

    base: Cell
    N: int
    reached: int
    explored: int

    def __bool__(self):
        return False


def find_terminal_extension(X, y: Cell, N: int):
    """Depth-first search, in canonical order, for a map ``T -> X`` through ``y``."""
    X = underlying(X)
    _require(X, N, "terminal extension up to N")
    if not X.contains(0, y):
        raise KeyError(f"{y!r} is not a vertex")
    ix = X._ix
    chain = [X.index(0, y)]
    options = []  # options[n - 1]: untried n-cells over chain[n - 1]
    explored = reached = 0
    while True:
        n = len(chain)
        if n > N:
            return TerminalExtension(y, tuple(X.level(k)[i] for k, i in enumerate(chain)))
        if len(options) < n:
            bucket = ix.by_boundary[n] if n < len(ix.by_boundary) else {}
            options.append(list(bucket.get((chain[-1],) * (n + 1), ())))
        if options[n - 1]:
            chain.append(options[n - 1].pop(0))
            explored += 1
            reached = max(reached, n)
            continue
        options.pop()
        if n == 1:
            return Exhausted(y, N, reached, explored)
        chain.pop()


def terminal_extension_from_degeneracies(X, y: Cell, N: int) -> TerminalExtension:
    """The extension ``(y, s_0 y, s_0 s_0 y, ...)`` of a simplicial set."""
    cells = [y]
    for n in range(N):
        cells.append(X.s(n, 0, cells[-1]))
    return TerminalExtension(y, tuple(cells))


# -- left mapping objects -------------------------------------------------------


def hom_left(X, x: Cell, ext: TerminalExtension, N: int) -> SemiSimplicialSet:
    """Level n: the (n+1)-simplices with initial vertex ``x`` and ``d_0`` equal to ``ext.cells[n]``.

    ``d_k`` on level n is ``d_{k+1}`` in ``X``.
    """
    X = underlying(X)
    _require(X, N + 1, "hom_left up to N")
    if ext.N < N:
        raise TruncationError(f"extension known up to {ext.N}, need {N}")
    levels, faces = [], {}
    for n in range(N + 1):
        cells = []
        if n + 1 <= X.dim_bound:
            level = X.level(n + 1)
            over = X._ix.by_face[n + 1][0].get(X.index(n, ext.cells[n]), ())
            cells = [level[k] for k in over if X.subface(n + 1, level[k], (0,)) == x]
        levels.append(cells)
        if n:
            faces[n] = {s: [X.face(n + 1, s, k + 1) for k in range(n + 1)] for s in cells}
    return SemiSimplicialSet(levels, faces, truncated=X.truncated or N + 1 < X.dim)
