"""Joins, geometric products and exponentials, with their marked variants.

Join cells are tagged ``('L', sigma)``, ``('R', tau)`` or ``('P', sigma, tau)``;
product cells are :class:`ProductSimplex`; an n-cell of an exponential
``X^J`` is the key of a map ``Delta^n (x) J -> X``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from .maps import SSetMap
from .search import assignments
from .simplicial import drop_entry
from .sset import (
    AugmentedSSet,
    Cell,
    MarkedSSet,
    SemiSimplicialSet,
    TruncationError,
    standard_simplex,
    underlying,
)


def _known_top(parts, finite_top: int) -> tuple[int, bool]:
    """Top materialized dimension of a construction and whether it is truncated."""
    bounds = [p.dim_bound for p in parts if p.truncated]
    if bounds:
        return min(bounds), True
    return finite_top, False


# -- join ------------------------------------------------------------------


class JoinResult:
    """The join complex together with its provenance tags."""

    def __init__(self, complex, left, right):
        self.complex = complex
        self.left = left
        self.right = right

    @property
    def carrier(self) -> SemiSimplicialSet:
        return underlying(self.complex)

    @staticmethod
    def provenance(cell) -> tuple:
        """``('L', sigma)``, ``('R', tau)`` or ``('P', sigma, tau)``."""
        return cell

    def left_inclusion(self) -> SSetMap:
        J = underlying(self.left)
        return SSetMap(self.left, self.complex, [{s: ("L", s) for s in J.level(n)} for n in range(self._top(J) + 1)])

    def right_inclusion(self) -> SSetMap:
        K = underlying(self.right)
        return SSetMap(self.right, self.complex, [{s: ("R", s) for s in K.level(n)} for n in range(self._top(K) + 1)])

    def _top(self, part):
        return min(part.dim_bound, self.carrier.dim_bound)


def _join_levels(J: SemiSimplicialSet, K: SemiSimplicialSet):
    top, truncated = _known_top((J, K), J.dim + K.dim + 1)
    levels, faces = [], {}
    for n in range(top + 1):
        cells = [("L", s) for s in J.level(n)] + [("R", t) for t in K.level(n)]
        for i in range(n):
            j = n - 1 - i
            if i > J.dim_bound and J.truncated or j > K.dim_bound and K.truncated:
                continue
            cells += [("P", s, t) for s in J.level(i) for t in K.level(j)]
        levels.append(cells)
        if n:
            table = {}
            for c in cells:
                if c[0] == "L":
                    table[c] = [("L", f) for f in J.faces_of(n, c[1])]
                elif c[0] == "R":
                    table[c] = [("R", f) for f in K.faces_of(n, c[1])]
                else:
                    table[c] = [_pair_face(J, K, c[1], c[2], n, k) for k in range(n + 1)]
            faces[n] = table
    return SemiSimplicialSet(levels, faces, truncated=truncated)


def _pair_face(J, K, s, t, n, k):
    i = _dim_of(J, s)
    j = n - 1 - i
    if k <= i:
        return ("R", t) if i == 0 else ("P", J.face(i, s, k), t)
    return ("L", s) if j == 0 else ("P", s, K.face(j, t, k - i - 1))


def _dim_of(X: SemiSimplicialSet, cell) -> int:
    ix = X._ix.pos
    for n in range(len(ix)):
        if cell in ix[n]:
            return n
    raise KeyError(cell)


def join(J, K) -> JoinResult:
    """``J * K``; marked when either input is marked (marking = images of the two markings)."""
    C = _join_levels(underlying(J), underlying(K))
    if isinstance(J, MarkedSSet) or isinstance(K, MarkedSSet):
        marked = {("L", e) for e in getattr(J, "marked", ())} | {("R", e) for e in getattr(K, "marked", ())}
        C = MarkedSSet(C, frozenset(marked))
    return JoinResult(C, J, K)


def join_map(f: SSetMap, g: SSetMap, left: JoinResult | None = None, right: JoinResult | None = None) -> SSetMap:
    """``f * g : J * K -> J' * K'``."""
    src = left or join(f.source, g.source)
    dst = right or join(f.target, g.target)
    S = src.carrier
    J = underlying(f.source)
    comps = []
    for n in range(S.dim_bound + 1):
        table = {}
        for c in S.level(n):
            if c[0] == "L":
                table[c] = ("L", f(n, c[1]))
            elif c[0] == "R":
                table[c] = ("R", g(n, c[1]))
            else:
                i = _dim_of(J, c[1])
                table[c] = ("P", f(i, c[1]), g(n - 1 - i, c[2]))
        comps.append(table)
    return SSetMap(src.complex, dst.complex, comps, check=False)


def augment(X: SemiSimplicialSet, point="*") -> AugmentedSSet:
    """Augment over a single point."""
    X = underlying(X)
    return AugmentedSSet(X, (point,), {x: point for x in X.level(0)} if X.dim_bound >= 0 else {})


def augmented_join(J: AugmentedSSet, K: AugmentedSSet) -> AugmentedSSet:
    """Join of augmented complexes; cells are ``(i, sigma, tau)`` with ``sigma in J_i``."""
    A, B = J.base, K.base
    top, truncated = _known_top((A, B), A.dim + B.dim + 1)

    def lvl(X: AugmentedSSet, n):
        if n == -1:
            return X.bottom
        if X.base.truncated and n > X.base.dim_bound:
            return None
        return X.base.level(n)

    def fc(X: AugmentedSSet, n, c, k):
        return X.augmentation[c] if n == 0 else X.base.face(n, c, k)

    levels, faces = [], {}
    bottom = [(-1, p, q) for p in J.bottom for q in K.bottom]
    for n in range(top + 1):
        cells = []
        for i in range(-1, n + 1):
            j = n - 1 - i
            ls, rs = lvl(J, i), lvl(K, j)
            if ls is None or rs is None:
                continue
            cells += [(i, s, t) for s in ls for t in rs]
        levels.append(cells)
        if n:
            table = {}
            for i, s, t in cells:
                j = n - 1 - i
                row = []
                for k in range(n + 1):
                    if k <= i:
                        row.append((i - 1, fc(J, i, s, k), t))
                    else:
                        row.append((i, s, fc(K, j, t, k - i - 1)))
                table[(i, s, t)] = row
            faces[n] = table
    base = SemiSimplicialSet(levels, faces, truncated=truncated)
    aug = {}
    for i, s, t in base.level(0) if base.dim_bound >= 0 else ():
        aug[(i, s, t)] = (-1, J.augmentation[s], t) if i == 0 else (-1, s, K.augmentation[t])
    return AugmentedSSet(base, bottom, aug)


# -- geometric product ------------------------------------------------------


class ProductSimplex(NamedTuple):
    """A nondegenerate simplex of a product: shuffle ``(a, b)`` over ``(sigma, tau)``."""

    a: tuple
    b: tuple
    sigma: Cell
    tau: Cell

    @property
    def p(self) -> int:
        return self.a[-1]

    @property
    def q(self) -> int:
        return self.b[-1]


@lru_cache(maxsize=None)
def shuffles(p: int, q: int) -> tuple:
    """Jointly injective pairs of monotone surjections onto ``[p]`` and ``[q]``."""
    out = []

    def walk(x, y, a, b):
        if (x, y) == (p, q):
            out.append((tuple(a), tuple(b)))
            return
        for dx, dy in ((1, 0), (0, 1), (1, 1)):
            nx, ny = x + dx, y + dy
            if nx <= p and ny <= q:
                walk(nx, ny, a + [nx], b + [ny])

    walk(0, 0, [0], [0])
    return tuple(sorted(out, key=lambda ab: (len(ab[0]), ab)))


def _product_face(X, Y, c: ProductSimplex, k: int) -> ProductSimplex:
    a, va = drop_entry(c.a, k)
    b, vb = drop_entry(c.b, k)
    s = c.sigma if va is None else X.face(c.a[-1], c.sigma, va)
    t = c.tau if vb is None else Y.face(c.b[-1], c.tau, vb)
    return ProductSimplex(a, b, s, t)


def geometric_product(X, Y):
    """``X (x) Y``; marked when either factor is marked.

    An edge is marked iff each nonconstant projection is a marked edge.
    """
    A, B = underlying(X), underlying(Y)
    top, truncated = _known_top((A, B), A.dim + B.dim if A.dim >= 0 and B.dim >= 0 else -1)
    levels = [[] for _ in range(top + 1)]
    for p in range(A.dim_bound + 1):
        for q in range(B.dim_bound + 1):
            for a, b in shuffles(p, q):
                n = len(a) - 1
                if n > top:
                    continue
                levels[n] += [ProductSimplex(a, b, s, t) for s in A.level(p) for t in B.level(q)]
    for n in range(top + 1):
        levels[n] = _stable_by_factor(levels[n], A, B)
    faces = {
        n: {c: [_product_face(A, B, c, k) for k in range(n + 1)] for c in levels[n]} for n in range(1, top + 1)
    }
    P = SemiSimplicialSet(levels, faces, truncated=truncated)
    if isinstance(X, MarkedSSet) or isinstance(Y, MarkedSSet):
        mx, my = getattr(X, "marked", frozenset()), getattr(Y, "marked", frozenset())
        marked = set()
        for c in P.level(1) if top >= 1 else ():
            if (c.p == 0 or c.sigma in mx) and (c.q == 0 or c.tau in my):
                marked.add(c)
        P = MarkedSSet(P, frozenset(marked))
    return P


def _stable_by_factor(cells, A, B):
    ia, ib = A._ix.pos, B._ix.pos
    return sorted(cells, key=lambda c: (c.p, c.q, c.a, c.b, ia[c.p][c.sigma], ib[c.q][c.tau]))


def product_map(f: SSetMap, g: SSetMap, source=None, target=None) -> SSetMap:
    """``f (x) g``; optional prebuilt source/target products."""
    P = source if source is not None else geometric_product(f.source, g.source)
    Q = target if target is not None else geometric_product(f.target, g.target)
    S = underlying(P)
    comps = [
        {c: ProductSimplex(c.a, c.b, f(c.p, c.sigma), g(c.q, c.tau)) for c in S.level(n)}
        for n in range(S.dim_bound + 1)
    ]
    return SSetMap(P, Q, comps, check=False)


# -- exponentials -------------------------------------------------------------


def coface(n: int, i: int) -> SSetMap:
    """``delta_i : Delta^{n-1} -> Delta^n`` skipping vertex ``i``."""
    src, dst = standard_simplex(n - 1), standard_simplex(n)
    lift = lambda s: tuple(x if x < i else x + 1 for x in s)  # noqa: E731
    return SSetMap(src, dst, [{s: lift(s) for s in src.level(k)} for k in range(n)], check=False)


def _identity_map(X) -> SSetMap:
    S = underlying(X)
    return SSetMap(X, X, [{c: c for c in S.level(n)} for n in range(S.dim_bound + 1)], check=False)


def _simplex(n, marked_flat: bool):
    D = standard_simplex(n)
    return MarkedSSet(D, frozenset()) if marked_flat else D


def _sharp_edge():
    D = standard_simplex(1)
    return MarkedSSet(D, frozenset(D.level(1)))


class Exponential:
    """``X^J`` up to ``N`` with the data needed to turn cells back into maps."""

    def __init__(self, X, J, N: int):
        self.X, self.J, self.N = X, J, N
        marked = isinstance(X, MarkedSSet) or isinstance(J, MarkedSSet)
        if marked and not (isinstance(X, MarkedSSet) and isinstance(J, MarkedSSet)):
            raise TypeError("the marked exponential needs both X and J marked")
        self.marked = marked
        SX, SJ = underlying(X), underlying(J)
        if SJ.truncated:
            raise TruncationError("the exponent must be a finite complex")
        need = N + max(SJ.dim, 0)
        if SX.truncated and SX.dim_bound < need:
            raise TruncationError(f"X^J up to {N} needs X known up to {need}, have {SX.dim_bound}")
        self.products = [geometric_product(_simplex(n, marked), J) for n in range(N + 1)]
        levels, faces = [], {}
        for n in range(N + 1):
            P = self.products[n]
            tl = [SX.level(k) if k <= SX.dim_bound else () for k in range(underlying(P).dim_bound + 1)]
            levels.append([
                tuple(tuple(tl[k][i] for i in row) for k, row in enumerate(raw)) for raw in assignments(P, X)
            ])
            if n:
                plans = [self._face_plan(n, i) for i in range(n + 1)]
                faces[n] = {h: [self._restrict(h, plan) for plan in plans] for h in levels[n]}
        empty_exponent = SJ.dim < 0
        truncated = SX.truncated or empty_exponent or N < SX.dim
        C = SemiSimplicialSet(levels, faces, truncated=truncated)
        if marked:
            C = MarkedSSet(C, frozenset(self._marked_edges(C)))
        self.complex = C

    def _face_plan(self, n, i):
        """Positions in the level-``n`` key read off by ``delta_i (x) J``."""
        small, big = underlying(self.products[n - 1]), underlying(self.products[n])
        d = coface(n, i)
        plan = []
        for k in range(small.dim_bound + 1):
            row = []
            for c in small.level(k):
                image = ProductSimplex(c.a, c.b, d(c.p, c.sigma), c.tau)
                row.append(big.index(k, image))
            plan.append(row)
        return plan

    @staticmethod
    def _restrict(h, plan):
        return tuple(tuple(h[k][pos] for pos in row) for k, row in enumerate(plan))

    def _marked_edges(self, C):
        if self.N < 1:
            return ()
        X = self.X
        sharp = geometric_product(_sharp_edge(), self.J)
        P1 = underlying(self.products[1])
        pos = [P1.index(1, e) for e in sharp.marked]
        return [h for h in C.level(1) if all(h[1][k] in X.marked for k in pos)]

    def cell_to_map(self, n: int, cell) -> SSetMap:
        """The map ``Delta^n (x) J -> X`` named by an n-cell."""
        return SSetMap.from_key(self.products[n], self.X, cell, check=False)

    def map_to_cell(self, h: SSetMap):
        return h.key


def exponential_truncated(X, J, N: int):
    """``X^J`` materialized up to dimension ``N``."""
    return Exponential(X, J, N).complex


def exponential_restriction(X, j: SSetMap, N: int) -> SSetMap:
    """``X^K -> X^J`` induced by precomposition with ``j : J -> K``."""
    EK, EJ = Exponential(X, j.target, N), Exponential(X, j.source, N)
    comps = []
    for n in range(N + 1):
        f = product_map(_identity_map(_simplex(n, EK.marked)), j, EJ.products[n], EK.products[n])
        small, big = underlying(EJ.products[n]), underlying(EK.products[n])
        plan = [[big.index(k, f(k, c)) for c in small.level(k)] for k in range(small.dim_bound + 1)]
        comps.append({h: Exponential._restrict(h, plan) for h in underlying(EK.complex).level(n)})
    return SSetMap(EK.complex, EJ.complex, comps, check=False)


def curry(h: SSetMap, A, B, exp: Exponential) -> SSetMap:
    """The adjunct ``A -> X^B`` of ``h : A (x) B -> X``."""
    from .maps import compose, simplex_map

    SA = underlying(A)
    comps = []
    for n in range(min(SA.dim_bound, exp.N) + 1):
        table = {}
        for a in SA.level(n):
            ya = product_map(simplex_map(SA, n, a), _identity_map(B), exp.products[n], h.source)
            table[a] = compose(h, ya).key
        comps.append(table)
    return SSetMap(A, exp.complex, comps, check=False)


def free_product_comparison(X, Y, N: int) -> SSetMap:
    """The canonical map ``L(X (x) Y) -> L(X) x L(Y)``, ``(c, (a, b, s, t)) -> ((a c, s), (b c, t))``."""
    from .simplicial import free_simplicial, simplicial_product

    L = free_simplicial(geometric_product(underlying(X), underlying(Y)), N)
    R = simplicial_product(free_simplicial(X, N), free_simplicial(Y, N))
    comps = []
    for n in range(N + 1):
        table = {}
        for c, P in L.base.level(n):
            ac = tuple(P.a[k] for k in c)
            bc = tuple(P.b[k] for k in c)
            table[(c, P)] = ((ac, P.sigma), (bc, P.tau))
        comps.append(table)
    return SSetMap(L.base, R.base, comps)
