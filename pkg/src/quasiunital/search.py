"""Backtracking enumeration of face-compatible level assignments.

Every Hom-set computation in the package goes through :func:`extensions`:
enumerate maps ``source -> target`` agreeing with a partial assignment
``fixed``, optionally restricted per cell by ``allowed`` and required to be
levelwise injective.

Source cells are branched on in dimension-decreasing canonical order. Choosing
the image of a simplex forces the images of all of its faces, so each
assignment is propagated down the face lattice (checking agreement with
everything already set) and forced cells are never branched on. Candidates
for a cell are the target cells whose faces agree with the already-set faces
of the source cell, read off a face index of the target.
"""
from __future__ import annotations

from typing import Iterator, Mapping

from .sset import MarkedSSet, TruncationError, underlying


class SearchStats:
    __slots__ = ("nodes", "solutions")

    def __init__(self):
        self.nodes = 0
        self.solutions = 0


def _domain_check(S, T):
    for n in range(S.dim_bound + 1):
        if S.level(n) and T.truncated and n > T.dim_bound:
            raise TruncationError(
                f"source has {n}-simplices but the target is only known up to dimension {T.dim_bound}"
            )


def assignments(
    source,
    target,
    fixed: Mapping[int, Mapping] | None = None,
    allowed: Mapping[tuple, object] | None = None,
    injective: bool = False,
    stats: SearchStats | None = None,
) -> Iterator[list]:
    """Yield raw solutions as ``comp[n] = [target index per source cell]``.

    ``fixed`` maps ``n -> {source cell: target cell}``; ``allowed`` maps
    ``(n, source cell) -> collection of target cells``. Markings are respected
    when both source and target are :class:`MarkedSSet`.
    """
    S, T = underlying(source), underlying(target)
    _domain_check(S, T)
    top = S.dim_bound
    if top < 0:
        yield []
        return
    SI, TI = S._ix, T._ix
    tsizes = [len(T.level(n)) if n <= T.dim_bound else 0 for n in range(top + 1)]
    val = [[-1] * len(S.level(n)) for n in range(top + 1)]
    used = [set() for _ in range(top + 1)] if injective else None

    restrict: dict = {}
    if allowed:
        for (n, c), targets in allowed.items():
            if n > top or c not in SI.pos[n]:
                continue
            restrict[(n, SI.pos[n][c])] = {TI.pos[n][t] for t in targets if t in TI.pos[n]} if n <= T.dim_bound else set()
    if isinstance(source, MarkedSSet) and isinstance(target, MarkedSSet) and top >= 1 and source.marked:
        tm = {TI.pos[1][e] for e in target.marked} if T.dim_bound >= 1 else set()
        for e in source.marked:
            key = (1, SI.pos[1][e])
            restrict[key] = restrict[key] & tm if key in restrict else tm

    trail = []

    def put(n, k, t) -> bool:
        r = restrict.get((n, k))
        if r is not None and t not in r:
            return False
        if injective:
            if t in used[n]:
                return False
            used[n].add(t)
        val[n][k] = t
        trail.append((n, k))
        return True

    def assign(n, k, t) -> bool:
        """Set ``(n, k) -> t`` and everything it forces below."""
        if not put(n, k, t):
            return False
        work = [(n, k)]
        while work:
            m, c = work.pop()
            if m == 0:
                continue
            below = val[m - 1]
            forced_row = TI.fidx[m][val[m][c]]
            for i, f in enumerate(SI.fidx[m][c]):
                forced = forced_row[i]
                cur = below[f]
                if cur < 0:
                    if not put(m - 1, f, forced):
                        return False
                    work.append((m - 1, f))
                elif cur != forced:
                    return False
        return True

    def undo(length):
        while len(trail) > length:
            n, k = trail.pop()
            if injective:
                used[n].discard(val[n][k])
            val[n][k] = -1

    if fixed:
        for n, table in fixed.items():
            if n > top:
                continue
            for c, t in table.items():
                if n > T.dim_bound or t not in TI.pos[n]:
                    return
                k, ti = SI.pos[n][c], TI.pos[n][t]
                cur = val[n][k]
                if cur >= 0:
                    if cur != ti:
                        return
                    continue
                if not assign(n, k, ti):
                    return
        base_len = len(trail)
    else:
        base_len = 0

    def candidates(n, k):
        if n > T.dim_bound:
            return []
        if n == 0:
            base = range(tsizes[0])
        else:
            vs = [val[n - 1][f] for f in SI.fidx[n][k]]
            if -1 not in vs:
                base = TI.by_boundary[n].get(tuple(vs), ())
            else:
                assigned = [(i, v) for i, v in enumerate(vs) if v >= 0]
                if not assigned:
                    base = range(tsizes[n])
                else:
                    buckets = TI.by_face[n]
                    assigned.sort(key=lambda iv: len(buckets[iv[0]].get(iv[1], ())))
                    i0, v0 = assigned[0]
                    base = buckets[i0].get(v0, ())
                    if len(assigned) > 1:
                        rows = TI.fidx[n]
                        rest = assigned[1:]
                        base = [c for c in base if all(rows[c][i] == v for i, v in rest)]
        r = restrict.get((n, k))
        if r is not None:
            base = [c for c in base if c in r]
        if injective:
            u = used[n]
            base = [c for c in base if c not in u]
        return list(base)

    order = [(n, k) for n in range(top, -1, -1) for k in range(len(val[n]))]
    L = len(order)

    def next_unset(p):
        while p < L and val[order[p][0]][order[p][1]] >= 0:
            p += 1
        return p

    p = next_unset(0)
    if p == L:
        if stats is not None:
            stats.solutions += 1
        yield [list(v) for v in val]
        undo(base_len)
        return
    frames = [[p, candidates(*order[p]), 0, len(trail)]]
    while frames:
        fr = frames[-1]
        p, cands, ptr, mark = fr
        undo(mark)
        if ptr >= len(cands):
            frames.pop()
            continue
        fr[2] = ptr + 1
        n, k = order[p]
        if stats is not None:
            stats.nodes += 1
        if not assign(n, k, cands[ptr]):
            continue
        q = next_unset(p + 1)
        if q == L:
            if stats is not None:
                stats.solutions += 1
            yield [list(v) for v in val]
            continue
        frames.append([q, candidates(*order[q]), 0, len(trail)])


def extensions(source, target, fixed=None, allowed=None, injective=False, stats=None):
    """Yield every map ``source -> target`` extending ``fixed`` (as :class:`SSetMap`)."""
    from .maps import SSetMap

    T = underlying(target)
    tl = [T.level(n) if n <= T.dim_bound else () for n in range(underlying(source).dim_bound + 1)]
    for raw in assignments(source, target, fixed, allowed, injective, stats):
        comps = tuple(tuple(tl[n][i] for i in row) for n, row in enumerate(raw))
        yield SSetMap.from_key(source, target, comps, check=False)


def first_extension(source, target, fixed=None, allowed=None, injective=False):
    for f in extensions(source, target, fixed, allowed, injective):
        return f
    return None


def count_extensions(source, target, fixed=None, allowed=None, injective=False) -> int:
    return sum(1 for _ in assignments(source, target, fixed, allowed, injective))
