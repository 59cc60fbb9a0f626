"""Equivalences, idempotents, quasi-unitality, 2-out-of-6 and outer degeneracies.

"Equivalence" is always relative to a bound ``N``: an edge ``f`` counts as
one when every outer horn ``Lambda^n_0`` whose first edge is ``f`` and every
``Lambda^n_n`` whose last edge is ``f`` has an exact filler for ``2 <= n <= N``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import search
from .maps import SSetMap
from .sset import Cell, MarkedSSet, SemiSimplicialSet, horn, standard_simplex, underlying
from .verdict import Verdict


@dataclass
class EdgeStatus:
    edge: Cell
    idempotent_witness: Cell | None = None
    is_equivalence: bool | None = None
    method: str | None = None
    certificate: dict = field(default_factory=dict)

    @property
    def is_idempotent(self) -> bool:
        return self.idempotent_witness is not None


def _loops(X: SemiSimplicialSet):
    if X.dim_bound < 1:
        return []
    return [e for e in X.level(1) if X.face(1, e, 0) == X.face(1, e, 1)]


def idempotent_witness(X, f) -> Cell | None:
    """First 2-cell (canonical order) whose three faces are all ``f``."""
    X = underlying(X)
    if X.dim_bound < 2 or X.face(1, f, 0) != X.face(1, f, 1):
        return None
    ix = X._ix
    hits = ix.by_boundary[2].get((X.index(1, f),) * 3, ())
    return X.level(2)[hits[0]] if hits else None


def idempotent_edges(X) -> list:
    """Every idempotent loop with its first witness."""
    X = underlying(X)
    out = []
    for e in _loops(X):
        H = idempotent_witness(X, e)
        if H is not None:
            out.append(EdgeStatus(e, H))
    return out


def _outer_horn_ok(X, f, n: int, i: int) -> tuple[bool, object]:
    """Every ``Lambda^n_i`` (``i`` in ``{0, n}``) with the constrained edge ``f`` fills."""
    edge = (0, 1) if i == 0 else (n - 1, n)
    A, B = horn(n, i), standard_simplex(n)
    for h in search.extensions(A, X, fixed={1: {edge: f}}):
        fixed = {k: dict(zip(A.level(k), row)) for k, row in enumerate(h.key)}
        if search.first_extension(B, X, fixed=fixed) is None:
            return False, h.key
    return True, None


def is_equivalence_horn(X, f, N: int) -> tuple[bool, dict]:
    X = underlying(X)
    for n in range(2, N + 1):
        for i in (0, n):
            ok, bad = _outer_horn_ok(X, f, n, i)
            if not ok:
                return False, {"horn": (n, i), "map": bad}
    return True, {}


def equivalences_horn(X, N: int) -> frozenset:
    """Edges all of whose constrained outer horns of dimension ``2..N`` fill."""
    X = underlying(X)
    if X.dim_bound < 1:
        return frozenset()
    return frozenset(e for e in X.level(1) if is_equivalence_horn(X, e, N)[0])


class UnitalityError(ValueError):
    pass


def inverse_witness(X, f, units: dict) -> tuple[Cell, Cell] | None:
    """``(g, H)`` with ``H`` a 3-simplex whose edges are ``01 = f, 12 = g, 23 = f, 02 = u_x, 13 = u_y``."""
    X = underlying(X)
    x, y = X.face(1, f, 1), X.face(1, f, 0)
    for v in (x, y):
        if v not in units:
            raise UnitalityError(f"vertex {v!r} has no chosen idempotent equivalence")
    if X.dim_bound < 3:
        return None
    fixed = {1: {(0, 1): f, (2, 3): f, (0, 2): units[x], (1, 3): units[y]}}
    h = search.first_extension(standard_simplex(3), X, fixed=fixed)
    if h is None:
        return None
    return h(1, (1, 2)), h(3, (0, 1, 2, 3))


def equivalences_witness(X, units: dict) -> frozenset:
    """Edges admitting an inverse witness relative to the chosen units."""
    X = underlying(X)
    for v in X.level(0):
        if v not in units:
            raise UnitalityError(f"vertex {v!r} has no chosen idempotent equivalence")
    if X.dim_bound < 1:
        return frozenset()
    return frozenset(e for e in X.level(1) if inverse_witness(X, e, units) is not None)


def natural_marking(X, N: int) -> MarkedSSet:
    """``X^natural``: mark exactly the equivalences up to ``N``."""
    X = underlying(X)
    return MarkedSSet(X, equivalences_horn(X, N))


def chosen_units(X, N: int) -> dict:
    """First idempotent equivalence per vertex, in canonical order."""
    X = underlying(X)
    eqs = equivalences_horn(X, N)
    units = {}
    for s in idempotent_edges(X):
        x = X.face(1, s.edge, 0)
        if s.edge in eqs and x not in units:
            units[x] = s.edge
    return units


def is_quasi_unital(X, N: int) -> Verdict:
    t0 = time.perf_counter()
    X = underlying(X)
    units = chosen_units(X, N)
    missing = [v for v in X.level(0) if v not in units]
    witnesses = {v: {"unit": e, "H": idempotent_witness(X, e)} for v, e in units.items()}
    v = Verdict("quasi-unital", N, not missing, witnesses, [{"vertex": m} for m in missing])
    v.notes.append(f"equivalences are certified up to N={N}")
    v.seconds = time.perf_counter() - t0
    return v


def is_quasi_unital_map(F: SSetMap, N: int) -> Verdict:
    """Each idempotent equivalence of the source must land on an equivalence of the target."""
    t0 = time.perf_counter()
    X, Y = underlying(F.source), underlying(F.target)
    src_eq = equivalences_horn(X, N)
    bad, checked = [], []
    for s in idempotent_edges(X):
        if s.edge not in src_eq:
            continue
        image = F(1, s.edge)
        ok, cert = is_equivalence_horn(Y, image, N)
        checked.append(s.edge)
        if not ok:
            bad.append({"edge": s.edge, "image": image, "failure": cert})
    v = Verdict("quasi-unital-map", N, not bad, {"checked": checked}, bad)
    v.seconds = time.perf_counter() - t0
    return v


# -- 2-out-of-6 ---------------------------------------------------------------------

_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def check_two_out_of_six(X, marked) -> Verdict:
    """If edges 02 and 13 of a 3-simplex are marked, all six edges must be."""
    X = underlying(X)
    marked = set(marked)
    bad = []
    if X.dim_bound >= 3:
        for s in X.level(3):
            edges = {e: X.edge(3, s, *e) for e in _EDGES}
            if edges[(0, 2)] in marked and edges[(1, 3)] in marked:
                missing = [e for e in _EDGES if edges[e] not in marked]
                if missing:
                    bad.append({"simplex": s, "unmarked": [edges[e] for e in missing]})
                    break
    return Verdict("two-out-of-six", None, not bad, {}, bad)


# -- outer degeneracies -------------------------------------------------------------


@dataclass
class OuterDegeneracyData:
    """``s0[n]`` and ``s_omega[n]`` map ``X_n -> X_{n+1}``."""

    s0: dict
    s_omega: dict

    @classmethod
    def from_simplicial(cls, X) -> "OuterDegeneracyData":
        top = X.dim_bound
        s0 = {n: dict(X.degeneracy_table(n, 0)) for n in range(top)}
        sw = {n: dict(X.degeneracy_table(n, n)) for n in range(top)}
        return cls(s0, sw)


@dataclass(frozen=True)
class DegeneracyViolation:
    identity: str
    dim: int
    cell: Cell


def outer_degeneracy_violations(X, D: OuterDegeneracyData) -> list:
    X = underlying(X)
    out = []

    def lookup(table, n, c, name):
        v = table.get(n, {}).get(c)
        if v is None or not X.contains(n + 1, v):
            out.append(DegeneracyViolation(f"{name} defined", n, c))
            return None
        return v

    for n in range(X.dim_bound):
        for c in X.level(n):
            a = lookup(D.s0, n, c, "s0")
            if a is not None:
                fa = X.faces_of(n + 1, a)
                if fa[0] != c:
                    out.append(DegeneracyViolation("d0 s0 = id", n, c))
                if fa[1] != c:
                    out.append(DegeneracyViolation("d1 s0 = id", n, c))
                for j in range(1, n + 1):
                    lower = D.s0.get(n - 1, {}).get(X.face(n, c, j))
                    if lower != fa[j + 1]:
                        out.append(DegeneracyViolation(f"s0 d{j} = d{j + 1} s0", n, c))
            w = lookup(D.s_omega, n, c, "s_omega")
            if w is not None:
                fw = X.faces_of(n + 1, w)
                if fw[n] != c:
                    out.append(DegeneracyViolation(f"d{n} s_omega = id", n, c))
                if fw[n + 1] != c:
                    out.append(DegeneracyViolation(f"d{n + 1} s_omega = id", n, c))
                for j in range(n):
                    lower = D.s_omega.get(n - 1, {}).get(X.face(n, c, j))
                    if lower != fw[j]:
                        out.append(DegeneracyViolation(f"s_omega d{j} = d{j} s_omega", n, c))
            if n == 0 and a is not None and w is not None and a != w:
                out.append(DegeneracyViolation("s0 x = s_omega x", 0, c))
    return out


def check_outer_degeneracies(X, D: OuterDegeneracyData) -> Verdict:
    bad = outer_degeneracy_violations(X, D)
    v = Verdict("outer-degeneracies", underlying(X).dim_bound, not bad, {}, bad)
    v.notes.append("vertices require s0 x = s_omega x exactly")
    return v


def verify_theorem_C(X, D: OuterDegeneracyData, N: int) -> Verdict:
    """With valid outer degeneracies, each ``s0 x`` is an idempotent equivalence."""
    t0 = time.perf_counter()
    S = underlying(X)
    bad = outer_degeneracy_violations(S, D)
    if bad:
        v = Verdict("theorem-C", N, False, {}, bad, ["outer degeneracy data is malformed"])
        v.seconds = time.perf_counter() - t0
        return v
    per_vertex, fails = {}, []
    for x in S.level(0):
        e = D.s0[0][x]
        H = D.s0.get(1, {}).get(e)
        idem = H is not None and S.faces_of(2, H) == (e, e, e)
        eq, cert = is_equivalence_horn(S, e, N)
        per_vertex[x] = {"edge": e, "H": H, "idempotent": idem, "equivalence": eq}
        if not (idem and eq):
            fails.append({"vertex": x, "edge": e, "idempotent": idem, "equivalence": eq, "failure": cert})
    v = Verdict("theorem-C", N, not fails, per_vertex, fails)
    v.seconds = time.perf_counter() - t0
    return v


def verify_theorem_A(X, N: int) -> Verdict:
    """``is_quasi_unital(X)`` agrees with ``is_marked_inner_kan(X^natural)``."""
    from .lifting import is_marked_inner_kan

    t0 = time.perf_counter()
    qu = is_quasi_unital(X, N)
    mik = is_marked_inner_kan(natural_marking(X, N), N)
    agree = qu.holds == mik.holds
    v = Verdict(
        "theorem-A",
        N,
        agree,
        {"quasi_unital": qu.holds, "marked_inner_kan": mik.holds, "checks": mik.checks},
        [] if agree else [{"quasi_unital": qu.holds, "marked_inner_kan": mik.holds}],
    )
    v.seconds = time.perf_counter() - t0
    return v


def check_left_fib_over_point(f: SSetMap, N: int) -> Verdict:
    """If ``f : X -> T^sharp`` is a marked left fibration, ``X`` is sharp with Kan underlying complex."""
    from .lifting import is_kan, is_marked_left_fibration

    t0 = time.perf_counter()
    X = f.source
    lf = is_marked_left_fibration(f, N)
    witnesses = {"marked_left_fibration": lf.holds}
    bad = []
    if lf.holds:
        C = underlying(X)
        unmarked = [e for e in (C.level(1) if C.dim_bound >= 1 else ()) if e not in X.marked]
        kan = is_kan(C, N)
        witnesses.update(all_marked=not unmarked, kan=kan.holds)
        if unmarked:
            bad.append({"unmarked": unmarked})
        if not kan.holds:
            bad.append({"kan_failure": kan.failures[:1]})
    v = Verdict("left-fibration-over-point", N, not bad, witnesses, bad)
    v.seconds = time.perf_counter() - t0
    return v
