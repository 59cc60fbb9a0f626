"""Lifting problems, generator families, fibrancy checks and a bounded small object argument.

Every verdict is relative to a dimension bound ``N``: only generators of
dimension at most ``N`` are tested.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import search
from .maps import SSetMap, compose, inclusion, pushout, to_terminal
from .sset import (
    MarkedSSet,
    boundary,
    horn,
    marked_simplex,
    standard_simplex,
    underlying,
)


# -- generator families ----------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    """A levelwise injective generating map ``j : A -> B``."""

    label: str
    n: int
    j: SSetMap

    @property
    def source(self):
        return self.j.source

    @property
    def target(self):
        return self.j.target


def _incl(A, B) -> SSetMap:
    return inclusion(A, B)


def _horn_gen(n, i, marked_edges=None, flat=False) -> Generator:
    A, B = horn(n, i), standard_simplex(n)
    if marked_edges is not None or flat:
        edges = frozenset(marked_edges or ())
        A = MarkedSSet(A, frozenset(e for e in edges if A.contains(1, e)))
        B = MarkedSSet(B, edges)
    tag = "" if not marked_edges else "+" + ",".join("".join(map(str, e)) for e in sorted(marked_edges))
    return Generator(f"horn({n},{i}){tag}", n, _incl(A, B))


def _boundary_gen(n, flat=False) -> Generator:
    A, B = boundary(n), standard_simplex(n)
    if flat:
        A, B = MarkedSSet(A), MarkedSSet(B)
    return Generator(f"boundary({n})", n, _incl(A, B))


def _remark_edge() -> Generator:
    return Generator("mark(1)", 1, _incl(marked_simplex(1), marked_simplex(1, [(0, 1)])))


def _two_of_six() -> Generator:
    D = standard_simplex(3)
    A = MarkedSSet(D, frozenset({(0, 2), (1, 3)}))
    return Generator("S_2/6", 3, _incl(A, MarkedSSet(D, frozenset(D.level(1)))))


def _kq_horns(N, keep):
    return [_horn_gen(n, i) for n in range(1, N + 1) for i in range(n + 1) if keep(n, i)]


def _jl_members(N) -> list:
    out = [_horn_gen(n, i, flat=True) for n in range(2, N + 1) for i in range(1, n)]
    for n in range(1, N + 1):
        out.append(_horn_gen(n, 0, marked_edges=[(0, 1)]))
        out.append(_horn_gen(n, n, marked_edges=[(n - 1, n)]))
    if N >= 3:
        out.append(_two_of_six())
    return sorted(out, key=lambda g: g.n)


@dataclass(frozen=True)
class GeneratorFamily:
    name: str
    marked: bool
    builder: Callable[[int], list] = field(compare=False, repr=False)

    def members(self, N: int) -> list:
        return list(self.builder(N))


FAMILIES = {
    "I_KQ": GeneratorFamily("I_KQ", False, lambda N: [_boundary_gen(n) for n in range(N + 1)]),
    "J_KQ": GeneratorFamily("J_KQ", False, lambda N: _kq_horns(N, lambda n, i: True)),
    "J_I": GeneratorFamily("J_I", False, lambda N: _kq_horns(N, lambda n, i: 0 < i < n)),
    "J_L": GeneratorFamily("J_L", False, lambda N: _kq_horns(N, lambda n, i: i < n)),
    "J_R": GeneratorFamily("J_R", False, lambda N: _kq_horns(N, lambda n, i: 0 < i)),
    "I_JL": GeneratorFamily(
        "I_JL", True, lambda N: [_boundary_gen(n, flat=True) for n in range(N + 1)] + ([_remark_edge()] if N >= 1 else [])
    ),
    "J_JL": GeneratorFamily("J_JL", True, _jl_members),
    # marked left/right anodyne generators: J_JL plus the flat outer horns on one side
    "J_L+": GeneratorFamily(
        "J_L+", True, lambda N: sorted(_jl_members(N) + [_horn_gen(n, 0, flat=True) for n in range(1, N + 1)], key=lambda g: g.n)
    ),
    "J_R+": GeneratorFamily(
        "J_R+", True, lambda N: sorted(_jl_members(N) + [_horn_gen(n, n, flat=True) for n in range(1, N + 1)], key=lambda g: g.n)
    ),
}


def family(name: str) -> GeneratorFamily:
    try:
        return FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown generator family {name!r}; known: {', '.join(FAMILIES)}") from None


# -- lifting problems ----------------------------------------------------------------


@dataclass
class LiftingProblem:
    """A commuting square ``f . top = bottom . j``."""

    j: SSetMap
    f: SSetMap
    top: SSetMap
    bottom: SSetMap

    def commutes(self) -> bool:
        return compose(self.f, self.top).key == compose(self.bottom, self.j).key


@dataclass
class LiftSolution:
    fillers: list
    exhaustive: bool

    def __bool__(self):
        return bool(self.fillers)


class _Fibers:
    """Preimages of ``f`` per dimension, built once per map."""

    def __init__(self, f: SSetMap):
        X = underlying(f.source)
        self.trivial = all(len(underlying(f.target).level(n)) <= 1 for n in range(underlying(f.target).dim_bound + 1))
        self.pre = []
        for n in range(X.dim_bound + 1):
            d = {}
            for x in X.level(n):
                d.setdefault(f(n, x), []).append(x)
            self.pre.append(d)

    def allowed(self, B, bottom: SSetMap, skip) -> dict | None:
        if self.trivial:
            return None
        SB = underlying(B)
        out = {}
        for n in range(SB.dim_bound + 1):
            pre = self.pre[n] if n < len(self.pre) else {}
            for b in SB.level(n):
                if (n, b) not in skip:
                    out[(n, b)] = pre.get(bottom(n, b), ())
        return out


def _fixed_from(j: SSetMap, top: SSetMap) -> tuple[dict, set]:
    A = underlying(j.source)
    fixed, skip = {}, set()
    for n in range(A.dim_bound + 1):
        for a in A.level(n):
            b = j(n, a)
            fixed.setdefault(n, {})[b] = top(n, a)
            skip.add((n, b))
    return fixed, skip


def _fillers(P: LiftingProblem, limit: int | None, fibers: _Fibers | None = None) -> tuple[list, bool]:
    fibers = fibers or _Fibers(P.f)
    fixed, skip = _fixed_from(P.j, P.top)
    allowed = fibers.allowed(P.j.target, P.bottom, skip)
    out = []
    for h in search.extensions(P.j.target, P.f.source, fixed=fixed, allowed=allowed):
        out.append(h)
        if limit is not None and len(out) >= limit:
            return out, False
    return out, True


def solve_lift(P: LiftingProblem, mode: str = "first") -> LiftSolution:
    """Diagonal fillers ``K -> X``; ``mode='all'`` returns every one."""
    if mode not in ("first", "all"):
        raise ValueError("mode must be 'first' or 'all'")
    fillers, complete = _fillers(P, 1 if mode == "first" else None)
    return LiftSolution(fillers, exhaustive=complete)


def lifting_problems(gen: Generator, f: SSetMap) -> Iterator[LiftingProblem]:
    """Every commuting square from ``gen`` to ``f``, in canonical order."""
    A, B = gen.source, gen.target
    X, Y = f.source, f.target
    j = gen.j
    for top in search.extensions(A, X):
        fixed = {}
        SA = underlying(A)
        for n in range(SA.dim_bound + 1):
            for a in SA.level(n):
                fixed.setdefault(n, {})[j(n, a)] = f(n, top(n, a))
        for bottom in search.extensions(B, Y, fixed=fixed):
            yield LiftingProblem(j, f, top, bottom)


# -- reports ---------------------------------------------------------------------


@dataclass
class LiftFailure:
    generator: str
    top: tuple
    bottom: tuple
    fillers: int


@dataclass
class LiftingReport:
    """Outcome of testing ``f`` against a family up to ``N``."""

    family: str
    N: int
    orthogonal: bool
    holds: bool = True
    problems: int = 0
    failures: list = field(default_factory=list)
    multiple_fillers: list = field(default_factory=list)
    per_generator: dict = field(default_factory=dict)
    complete: bool = True
    checks: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds

    def summary(self) -> str:
        kind = "orthogonal to" if self.orthogonal else "RLP against"
        verdict = "holds" if self.holds else "fails"
        return f"{kind} {self.family} up to N={self.N}: {verdict} ({self.problems} problems)"


def _coerce(f: SSetMap, marked: bool) -> SSetMap:
    X, Y = f.source, f.target
    if marked:
        if not (isinstance(X, MarkedSSet) and isinstance(Y, MarkedSSet)):
            raise TypeError(f"family needs a map of marked complexes")
        return f
    if isinstance(X, MarkedSSet) or isinstance(Y, MarkedSSet):
        return SSetMap(underlying(X), underlying(Y), f.components, check=False)
    return f


def _run(f: SSetMap, fam: GeneratorFamily, N: int, orthogonal: bool, exhaustive: bool, keep: int = 10) -> LiftingReport:
    f = _coerce(f, fam.marked)
    fibers = _Fibers(f)
    rep = LiftingReport(fam.name, N, orthogonal)
    limit = 2 if orthogonal else 1
    for gen in fam.members(N):
        count = 0
        for P in lifting_problems(gen, f):
            count += 1
            rep.problems += 1
            fillers, _ = _fillers(P, limit, fibers)
            ok = len(fillers) == 1 if orthogonal else bool(fillers)
            if orthogonal and len(fillers) > 1 and len(rep.multiple_fillers) < keep:
                rep.multiple_fillers.append(LiftFailure(gen.label, P.top.key, P.bottom.key, len(fillers)))
            if not ok:
                rep.holds = False
                if len(rep.failures) < keep:
                    rep.failures.append(LiftFailure(gen.label, P.top.key, P.bottom.key, len(fillers)))
                if not exhaustive:
                    rep.per_generator[gen.label] = count
                    rep.complete = False
                    return rep
        rep.per_generator[gen.label] = count
    return rep


def has_rlp(f: SSetMap, F: GeneratorFamily | str, N: int, exhaustive: bool = False) -> LiftingReport:
    """Right lifting property of ``f`` against every member of ``F`` of dimension at most ``N``."""
    return _run(f, family(F) if isinstance(F, str) else F, N, False, exhaustive)


def is_orthogonal(f: SSetMap, F: GeneratorFamily | str, N: int, exhaustive: bool = False) -> LiftingReport:
    """Exactly one filler for every lifting problem; more than one is flagged in the report."""
    return _run(f, family(F) if isinstance(F, str) else F, N, True, exhaustive)


# -- fibrancy predicates -------------------------------------------------------------


def _terminal(X, N: int):
    # a finite X still meets generators up to N, so the point must be known that far
    return to_terminal(X, max(N, underlying(X).dim_bound))


def is_kan(X, N: int) -> LiftingReport:
    return has_rlp(_terminal(underlying(X), N), "J_KQ", N)


def is_inner_kan(X, N: int) -> LiftingReport:
    return has_rlp(_terminal(underlying(X), N), "J_I", N)


def is_kan_fibration(f, N: int) -> LiftingReport:
    return has_rlp(f, "J_KQ", N)


def is_trivial_fibration(f: SSetMap, N: int) -> LiftingReport:
    marked = isinstance(f.source, MarkedSSet) and isinstance(f.target, MarkedSSet)
    return has_rlp(f, "I_JL" if marked else "I_KQ", N)


def is_inner_fibration(f, N: int) -> LiftingReport:
    return has_rlp(f, "J_I", N)


def is_left_fibration(f, N: int) -> LiftingReport:
    return has_rlp(f, "J_L", N)


def is_right_fibration(f, N: int) -> LiftingReport:
    return has_rlp(f, "J_R", N)


def is_marked_inner_fibration(f, N: int) -> LiftingReport:
    return has_rlp(f, "J_JL", N)


def is_marked_left_fibration(f, N: int) -> LiftingReport:
    return has_rlp(f, "J_L+", N)


def is_marked_right_fibration(f, N: int) -> LiftingReport:
    return has_rlp(f, "J_R+", N)


def is_marked_inner_kan(X: MarkedSSet, N: int) -> LiftingReport:
    """RLP of ``X -> T^sharp`` against ``J_JL``, cross-checked by two closure conditions.

    The extra checks are that every marked edge is an equivalence of the
    underlying complex and that the marking is closed under 2-out-of-6.
    """
    from .unitality import check_two_out_of_six, equivalences_horn

    rep = has_rlp(_terminal(X, N), "J_JL", N)
    eqs = equivalences_horn(X.carrier, N)
    stray = sorted(X.marked - eqs, key=repr)
    rep.checks["marked_are_equivalences"] = not stray
    if stray:
        rep.checks["unmarkable_edges"] = stray
    six = check_two_out_of_six(X.carrier, X.marked)
    rep.checks["two_out_of_six"] = six.holds
    rep.holds = rep.holds and not stray and six.holds
    return rep


def is_complete_semi_segal(X: MarkedSSet, N: int) -> LiftingReport:
    return is_orthogonal(_terminal(X, N), "J_JL", N)


# -- small object argument ---------------------------------------------------------


@dataclass
class AttachStep:
    round: int
    generator: str
    top: tuple
    bottom: tuple
    new_cells: tuple


@dataclass
class Factorization:
    cofibration: SSetMap
    fibration: SSetMap
    trace: list
    rounds: int
    residual: int
    converged: bool


def _unfilled(f: SSetMap, fam: GeneratorFamily, N: int) -> list:
    seen, out = set(), []
    fibers = _Fibers(f)
    for gen in fam.members(N):
        for P in lifting_problems(gen, f):
            key = (gen.label, P.top.key, P.bottom.key)
            if key in seen:
                continue
            seen.add(key)
            if not _fillers(P, 1, fibers)[0]:
                out.append((gen, P))
    return out


def attach_cells(f: SSetMap, F: GeneratorFamily | str, N: int, round_no: int = 0):
    """One round: glue a copy of ``B`` along ``top`` for every unfilled problem.

    Returns ``(X -> X', X' -> Y, steps)``.
    """
    fam = family(F) if isinstance(F, str) else F
    f = _coerce(f, fam.marked)
    problems = _unfilled(f, fam, N)
    X = f.source
    cur = X
    comps = [dict(c) for c in f.components]
    steps = []
    for k, (gen, P) in enumerate(problems):
        top = SSetMap(gen.source, cur, P.top.components, check=False)
        po = pushout(gen.j, top, tag=("cell", round_no, k))
        SB = underlying(gen.target)
        new = []
        for n in range(SB.dim_bound + 1):
            while len(comps) <= n:
                comps.append({})
            for b in SB.level(n):
                p = po.from_left(n, b)
                if p not in comps[n]:
                    new.append((n, p))
                comps[n][p] = P.bottom(n, b)
        cur = po.complex
        steps.append(AttachStep(round_no, gen.label, P.top.key, P.bottom.key, tuple(new)))
    S = underlying(cur)
    g = SSetMap(cur, f.target, comps[: S.dim_bound + 1])
    i = SSetMap(X, cur, [{c: c for c in underlying(X).level(n)} for n in range(underlying(X).dim_bound + 1)])
    return i, g, steps


def bounded_factorization(f: SSetMap, F: GeneratorFamily | str, N: int, max_rounds: int = 3) -> Factorization:
    """Iterate :func:`attach_cells` until nothing is left to fill or ``max_rounds`` is reached."""
    fam = family(F) if isinstance(F, str) else F
    f = _coerce(f, fam.marked)
    start, g, trace = f.source, f, []
    incl = SSetMap(start, start, [{c: c for c in underlying(start).level(n)} for n in range(underlying(start).dim_bound + 1)], check=False)
    rounds = 0
    residual = len(_unfilled(g, fam, N))
    while residual and rounds < max_rounds:
        i, g, steps = attach_cells(g, fam, N, rounds)
        incl = compose(i, incl)
        trace += steps
        rounds += 1
        residual = len(_unfilled(g, fam, N))
    return Factorization(incl, g, trace, rounds, residual, residual == 0)
