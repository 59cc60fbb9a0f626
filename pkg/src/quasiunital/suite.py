"""Run the invariants of every module over a corpus and aggregate the verdicts."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import lifting, unitality
from .corpus import CorpusEntry, CorpusSpec, build_corpus
from .interchange import emit_complex, parse_complex
from .maps import enumerate_maps, find_isomorphism, is_isomorphism, to_terminal, vertex_map
from .monoidal import exponential_restriction, free_product_comparison, geometric_product, join
from .simplicial import free_simplicial, isomorphism_edges, simplicial_map_commutes, simplicial_product
from .slice import hom_left, slice_over, terminal_extension_from_degeneracies
from .sset import MarkedSSet, boundary, sharp, standard_simplex, validate
from .verdict import Verdict


@dataclass
class SuiteReport:
    N: int
    verdicts: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(v.holds for v in self.verdicts)

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "verdict": "pass" if self.holds else "fail",
            "passed": sum(v.holds for v in self.verdicts),
            "failed": sum(not v.holds for v in self.verdicts),
            "results": [dict(v.to_json(), subject=getattr(v, "subject", None)) for v in self.verdicts],
        }


def _timed(subject: str, fn, *args) -> Verdict:
    t0 = time.perf_counter()
    v = fn(*args)
    v.seconds = time.perf_counter() - t0
    v.subject = subject
    return v


# -- identities that do not depend on a corpus entry --------------------------------


def join_identity(max_total: int = 3) -> Verdict:
    bad = []
    for n in range(max_total + 1):
        for m in range(max_total + 1 - n):
            J = join(standard_simplex(n), standard_simplex(m)).carrier
            if find_isomorphism(J, standard_simplex(n + m + 1)) is None:
                bad.append({"n": n, "m": m})
    return Verdict("join-identity", max_total, not bad, {}, bad)


def product_free_compatibility(N: int = 3) -> Verdict:
    shapes = {"simplex0": standard_simplex(0), "simplex1": standard_simplex(1), "boundary2": boundary(2)}
    bad = []
    for a, X in shapes.items():
        for b, Y in shapes.items():
            phi = free_product_comparison(X, Y, N)
            A = free_simplicial(geometric_product(X, Y), N)
            B = simplicial_product(free_simplicial(X, N), free_simplicial(Y, N))
            if not (is_isomorphism(phi) and simplicial_map_commutes(phi, A, B)):
                bad.append({"X": a, "Y": b})
    return Verdict("free-product-compatibility", N, not bad, {}, bad)


# -- per-entry checks -------------------------------------------------------------------


def _validate(e: CorpusEntry, N: int) -> Verdict:
    r = validate(e.complex)
    extra = e.simplicial.identity_violations() if e.simplicial is not None else []
    return Verdict("validate", None, r.valid and not extra, {}, [str(v) for v in r.violations] + [str(v) for v in extra])


def _round_trip(e: CorpusEntry, N: int) -> Verdict:
    doc = emit_complex(e.simplicial if e.simplicial is not None else e.complex)
    back = parse_complex(doc)
    again = emit_complex(back)
    return Verdict("round-trip", None, again == doc, {}, [] if again == doc else ["document changed on re-emit"])


def _yoneda(e: CorpusEntry, N: int) -> Verdict:
    X = e.complex
    bad = []
    for n in range(min(N, X.dim_bound) + 1):
        if len(enumerate_maps(standard_simplex(n), X)) != len(X.level(n)):
            bad.append({"n": n})
    return Verdict("yoneda", N, not bad, {}, bad)


def _theorem_a(e: CorpusEntry, N: int) -> Verdict | None:
    if not lifting.is_inner_kan(e.complex, N):
        return None
    return unitality.verify_theorem_A(e.complex, N)


def _theorem_c(e: CorpusEntry, N: int) -> Verdict | None:
    if e.simplicial is None:
        return None
    D = unitality.OuterDegeneracyData.from_simplicial(e.simplicial)
    return unitality.verify_theorem_C(e.complex, D, N)


def _invertibility(e: CorpusEntry, N: int) -> Verdict | None:
    if e.category is None:
        return None
    got = unitality.equivalences_horn(e.complex, N)
    want = isomorphism_edges(e.category)
    return Verdict("invertibility", N, got == want, {"equivalences": sorted(got)}, sorted(got ^ want))


def _two_of_six(e: CorpusEntry, N: int) -> Verdict | None:
    X = e.complex
    if not lifting.is_inner_kan(X, N) or not unitality.is_quasi_unital(X, N):
        return None
    v = unitality.check_two_out_of_six(X, unitality.equivalences_horn(X, N))
    v.N = N
    return v


def _method_agreement(e: CorpusEntry, N: int) -> Verdict | None:
    X = e.complex
    if not lifting.is_inner_kan(X, N) or not unitality.is_quasi_unital(X, N):
        return None
    horn = unitality.equivalences_horn(X, N)
    wit = unitality.equivalences_witness(X, unitality.chosen_units(X, N))
    return Verdict("method-agreement", N, horn == wit, {}, sorted(horn ^ wit))


def _slice_formula(e: CorpusEntry, N: int) -> Verdict:
    X = e.complex
    top = min(2, N - 1)
    bad = []
    for p in X.level(0) if X.dim_bound >= 0 else ():
        S = slice_over(X, vertex_map(X, p), top).complex
        for n in range(top + 1):
            want = sum(1 for s in X.level(n + 1) if X.vertices(n + 1, s)[-1] == p) if X.knows(n + 1) else 0
            got = len(S.level(n)) if S.knows(n) else None
            if got != want:
                bad.append({"vertex": p, "n": n, "slice": got, "expected": want})
    return Verdict("slice-formula", top, not bad, {}, bad)


def _hom_left(e: CorpusEntry, N: int) -> Verdict | None:
    if e.category is None:
        return None
    C, X = e.category, e.complex
    top = min(N, X.dim_bound - 1)
    bad = []
    for y in C.objects:
        ext = terminal_extension_from_degeneracies(e.simplicial, y, top)
        for x in C.objects:
            sizes = hom_left(X, x, ext, top).sizes()
            want = (len(C.hom(x, y)),) * (top + 1)
            if sizes != want:
                bad.append({"x": x, "y": y, "sizes": sizes, "expected": want})
    return Verdict("hom-left", top, not bad, {}, bad)


def _left_fib_point(e: CorpusEntry, N: int) -> Verdict:
    bad = []
    checked = 0
    X = e.complex
    markings = {"natural": unitality.natural_marking(X, N), "sharp": sharp(X), "flat": MarkedSSet(X)}
    for label, M in markings.items():
        v = unitality.check_left_fib_over_point(to_terminal(M, max(N, X.dim_bound)), N)
        checked += v.witnesses.get("marked_left_fibration", False)
        if not v.holds:
            bad.append({"marking": label, **v.witnesses})
    return Verdict("left-fibration-over-point", N, not bad, {"fibrations": checked}, bad)


def _pushout_product(e: CorpusEntry, N: int) -> Verdict | None:
    X = unitality.natural_marking(e.complex, min(N, 3))
    top = min(N, 2)
    if not lifting.is_marked_inner_kan(X, min(N, 3)):
        return None
    bad = []
    for g in lifting.family("I_JL").members(top):
        r = exponential_restriction(X, g.j, top)
        if not lifting.is_marked_inner_fibration(r, top):
            bad.append({"generator": g.label})
    return Verdict("pushout-product", top, not bad, {}, bad)


PER_ENTRY = [
    _validate,
    _round_trip,
    _yoneda,
    _theorem_a,
    _theorem_c,
    _invertibility,
    _two_of_six,
    _method_agreement,
    _slice_formula,
    _hom_left,
    _left_fib_point,
]


def run_suite(N: int = 3, spec: CorpusSpec | None = None, heavy: bool = False) -> SuiteReport:
    """Every invariant over the corpus; ``heavy`` adds the exponential fibration checks."""
    spec = spec if spec is not None else CorpusSpec.default()
    report = SuiteReport(N)
    if not spec.generators:
        return report
    report.verdicts.append(_timed("simplices", join_identity, 3))
    report.verdicts.append(_timed("simplices", product_free_compatibility, 3))
    checks = PER_ENTRY + ([_pushout_product] if heavy else [])
    for e in build_corpus(spec):
        for check in checks:
            t0 = time.perf_counter()
            v = check(e, N)
            if v is None:
                continue
            v.seconds = time.perf_counter() - t0
            v.subject = e.name
            report.verdicts.append(v)
    return report
