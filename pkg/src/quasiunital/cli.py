"""Command-line frontend.

Exit status: 0 when the verdict passes, 1 when it fails, 2 on malformed input or
an unmet precondition.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import lifting, unitality
from .category import FiniteCategory
from .corpus import CorpusSpec, default_dim, write_corpus
from .interchange import (
    DocumentError,
    dumps,
    emit_complex,
    emit_map,
    load,
    parse,
    parse_category,
    parse_complex,
    parse_map,
)
from .maps import MapError, SSetMap, to_terminal, vertex_map
from .monoidal import exponential_truncated, geometric_product, join
from .simplicial import SimplicialSet, free_simplicial, nerve
from .slice import (
    find_terminal_extension,
    hom_left,
    slice_over,
    slice_under,
    terminal_extension_from_degeneracies,
)
from .sset import MalformedComplexError, MarkedSSet, TruncationError, underlying, validate
from .suite import run_suite
from .verdict import Verdict, jsonable

PASS, FAIL, ERROR = 0, 1, 2

CONSTRUCT_OPS = (
    "join",
    "product",
    "exp",
    "slice-under",
    "slice-over",
    "hom-left",
    "t-extend",
    "natural-marking",
    "nerve",
    "forget",
    "free",
)


class UsageError(ValueError):
    pass


# -- document helpers -----------------------------------------------------------


def _complex(path: str):
    doc = load(path)
    X = parse_complex(doc)
    return X


def _plain(X):
    """Drop simplicial structure, keep any marking."""
    return X.base if isinstance(X, SimplicialSet) else X


def _map(path: str) -> SSetMap:
    return parse_map(load(path))


def _map_or_terminal(path: str, N: int) -> SSetMap:
    """A map document, or a complex document read as its map to the point."""
    obj = parse(load(path))
    if isinstance(obj, SSetMap):
        return obj
    if isinstance(obj, FiniteCategory):
        raise DocumentError("expected a complex or map document, got a category", path)
    X = _plain(obj)
    return to_terminal(X, max(N, underlying(X).dim_bound))


def _write(doc: dict, out: str | None) -> None:
    text = dumps(doc)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _emit_verdict(v: Verdict, as_json: bool) -> int:
    if as_json:
        print(json.dumps(v.to_json(), indent=2))
    else:
        status = "pass" if v.holds else "fail"
        bound = f" up to N={v.N}" if v.N is not None else ""
        print(f"{v.property}{bound}: {status} ({v.seconds:.2f}s)")
        for c in jsonable(v.counterexamples)[:5]:
            print(f"  counterexample: {json.dumps(c)}")
        for note in v.notes:
            print(f"  note: {note}")
    return PASS if v.holds else FAIL


def _report_verdict(prop: str, rep: lifting.LiftingReport, seconds: float) -> Verdict:
    v = Verdict(
        prop,
        rep.N,
        rep.holds,
        {"family": rep.family, "problems": rep.problems, "per_generator": rep.per_generator, "checks": rep.checks},
        list(rep.failures) + [{"multiple_fillers": m} for m in rep.multiple_fillers],
        seconds=seconds,
    )
    if not rep.complete:
        v.notes.append("search stopped at the first failure; rerun with --mode all for every counterexample")
    return v


# -- check ----------------------------------------------------------------------


def _marked(X, N):
    """A marked complex as given, or the natural marking of an unmarked one."""
    X = _plain(X)
    return X if isinstance(X, MarkedSSet) else unitality.natural_marking(X, N)


def _equivalences(X, N) -> Verdict:
    S = underlying(_plain(X))
    per_edge = {}
    for e in S.level(1) if S.dim_bound >= 1 else ():
        ok, cert = unitality.is_equivalence_horn(S, e, N)
        per_edge[e] = {"equivalence": ok, **({"failure": cert} if cert else {})}
    units = unitality.chosen_units(S, N)
    if len(units) == len(S.level(0)):
        for e, info in per_edge.items():
            if info["equivalence"]:
                w = unitality.inverse_witness(S, e, units)
                if w is not None:
                    info["inverse"], info["simplex"] = w
    v = Verdict("equivalences", N, True, per_edge)
    v.notes.append(f"equivalences are certified up to N={N}")
    return v


def _two_of_six(X, N) -> Verdict:
    X = _plain(X)
    marked = X.marked if isinstance(X, MarkedSSet) else unitality.equivalences_horn(X, N)
    v = unitality.check_two_out_of_six(X, marked)
    v.N = N
    return v


def _theorem_c(X, N) -> Verdict:
    if not isinstance(X, SimplicialSet):
        raise UsageError("theorem-c needs a document with degeneracies")
    return unitality.verify_theorem_C(X.base, unitality.OuterDegeneracyData.from_simplicial(X), N)


COMPLEX_CHECKS = {
    "kan": lambda X, N: lifting.is_kan(_plain(X), N),
    "inner-kan": lambda X, N: lifting.is_inner_kan(_plain(X), N),
    "marked-inner-kan": lambda X, N: lifting.is_marked_inner_kan(_marked(X, N), N),
    "complete-semi-segal": lambda X, N: lifting.is_complete_semi_segal(_marked(X, N), N),
    "quasi-unital": lambda X, N: unitality.is_quasi_unital(_plain(X), N),
    "equivalences": lambda X, N: _equivalences(X, N),
    "two-out-of-six": lambda X, N: _two_of_six(X, N),
    "theorem-a": lambda X, N: unitality.verify_theorem_A(_plain(X), N),
    "theorem-c": lambda X, N: _theorem_c(X, N),
}

MAP_CHECKS = {
    "kan-fibration": lifting.is_kan_fibration,
    "inner-fibration": lifting.is_inner_fibration,
    "left-fibration": lifting.is_left_fibration,
    "right-fibration": lifting.is_right_fibration,
    "trivial-fibration": lifting.is_trivial_fibration,
    "marked-inner-fibration": lifting.is_marked_inner_fibration,
    "marked-left-fibration": lifting.is_marked_left_fibration,
    "marked-right-fibration": lifting.is_marked_right_fibration,
    "quasi-unital-map": unitality.is_quasi_unital_map,
}


def _rerun_all(rep: lifting.LiftingReport, f: SSetMap) -> lifting.LiftingReport:
    """Repeat a report that stopped early, collecting every counterexample."""
    again = (lifting.is_orthogonal if rep.orthogonal else lifting.has_rlp)(f, rep.family, rep.N, exhaustive=True)
    again.checks = rep.checks
    again.holds = again.holds and rep.holds
    return again


def cmd_check(args) -> int:
    N = args.dim
    t0 = time.perf_counter()
    if args.property in COMPLEX_CHECKS:
        X = _complex(args.document)
        out = COMPLEX_CHECKS[args.property](X, N)
        if isinstance(out, lifting.LiftingReport):
            marked = lifting.FAMILIES[out.family].marked
            base = _marked(X, N) if marked else underlying(_plain(X))
            f = to_terminal(base, max(N, underlying(base).dim_bound))
    elif args.property in MAP_CHECKS:
        f = _map_or_terminal(args.document, N)
        out = MAP_CHECKS[args.property](f, N)
    else:
        known = ", ".join(sorted({*COMPLEX_CHECKS, *MAP_CHECKS}))
        raise UsageError(f"unknown property {args.property!r}; known: {known}")
    if isinstance(out, lifting.LiftingReport):
        if args.mode == "all" and not out.complete:
            out = _rerun_all(out, f)
        v = _report_verdict(args.property, out, time.perf_counter() - t0)
    else:
        v = out
        v.seconds = v.seconds or time.perf_counter() - t0
    return _emit_verdict(v, args.json)


# -- validate -------------------------------------------------------------------


def cmd_validate(args) -> int:
    obj = parse(load(args.document))
    if isinstance(obj, FiniteCategory):
        v = Verdict("validate", None, True, {"objects": len(obj.objects), "morphisms": len(obj.morphisms)})
    elif isinstance(obj, SSetMap):
        v = Verdict("validate", None, True, {"kind": "map"})
    else:
        X = _plain(obj)
        r = validate(X.base if hasattr(X, "bottom") else X)
        extra = [str(e) for e in obj.identity_violations()] if isinstance(obj, SimplicialSet) else []
        if hasattr(obj, "violations"):
            extra += [str(e) for e in obj.violations()]
        v = Verdict(
            "validate",
            None,
            r.valid and not extra,
            {"sizes": underlying(X.base if hasattr(X, "bottom") else X).sizes()},
            [str(e) for e in r.violations] + extra,
        )
    return _emit_verdict(v, args.json)


# -- construct ------------------------------------------------------------------


def _point(X, args) -> SSetMap:
    if args.map:
        p = _map(args.map)
        if underlying(p.target).sizes() != underlying(X).sizes():
            raise UsageError("the map document's target is not the given complex")
        return SSetMap(p.source, X, p.components, check=True)
    if args.vertex is None:
        raise UsageError("give --vertex ID or --map FILE")
    if not underlying(X).contains(0, args.vertex):
        raise UsageError(f"{args.vertex!r} is not a vertex")
    return vertex_map(X, args.vertex)


def _extension(X, y, N):
    if isinstance(X, SimplicialSet):
        return terminal_extension_from_degeneracies(X, y, N)
    ext = find_terminal_extension(_plain(X), y, N)
    if not ext:
        raise UsageError(f"no terminal extension through {y!r} up to {N} (reached {ext.reached})")
    return ext


def cmd_construct(args) -> int:
    op, N, inputs = args.op, args.dim, args.inputs
    need = {"join": 2, "product": 2, "exp": 2}.get(op, 1)
    if len(inputs) != need:
        raise UsageError(f"{op} takes {need} document(s), got {len(inputs)}")
    prov = {"op": op, "inputs": inputs}
    if op == "nerve":
        C = parse_category(load(inputs[0]))
        prov["N"] = N
        _write(emit_complex(nerve(C, N), prov), args.output)
        return PASS
    X = _complex(inputs[0])
    if op == "join":
        out = join(_plain(X), _plain(_complex(inputs[1]))).complex
    elif op == "product":
        out = geometric_product(_plain(X), _plain(_complex(inputs[1])))
    elif op == "exp":
        prov["N"] = N
        out = exponential_truncated(_plain(X), _plain(_complex(inputs[1])), N)
    elif op in ("slice-under", "slice-over"):
        prov["N"] = N
        X = _plain(X)
        S = (slice_under if op == "slice-under" else slice_over)(X, _point(X, args), N)
        if args.projection:
            _write(emit_map(S.projection), args.projection)
        out = S.complex
    elif op == "hom-left":
        if args.vertex is None or args.target is None:
            raise UsageError("hom-left needs --vertex X and --target Y")
        prov.update(N=N, source=args.vertex, target=args.target)
        ext = _extension(X, args.target, N)
        out = hom_left(_plain(X), args.vertex, ext, N)
    elif op == "t-extend":
        if args.vertex is None:
            raise UsageError("t-extend needs --vertex Y")
        if isinstance(X, SimplicialSet):
            ext = terminal_extension_from_degeneracies(X, args.vertex, N)
        else:
            ext = find_terminal_extension(_plain(X), args.vertex, N)
        if not ext:
            # exhausted search: a definite negative answer, not an input error
            v = Verdict("t-extend", N, False, {}, [{"vertex": args.vertex, "reached": ext.reached, "explored": ext.explored}])
            return _emit_verdict(v, args.json)
        _write(emit_map(ext.as_map(underlying(_plain(X)))), args.output)
        return PASS
    elif op == "natural-marking":
        prov["N"] = N
        out = unitality.natural_marking(_plain(X), N)
    elif op == "forget":
        out = _plain(X)
    elif op == "free":
        prov["N"] = N
        out = free_simplicial(underlying(_plain(X)), N)
    else:
        raise UsageError(f"unknown construction {op!r}")
    _write(emit_complex(out, prov), args.output)
    return PASS


# -- factor, corpus, suite ------------------------------------------------------


def cmd_factor(args) -> int:
    f = _map_or_terminal(args.document, args.dim)
    fam = lifting.family(args.family)
    if fam.marked and not isinstance(f.source, MarkedSSet):
        raise UsageError(f"family {args.family} needs marked documents")
    fac = lifting.bounded_factorization(f, fam, args.dim, max_rounds=args.rounds)
    doc = {
        "family": args.family,
        "N": args.dim,
        "rounds": fac.rounds,
        "converged": fac.converged,
        "residual": fac.residual,
        "trace": jsonable(fac.trace),
        "middle": emit_complex(fac.cofibration.target),
    }
    if args.json or args.output:
        _write(doc, args.output)
    else:
        state = "converged" if fac.converged else f"stopped with {fac.residual} unfilled problems"
        print(f"{args.family} up to N={args.dim}: {len(fac.trace)} cells attached in {fac.rounds} rounds, {state}")
        for step in fac.trace:
            print(f"  round {step.round}: {step.generator}")
    return PASS if fac.converged else FAIL


def _spec(args) -> CorpusSpec:
    spec = CorpusSpec.from_json(load(args.spec)) if args.spec else CorpusSpec.default()
    return spec


def cmd_corpus(args) -> int:
    paths = write_corpus(_spec(args), args.out)
    if args.json:
        print(json.dumps({"written": paths}, indent=2))
    else:
        print(f"wrote {len(paths)} documents to {args.out}")
    return PASS


def cmd_suite(args) -> int:
    rep = run_suite(args.dim, _spec(args), heavy=args.heavy)
    if args.json:
        print(json.dumps(rep.to_json(), indent=2))
    else:
        for v in rep.verdicts:
            status = "pass" if v.holds else "FAIL"
            print(f"{status:4}  {v.subject:22} {v.property:28} {v.seconds:6.2f}s")
        passed = sum(v.holds for v in rep.verdicts)
        print(f"{passed}/{len(rep.verdicts)} checks pass up to N={rep.N}")
    return PASS if rep.holds else FAIL


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, default=None, help="truncation bound N (default: $QUASIUNITAL_DIM or 4)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--mode", choices=("first", "all"), default="first", help="stop at the first counterexample or collect all")

    p = argparse.ArgumentParser(prog="quasiunital", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="parse a document and check the face identities")
    s.add_argument("document")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("check", parents=[common], help="decide a property up to N")
    s.add_argument("property", help=", ".join(sorted({*COMPLEX_CHECKS, *MAP_CHECKS})))
    s.add_argument("document")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("construct", parents=[common], help="build a complex and emit its document")
    s.add_argument("op", choices=CONSTRUCT_OPS)
    s.add_argument("inputs", nargs="+")
    s.add_argument("-o", "--output")
    s.add_argument("--vertex", help="vertex id (slices, hom-left source, t-extend base)")
    s.add_argument("--target", help="hom-left target vertex")
    s.add_argument("--map", help="map document J -> X for slices")
    s.add_argument("--projection", help="also write the projection map document here")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("factor", parents=[common], help="bounded small object argument")
    s.add_argument("document", help="map document, or a complex (factored through the point)")
    s.add_argument("--family", default="J_I", choices=sorted(lifting.FAMILIES))
    s.add_argument("--rounds", type=int, default=3)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("corpus", parents=[common], help="write the corpus documents")
    s.add_argument("--spec", help="corpus spec JSON (default corpus otherwise)")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_corpus)

    s = sub.add_parser("suite", parents=[common], help="run every invariant over the corpus")
    s.add_argument("--spec")
    s.add_argument("--heavy", action="store_true", help="include exponential fibration checks")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] in CONSTRUCT_OPS:
        argv.insert(0, "construct")
    args = build_parser().parse_args(argv)
    try:
        if args.dim is None:
            args.dim = 3 if args.command == "suite" else default_dim()
        if args.dim < 0:
            raise UsageError("--dim must be non-negative")
        return args.func(args)
    except (DocumentError, MalformedComplexError, MapError, TruncationError, UsageError, KeyError, TypeError, ValueError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        if getattr(args, "json", False):
            print(json.dumps({"verdict": "error", "error": type(e).__name__, "message": str(msg)}))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
