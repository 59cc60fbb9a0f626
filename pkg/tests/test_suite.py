from quasiunital.corpus import CorpusSpec, build_corpus, write_corpus
from quasiunital.interchange import load, parse
from quasiunital.suite import join_identity, product_free_compatibility, run_suite


def test_default_corpus_passes():
    rep = run_suite(3)
    assert rep.holds, [v.to_json() for v in rep.verdicts if not v.holds]
    doc = rep.to_json()
    assert doc["failed"] == 0 and doc["passed"] == len(rep.verdicts)
    subjects = {r["subject"] for r in doc["results"]}
    assert {e.name for e in build_corpus(CorpusSpec.default())} <= subjects


def test_global_identities():
    assert join_identity(3).holds
    assert product_free_compatibility(2).holds


def test_empty_spec_is_an_empty_report():
    rep = run_suite(3, CorpusSpec([], 3))
    assert rep.verdicts == [] and rep.holds


def test_written_corpus_parses(tmp_path):
    spec = CorpusSpec([{"kind": "group", "order": 2}, {"kind": "horn", "n": 2, "i": 1}], 3)
    paths = write_corpus(spec, str(tmp_path))
    assert paths and all(parse(load(p)) is not None for p in paths)


def test_spec_json_round_trip():
    spec = CorpusSpec.default(N=3)
    again = CorpusSpec.from_json(spec.to_json())
    assert again.generators == spec.generators and again.N == 3


def test_default_corpus_contents():
    names = [e.name for e in build_corpus(CorpusSpec.default())]
    expected = ["nerve-Z2", "nerve-Z3", "nerve-groupoid2"]
    expected += [f"nerve-chain{k}" for k in range(4)]
    expected += [f"simplex{n}" for n in range(4)] + [f"boundary{n}" for n in range(4)]
    expected += [f"horn{n}-{i}" for n in range(1, 4) for i in range(n + 1)]
    assert set(expected) <= set(names)


def test_public_api_runs_the_readme_example():
    import quasiunital as q

    X = q.nerve(q.cyclic_group(2), 4).base
    assert q.is_inner_kan(X, 3).holds
    assert q.is_quasi_unital(X, 3).witnesses == {"*": {"unit": ("g0",), "H": ("g0", "g0")}}
    assert not q.has_rlp(q.to_terminal(q.horn(2, 1), 2), "J_I", 2)
    assert len(q.bounded_factorization(q.to_terminal(q.horn(2, 1), 2), "J_I", 2).trace) == 1
