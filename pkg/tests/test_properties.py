"""Randomised checks over sub-complexes of small simplices."""
import itertools
import json

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from oracles import map_items, naive_fillers, naive_maps
from quasiunital.interchange import dumps, emit_complex, parse_complex
from quasiunital.lifting import family, lifting_problems, solve_lift
from quasiunital.maps import enumerate_maps, find_isomorphism, to_terminal
from quasiunital.monoidal import geometric_product, join
from quasiunital.sset import MarkedSSet, standard_simplex, validate

SETTINGS = settings(max_examples=40, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow])


def closure(tops):
    cells = set()
    for t in tops:
        for k in range(1, len(t) + 1):
            cells.update(itertools.combinations(t, k))
    return cells


@st.composite
def subcomplexes(draw, m=3, max_tops=4):
    """Downward closure of a few simplices of ``Delta^m``."""
    simplices = [c for k in range(1, m + 2) for c in itertools.combinations(range(m + 1), k)]
    tops = draw(st.lists(st.sampled_from(simplices), min_size=1, max_size=max_tops))
    cells = closure(tops)
    D = standard_simplex(m)
    return D.restrict([{c for c in D.level(n) if c in cells} for n in range(m + 1)])


@st.composite
def marked_subcomplexes(draw, m=3):
    X = draw(subcomplexes(m))
    edges = list(X.level(1)) if X.dim_bound >= 1 else []
    marked = draw(st.sets(st.sampled_from(edges))) if edges else set()
    return MarkedSSet(X, frozenset(marked))


@SETTINGS
@given(subcomplexes())
def test_subcomplexes_validate(X):
    assert validate(X).valid


@SETTINGS
@given(subcomplexes(m=4))
def test_yoneda(X):
    for n in range(X.dim_bound + 1):
        assert len(enumerate_maps(standard_simplex(n), X)) == len(X.level(n))


@SETTINGS
@given(subcomplexes(m=2, max_tops=2), subcomplexes(m=3, max_tops=3))
def test_search_agrees_with_naive(A, B):
    got = {map_items(h) for h in enumerate_maps(A, B)}
    assert got == {frozenset(h.items()) for h in naive_maps(A, B)}


@SETTINGS
@given(marked_subcomplexes(m=2), marked_subcomplexes(m=2))
def test_marked_search_agrees_with_naive(A, B):
    assert len(enumerate_maps(A, B)) == len(naive_maps(A, B))


@SETTINGS
@given(st.one_of(subcomplexes(), marked_subcomplexes()))
def test_round_trip(X):
    doc = emit_complex(X)
    Y = parse_complex(json.loads(dumps(doc)))
    assert emit_complex(Y) == doc
    assert find_isomorphism(X, Y)


@SETTINGS
@given(subcomplexes(m=2), subcomplexes(m=2))
def test_join_level_counts(J, K):
    R = join(J, K).carrier
    assert validate(R).valid
    for n in range(R.dim_bound + 1):
        pairs = sum(len(J.level(i)) * len(K.level(n - 1 - i)) for i in range(n))
        assert len(R.level(n)) == len(J.level(n)) + len(K.level(n)) + pairs


@SETTINGS
@given(subcomplexes(m=2), subcomplexes(m=2))
def test_product_counts_grid_chains(X, Y):
    # n-simplices: strictly increasing chains in [2] x [2] whose projections are simplices of X and Y
    grid = list(itertools.product(range(3), repeat=2))
    P = geometric_product(X, Y)
    assert validate(P).valid
    for n in range(5):
        expected = 0
        for chain in itertools.combinations(grid, n + 1):
            if not all(a[0] <= b[0] and a[1] <= b[1] for a, b in zip(chain, chain[1:])):
                continue
            xs = tuple(sorted({a for a, _ in chain}))
            ys = tuple(sorted({b for _, b in chain}))
            if X.contains(len(xs) - 1, xs) and Y.contains(len(ys) - 1, ys):
                expected += 1
        assert len(P.level(n)) == expected


@SETTINGS
@given(subcomplexes(m=3), st.sampled_from(["J_KQ", "I_KQ"]))
def test_fillers_agree_with_naive(X, name):
    f = to_terminal(X, 2)
    for gen in family(name).members(2):
        for P in lifting_problems(gen, f):
            got = {map_items(h) for h in solve_lift(P, mode="all").fillers}
            assert got == naive_fillers(P)
