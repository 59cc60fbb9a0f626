import pytest

from oracles import binomial_sizes, chains, naive_maps
from quasiunital.category import chain_poset, cyclic_group, empty_category
from quasiunital.maps import compose, enumerate_maps, is_levelwise_injective, pushout, inclusion, simplex_map
from quasiunital.simplicial import forget, nerve
from quasiunital.sset import (
    AugmentedSSet,
    MalformedComplexError,
    MarkedSSet,
    SemiSimplicialSet,
    TruncationError,
    boundary,
    disjoint_union,
    empty,
    fully_marked,
    horn,
    sharp,
    standard_simplex,
    terminal_truncated,
    validate,
)


def corrupt_d0_of_d2(X):
    """Set d_2 of the 2-simplex to the edge 02: only d0 d2 = d1 d0 breaks (d1 d2 = d1 d1 still holds)."""
    levels = [list(X.level(n)) for n in range(X.dim_bound + 1)]
    faces = {n: {c: list(X.faces_of(n, c)) for c in X.level(n)} for n in range(1, X.dim_bound + 1)}
    faces[2][(0, 1, 2)][2] = (0, 2)
    return SemiSimplicialSet(levels, faces)


class TestValidate:
    def test_simplex_is_valid(self):
        assert validate(standard_simplex(2)).valid

    def test_corrupted_face_reports_one_violation(self):
        report = validate(corrupt_d0_of_d2(standard_simplex(2)))
        assert not report.valid
        assert [(v.dim, v.i, v.j) for v in report.violations] == [(2, 0, 2)]

    def test_nerve_of_z2_is_valid(self):
        assert validate(nerve(cyclic_group(2), 4).base).valid

    def test_constructor_rejects_unknown_face(self):
        with pytest.raises(MalformedComplexError):
            SemiSimplicialSet([["a"], ["e"]], {1: {"e": ["a", "b"]}})

    def test_constructor_rejects_wrong_arity(self):
        with pytest.raises(MalformedComplexError):
            SemiSimplicialSet([["a"], ["e"]], {1: {"e": ["a"]}})


class TestShapes:
    @pytest.mark.parametrize("n", range(5))
    def test_simplex_sizes(self, n):
        assert standard_simplex(n).sizes() == binomial_sizes(n)

    def test_horn_sizes(self):
        assert horn(2, 1).sizes() == (3, 2)

    def test_boundary_sizes(self):
        assert boundary(3).sizes() == binomial_sizes(3, drop_top=1) == (4, 6, 4)

    @pytest.mark.parametrize("n,i", [(n, i) for n in range(1, 4) for i in range(n + 1)])
    def test_horn_omits_one_face(self, n, i):
        H, B = horn(n, i), boundary(n)
        missing = set(B.level(n - 1)) - set(H.level(n - 1))
        assert missing == {tuple(k for k in range(n + 1) if k != i)}

    def test_horn_bad_index(self):
        with pytest.raises(ValueError):
            horn(2, 3)

    def test_terminal(self):
        T = terminal_truncated(3)
        assert T.sizes() == (1, 1, 1, 1)
        assert T.faces_of(3, "*") == ("*",) * 4
        with pytest.raises(TruncationError):
            T.level(4)

    def test_finite_levels_above_dim_are_empty(self):
        assert standard_simplex(1).level(5) == ()


class TestMarking:
    def test_marking_must_be_edges(self):
        with pytest.raises(MalformedComplexError):
            MarkedSSet(standard_simplex(1), frozenset({"nope"}))

    def test_fully_marked_of_sharp_is_everything(self):
        X = nerve(cyclic_group(2), 3).base
        assert fully_marked(sharp(X)) == X

    def test_fully_marked_keeps_only_marked_simplices(self):
        X = MarkedSSet(standard_simplex(2), frozenset({(0, 1), (1, 2)}))
        F = fully_marked(X)
        assert F.sizes() == (3, 2)


class TestNerve:
    def test_z2_sizes(self):
        assert nerve(cyclic_group(2), 3).base.sizes() == tuple(len(chains(cyclic_group(2), n)) for n in range(4))
        assert nerve(cyclic_group(2), 3).base.sizes() == (1, 2, 4, 8)

    def test_poset_sizes(self):
        C = chain_poset(2)
        assert nerve(C, 2).base.sizes() == tuple(len(chains(C, n)) for n in range(3)) == (2, 3, 4)

    def test_empty_category(self):
        assert all(s == 0 for s in nerve(empty_category(), 3).base.sizes())

    def test_identities_hold(self):
        assert nerve(cyclic_group(3), 3).identity_violations() == []

    def test_forget_keeps_degenerate(self):
        assert forget(nerve(cyclic_group(2), 3)).sizes() == (1, 2, 4, 8)


class TestMaps:
    def test_vertices_of_simplex(self):
        assert len(enumerate_maps(standard_simplex(0), standard_simplex(2))) == 3

    def test_edges_of_nerve(self):
        X = forget(nerve(cyclic_group(2), 3))
        assert len(enumerate_maps(standard_simplex(1), X)) == len(naive_maps(standard_simplex(1), X)) == 2

    def test_no_map_from_terminal_into_simplex(self):
        assert enumerate_maps(terminal_truncated(2), standard_simplex(2)) == []

    @pytest.mark.parametrize("n", range(4))
    def test_yoneda(self, n):
        X = forget(nerve(chain_poset(3), 4))
        assert len(enumerate_maps(standard_simplex(n), X)) == len(X.level(n))

    def test_search_matches_naive_enumeration(self):
        pairs = [(horn(2, 1), boundary(2)), (boundary(2), horn(3, 0)), (standard_simplex(1), disjoint_union(horn(2, 0), standard_simplex(1)))]
        for A, B in pairs:
            assert len(enumerate_maps(A, B)) == len(naive_maps(A, B))

    def test_compose_and_injective(self):
        f = inclusion(horn(2, 1), standard_simplex(2))
        g = simplex_map(standard_simplex(3), 2, (0, 1, 3))
        h = compose(g, f)
        assert is_levelwise_injective(h)
        assert h(1, (0, 1)) == (0, 1) and h(1, (1, 2)) == (1, 3)


class TestPushout:
    def test_two_edges_along_a_point(self):
        a = simplex_map(standard_simplex(1), 0, (1,))
        b = simplex_map(standard_simplex(1), 0, (0,))
        P = pushout(a, b)
        assert P.complex.sizes() == (3, 2)
        assert validate(P.complex).valid

    def test_attach_triangle_to_horn(self):
        j = inclusion(horn(2, 1), standard_simplex(2))
        ident = inclusion(horn(2, 1), horn(2, 1))
        P = pushout(j, ident)
        assert P.complex.sizes() == standard_simplex(2).sizes()

    def test_two_tetrahedra_along_a_face(self):
        f = simplex_map(standard_simplex(3), 2, (0, 1, 2))
        P = pushout(f, f)
        # inclusion-exclusion: 2 * C(4, k+1) - C(3, k+1)
        assert P.complex.sizes() == tuple(2 * a - b for a, b in zip(binomial_sizes(3), binomial_sizes(2) + (0,)))

    def test_non_injective_leg_rejected(self):
        f = enumerate_maps(standard_simplex(1), terminal_truncated(1))[0]
        with pytest.raises(ValueError):
            pushout(f, inclusion(standard_simplex(1), standard_simplex(1)))


def test_augmented_fiber():
    A = AugmentedSSet(standard_simplex(1), ["p", "q"], {(0,): "p", (1,): "q"})
    assert A.violations()
    B = AugmentedSSet(standard_simplex(1), ["p"], {(0,): "p", (1,): "p"})
    assert B.violations() == [] and B.fiber("p") == standard_simplex(1)
    assert A.sizes()[0] == 2


def test_empty():
    assert empty().sizes() == () and validate(empty()).valid
