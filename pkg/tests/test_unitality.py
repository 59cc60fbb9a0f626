import pytest

from oracles import isomorphisms
from quasiunital.category import FiniteCategory, chain_poset, codiscrete_groupoid, cyclic_group
from quasiunital.corpus import bare_loop
from quasiunital.lifting import is_marked_inner_kan
from quasiunital.maps import enumerate_maps, identity, to_terminal
from quasiunital.simplicial import nerve
from quasiunital.sset import MarkedSSet, disjoint_union, empty, sharp, standard_simplex, underlying
from quasiunital.unitality import (
    DegeneracyViolation,
    OuterDegeneracyData,
    UnitalityError,
    check_left_fib_over_point,
    check_outer_degeneracies,
    check_two_out_of_six,
    chosen_units,
    equivalences_horn,
    equivalences_witness,
    idempotent_edges,
    idempotent_witness,
    inverse_witness,
    is_quasi_unital,
    is_quasi_unital_map,
    natural_marking,
    outer_degeneracy_violations,
    verify_theorem_A,
    verify_theorem_C,
)

CATEGORIES = {
    "z2": cyclic_group(2),
    "z3": cyclic_group(3),
    "chain2": chain_poset(2),
    "chain3": chain_poset(3),
    "groupoid2": codiscrete_groupoid(2),
}


def idempotent_morphisms(C):
    return {f for f, (s, t) in C.morphisms.items() if s == t and C.compose[(f, f)] == f}


def monoid_with_idempotent():
    """One object, morphisms 1 and e with e.e = e."""
    comp = {("1", "1"): "1", ("1", "e"): "e", ("e", "1"): "e", ("e", "e"): "e"}
    return FiniteCategory(("*",), {"1": ("*", "*"), "e": ("*", "*")}, {"*": "1"}, comp, "idem")


class TestIdempotents:
    @pytest.mark.parametrize("name", list(CATEGORIES))
    def test_nerve_idempotents(self, name):
        C = CATEGORIES[name]
        X = nerve(C, 3).base
        assert {s.edge[0] for s in idempotent_edges(X)} == idempotent_morphisms(C)

    def test_edge_has_none(self):
        assert idempotent_edges(standard_simplex(1)) == []

    def test_group_generator_is_not_idempotent(self):
        X = nerve(cyclic_group(2), 3).base
        assert idempotent_witness(X, ("g1",)) is None
        assert idempotent_witness(X, ("g0",)) == ("g0", "g0")

    def test_bare_loop_has_no_witness(self):
        assert idempotent_edges(bare_loop()) == []


class TestEquivalences:
    @pytest.mark.parametrize("name", list(CATEGORIES))
    def test_match_isomorphisms(self, name):
        C = CATEGORIES[name]
        X = nerve(C, 4).base
        assert {e[0] for e in equivalences_horn(X, 3)} == isomorphisms(C)

    def test_non_invertible_idempotent(self):
        C = monoid_with_idempotent()
        X = nerve(C, 4).base
        assert equivalences_horn(X, 3) == {("1",)} and isomorphisms(C) == {"1"}

    def test_empty(self):
        assert equivalences_horn(empty(), 3) == frozenset()

    def test_natural_marking(self):
        X = nerve(cyclic_group(2), 4).base
        assert natural_marking(X, 3) == sharp(X)
        P = nerve(chain_poset(2), 4).base
        assert natural_marking(P, 3).marked == {("0->0",), ("1->1",)}

    def test_inverse_witnesses_agree(self):
        for name in ("z3", "chain3", "groupoid2"):
            X = nerve(CATEGORIES[name], 4).base
            units = chosen_units(X, 3)
            assert equivalences_witness(X, units) == equivalences_horn(X, 3)

    def test_inverse_witness_shape(self):
        X = nerve(cyclic_group(3), 4).base
        g, H = inverse_witness(X, ("g1",), chosen_units(X, 3))
        assert g == ("g2",)
        assert H == ("g1", "g2", "g1")

    def test_missing_unit_is_an_error(self):
        with pytest.raises(UnitalityError):
            equivalences_witness(standard_simplex(1), {})


class TestQuasiUnital:
    @pytest.mark.parametrize("name", list(CATEGORIES))
    def test_nerves(self, name):
        X = nerve(CATEGORIES[name], 4).base
        v = is_quasi_unital(X, 3)
        assert v.holds and set(v.witnesses) == set(X.level(0))

    def test_edge_fails_on_both_vertices(self):
        v = is_quasi_unital(standard_simplex(1), 2)
        assert not v.holds and v.counterexamples == [{"vertex": (0,)}, {"vertex": (1,)}]

    def test_functor_image_is_quasi_unital(self):
        X, Y = nerve(chain_poset(2), 3).base, nerve(cyclic_group(2), 3).base
        maps = enumerate_maps(X, Y)
        assert maps
        assert all(is_quasi_unital_map(F, 3).holds for F in maps)

    def test_unit_sent_to_non_equivalence(self):
        X = nerve(cyclic_group(1), 3).base
        Y = nerve(monoid_with_idempotent(), 4).base
        maps = {F(1, ("g0",)): F for F in enumerate_maps(X, Y)}
        assert set(maps) == {("1",), ("e",)}
        assert is_quasi_unital_map(maps[("1",)], 3).holds
        bad = is_quasi_unital_map(maps[("e",)], 3)
        assert not bad.holds and bad.counterexamples[0]["image"] == ("e",)


class TestTwoOutOfSix:
    def test_partial_marking_fails(self):
        v = check_two_out_of_six(standard_simplex(3), {(0, 2), (1, 3)})
        assert not v.holds and v.counterexamples[0]["simplex"] == (0, 1, 2, 3)

    def test_full_marking_passes(self):
        assert check_two_out_of_six(standard_simplex(3), standard_simplex(3).level(1)).holds

    @pytest.mark.parametrize("name", list(CATEGORIES))
    def test_natural_marking_is_closed(self, name):
        X = nerve(CATEGORIES[name], 4).base
        assert check_two_out_of_six(X, equivalences_horn(X, 3)).holds


class TestOuterDegeneracies:
    def test_nerve_data_is_valid(self):
        S = nerve(cyclic_group(2), 3)
        assert check_outer_degeneracies(S.base, OuterDegeneracyData.from_simplicial(S)).holds

    def test_corrupted_s0_is_reported(self):
        S = nerve(cyclic_group(2), 3)
        D = OuterDegeneracyData.from_simplicial(S)
        D.s0[1][("g1",)] = ("g1", "g0")
        out = outer_degeneracy_violations(S.base, D)
        low = {(v.identity, v.cell) for v in out if v.dim <= 1}
        assert low == {("d0 s0 = id", ("g1",)), ("s0 d1 = d2 s0", ("g1",))}
        # in dimension 2 only cells with a g1 face, checked through the corrupted entry, can break
        assert all(v.dim == 2 and ("g1",) in S.base.faces_of(2, v.cell) for v in out if v.dim > 1)

    def test_edge_has_no_outer_degeneracies(self):
        X = standard_simplex(1)
        D = OuterDegeneracyData({0: {(0,): (0, 1), (1,): (0, 1)}}, {0: {(0,): (0, 1), (1,): (0, 1)}})
        out = outer_degeneracy_violations(X, D)
        assert DegeneracyViolation("d0 s0 = id", 0, (0,)) in out
        assert DegeneracyViolation("d1 s0 = id", 0, (1,)) in out

    def test_missing_entry(self):
        X = nerve(cyclic_group(2), 3)
        D = OuterDegeneracyData.from_simplicial(X)
        del D.s_omega[0]["*"]
        assert DegeneracyViolation("s_omega defined", 0, "*") in outer_degeneracy_violations(X.base, D)


class TestTheorems:
    @pytest.mark.parametrize("name", list(CATEGORIES))
    def test_theorem_c_on_nerves(self, name):
        S = nerve(CATEGORIES[name], 4)
        v = verify_theorem_C(S.base, OuterDegeneracyData.from_simplicial(S), 3)
        assert v.holds and all(w["idempotent"] and w["equivalence"] for w in v.witnesses.values())

    def test_theorem_c_rejects_bad_data(self):
        S = nerve(cyclic_group(2), 3)
        D = OuterDegeneracyData.from_simplicial(S)
        D.s0[1][("g0",)] = ("g1", "g1")
        v = verify_theorem_C(S.base, D, 3)
        assert not v.holds and v.notes

    def test_theorem_a_group(self):
        v = verify_theorem_A(nerve(cyclic_group(2), 4).base, 3)
        assert v.holds and v.witnesses["quasi_unital"] and v.witnesses["marked_inner_kan"]

    def test_theorem_a_both_false(self):
        X = disjoint_union(standard_simplex(1), bare_loop())
        v = verify_theorem_A(X, 3)
        assert v.holds and not v.witnesses["quasi_unital"] and not v.witnesses["marked_inner_kan"]

    def test_marked_edges_are_equivalences(self):
        for name in CATEGORIES:
            X = natural_marking(nerve(CATEGORIES[name], 4).base, 3)
            rep = is_marked_inner_kan(X, 3)
            assert rep.holds and rep.checks["marked_are_equivalences"]
            assert natural_marking(underlying(X), 3) == X

    def test_extra_marking_is_caught(self):
        P = nerve(chain_poset(2), 4).base
        X = MarkedSSet(P, frozenset(P.level(1)))
        rep = is_marked_inner_kan(X, 3)
        assert not rep.holds and rep.checks["unmarkable_edges"] == [("0->1",)]


class TestLeftFibrationOverPoint:
    def test_group_is_sharp_and_kan(self):
        X = sharp(nerve(cyclic_group(2), 4).base)
        v = check_left_fib_over_point(to_terminal(X, 3), 3)
        assert v.holds and v.witnesses == {"marked_left_fibration": True, "all_marked": True, "kan": True}

    def test_point_itself(self):
        T = to_terminal(sharp(standard_simplex(0)), 3)
        assert check_left_fib_over_point(T, 3).holds

    def test_identity_of_terminal(self):
        from quasiunital.sset import terminal_truncated

        T = sharp(terminal_truncated(3))
        v = check_left_fib_over_point(identity(T), 3)
        assert v.holds and v.witnesses["marked_left_fibration"]

    def test_non_fibration_is_vacuous(self):
        X = natural_marking(standard_simplex(1), 2)
        v = check_left_fib_over_point(to_terminal(X, 2), 2)
        assert v.holds and not v.witnesses["marked_left_fibration"]
