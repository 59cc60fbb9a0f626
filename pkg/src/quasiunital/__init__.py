"""Finite marked semi-simplicial sets: constructions, lifting problems and unitality checks."""
from .category import FiniteCategory, chain_poset, codiscrete_groupoid, cyclic_group
from .interchange import DocumentError, emit_complex, emit_map, parse, parse_complex, parse_map
from .lifting import (
    bounded_factorization,
    family,
    has_rlp,
    is_complete_semi_segal,
    is_inner_fibration,
    is_inner_kan,
    is_kan,
    is_kan_fibration,
    is_left_fibration,
    is_marked_inner_fibration,
    is_marked_inner_kan,
    is_marked_left_fibration,
    is_marked_right_fibration,
    is_orthogonal,
    is_right_fibration,
    is_trivial_fibration,
    solve_lift,
)
from .maps import SSetMap, compose, enumerate_maps, find_isomorphism, identity, inclusion, pullback, pushout, simplex_map, to_terminal, vertex_map
from .monoidal import (
    Exponential,
    augmented_join,
    exponential_restriction,
    exponential_truncated,
    geometric_product,
    join,
    join_map,
)
from .simplicial import SimplicialSet, counit, forget, free_simplicial, nerve, unit
from .slice import find_terminal_extension, free_slice, hom_left, slice_over, slice_under
from .sset import (
    AugmentedSSet,
    MalformedComplexError,
    MarkedSSet,
    SemiSimplicialSet,
    TruncationError,
    boundary,
    flat,
    horn,
    sharp,
    standard_simplex,
    validate,
)
from .unitality import (
    check_two_out_of_six,
    equivalences_horn,
    equivalences_witness,
    is_quasi_unital,
    is_quasi_unital_map,
    natural_marking,
    verify_theorem_A,
    verify_theorem_C,
)
from .verdict import Verdict

__version__ = "0.1.0"
