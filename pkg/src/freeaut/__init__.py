"""Exact computations with free groups, their automorphisms and lower central series."""

from .errors import InputError, NotInFiltrationError, SizeGuardError
from .word import Endo, Word, apply, commutator, compose, identity, parse_word
from .series import Tensor, TruncSeries, bracket, lcs_weight, lie_class, magnus
from .hall import BasicCommutator, basic_commutators, bc_to_tensor, bc_to_word, hall_basis, lyndon_count, witt_rank
from .zlin import EchelonBasis, IntMatrix, rank, snf
from .liealg import Derivation, LiePresentation, der_bracket, graded_subalgebra_ranks, leibniz_extend, presented_lie_ranks
from .autgrp import (
    GroupSpec,
    GroupWord,
    Nu,
    Upper,
    Xi,
    XiTriple,
    andreadakis_member,
    conjecture_probe,
    endo_of,
    evaluate,
    gamma_generators,
    gr_rank,
    johnson,
    theorem_A4_basis_rank,
    verify_relations,
)
from .cohom import ExtElement, PresentationData, betti, build_ideal, poincare_check

__version__ = "0.1.0"
