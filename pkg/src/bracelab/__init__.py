"""Finite left braces: construction, substructures, series, Dedekind braces,
extraspecial braces, Yang-Baxter solutions and enumeration."""

from .brace import (
    BraceHom,
    BraceValidationError,
    EngineError,
    FiniteBrace,
    TupleCodec,
    abelian_brace,
    direct_product,
    quotient,
    restrict,
    subset_star,
    validate,
)
from .config import CapExceeded
from .enumeration import AbelianGroupSpec, abelian_groups, automorphisms, enumerate_braces
from .extraspecial import (
    FamilySpec,
    brace_from_form,
    classify_strong,
    dedekind_criterion,
    extract_form,
    family,
    recognize_extraspecial,
)
from .fp import BilinearForm, Subspace
from .isomorphism import SearchBudgetExceeded, are_isomorphic, isomorphism_search
from .masks import SubsetMask
from .series import compute_series, dedekind_structure_decompose, is_dedekind, nilpotency_report
from .substructures import all_subbraces, annihilators, is_ideal, is_left_ideal, is_subbrace, socle_fix_centre
from .ybe import associated_solution, check_solution

__version__ = "0.1.0"
