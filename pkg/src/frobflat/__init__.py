"""Frobenius Tor vanishing and flat dimension over graded quotients of F_p[x_1..x_n]."""
from .algebra_core import Limits, PolyRing, Polynomial, PrimeField, frobenius_power, parse_polynomial
from .detector import (
    CRBound, FlatDimVerdict, LoewyBound, cr_upper_bound, detect_flat_dimension, flatdim_oracle,
    loewy_bounds_koszul, remark_example, verify_tor_decomposition, verify_window_collapse,
)
from .errors import ConsistencyError, FrobFlatError, InputError, LimitError, PreconditionError
from .frobenius import frobenius_functor, kunz_test, tor_frobenius
from .groebner import Matrix, buchberger, ideal_basis
from .homological import (
    Complex, ModulePresentation, homology, koszul_complex, minimal_free_resolution,
    semifree_resolution,
)
from .invariants import (
    depth, find_sop, hilbert, is_cohen_macaulay, is_regular, krull_dim, loewy_length,
    multiplicity, ring_invariants,
)
from .rings import QuotientRing

__version__ = "0.1.0"

__all__ = [
    "Limits", "PolyRing", "Polynomial", "PrimeField", "frobenius_power", "parse_polynomial",
    "CRBound", "FlatDimVerdict", "LoewyBound", "cr_upper_bound", "detect_flat_dimension",
    "flatdim_oracle", "loewy_bounds_koszul", "remark_example", "verify_tor_decomposition",
    "verify_window_collapse",
    "ConsistencyError", "FrobFlatError", "InputError", "LimitError", "PreconditionError",
    "frobenius_functor", "kunz_test", "tor_frobenius",
    "Matrix", "buchberger", "ideal_basis",
    "Complex", "ModulePresentation", "homology", "koszul_complex", "minimal_free_resolution",
    "semifree_resolution",
    "depth", "find_sop", "hilbert", "is_cohen_macaulay", "is_regular", "krull_dim",
    "loewy_length", "multiplicity", "ring_invariants",
    "QuotientRing",
]
