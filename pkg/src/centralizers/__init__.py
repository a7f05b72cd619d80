"""Finite rings, additive maps and exact solution of centralizer-type identities."""

__version__ = "0.1.0"

from .budget import BudgetExceeded
from .constructors import cyclic_ring, matrix_ring, parse_ring_expr, triangular_example_ring
from .engine import SolutionSpace, classify, solve_identity, solve_staged, verify_sufficiency
from .howell import ModularSolution, howell_form, kernel_mod_n
from .identities import Identity, builtin_identities, get_law, parse_law
from .maps import AdditiveMap, is_jordan_left, is_left_centralizer, is_right_centralizer
from .ring import RingSpec, Verdict, center, is_prime, is_semiprime

__all__ = [
    "AdditiveMap",
    "BudgetExceeded",
    "Identity",
    "ModularSolution",
    "RingSpec",
    "SolutionSpace",
    "Verdict",
    "builtin_identities",
    "center",
    "classify",
    "cyclic_ring",
    "get_law",
    "howell_form",
    "is_jordan_left",
    "is_left_centralizer",
    "is_prime",
    "is_right_centralizer",
    "is_semiprime",
    "kernel_mod_n",
    "matrix_ring",
    "parse_law",
    "parse_ring_expr",
    "solve_identity",
    "solve_staged",
    "triangular_example_ring",
    "verify_sufficiency",
]
