"""Exact and numeric tools for the icosahedral Galois representation attached to
the curve y^2 = x^3 + (5 - sqrt5) x^2 + sqrt5 x over Q(sqrt5)."""

from .ring_arith import CycloQuadElem, FiniteField, PrimeIdeal, QuadElem, prime_ideals_up_to, split_prime
from .elliptic import E0, CurveQ5, count_points, j_invariant, reduce_curve
from .icosahedral import dirichlet_coeffs, resolve_trace, resolve_traces, verify_qcurve
from .dirichlet import DirichletChar, eisenstein_coeffs, gen_bernoulli, l_partial_sum
from .qexp import QExpansion
from .klein import klein_forward, klein_solve, moebius_transform
from .kernels import BACKEND_NAME

__version__ = "0.1.0"

__all__ = [
    "QuadElem", "CycloQuadElem", "FiniteField", "PrimeIdeal", "split_prime", "prime_ideals_up_to",
    "CurveQ5", "E0", "j_invariant", "reduce_curve", "count_points",
    "resolve_trace", "resolve_traces", "dirichlet_coeffs", "verify_qcurve",
    "DirichletChar", "l_partial_sum", "gen_bernoulli", "eisenstein_coeffs",
    "QExpansion", "klein_forward", "klein_solve", "moebius_transform",
    "BACKEND_NAME",
]
