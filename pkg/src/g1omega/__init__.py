"""Exact computation of the alternating matrix Omega attached to a genus one
normal curve, its invariants c4 and c6, and the Jacobian elliptic curve
y^2 = x^3 - 27 c4 x - 54 c6.

All arithmetic is over the rationals; nothing is approximated.
"""

from .elliptic import (
    INFINITY,
    CurvePoint,
    SingularCurveError,
    WeierstrassCurve,
    curve_invariants,
    curve_quadrics,
    homogenized_cubic,
    point_add,
    point_vector,
    reduce_on_curve,
    rr_basis,
)
from .errors import (
    DegenerateModelError,
    G1Error,
    InconsistentInputError,
    InternalAssertionError,
    InvalidInputError,
)
from .exactmath import Polynomial, monomial_basis, poly_diff, poly_eval, poly_substitute_linear
from .explicit import (
    build_A,
    build_B,
    build_omega_explicit,
    classical_omega_cubic,
    classical_omega_quadric_pair,
    lambda_matrix,
    xbar,
    xdot,
)
from .invariants import c4, c6, invariants, jacobian_equation, matrix_M, tensor_N
from .jsonio import JacobianReport, ModelInput
from .linalg import AltPolyMatrix, RatMatrix, kernel_basis, minors_2x2, pfaffian, rank
from .omega import (
    OmegaMatrix,
    gl_act,
    normalize_omega,
    rank_at_secant_point,
    solve_omega,
    verify_annihilation,
    verify_pfaffians,
)
from .pipeline import compute_omega, full_jacobian
from .secant import FormBasis, beta, hypersurface_step, lift_step, secant_chain

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
