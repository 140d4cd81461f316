"""From a genus one model to Omega, its invariants and the Jacobian."""

from __future__ import annotations

from typing import List, Optional, Tuple

from .elliptic import CurvePoint, WeierstrassCurve, curve_quadrics, homogenized_cubic, point_add
from .errors import InternalAssertionError
from .exactmath import Polynomial
from .explicit import classical_omega_cubic
from .invariants import invariants, jacobian_equation
from .jsonio import JacobianReport, ModelInput
from .linalg import gradient
from .omega import (
    OmegaMatrix,
    PfaffianMismatch,
    normalize_omega,
    rank_at_secant_point,
    solve_omega,
    verify_annihilation,
    verify_pfaffians,
)
from .secant import secant_chain

__all__ = ["model_equations", "compute_omega", "full_jacobian", "secant_ranks"]


def model_equations(model: ModelInput):
    """The defining equations used for Omega: a cubic (n = 3), the pair of
    quadrics (n = 4) or the output of the secant chain (n >= 5)."""
    n = model.degree
    if model.kind == "cubic":
        return model.cubic
    if model.kind == "weierstrass":
        if n == 3:
            return homogenized_cubic(model.curve)
        quadrics = curve_quadrics(model.curve, n)
    else:
        quadrics = model.quadrics
    if n == 4:
        return tuple(quadrics)
    return secant_chain(quadrics, n)


def _grad_rows(equations) -> List[List[Polynomial]]:
    if isinstance(equations, tuple):
        return [gradient(f) for f in equations]
    return [gradient(equations)]


def compute_omega(model: ModelInput) -> Tuple[OmegaMatrix, List[List[Polynomial]]]:
    """Normalized Omega for the model, and the gradient rows it annihilates."""
    equations = model_equations(model)
    rows = _grad_rows(equations)
    if model.degree == 3:
        omega = normalize_omega(classical_omega_cubic(equations), "classical")
    else:
        omega = solve_omega(rows, model.degree)
    return omega, rows


def _test_points(E: WeierstrassCurve, count: int) -> List[CurvePoint]:
    """Distinct affine points: multiples of the small integral points of E."""
    out: List[CurvePoint] = []
    for x in range(-10, 11):
        for y in range(-40, 41):
            if not E.contains(x, y):
                continue
            P = Q = CurvePoint(x, y)
            for _ in range(2 * count):
                if Q.is_infinity or len(out) >= count:
                    break
                if Q not in out:
                    out.append(Q)
                Q = point_add(E, Q, P)
    return out[:count]


def secant_ranks(omega: OmegaMatrix, E: WeierstrassCurve) -> Optional[List[int]]:
    """Ranks of Omega at sum xi_i vP_i for r = 1, ..., (n-1)//2 points.

    The expected value is 2r.  A mismatch is resampled once with other
    points and coefficients before being reported.  ``None`` if E has too
    few small integral points.
    """
    top = (omega.size - 1) // 2
    points = _test_points(E, top)
    if len(points) < top:
        return None
    expected = [2 * r for r in range(1, top + 1)]
    ranks = None
    for pts, xi in ((points, [1, 2, -3]), (points[::-1], [3, -1, 7])):
        ranks = [rank_at_secant_point(omega, E, pts[:r], xi[:r]) for r in range(1, top + 1)]
        if ranks == expected:
            break
    return ranks


def full_jacobian(model: ModelInput, verify: bool = False) -> JacobianReport:
    """Omega, c4, c6 and y^2 = x^3 - 27 c4 x - 54 c6 for a genus one model.

    With ``verify`` the annihilation identities, the sub-Pfaffian relation
    and (for Weierstrass input) the ranks on secant points are certified;
    any failure raises :class:`InternalAssertionError`.
    """
    omega, rows = compute_omega(model)
    c4, c6 = invariants(omega)
    jac = jacobian_equation(c4, c6)
    checks = {"dimensions": True}
    if verify:
        ann = verify_annihilation(omega, rows)
        if not ann["ok"]:
            raise InternalAssertionError(f"annihilation failed: {ann}")
        checks["annihilation"] = True
        if "bilinear" in ann:
            checks["bilinear"] = True
        try:
            checks["pfaffian_scalar"] = verify_pfaffians(omega, rows)
        except PfaffianMismatch as exc:
            raise InternalAssertionError(str(exc)) from exc
        if model.kind == "weierstrass" and model.degree >= 3:
            ranks = secant_ranks(omega, model.curve)
            if ranks is not None:
                if ranks != [2 * r for r in range(1, len(ranks) + 1)]:
                    raise InternalAssertionError(f"secant ranks {ranks} are not 2, 4, ...")
                checks["secant_ranks"] = ranks
    return JacobianReport(
        degree=model.degree,
        omega=omega,
        c4=c4,
        c6=c6,
        jacobian=jac,
        j=jac.j_invariant,
        checks=checks,
    )
