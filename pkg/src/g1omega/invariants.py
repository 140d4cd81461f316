"""Invariants c4 and c6 of an alternating matrix of quadratic forms, and the
Jacobian equation built from them."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import comb, factorial
from typing import Dict, List, Tuple

from .elliptic import SingularCurveError, WeierstrassCurve
from .errors import DegenerateModelError, InternalAssertionError
from .exactmath import Polynomial, as_rational
from .linalg import AltPolyMatrix

__all__ = [
    "matrix_M",
    "tensor_N",
    "c4_sum",
    "c6_sum",
    "c4",
    "c6",
    "invariants",
    "jacobian_equation",
]


def _partials(omega: AltPolyMatrix) -> List[List[List[Polynomial]]]:
    """d[i][r][s] = d Omega_ir / d x_s (1-based variables, 0-based lists)."""
    n = omega.size
    rows = omega.rows()
    return [[[rows[i][r].diff(s + 1) for s in range(n)] for r in range(n)] for i in range(n)]


def matrix_M(omega: AltPolyMatrix) -> List[List[Polynomial]]:
    """M_ij = sum_{r,s} dOmega_ir/dx_s * dOmega_js/dx_r; symmetric."""
    n = omega.size
    d = _partials(omega)
    zero = Polynomial.zero(omega.arity)
    M = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            total = zero
            for r in range(n):
                for s in range(n):
                    a, b = d[i][r][s], d[j][s][r]
                    if a and b:
                        total = total + a * b
            M[i][j] = total
            if i != j:
                M[j][i] = total
    # symmetry is by construction above; check it against the other order
    for i in range(n):
        for j in range(i + 1, n):
            other = zero
            for r in range(n):
                for s in range(n):
                    a, b = d[j][r][s], d[i][s][r]
                    if a and b:
                        other = other + a * b
            if other != M[i][j]:
                raise InternalAssertionError("M is not symmetric")
    return M


def tensor_N(omega: AltPolyMatrix, M=None) -> List[List[List[Polynomial]]]:
    """N_ijk = sum_r dM_ij/dx_r * Omega_rk (symmetric in i, j)."""
    n = omega.size
    if M is None:
        M = matrix_M(omega)
    rows = omega.rows()
    zero = Polynomial.zero(omega.arity)
    N = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            dM = [M[i][j].diff(r + 1) for r in range(n)]
            for k in range(n):
                total = zero
                for r in range(n):
                    if dM[r] and rows[r][k]:
                        total = total + dM[r] * rows[r][k]
                N[i][j][k] = total
                N[j][i][k] = total
    return N


def _derivative_table(p: Polynomial) -> Dict[Tuple[int, ...], object]:
    """All top-order partials of a form p, keyed by sorted 0-based index
    tuples; the value is coeff * prod(e_v!)."""
    out = {}
    for mono, c in p.items():
        idx = tuple(v for v, e in enumerate(mono) for _ in range(e))
        mult = 1
        for e in mono:
            mult *= factorial(e)
        out[idx] = c * mult
    return out


def c4_sum(omega: AltPolyMatrix, M=None):
    """sum_{i,j,r,s} d2M_ij/dx_r dx_s * d2M_rs/dx_i dx_j, unscaled."""
    n = omega.size
    if M is None:
        M = matrix_M(omega)
    H = [[_derivative_table(M[i][j]) for j in range(n)] for i in range(n)]
    total = 0
    for i in range(n):
        for j in range(n):
            for (r, s), v in H[i][j].items():
                key = (i, j) if i <= j else (j, i)
                w = H[r][s].get(key)
                if w:
                    # (r, s) and (s, r) are distinct summands when r != s
                    total += v * w * (1 if r == s else 2)
    return as_rational(total)


def c6_sum(omega: AltPolyMatrix, N=None):
    """sum over i,j,k,r,s,t of d3N_ijk/dx_r dx_s dx_t * d3N_rst/dx_i dx_j dx_k."""
    n = omega.size
    if N is None:
        N = tensor_N(omega)
    T = {}
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                T[(i, j, k)] = _derivative_table(N[i][j][k])

    def lookup(a, b, c, idx):
        key = (a, b, c) if a <= b else (b, a, c)
        return T[key].get(idx)

    total = 0
    for (i, j, k), table in T.items():
        weight = 1 if i == j else 2  # N_ijk = N_jik
        target = tuple(sorted((i, j, k)))
        sub = 0
        for idx, v in table.items():
            for r, s, t in set(permutations(idx)):
                w = lookup(r, s, t, target)
                if w:
                    sub += v * w
        total += weight * sub
    return as_rational(total)


def _prefactor4(n: int) -> Fraction:
    return Fraction(3 * (n - 2) ** 2, 16 * n * comb(n + 3, 5))


def _prefactor6(n: int) -> Fraction:
    return Fraction(-((n - 2) ** 3), 64 * n * comb(n + 5, 7))


def _check_size(omega: AltPolyMatrix):
    if omega.size < 3:
        raise ValueError("invariants need n >= 3")
    if omega.degrees() - {2}:
        raise ValueError("entries must be quadratic forms")


def c4(omega: AltPolyMatrix, M=None):
    """Degree-4 invariant of Omega."""
    _check_size(omega)
    return as_rational(_prefactor4(omega.size) * c4_sum(omega, M))


def c6(omega: AltPolyMatrix, N=None):
    """Degree-6 invariant of Omega."""
    _check_size(omega)
    return as_rational(_prefactor6(omega.size) * c6_sum(omega, N))


def invariants(omega: AltPolyMatrix):
    """``(c4, c6)`` sharing the computation of M."""
    _check_size(omega)
    M = matrix_M(omega)
    N = tensor_N(omega, M)
    return c4(omega, M), c6(omega, N)


def jacobian_equation(c4_value, c6_value) -> WeierstrassCurve:
    """y^2 = x^3 - 27 c4 x - 54 c6.

    Raises :class:`DegenerateModelError` when the result is singular, which
    happens exactly when the input was not a smooth genus one model.
    """
    c4_value, c6_value = as_rational(c4_value), as_rational(c6_value)
    try:
        return WeierstrassCurve(0, 0, 0, -27 * c4_value, -54 * c6_value)
    except SingularCurveError as exc:
        raise DegenerateModelError("input not a smooth genus one model (c4^3 = c6^2)") from exc
