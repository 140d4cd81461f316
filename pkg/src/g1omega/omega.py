"""The alternating matrix Omega: solving for it, the GL_n action on it, and
runtime certificates (annihilation, Pfaffians, rank on secant points)."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactmath import (
    Polynomial,
    as_rational,
    monomial_basis,
    normalize_forms,
    poly_diff,
    poly_substitute_linear,
)
from .linalg import AltPolyMatrix, RatMatrix, kernel_basis, minors_2x2, pfaffian, rank
from .polysystems import DegenerateModelError, InconsistentInputError, solve_identity

__all__ = [
    "OmegaMatrix",
    "normalize_omega",
    "solve_omega",
    "gl_act",
    "verify_annihilation",
    "verify_pfaffians",
    "rank_at_secant_point",
    "secant_point",
    "proportionality",
    "PfaffianMismatch",
]


class OmegaMatrix(AltPolyMatrix):
    """Alternating matrix of quadratic forms with a provenance tag
    (``"solved"``, ``"explicit"`` or ``"classical"``)."""

    __slots__ = ("provenance",)

    def __init__(self, size, arity, upper=None, provenance="solved"):
        super().__init__(size, arity, upper)
        self.provenance = provenance

    @classmethod
    def wrap(cls, m: AltPolyMatrix, provenance: str) -> "OmegaMatrix":
        out = cls(m.size, m.arity, provenance=provenance)
        out._upper = dict(m._upper)
        return out

    def map(self, fn):
        return OmegaMatrix.wrap(super().map(fn), self.provenance)

    def __add__(self, other):
        return OmegaMatrix.wrap(super().__add__(other), self.provenance)


class PfaffianMismatch(AssertionError):
    pass


def normalize_omega(m: AltPolyMatrix, provenance: Optional[str] = None) -> OmegaMatrix:
    """Canonical representative of the scalar class of ``m``: primitive
    integer coefficients, first nonzero coefficient (entries in row-major
    upper-triangle order, terms in grlex order) positive."""
    keys = [ij for ij, _ in m.upper_items()]
    entries = normalize_forms([m[ij] for ij in keys])
    prov = provenance or getattr(m, "provenance", "solved")
    out = OmegaMatrix(m.size, m.arity, provenance=prov)
    for ij, p in zip(keys, entries):
        out[ij] = p
    return out


def _check_rows(grad_rows, n):
    if len(grad_rows) not in (1, 2):
        raise ValueError("need one gradient row (n odd) or two (n even)")
    for row in grad_rows:
        if len(row) != n or any(p.arity != n for p in row):
            raise ValueError("gradient rows must have n entries in n variables")


def solve_omega(grad_rows: Sequence[Sequence[Polynomial]], n: int, rng=None) -> OmegaMatrix:
    """Alternating matrix of quadratic forms annihilated by the gradient rows.

    First the space S of quadratic syzygies ``sum_i row_i v_i = 0`` (shared
    by every row) is found; then the alternating matrices whose columns lie
    in S.  The latter space must be one-dimensional.
    """
    _check_rows(grad_rows, n)
    quad = monomial_basis(n, 2)
    nq = len(quad)
    unknowns = n * nq
    qpolys = [Polynomial(n, {m: 1}) for m in quad]

    def syzygy_residues(vec):
        v = [
            Polynomial(n, {m: c for m, c in zip(quad, vec[i * nq:(i + 1) * nq]) if c})
            for i in range(n)
        ]
        out = []
        for row in grad_rows:
            total = Polynomial.zero(n)
            for g, vi in zip(row, v):
                if g and vi:
                    total = total + g * vi
            out.append(total)
        return out

    def syzygy_rows_at(point):
        qvals = [q(point) for q in qpolys]
        rows = []
        for row in grad_rows:
            gvals = [g(point) for g in row]
            rows.append([gv * qv for gv in gvals for qv in qvals])
        return rows

    syz = solve_identity(unknowns, syzygy_rows_at, syzygy_residues, n, rng=rng)
    if not syz:
        raise InconsistentInputError("gradient rows have no quadratic syzygies")
    k = len(syz)
    # columns of Omega: col_j = sum_t T[t][j] * syz[t]; unknowns T (k x n)
    # constraints: entry (i, j) + entry (j, i) = 0 for i <= j, coefficientwise
    rows = []
    for i in range(n):
        for j in range(i, n):
            for q in range(nq):
                row = [0] * (k * n)
                for t in range(k):
                    a = syz[t][i * nq + q]  # entry i of column j
                    b = syz[t][j * nq + q]  # entry j of column i
                    if a:
                        row[t * n + j] += a
                    if b:
                        row[t * n + i] += b
                if any(row):
                    rows.append(row)
    sol = kernel_basis(RatMatrix(rows, k * n)) if rows else [[int(c == r) for c in range(k * n)] for r in range(k * n)]
    if not sol:
        raise InconsistentInputError("no alternating matrix of quadratic syzygies")
    if len(sol) > 1:
        raise DegenerateModelError(
            f"space of alternating quadratic syzygy matrices has dimension {len(sol)}"
        )
    T = sol[0]
    omega = OmegaMatrix(n, n, provenance="solved")
    for i in range(n):
        for j in range(i + 1, n):
            coeffs = [sum(T[t * n + j] * syz[t][i * nq + q] for t in range(k)) for q in range(nq)]
            omega[i, j] = Polynomial(n, {m: c for m, c in zip(quad, coeffs) if c})
    if omega.is_zero():
        raise InconsistentInputError("solution is the zero matrix")
    return normalize_omega(omega, "solved")


def gl_act(g, omega: AltPolyMatrix) -> AltPolyMatrix:
    """``g * Omega = g^{-T} Omega(sum_i g_i1 x_i, ...) g^{-1}``, not normalized."""
    gm = g if isinstance(g, RatMatrix) else RatMatrix(g)
    n = omega.size
    if gm.rows != n or gm.cols != n:
        raise ValueError("g has the wrong size")
    if gm.determinant() == 0:
        raise ZeroDivisionError("g is singular")
    ginv = gm.inverse().entries
    sub = {ij: poly_substitute_linear(p, gm.entries) for ij, p in omega._upper.items()}
    out = AltPolyMatrix(n, omega.arity)
    for i in range(n):
        for j in range(i + 1, n):
            total = Polynomial.zero(omega.arity)
            for (a, b), p in sub.items():
                # Omega_ab and Omega_ba = -Omega_ab
                c = ginv[a][i] * ginv[b][j] - ginv[b][i] * ginv[a][j]
                if c:
                    total = total + p.scale(c)
            out[i, j] = total
    if isinstance(omega, OmegaMatrix):
        return OmegaMatrix.wrap(out, omega.provenance)
    return out


def _row_times_omega(row: Sequence[Polynomial], omega: AltPolyMatrix, j: int) -> Polynomial:
    total = Polynomial.zero(omega.arity)
    for i, g in enumerate(row):
        if i != j and g:
            e = omega[i, j]
            if e:
                total = total + g * e
    return total


def verify_annihilation(omega: AltPolyMatrix, grad_rows) -> Dict[str, bool]:
    """Check ``row . Omega = 0`` for every gradient row, and for two rows
    the bilinear identity ``grad F1 . Omega . grad F2 = 0``."""
    n = omega.size
    report = {"annihilation": True}
    for row in grad_rows:
        if len(row) != n:
            return {"annihilation": False}
        for j in range(n):
            if not _row_times_omega(row, omega, j).is_zero():
                report["annihilation"] = False
                break
    if len(grad_rows) == 2:
        r1, r2 = grad_rows
        total = Polynomial.zero(omega.arity)
        for j in range(n):
            if r2[j]:
                total = total + _row_times_omega(r1, omega, j) * r2[j]
        report["bilinear"] = total.is_zero()
    report["ok"] = all(report.values())
    return report


def proportionality(lhs: Sequence[Polynomial], rhs: Sequence[Polynomial]):
    """The scalar c with lhs[k] == c * rhs[k] for all k, or None."""
    c = None
    for a, b in zip(lhs, rhs):
        if b.is_zero():
            if not a.is_zero():
                return None
            continue
        if c is None:
            mono, bc = next(iter(b.items()))
            c = Fraction(a.coeff(mono)) / Fraction(bc)
        if a != b.scale(c):
            return None
    if c is None:
        return None
    return as_rational(c)


def verify_pfaffians(omega: AltPolyMatrix, grad_rows) -> object:
    """Return the single scalar relating the signed sub-Pfaffians of Omega
    to the gradient (one row) or to its 2x2 minors (two rows).

    One row: ``(-1)^i pf(Omega minus row/col i) = c * dF/dx_i``.
    Two rows: ``(-1)^(i+j) pf(Omega minus i, j) = c * minor_ij``.
    Indices are 1-based in these formulas.  Raises
    :class:`PfaffianMismatch` if no such nonzero scalar exists.
    """
    n = omega.size
    if len(grad_rows) == 1:
        if n % 2 == 0:
            raise ValueError("one gradient row requires odd n")
        row = grad_rows[0]
        pfs = []
        for i in range(n):
            keep = [k for k in range(n) if k != i]
            p = pfaffian(omega, keep)
            pfs.append(p if (i + 1) % 2 == 0 else -p)
        target = list(row)
    elif len(grad_rows) == 2:
        if n % 2:
            raise ValueError("two gradient rows require even n")
        minors = minors_2x2(grad_rows)
        pfs, target = [], []
        for (i, j), mnr in minors.items():
            keep = [k for k in range(n) if k not in (i, j)]
            p = pfaffian(omega, keep)
            pfs.append(p if (i + j) % 2 == 0 else -p)
            target.append(mnr)
    else:
        raise ValueError("need one or two gradient rows")
    c = proportionality(pfs, target)
    if c is None or c == 0:
        raise PfaffianMismatch("sub-Pfaffians are not a common multiple of the gradient data")
    return c


def secant_point(vectors: Sequence[Sequence], xi: Sequence) -> List:
    n = len(vectors[0])
    return [as_rational(sum(x * v[k] for x, v in zip(xi, vectors))) for k in range(n)]


def rank_at_secant_point(omega: AltPolyMatrix, E, points, xi) -> int:
    """Rank of Omega evaluated at sum_i xi_i vP_i for curve points P_i."""
    from .elliptic import point_vector

    n = omega.size
    if len(points) != len(xi):
        raise ValueError("need one coefficient per point")
    vecs = [point_vector(E, P, n)[0] for P in points]
    P = secant_point(vecs, xi)
    return rank(omega.evaluate(P))


def random_invertible(n: int, rng: random.Random, lo: int = -3, hi: int = 3) -> RatMatrix:
    while True:
        g = RatMatrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])
        if g.determinant() != 0:
            return g
