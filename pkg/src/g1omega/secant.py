"""Equations of higher secant varieties from the quadrics of a curve.

Starting from the quadrics through a genus one normal curve C of degree n,
the forms of degree r+1 vanishing on Sec^r C are exactly the forms all of
whose first partials vanish on Sec^(r-1) C.  Iterating this reaches the
secant variety of codimension 2 (n even, two forms) or, with a final step
using the square of the ideal, the secant hypersurface (n odd).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Sequence, Tuple, Union

from .errors import DegenerateModelError, InvalidInputError
from .exactmath import (
    Polynomial,
    as_rational,
    from_vector,
    monomial_basis,
    monomial_index,
    normalize_forms,
    to_vector,
)
from .linalg import canonical_basis, sparse_kernel_basis
from .polysystems import solve_identity

__all__ = [
    "FormBasis",
    "beta",
    "lift_step",
    "hypersurface_step",
    "secant_chain",
]


@dataclass(frozen=True)
class FormBasis:
    """Canonical basis of a space of forms of one degree.

    Build with :meth:`from_forms`, which row-reduces the coefficient
    vectors, so two spans are equal exactly when their FormBasis are.
    """

    arity: int
    degree: int
    forms: Tuple[Polynomial, ...]

    @classmethod
    def from_forms(cls, forms: Sequence[Polynomial], arity: int | None = None,
                   degree: int | None = None) -> "FormBasis":
        forms = [p for p in forms]
        if arity is None:
            if not forms:
                raise ValueError("arity needed for an empty basis")
            arity = forms[0].arity
        if degree is None:
            degs = set().union(*(p.degrees() for p in forms)) if forms else set()
            if len(degs) != 1:
                raise ValueError("forms do not share a single degree")
            degree = degs.pop()
        for p in forms:
            if p.arity != arity or not p.is_form(degree):
                raise ValueError(f"not a form of degree {degree} in {arity} variables: {p}")
        vecs = [to_vector(p, degree) for p in forms]
        basis = canonical_basis(vecs, len(monomial_basis(arity, degree))) if vecs else []
        return cls(arity, degree, tuple(from_vector(v, arity, degree) for v in basis))

    @property
    def dimension(self) -> int:
        return len(self.forms)

    def __len__(self):
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)


def beta(r: int, n: int) -> int:
    """Number of r-subsets of Z/nZ with no two elements adjacent."""
    if r < 1 or n < 3:
        raise ValueError("need r >= 1 and n >= 3")
    return comb(n - r, r) + comb(n - r - 1, r - 1)


def _as_basis(B) -> FormBasis:
    return B if isinstance(B, FormBasis) else FormBasis.from_forms(list(B))


def lift_step(B: Union[FormBasis, Sequence[Polynomial]], check: bool = True) -> FormBasis:
    """All forms of degree d+1 whose partials lie in span(B), B of degree d.

    One sparse kernel computation: the unknowns are the coefficients of f
    and each constraint applies a row of the annihilator of span(B) to one
    partial derivative.  With ``check`` the dimension of the result must be
    ``beta(d + 1, n)``.
    """
    B = _as_basis(B)
    n, d = B.arity, B.degree
    low = monomial_basis(n, d)
    high = monomial_basis(n, d + 1)
    high_index = monomial_index(n, d + 1)
    # B is in reduced echelon form: pivots are the leading monomials
    low_index = monomial_index(n, d)
    pivots = []
    rref = []
    for p in B.forms:
        vec = to_vector(p, d)
        k = next(i for i, c in enumerate(vec) if c)
        lead = vec[k]
        pivots.append(k)
        rref.append([as_rational(Fraction(c, lead)) for c in vec] if lead != 1 else vec)
    pivset = set(pivots)

    def up(mono, i):
        e = list(mono)
        e[i] += 1
        t = tuple(e)
        return high_index[t], t[i]

    rows = []
    for m in range(len(low)):
        if m in pivset:
            continue
        # annihilator row: e_m - sum_k rref[k][m] e_{pivot k}
        ann = [(m, 1)] + [(pk, -rk[m]) for pk, rk in zip(pivots, rref) if rk[m]]
        for i in range(n):
            row = {}
            for col, w in ann:
                # coefficient of low monomial `col` in d f / d x_i comes from
                # the high monomial col + e_i with multiplicity (exponent)
                hi, mult = up(low[col], i)
                row[hi] = row.get(hi, 0) + w * mult
            rows.append(row)
    kern = sparse_kernel_basis(rows, len(high))
    out = FormBasis(n, d + 1, tuple(from_vector(v, n, d + 1) for v in kern))
    if check:
        expected = beta(d + 1, n)
        if out.dimension != expected:
            raise DegenerateModelError(
                f"degree {d + 1} step has dimension {out.dimension}, expected beta({d + 1},{n}) = {expected}"
            )
    return out


def hypersurface_step(B: Union[FormBasis, Sequence[Polynomial]], n: int | None = None,
                      rng: random.Random | None = None) -> Polynomial:
    """The degree-n form F (n = 2r + 1) all of whose partials lie in the
    span of pairwise products of the degree-r forms B.

    Solved through the gradient field: unknowns are the coefficients
    expressing each ``g_i = dF/dx_i`` in the products, constraints say
    ``(1/n) sum_j x_j g_j`` has gradient ``(g_1, ..., g_n)``.
    """
    B = _as_basis(B)
    r = B.degree
    if n is None:
        n = B.arity
    if n != B.arity or n != 2 * r + 1:
        raise InvalidInputError(f"hypersurface step needs n = 2r + 1; got n = {n}, r = {r}")
    if r < 2:
        raise InvalidInputError("hypersurface step needs r >= 2")
    gens = list(B.forms)
    gen_grads = [[p.diff(i) for i in range(1, n + 1)] for p in gens]
    pairs = [(a, b) for a in range(len(gens)) for b in range(a, len(gens))]
    prods = [gens[a] * gens[b] for a, b in pairs]
    m = len(pairs)
    unknowns = n * m
    xs = Polynomial.variables(n)

    def rows_at(point):
        vals = [g(point) for g in gens]
        grads = [[q(point) for q in gg] for gg in gen_grads]
        G = [vals[a] * vals[b] for a, b in pairs]
        dG = [[vals[a] * grads[b][i] + vals[b] * grads[a][i] for a, b in pairs] for i in range(n)]
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                pj = point[j]
                for k in range(m):
                    v = pj * dG[i][k]
                    if j == i:
                        v -= (n - 1) * G[k]
                    row.append(v)
            rows.append(row)
        return rows

    def gradient_field(vec):
        gs = []
        for i in range(n):
            total = Polynomial.zero(n)
            for k in range(m):
                c = vec[i * m + k]
                if c:
                    total = total + prods[k].scale(c)
            gs.append(total)
        return gs

    def potential(gs):
        f = Polynomial.zero(n)
        for x, g in zip(xs, gs):
            if g:
                f = f + x * g
        return f

    def residues(vec):
        gs = gradient_field(vec)
        f = potential(gs)
        return [f.diff(i + 1) - gs[i].scale(n) for i in range(n)]

    kern = solve_identity(unknowns, rows_at, residues, n, rng=rng)
    forms = [potential(gradient_field(v)) for v in kern]
    space = FormBasis.from_forms([f for f in forms if f], arity=n, degree=n)
    if space.dimension != 1:
        raise DegenerateModelError(
            f"degree {n} secant equations span dimension {space.dimension}, expected 1"
        )
    return normalize_forms([space.forms[0]])[0]


def secant_chain(quadrics: Union[FormBasis, Sequence[Polynomial]], n: int | None = None):
    """Equations of the secant variety of codimension 1 or 2.

    Returns ``F`` for odd n and the pair ``(F1, F2)`` for even n.  Every
    intermediate dimension is checked against :func:`beta`.
    """
    Q = _as_basis(quadrics)
    if n is None:
        n = Q.arity
    if n != Q.arity:
        raise InvalidInputError("arity of the quadrics differs from n")
    if Q.degree != 2:
        raise InvalidInputError("secant_chain expects quadrics")
    if n < 4:
        raise InvalidInputError("secant_chain needs n >= 4; a plane cubic is its own model")
    if Q.dimension != n * (n - 3) // 2:
        raise InvalidInputError(
            f"expected {n * (n - 3) // 2} independent quadrics, got {Q.dimension}"
        )
    B = Q
    if n % 2 == 0:
        while B.degree < n // 2:
            B = lift_step(B)
        return tuple(normalize_forms([p])[0] for p in B.forms)
    while B.degree < (n - 1) // 2:
        B = lift_step(B)
    return hypersurface_step(B, n)
