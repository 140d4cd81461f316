"""Weierstrass curves, their function fields, and degree-n embeddings.

Coordinates of the degree-n embedding are the functions
``x_m`` for ``m`` in ``(0, 2, 3, ..., n)``, where ``x_m = x^(m/2)`` for
even ``m`` and ``x_m = x^((m-3)/2) * y`` for odd ``m``.  Position ``p``
(1-based) in every vector and polynomial ring of the package holds the
label ``coordinate_labels(n)[p-1]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .exactmath import Polynomial, as_rational, monomial_basis
from .linalg import kernel_basis

__all__ = [
    "WeierstrassCurve",
    "CurvePoint",
    "INFINITY",
    "SingularCurveError",
    "curve_invariants",
    "point_add",
    "point_neg",
    "point_mul",
    "reduce_on_curve",
    "rr_basis",
    "coordinate_labels",
    "label_exponents",
    "curve_quadrics",
    "point_vector",
    "change_coordinates",
    "homogenized_cubic",
    "standard_points",
]


class SingularCurveError(ValueError):
    """Raised for a Weierstrass equation with zero discriminant."""


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q."""

    a1: object = 0
    a2: object = 0
    a3: object = 0
    a4: object = 0
    a6: object = 0

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.discriminant == 0:
            raise SingularCurveError(f"singular Weierstrass equation {self.a_invariants}")

    @property
    def a_invariants(self) -> Tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b2(self):
        return self.a1 ** 2 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3 ** 2 + 4 * self.a6

    @property
    def b8(self):
        a1, a2, a3, a4, a6 = self.a_invariants
        return a1 ** 2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 ** 2 - a4 ** 2

    @property
    def c4(self):
        return as_rational(self.b2 ** 2 - 24 * self.b4)

    @property
    def c6(self):
        return as_rational(-self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6)

    @property
    def discriminant(self):
        return as_rational(Fraction(self.c4 ** 3 - self.c6 ** 2, 1728))

    @property
    def j_invariant(self):
        return as_rational(Fraction(self.c4 ** 3) / self.discriminant)

    def contains(self, x, y) -> bool:
        a1, a2, a3, a4, a6 = self.a_invariants
        return y * y + a1 * x * y + a3 * y == x ** 3 + a2 * x * x + a4 * x + a6

    def __str__(self):
        return "[" + ", ".join(str(a) for a in self.a_invariants) + "]"


def curve_invariants(E: WeierstrassCurve):
    """``(b2, b4, b6, c4, c6, discriminant, j)`` of a Weierstrass curve."""
    return (
        as_rational(E.b2),
        as_rational(E.b4),
        as_rational(E.b6),
        E.c4,
        E.c6,
        E.discriminant,
        E.j_invariant,
    )


def change_coordinates(E: WeierstrassCurve, u, r, s, t) -> WeierstrassCurve:
    """The curve E' with x = u^2 x' + r, y = u^3 y' + u^2 s x' + t."""
    u, r, s, t = (Fraction(as_rational(v)) for v in (u, r, s, t))
    a1, a2, a3, a4, a6 = (Fraction(a) for a in E.a_invariants)
    a1p = (a1 + 2 * s) / u
    a2p = (a2 - s * a1 + 3 * r - s * s) / u ** 2
    a3p = (a3 + r * a1 + 2 * t) / u ** 3
    a4p = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u ** 4
    a6p = (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1) / u ** 6
    return WeierstrassCurve(a1p, a2p, a3p, a4p, a6p)


# ---------------------------------------------------------------------------
# group law


@dataclass(frozen=True)
class CurvePoint:
    """A point of E(Q); ``x is None`` encodes the point at infinity."""

    x: Optional[object] = None
    y: Optional[object] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None


INFINITY = CurvePoint()


def _point(E: WeierstrassCurve, x, y) -> CurvePoint:
    x, y = as_rational(x), as_rational(y)
    if not E.contains(x, y):
        raise ValueError(f"({x}, {y}) is not on {E}")
    return CurvePoint(x, y)


def point_neg(E: WeierstrassCurve, P: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return P
    return CurvePoint(P.x, as_rational(-P.y - E.a1 * P.x - E.a3))


def point_add(E: WeierstrassCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    a1, a2, a3, a4, a6 = (Fraction(a) for a in E.a_invariants)
    x1, y1, x2, y2 = (Fraction(v) for v in (P.x, P.y, Q.x, Q.y))
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return INFINITY
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return _point(E, x3, y3)


def point_mul(E: WeierstrassCurve, k: int, P: CurvePoint) -> CurvePoint:
    if k < 0:
        return point_mul(E, -k, point_neg(E, P))
    result = INFINITY
    addend = P
    while k:
        if k & 1:
            result = point_add(E, result, addend)
        addend = point_add(E, addend, addend)
        k >>= 1
    return result


# ---------------------------------------------------------------------------
# function field and Riemann-Roch spaces


def reduce_on_curve(p: Polynomial, E: WeierstrassCurve) -> Polynomial:
    """Normal form of a polynomial in (x, y) with y-degree at most 1.

    Uses y^2 = x^3 + a2 x^2 + a4 x + a6 - a1 x y - a3 y repeatedly.
    """
    if p.arity != 2:
        raise ValueError("reduce_on_curve expects a polynomial in (x, y)")
    a1, a2, a3, a4, a6 = E.a_invariants
    # y^2 replaced by sum of (coeff, dx, dy)
    rule = [(1, 3, 0), (a2, 2, 0), (a4, 1, 0), (a6, 0, 0), (-a1, 1, 1), (-a3, 0, 1)]
    rule = [t for t in rule if t[0]]
    todo = dict(p.items())
    done = {}
    while todo:
        (ex, ey), c = todo.popitem()
        if ey <= 1:
            done[(ex, ey)] = done.get((ex, ey), 0) + c
            continue
        for k, dx, dy in rule:
            key = (ex + dx, ey - 2 + dy)
            todo[key] = todo.get(key, 0) + c * k
    return Polynomial(2, done)


def coordinate_labels(n: int) -> List[int]:
    """Subscripts ``(0, 2, 3, ..., n)`` of the embedding coordinates."""
    if n < 3:
        raise ValueError("degree n must be at least 3")
    return [0] + list(range(2, n + 1))


def label_exponents(m: int) -> Tuple[int, int]:
    """``(a, b)`` with x_m = x^a y^b on the curve."""
    if m < 0 or m == 1:
        raise ValueError(f"x_{m} is not a regular function on E minus 0_E")
    if m % 2 == 0:
        return m // 2, 0
    return (m - 3) // 2, 1


def rr_basis(n: int) -> List[Polynomial]:
    """Basis ``1, x, y, x^2, x y, ...`` of L(n.0_E) as polynomials in (x, y)."""
    return [Polynomial(2, {label_exponents(m): 1}) for m in coordinate_labels(n)]


def _l2n_basis(n: int) -> List[Tuple[int, int]]:
    return sorted(
        [(a, b) for b in (0, 1) for a in range(n + 1) if 2 * a + 3 * b <= 2 * n],
        key=lambda t: (2 * t[0] + 3 * t[1]),
    )


def curve_quadrics(E: WeierstrassCurve, n: int) -> List[Polynomial]:
    """Basis of the quadrics vanishing on the degree-n embedding of E.

    The kernel of the evaluation map from quadratic monomials in the n
    coordinates to L(2n.0_E); its dimension is asserted to be n(n-3)/2.
    """
    if n < 4:
        raise ValueError("curve_quadrics needs n >= 4; for n = 3 use the plane cubic")
    funcs = rr_basis(n)
    target = {t: i for i, t in enumerate(_l2n_basis(n))}
    monos = monomial_basis(n, 2)
    cols = []
    for mono in monos:
        idx = [i for i, e in enumerate(mono) for _ in range(e)]
        prod = reduce_on_curve(funcs[idx[0]] * funcs[idx[1]], E)
        col = [0] * len(target)
        for t, c in prod.items():
            col[target[t]] = c
        cols.append(col)
    matrix = [list(r) for r in zip(*cols)]
    kern = kernel_basis(matrix)
    expected = n * (n - 3) // 2
    if len(kern) != expected:
        raise AssertionError(f"quadric space has dimension {len(kern)}, expected {expected}")
    return [Polynomial(n, {m: c for m, c in zip(monos, v) if c}) for v in kern]


def homogenized_cubic(E: WeierstrassCurve) -> Polynomial:
    """Weierstrass equation in the coordinates (x_0, x_2, x_3) = (z, x, y)."""
    a1, a2, a3, a4, a6 = E.a_invariants
    terms = {
        (1, 0, 2): 1,  # y^2 z
        (1, 1, 1): a1,
        (2, 0, 1): a3,
        (0, 3, 0): -1,
        (1, 2, 0): -a2,
        (2, 1, 0): -a4,
        (3, 0, 0): -a6,
    }
    return Polynomial(3, terms)


def point_vector(E: WeierstrassCurve, P: CurvePoint, n: int):
    """Values ``vP`` of the coordinate functions at P, and ``dvP`` of their
    derivatives df/omega with omega = dx/(2y + a1 x + a3)."""
    if P.is_infinity:
        raise ValueError("point_vector is undefined at the point at infinity")
    a1, a2, a3, a4, a6 = E.a_invariants
    x, y = P.x, P.y
    xdot = 2 * y + a1 * x + a3
    ydot = 3 * x * x + 2 * a2 * x + a4 - a1 * y
    vP, dvP = [], []
    for m in coordinate_labels(n):
        a, b = label_exponents(m)
        vP.append(as_rational(x ** a * y ** b))
        d = 0
        if a:
            d += a * x ** (a - 1) * y ** b * xdot
        if b:
            d += x ** a * ydot
        dvP.append(as_rational(d))
    return vP, dvP


def standard_points(E: WeierstrassCurve, P: CurvePoint, count: int) -> List[CurvePoint]:
    """The multiples P, 2P, ..., stopping after ``count`` affine points."""
    out = []
    Q = INFINITY
    k = 0
    while len(out) < count:
        k += 1
        Q = point_add(E, Q, P)
        if Q.is_infinity:
            raise ValueError("base point has small order")
        out.append(Q)
        if k > 100 * count:
            raise RuntimeError("could not generate points")
    return out
