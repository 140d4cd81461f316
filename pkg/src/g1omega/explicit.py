"""Closed-form alternating matrices.

* ``nB - 2A`` for the embedding of a Weierstrass curve by 1, x, y, x^2, ...,
  built over an indexed family of indeterminates x_m with the Weierstrass
  coefficients kept symbolic;
* the diagonal-type test matrix Lambda;
* the classical matrices for a plane cubic and for a pair of quadrics.

Symbolic coefficients live in Q[a1, a2, a3, a4, a6] (a Polynomial of arity
5); ``a5`` is identically zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

from .elliptic import WeierstrassCurve, coordinate_labels
from .errors import InternalAssertionError
from .exactmath import Polynomial, poly_diff
from .linalg import AltPolyMatrix
from .omega import OmegaMatrix, normalize_omega

__all__ = [
    "IndexedLinearForm",
    "IndexedQuadratic",
    "window",
    "xdot",
    "xbar",
    "build_A",
    "build_B",
    "b_entry",
    "symbolic_omega",
    "a_coefficient",
    "omega_entry_matrix",
    "build_omega_explicit",
    "lambda_matrix",
    "classical_omega_cubic",
    "classical_omega_quadric_pair",
    "om1_formula",
    "gamma",
]

A_NAMES = ("a1", "a2", "a3", "a4", "a6")
_A_POS = {1: 0, 2: 1, 3: 2, 4: 3, 6: 4}
_ONE = Polynomial.constant(5, 1)
_ZERO = Polynomial.zero(5)


def acoef(i: int) -> Polynomial:
    """The symbol a_i as an element of the coefficient ring (a_5 = 0)."""
    if i == 5:
        return _ZERO
    return Polynomial.variable(5, _A_POS[i] + 1)


def window(n: int) -> range:
    return range(-6, n + 8)


class IndexedLinearForm:
    """Linear form sum_m c_m x_m with coefficients in Q[a1..a6]."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[int, Polynomial] | None = None):
        self.coeffs = {m: c for m, c in (coeffs or {}).items() if not c.is_zero()}

    def add_term(self, m: int, c: Polynomial):
        v = self.coeffs.get(m, _ZERO) + c
        if v.is_zero():
            self.coeffs.pop(m, None)
        else:
            self.coeffs[m] = v

    def __add__(self, other):
        out = IndexedLinearForm(dict(self.coeffs))
        for m, c in other.coeffs.items():
            out.add_term(m, c)
        return out

    def scale(self, c) -> "IndexedLinearForm":
        return IndexedLinearForm({m: v * c for m, v in self.coeffs.items()})

    def labels(self) -> set:
        return set(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, IndexedLinearForm) and self.coeffs == other.coeffs

    def __repr__(self):
        return " + ".join(f"({c})*x_{m}" for m, c in sorted(self.coeffs.items())) or "0"


def _var(m: int) -> IndexedLinearForm:
    return IndexedLinearForm({m: _ONE})


class IndexedQuadratic:
    """Quadratic form sum c_{pq} x_p x_q (p <= q) over Q[a1..a6]."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[Tuple[int, int], Polynomial] | None = None):
        self.coeffs = {}
        for k, c in (coeffs or {}).items():
            self.add_term(k, c)

    def add_term(self, key, c: Polynomial):
        p, q = key
        key = (p, q) if p <= q else (q, p)
        v = self.coeffs.get(key, _ZERO) + c
        if v.is_zero():
            self.coeffs.pop(key, None)
        else:
            self.coeffs[key] = v

    @classmethod
    def product(cls, u: IndexedLinearForm, v: IndexedLinearForm) -> "IndexedQuadratic":
        out = cls()
        for p, cp in u.coeffs.items():
            for q, cq in v.coeffs.items():
                out.add_term((p, q), cp * cq)
        return out

    def __add__(self, other: "IndexedQuadratic") -> "IndexedQuadratic":
        out = IndexedQuadratic(self.coeffs)
        for k, c in other.coeffs.items():
            out.add_term(k, c)
        return out

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "IndexedQuadratic":
        return IndexedQuadratic({k: v * c for k, v in self.coeffs.items()})

    def labels(self) -> set:
        return {m for k in self.coeffs for m in k}

    def is_zero(self) -> bool:
        return not self.coeffs

    def a_part(self, i: int | None) -> "IndexedQuadratic":
        """Coefficient of a_i (``None``: the a-free part); the form must be
        affine-linear in the a's."""
        out = {}
        for k, c in self.coeffs.items():
            for mono, v in c.items():
                deg = sum(mono)
                if deg > 1:
                    raise ValueError("not affine-linear in the Weierstrass coefficients")
                if i is None and deg == 0:
                    out[k] = out.get(k, 0) + v
                elif i is not None and deg == 1 and mono[_A_POS[i]] == 1:
                    out[k] = out.get(k, 0) + v
        return IndexedQuadratic({k: Polynomial.constant(5, v) for k, v in out.items()})

    def specialize(self, E: WeierstrassCurve) -> Dict[Tuple[int, int], object]:
        vals = {j + 1: a for j, a in enumerate(E.a_invariants)}
        out = {}
        for k, c in self.coeffs.items():
            v = c.subs(vals).constant_value()
            if v:
                out[k] = v
        return out

    def __eq__(self, other):
        return isinstance(other, IndexedQuadratic) and self.coeffs == other.coeffs

    def __repr__(self):
        return " + ".join(f"({c})*x_{p}*x_{q}" for (p, q), c in sorted(self.coeffs.items())) or "0"


def _check_window(m: int, n: int | None):
    if n is not None and m not in window(n):
        raise ValueError(f"index {m} outside the window [-6, {n + 7}]")


def _half_group(m: int, factor: Fraction) -> IndexedLinearForm:
    # factor * (2 x_{m+1} + a1 x_m + a3 x_{m-2})
    f = IndexedLinearForm()
    f.add_term(m + 1, _ONE * (2 * factor))
    f.add_term(m, acoef(1) * factor)
    f.add_term(m - 2, acoef(3) * factor)
    return f


def xdot(m: int, n: int | None = None) -> IndexedLinearForm:
    """The linear form representing d(x_m)/omega."""
    _check_window(m, n)
    f = _half_group(m, Fraction(m, 2))
    if m % 2:
        for i in range(1, 7):
            f.add_term(m + 1 - i, acoef(i) * ((-1) ** i * (m - Fraction(i, 2))))
    return f


def xbar(m: int, n: int | None = None) -> IndexedLinearForm:
    """The linear form representing x_{m-2} (2y + a1 x + a3) / 2."""
    _check_window(m, n)
    f = _half_group(m, Fraction(1, 2))
    if m % 2:
        for i in range(1, 7):
            f.add_term(m + 1 - i, acoef(i) * ((-1) ** i))
    return f


def a_entry(r: int, s: int) -> IndexedQuadratic:
    return IndexedQuadratic.product(_var(r), xdot(s)) - IndexedQuadratic.product(_var(s), xdot(r))


def _q(i: int, j: int) -> IndexedQuadratic:
    out = IndexedQuadratic()
    if i < j + 2:
        k = 0
        while i + 2 * k <= j:
            out.add_term((i + 2 * k, j - 2 * k), _ONE)
            k += 1
    elif i > j + 2:
        k = 1
        while i - 2 * k >= j + 2:
            out.add_term((i - 2 * k, j + 2 * k), -_ONE)
            k += 1
    return out


def b_entry(r: int, s: int) -> IndexedQuadratic:
    """B_rs from the finite closed forms (same parity / mixed parity)."""
    if r == s:
        return IndexedQuadratic()
    if (r - s) % 2 == 0:
        if r > s:
            return -b_entry(s, r)
        out = IndexedQuadratic()
        k = 0
        while r + 2 * k < s:
            out = out + IndexedQuadratic.product(_var(r + 2 * k), xbar(s - 2 * k))
            k += 1
        return out.scale(2)
    if r % 2:
        return -b_entry(s, r)
    # r even, s odd
    out = IndexedQuadratic.product(_var(r), _var(s)).scale(-acoef(1))
    out = out + _q(r, s + 1)
    for i, shift in ((2, 1), (4, 3), (6, 5)):
        out = out + _q(r, s - shift).scale(acoef(i))
    return out - _q(s, r + 1)


def b_entry_by_sum(r: int, s: int, kmax: int, keep: range | None = None) -> IndexedQuadratic:
    """The defining signed sum over |k| <= kmax, for testing the closed forms.

    Truncation leaves uncancelled terms whose labels are far from r and s;
    ``keep`` discards every monomial with a label outside that range.
    """
    out = IndexedQuadratic()
    for k in range(-kmax, kmax + 1):
        sign = 1 if k >= 0 else -1
        term = IndexedQuadratic.product(_var(r + 2 * k), xbar(s - 2 * k)) - IndexedQuadratic.product(
            _var(s + 2 * k), xbar(r - 2 * k)
        )
        out = out + term.scale(sign)
    if keep is not None:
        out = IndexedQuadratic({k: v for k, v in out.coeffs.items() if k[0] in keep and k[1] in keep})
    return out


def _labels_ok(q: IndexedQuadratic, allowed: set) -> bool:
    return q.labels() <= allowed


def build_A(n: int) -> Dict[Tuple[int, int], IndexedQuadratic]:
    """Entries A_rs (r < s in the labels 0, 2, ..., n), checked to involve
    only x_0, x_2, ..., x_{n+1}."""
    labels = coordinate_labels(n)
    allowed = set(labels) | {n + 1}
    out = {}
    for a, r in enumerate(labels):
        for s in labels[a + 1:]:
            e = a_entry(r, s)
            if not _labels_ok(e, allowed):
                raise InternalAssertionError(f"A_{r},{s} leaves the variables x_0, x_2..x_{n + 1}")
            out[(r, s)] = e
    return out


def build_B(n: int) -> Dict[Tuple[int, int], IndexedQuadratic]:
    labels = coordinate_labels(n)
    allowed = set(labels) | {n + 1}
    out = {}
    for a, r in enumerate(labels):
        for s in labels[a + 1:]:
            e = b_entry(r, s)
            if not _labels_ok(e, allowed):
                raise InternalAssertionError(f"B_{r},{s} leaves the variables x_0, x_2..x_{n + 1}")
            out[(r, s)] = e
    return out


def symbolic_omega(n: int) -> Dict[Tuple[int, int], IndexedQuadratic]:
    """nB - 2A over Q[a1..a6], checked to involve only x_0, x_2, ..., x_n."""
    A = build_A(n)
    B = build_B(n)
    allowed = set(coordinate_labels(n))
    out = {}
    for key in A:
        e = B[key].scale(n) - A[key].scale(2)
        if not _labels_ok(e, allowed):
            raise InternalAssertionError(f"x_{n + 1} does not cancel from entry {key} of nB - 2A")
        out[key] = e
    return out


def a_coefficient(omega_sym, i: int | None) -> Dict[Tuple[int, int], IndexedQuadratic]:
    return {k: v.a_part(i) for k, v in omega_sym.items()}


def omega_entry_matrix(entries: Dict[Tuple[int, int], Dict[Tuple[int, int], object]], n: int,
                       provenance: str = "explicit") -> OmegaMatrix:
    """Turn label-indexed quadratic forms into a matrix in positions 1..n."""
    labels = coordinate_labels(n)
    pos = {m: i for i, m in enumerate(labels)}
    out = OmegaMatrix(n, n, provenance=provenance)
    for (r, s), quad in entries.items():
        terms = {}
        for (p, q), c in quad.items():
            e = [0] * n
            e[pos[p]] += 1
            e[pos[q]] += 1
            terms[tuple(e)] = c
        out[pos[r], pos[s]] = Polynomial(n, terms)
    return out


def build_omega_explicit(E: WeierstrassCurve, n: int, normalize: bool = False) -> OmegaMatrix:
    """The matrix nB - 2A for E embedded by 1, x, y, x^2, xy, ...

    Not rescaled unless ``normalize``: the unscaled matrix represents
    (n-2) times the invariant differential dx/(2y + a1 x + a3).
    """
    sym = symbolic_omega(n)
    mat = omega_entry_matrix({k: v.specialize(E) for k, v in sym.items()}, n)
    return normalize_omega(mat, "explicit") if normalize else mat


def gamma(r: int, s: int, n: int) -> int:
    sign = (s > r) - (s < r)
    return (-1) ** max(r, s) * sign * n - 2 * ((-1) ** s * (s // 2) - (-1) ** r * (r // 2))


def om1_formula(n: int) -> Dict[Tuple[int, int], Dict[Tuple[int, int], int]]:
    """Closed form for the a1-coefficient of nB - 2A, entries r < s."""
    labels = coordinate_labels(n)
    out = {}
    for a, r in enumerate(labels):
        for s in labels[a + 1:]:
            terms: Dict[Tuple[int, int], int] = {}

            def add(p, q, c):
                key = (min(p, q), max(p, q))
                terms[key] = terms.get(key, 0) + c

            add(r, s, gamma(r, s, n))
            if (r + s) % 2 == 0:
                for k in range(1, (s - r) // 2):
                    add(r + 2 * k, s - 2 * k, (-1) ** s * n)
            out[(r, s)] = {k: v for k, v in terms.items() if v}
    return out


def lambda_matrix(n: int) -> OmegaMatrix:
    """Lambda_ij = (sign(j - i) n - 2 (j - i)) x_i x_j, indices 1..n."""
    if n < 3:
        raise ValueError("need n >= 3")
    out = OmegaMatrix(n, n, provenance="classical")
    xs = Polynomial.variables(n)
    for i in range(n):
        for j in range(i + 1, n):
            out[i, j] = (xs[i] * xs[j]).scale(n - 2 * (j - i))
    return out


def classical_omega_cubic(F: Polynomial) -> OmegaMatrix:
    """Matrix of signed partials of a ternary cubic."""
    if F.arity != 3 or not F.is_form(3):
        raise ValueError("expected a ternary cubic form")
    d1, d2, d3 = (poly_diff(F, i) for i in (1, 2, 3))
    return OmegaMatrix(3, 3, {(0, 1): d3, (0, 2): -d2, (1, 2): d1}, provenance="classical")


def _perm_sign(p) -> int:
    p = list(p)
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def classical_omega_quadric_pair(F1: Polynomial, F2: Polynomial) -> OmegaMatrix:
    """Omega_ij = dF1/dx_k dF2/dx_l - dF1/dx_l dF2/dx_k, (i, j, k, l) even."""
    for F in (F1, F2):
        if F.arity != 4 or not F.is_form(2):
            raise ValueError("expected quadrics in four variables")
    g1 = [poly_diff(F1, i) for i in range(1, 5)]
    g2 = [poly_diff(F2, i) for i in range(1, 5)]
    out = OmegaMatrix(4, 4, provenance="classical")
    for i in range(4):
        for j in range(i + 1, 4):
            k, l = [t for t in range(4) if t not in (i, j)]
            if _perm_sign((i, j, k, l)) < 0:
                k, l = l, k
            out[i, j] = g1[k] * g2[l] - g1[l] * g2[k]
    return out
