"""Sparse multivariate polynomials over the rationals.

Coefficients are kept as Python ``int`` whenever they are integral and as
``fractions.Fraction`` otherwise, so the common integral case runs at
machine-int speed while staying exact.  A monomial is a tuple of
non-negative exponents whose length is the arity of its polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

Monomial = Tuple[int, ...]
RationalLike = Union[int, Fraction]

__all__ = [
    "Monomial",
    "Polynomial",
    "as_rational",
    "format_rational",
    "parse_rational",
    "grlex_key",
    "monomial_basis",
    "monomial_index",
    "poly_diff",
    "poly_eval",
    "poly_substitute_linear",
    "to_vector",
    "from_vector",
]


def as_rational(value) -> RationalLike:
    """Coerce ``value`` to the canonical exact scalar (int or Fraction)."""
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, _RationalABC):
        return as_rational(Fraction(value.numerator, value.denominator))
    raise TypeError(f"not an exact rational: {value!r}")


def format_rational(value) -> str:
    """Canonical text form ``"p/q"`` (or ``"p"`` when q = 1)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> RationalLike:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    return as_rational(Fraction(text))


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def grlex_key(exps: Monomial):
    """Sort key putting monomials in graded-lex order, largest first.

    Higher total degree comes first; within a degree, ``x1`` outranks ``x2``
    and so on (so ``x1^2 > x1*x2 > x2^2``).
    """
    return (-sum(exps), tuple(-e for e in exps))


@lru_cache(maxsize=None)
def _basis(arity: int, degree: int) -> Tuple[Monomial, ...]:
    out = []
    for combo in combinations_with_replacement(range(arity), degree):
        e = [0] * arity
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    # combinations_with_replacement already yields lex-descending exponent
    # vectors, but sort anyway so the contract does not hinge on that.
    out.sort(key=grlex_key)
    return tuple(out)


def monomial_basis(arity: int, degree: int) -> List[Monomial]:
    """All ``C(arity+degree-1, degree)`` monomials of one degree, grlex order."""
    if arity < 1 or degree < 0:
        raise ValueError("need arity >= 1 and degree >= 0")
    basis = _basis(arity, degree)
    assert len(basis) == comb(arity + degree - 1, degree)
    return list(basis)


@lru_cache(maxsize=None)
def monomial_index(arity: int, degree: int) -> Dict[Monomial, int]:
    return {m: i for i, m in enumerate(_basis(arity, degree))}


class Polynomial:
    """Immutable sparse polynomial with a fixed number of variables.

    >>> x1, x2 = Polynomial.variables(2)
    >>> str((x1 + x2) ** 2)
    'x1^2 + 2*x1*x2 + x2^2'
    """

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, arity: int, terms: Mapping[Monomial, object] | Iterable = ()):
        if arity < 0:
            raise ValueError("arity must be non-negative")
        self.arity = arity
        clean: Dict[Monomial, RationalLike] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coeff in items:
            mono = tuple(int(e) for e in mono)
            if len(mono) != arity:
                raise ValueError(f"monomial {mono} does not have length {arity}")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            c = as_rational(coeff)
            if c:
                c = clean.get(mono, 0) + c
                if c:
                    clean[mono] = _norm(c)
                else:
                    clean.pop(mono, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, arity: int, terms: Dict[Monomial, RationalLike]) -> "Polynomial":
        # trusted constructor: terms already canonical, no zeros
        p = object.__new__(cls)
        p.arity = arity
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, arity: int) -> "Polynomial":
        return cls._raw(arity, {})

    @classmethod
    def constant(cls, arity: int, value) -> "Polynomial":
        c = as_rational(value)
        return cls._raw(arity, {(0,) * arity: c} if c else {})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "Polynomial":
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff})

    @classmethod
    def variable(cls, arity: int, i: int) -> "Polynomial":
        """The ``i``-th variable, counted from 1."""
        if not 1 <= i <= arity:
            raise IndexError(f"variable index {i} out of range 1..{arity}")
        e = [0] * arity
        e[i - 1] = 1
        return cls._raw(arity, {tuple(e): 1})

    @classmethod
    def variables(cls, arity: int) -> List["Polynomial"]:
        return [cls.variable(arity, i) for i in range(1, arity + 1)]

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, RationalLike]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coeff(self, exps: Sequence[int]) -> RationalLike:
        return self._terms.get(tuple(exps), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set:
        return {sum(m) for m in self._terms}

    def total_degree(self) -> int:
        return max(self.degrees(), default=-1)

    def is_form(self, degree: int | None = None) -> bool:
        """True if homogeneous (of ``degree``, when given). Zero is a form of any degree."""
        degs = self.degrees()
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> RationalLike:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * self.arity, 0)

    def variables_used(self) -> set:
        """1-based indices of the variables that actually occur."""
        used = set()
        for m in self._terms:
            used.update(i + 1 for i, e in enumerate(m) if e)
        return used

    def sorted_terms(self) -> List[Tuple[Monomial, RationalLike]]:
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]))

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.arity != self.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.arity, other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = _norm(v)
                else:
                    del out[m]
        return Polynomial._raw(self.arity, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.arity, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = as_rational(c)
        if not c:
            return Polynomial.zero(self.arity)
        if c == 1:
            return self
        return Polynomial._raw(self.arity, {m: _norm(v * c) for m, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return Polynomial.zero(self.arity)
        if len(a) < len(b):
            a, b = b, a
        out: Dict[Monomial, RationalLike] = {}
        get = out.get
        bitems = list(b.items())
        for ma, ca in a.items():
            for mb, cb in bitems:
                m = tuple([x + y for x, y in zip(ma, mb)])
                out[m] = get(m, 0) + ca * cb
        return Polynomial._raw(self.arity, {m: _norm(c) for m, c in out.items() if c})

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        c = as_rational(other)
        if not c:
            raise ZeroDivisionError("division of polynomial by zero")
        return self.scale(Fraction(1) / c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Polynomial.constant(self.arity, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.arity == other.arity and self._terms == other._terms
        try:
            c = as_rational(other)
        except TypeError:
            return NotImplemented
        if not c:
            return not self._terms
        return self._terms == {(0,) * self.arity: c}

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and evaluation -------------------------------------
    def diff(self, i: int) -> "Polynomial":
        return poly_diff(self, i)

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return poly_eval(self, point)

    def subs(self, values: Mapping[int, object]) -> "Polynomial":
        """Substitute constants for some variables (1-based); arity is kept."""
        vals = {i - 1: as_rational(v) for i, v in values.items()}
        out: Dict[Monomial, RationalLike] = {}
        for m, c in self._terms.items():
            m2 = list(m)
            for k, v in vals.items():
                e = m2[k]
                if e:
                    c = c * v ** e
                    m2[k] = 0
            if c:
                t = tuple(m2)
                out[t] = out.get(t, 0) + c
        return Polynomial._raw(self.arity, {m: _norm(c) for m, c in out.items() if c})

    def project(self, keep: Sequence[int]) -> "Polynomial":
        """Re-index onto the variables ``keep`` (1-based), in that order.

        Every variable not listed must be absent from the polynomial.
        """
        keep = [k - 1 for k in keep]
        dropped = set(range(self.arity)) - set(keep)
        out = {}
        for m, c in self._terms.items():
            if any(m[k] for k in dropped):
                raise ValueError("project would drop a variable that occurs")
            out[tuple(m[k] for k in keep)] = c
        return Polynomial._raw(len(keep), out)

    def embed(self, arity: int, positions: Sequence[int]) -> "Polynomial":
        """Move variable ``i`` to position ``positions[i-1]`` in a larger ring."""
        if len(positions) != self.arity:
            raise ValueError("need one target position per variable")
        out = {}
        for m, c in self._terms.items():
            e = [0] * arity
            for src, dst in enumerate(positions):
                e[dst - 1] += m[src]
            t = tuple(e)
            out[t] = out.get(t, 0) + c
        return Polynomial._raw(arity, {m: _norm(c) for m, c in out.items() if c})

    def content_normalized(self) -> "Polynomial":
        """Primitive integer multiple with positive leading (grlex) coefficient."""
        return normalize_forms([self])[0]

    # -- printing -----------------------------------------------------
    def __repr__(self):
        return f"Polynomial({self.arity}, {self.sorted_terms()!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(m) if e
            )
            c = Fraction(c)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def poly_diff(p: Polynomial, i: int) -> Polynomial:
    """Formal partial derivative with respect to variable ``i`` (1-based)."""
    if not 1 <= i <= p.arity:
        raise IndexError(f"variable index {i} out of range 1..{p.arity}")
    k = i - 1
    out = {}
    for m, c in p.items():
        e = m[k]
        if e:
            out[m[:k] + (e - 1,) + m[k + 1:]] = c * e
    return Polynomial._raw(p.arity, out)


def poly_eval(p: Polynomial, point: Sequence) -> RationalLike:
    """Exact value of ``p`` at ``point``."""
    if len(point) != p.arity:
        raise ValueError(f"point has length {len(point)}, expected {p.arity}")
    pt = [as_rational(v) for v in point]
    total = 0
    # cache powers per variable: forms here have small degree
    powers = [{0: 1, 1: v} for v in pt]
    for m, c in p.items():
        term = c
        for k, e in enumerate(m):
            if e:
                cache = powers[k]
                v = cache.get(e)
                if v is None:
                    v = cache[e] = pt[k] ** e
                term = term * v
                if not term:
                    break
        total += term
    return _norm(total) if isinstance(total, Fraction) else total


def poly_substitute_linear(p: Polynomial, g: Sequence[Sequence]) -> Polynomial:
    """Return ``p(y_1, ..., y_n)`` with ``y_j = sum_i g[i][j] * x_i``.

    Composition rule: substituting by ``g`` and then by ``h`` is the same
    as substituting once by the matrix product ``h @ g``.
    """
    n = p.arity
    if len(g) != n or any(len(row) != n for row in g):
        raise ValueError(f"substitution matrix must be {n}x{n}")
    ys = []
    for j in range(n):
        terms = {}
        for i in range(n):
            c = as_rational(g[i][j])
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        ys.append(Polynomial._raw(n, terms))
    one = Polynomial.constant(n, 1)
    # powers of each y_j computed lazily
    pows: List[Dict[int, Polynomial]] = [{0: one, 1: y} for y in ys]

    def power(j, e):
        cache = pows[j]
        if e not in cache:
            cache[e] = power(j, e - 1) * ys[j]
        return cache[e]

    total = Polynomial.zero(n)
    for m, c in p.items():
        term = Polynomial.constant(n, c)
        for j, e in enumerate(m):
            if e:
                term = term * power(j, e)
        total = total + term
    return total


def to_vector(p: Polynomial, degree: int) -> List[RationalLike]:
    """Coefficient vector of a form over ``monomial_basis(arity, degree)``."""
    index = monomial_index(p.arity, degree)
    vec = [0] * len(index)
    for m, c in p.items():
        try:
            vec[index[m]] = c
        except KeyError:
            raise ValueError(f"monomial {m} is not of degree {degree}") from None
    return vec


def from_vector(vec: Sequence, arity: int, degree: int) -> Polynomial:
    basis = _basis(arity, degree)
    if len(vec) != len(basis):
        raise ValueError("vector length does not match the monomial basis")
    return Polynomial(arity, {m: c for m, c in zip(basis, vec) if c})


def normalize_forms(polys: Sequence[Polynomial]) -> List[Polynomial]:
    """Scale a tuple of polynomials jointly to primitive integer coefficients.

    The first nonzero coefficient (polynomials in order, terms in grlex
    order) is made positive.  An all-zero input is returned unchanged.
    """
    from math import gcd

    den = 1
    num_gcd = 0
    lead = None
    for p in polys:
        for _, c in p.sorted_terms():
            if lead is None:
                lead = c
            c = Fraction(c)
            den = den * c.denominator // gcd(den, c.denominator)
    if lead is None:
        return list(polys)
    for p in polys:
        for c in p._terms.values():
            num_gcd = gcd(num_gcd, int(Fraction(c) * den))
    factor = Fraction(den, num_gcd)
    if lead < 0:
        factor = -factor
    return [p.scale(factor) for p in polys]
