"""Exact linear algebra over Q and Pfaffians of alternating matrices."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Dict, Iterable, List, Sequence, Tuple

from .exactmath import Polynomial, as_rational, poly_diff

__all__ = [
    "RatMatrix",
    "AltPolyMatrix",
    "kernel_basis",
    "sparse_kernel_basis",
    "kernel_basis_modular",
    "rank_mod_p",
    "rank",
    "canonical_basis",
    "pfaffian",
    "minors_2x2",
    "primitive",
]


class RatMatrix:
    """Dense rectangular matrix of exact rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence], cols: int | None = None):
        self.entries = [[as_rational(v) for v in row] for row in entries]
        self.rows = len(self.entries)
        if cols is None:
            cols = len(self.entries[0]) if self.entries else 0
        self.cols = cols
        if any(len(row) != cols for row in self.entries):
            raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, RatMatrix)
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols})"

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch")
            cols_t = list(zip(*other.entries)) if other.rows else [()] * other.cols
            return RatMatrix(
                [[sum(a * b for a, b in zip(row, col)) for col in cols_t] for row in self.entries],
                other.cols,
            )
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum(a * b for a, b in zip(row, vec)) for row in self.entries]

    def transpose(self) -> "RatMatrix":
        return RatMatrix([list(c) for c in zip(*self.entries)], self.rows) if self.rows else RatMatrix([], 0)

    def determinant(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        rows = _integer_rows(self.entries)
        scale = 1
        for row, orig in zip(rows, self.entries):
            # integer row = orig * s, so det(orig) = det(int)/prod(s)
            s = next((Fraction(a) / b for a, b in zip(row, orig) if b), 1)
            scale *= s
        det, _, _ = _bareiss_det(rows, n)
        return as_rational(Fraction(det) / scale)

    def inverse(self) -> "RatMatrix":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
               for i, row in enumerate(self.entries)]
        for c in range(n):
            piv = next((r for r in range(c, n) if aug[r][c]), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            aug[c], aug[piv] = aug[piv], aug[c]
            p = aug[c][c]
            aug[c] = [v / p for v in aug[c]]
            for r in range(n):
                if r != c and aug[r][c]:
                    f = aug[r][c]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
        return RatMatrix([[as_rational(v) for v in row[n:]] for row in aug], n)


def _bareiss_det(rows, n):
    a = [r[:] for r in rows]
    sign = 1
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0, a, sign
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (p * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = p
    return sign * a[n - 1][n - 1] if n else 1, a, sign


def _lcm(a, b):
    return a * b // gcd(a, b)


def _integer_rows(entries) -> List[List[int]]:
    out = []
    for row in entries:
        den = 1
        for v in row:
            if type(v) is Fraction:
                den = _lcm(den, v.denominator)
        if den == 1:
            out.append([int(v) for v in row])
        else:
            out.append([int(v * den) for v in row])
    return out


def primitive(vec: Sequence) -> List[int]:
    """Scale a nonzero rational vector to a primitive integer vector whose
    first nonzero entry is positive."""
    den = 1
    for v in vec:
        if type(v) is Fraction:
            den = _lcm(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = reduce(gcd, ints, 0)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    lead = next(v for v in ints if v)
    if lead < 0:
        g = -g
    return [v // g for v in ints]


def _ff_gauss_jordan(rows: List[List[int]], ncols: int):
    """Fraction-free Gauss-Jordan elimination, in place.

    Returns ``(pivot_cols, D)``; afterwards row ``k`` has the value ``D`` at
    ``pivot_cols[k]`` and zero at every other pivot column, i.e. the rows
    are ``D`` times the reduced row echelon form.  Pivots are chosen as the
    entry of least absolute value in the current column.
    """
    m = len(rows)
    pivots: List[int] = []
    d = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        best = -1
        best_abs = None
        for i in range(r, m):
            v = rows[i][c]
            if v:
                av = -v if v < 0 else v
                if best_abs is None or av < best_abs:
                    best, best_abs = i, av
                    if av == 1:
                        break
        if best < 0:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        prow = rows[r]
        p = prow[c]
        tail = [(k, prow[k]) for k in range(c + 1, ncols) if prow[k]]
        for i in range(m):
            if i == r:
                continue
            row = rows[i]
            a = row[c]
            if i < r:
                # rows above: every entry moves to the new scale
                if a:
                    for k in range(ncols):
                        row[k] = p * row[k]
                    for k, v in tail:
                        row[k] -= a * v
                    if d != 1:
                        for k in range(ncols):
                            row[k] //= d
                    row[c] = 0
                elif p != d:
                    for k in range(ncols):
                        if row[k]:
                            row[k] = p * row[k] // d
            else:
                if a:
                    for k in range(c + 1, ncols):
                        if row[k]:
                            row[k] = p * row[k]
                    for k, v in tail:
                        row[k] -= a * v
                    if d != 1:
                        for k in range(c + 1, ncols):
                            if row[k]:
                                row[k] //= d
                    row[c] = 0
                elif p != d:
                    for k in range(c + 1, ncols):
                        if row[k]:
                            row[k] = p * row[k] // d
        pivots.append(c)
        d = p
        r += 1
    return pivots, d


def _ff_echelon_rank(rows: List[List[int]], ncols: int) -> int:
    m = len(rows)
    d = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        best = -1
        best_abs = None
        for i in range(r, m):
            v = rows[i][c]
            if v:
                av = abs(v)
                if best_abs is None or av < best_abs:
                    best, best_abs = i, av
        if best < 0:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(r + 1, m):
            row = rows[i]
            a = row[c]
            for k in range(c + 1, ncols):
                row[k] = (p * row[k] - a * prow[k]) // d
            row[c] = 0
        d = p
        r += 1
    return r


def rank(m) -> int:
    """Exact rank by fraction-free elimination."""
    if not isinstance(m, RatMatrix):
        m = RatMatrix(m)
    if m.rows == 0 or m.cols == 0:
        return 0
    return _ff_echelon_rank(_integer_rows(m.entries), m.cols)


def canonical_basis(vectors: Sequence[Sequence], ncols: int | None = None) -> List[List[int]]:
    """Canonical basis of a span: reduced echelon rows scaled to primitive
    integers with positive leading entry.  Dependent input is fine."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    if ncols is None:
        ncols = len(vectors[0])
    rows = _integer_rows(vectors)
    pivots, _ = _ff_gauss_jordan(rows, ncols)
    return [primitive(rows[k]) for k in range(len(pivots))]


def kernel_basis(m) -> List[List[int]]:
    """Basis of the right null space ``{v : m v = 0}``.

    Vectors are primitive integer vectors with positive leading entry, and
    the basis as a whole is in reduced echelon form, so it is unique.
    """
    if not isinstance(m, RatMatrix):
        m = RatMatrix(m)
    ncols = m.cols
    if ncols == 0:
        return []
    rows = _integer_rows(m.entries)
    pivots, D = _ff_gauss_jordan(rows, ncols)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    vecs = []
    for f in free:
        v = [0] * ncols
        v[f] = D
        for k, pc in enumerate(pivots):
            v[pc] = -rows[k][f]
        vecs.append(v)
    return canonical_basis(vecs, ncols)


def sparse_kernel_basis(rows: Iterable[Dict[int, object]], ncols: int) -> List[List[int]]:
    """Right null space of a sparse matrix given as ``{col: value}`` rows.

    Rational Gauss-Jordan on dictionary rows with a fewest-entries pivot
    rule.  Returns the same canonical basis as :func:`kernel_basis`.
    """
    # pivot_rows[c] is a normalized row with 1 at c and zero at other pivots
    pivot_rows: Dict[int, Dict[int, object]] = {}
    # col -> pivot columns whose row has an entry there
    occurs: Dict[int, set] = {}
    for raw in rows:
        row = {c: as_rational(v) for c, v in raw.items() if v}
        # eliminate existing pivots
        for c in [c for c in row if c in pivot_rows]:
            a = row.get(c)
            if not a:
                continue
            for k, v in pivot_rows[c].items():
                nv = row.get(k, 0) - a * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        if not row:
            continue
        # choose the pivot column with the fewest pivot rows touching it
        c0 = min(row, key=lambda c: (len(occurs.get(c, ())), c))
        inv = Fraction(1) / row[c0]
        row = {k: _norm_frac(v * inv) for k, v in row.items()}
        # back-substitute into pivot rows that have an entry at c0
        for pc in list(occurs.get(c0, ())):
            prow = pivot_rows[pc]
            a = prow.get(c0)
            if not a:
                continue
            for k, v in row.items():
                nv = prow.get(k, 0) - a * v
                if nv:
                    if k not in prow:
                        occurs.setdefault(k, set()).add(pc)
                    prow[k] = _norm_frac(nv)
                else:
                    if k in prow:
                        del prow[k]
                        occurs.get(k, set()).discard(pc)
        pivot_rows[c0] = row
        for k in row:
            occurs.setdefault(k, set()).add(c0)
    free = [c for c in range(ncols) if c not in pivot_rows]
    vecs = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for pc in occurs.get(f, ()):
            v[pc] = -pivot_rows[pc][f]
        vecs.append(v)
    return canonical_basis(vecs, ncols)


def _norm_frac(v):
    if type(v) is Fraction and v.denominator == 1:
        return v.numerator
    return v


# ---------------------------------------------------------------------------
# Alternating matrices of polynomials


class AltPolyMatrix:
    """n x n alternating matrix of polynomials (0-based indices).

    Only the strict upper triangle is stored; ``m[j, i] == -m[i, j]``.
    """

    __slots__ = ("size", "arity", "_upper")

    def __init__(self, size: int, arity: int, upper: Dict[Tuple[int, int], Polynomial] | None = None):
        self.size = size
        self.arity = arity
        self._upper: Dict[Tuple[int, int], Polynomial] = {}
        for (i, j), p in (upper or {}).items():
            self[i, j] = p

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Polynomial]]) -> "AltPolyMatrix":
        n = len(rows)
        arity = rows[0][1].arity if n > 1 else (rows[0][0].arity if n else 0)
        for i in range(n):
            if not rows[i][i].is_zero():
                raise ValueError("diagonal entry is not zero")
            for j in range(i + 1, n):
                if rows[j][i] != -rows[i][j]:
                    raise ValueError("matrix is not alternating")
        return cls(n, arity, {(i, j): rows[i][j] for i in range(n) for j in range(i + 1, n)})

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        if i == j:
            return Polynomial.zero(self.arity)
        if i < j:
            return self._upper.get((i, j)) or Polynomial.zero(self.arity)
        p = self._upper.get((j, i))
        return -p if p is not None else Polynomial.zero(self.arity)

    def __setitem__(self, ij, p: Polynomial):
        i, j = ij
        if p.arity != self.arity:
            raise ValueError("entry has the wrong arity")
        if i == j:
            if not p.is_zero():
                raise ValueError("diagonal of an alternating matrix must be zero")
            return
        if i > j:
            i, j, p = j, i, -p
        if p.is_zero():
            self._upper.pop((i, j), None)
        else:
            self._upper[(i, j)] = p

    def rows(self) -> List[List[Polynomial]]:
        return [[self[i, j] for j in range(self.size)] for i in range(self.size)]

    def upper_items(self):
        """``((i, j), entry)`` for i < j in row-major order, zeros included."""
        for i in range(self.size):
            for j in range(i + 1, self.size):
                yield (i, j), self[i, j]

    def map(self, fn) -> "AltPolyMatrix":
        out = AltPolyMatrix(self.size, self.arity)
        for (i, j), p in self._upper.items():
            q = fn(p)
            out.arity = q.arity
            out._upper[(i, j)] = q
        return out

    def scale(self, c) -> "AltPolyMatrix":
        return self.map(lambda p: p.scale(c))

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other: "AltPolyMatrix") -> "AltPolyMatrix":
        if other.size != self.size:
            raise ValueError("size mismatch")
        out = AltPolyMatrix(self.size, self.arity)
        for i in range(self.size):
            for j in range(i + 1, self.size):
                out[i, j] = self[i, j] + other[i, j]
        return out

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, AltPolyMatrix)
            and self.size == other.size
            and self.arity == other.arity
            and self._upper == other._upper
        )

    def is_zero(self) -> bool:
        return not self._upper

    def degrees(self) -> set:
        out = set()
        for p in self._upper.values():
            out |= p.degrees()
        return out

    def evaluate(self, point: Sequence) -> RatMatrix:
        n = self.size
        vals = [[0] * n for _ in range(n)]
        for (i, j), p in self._upper.items():
            v = p(point)
            vals[i][j] = v
            vals[j][i] = -v
        return RatMatrix(vals, n)

    def submatrix(self, keep: Sequence[int]) -> "AltPolyMatrix":
        keep = list(keep)
        out = AltPolyMatrix(len(keep), self.arity)
        for a, i in enumerate(keep):
            for b in range(a + 1, len(keep)):
                out[a, b] = self[i, keep[b]]
        return out

    def __repr__(self):
        return f"AltPolyMatrix(size={self.size}, arity={self.arity})"


def pfaffian(m, indices: Sequence[int] | None = None):
    """Pfaffian by recursive first-row expansion, memoized on index sets.

    ``m`` is an :class:`AltPolyMatrix` or a square alternating array
    (list of lists / :class:`RatMatrix`); ``indices`` selects a principal
    submatrix (0-based) and must have even size.
    """
    if isinstance(m, AltPolyMatrix):
        size = m.size
        get = m.__getitem__
        unit = Polynomial.constant(m.arity, 1)
    else:
        rows = m.entries if isinstance(m, RatMatrix) else m
        size = len(rows)

        def get(ij):
            return rows[ij[0]][ij[1]]

        unit = 1
    idx = tuple(range(size)) if indices is None else tuple(indices)
    if len(idx) % 2:
        raise ValueError("Pfaffian of an odd-size index set")
    memo: Dict[Tuple[int, ...], object] = {}

    def pf(s: Tuple[int, ...]):
        if not s:
            return unit
        if s in memo:
            return memo[s]
        first = s[0]
        total = None
        for pos in range(1, len(s)):
            entry = get((first, s[pos]))
            if isinstance(entry, Polynomial):
                if entry.is_zero():
                    continue
            elif not entry:
                continue
            rest = s[1:pos] + s[pos + 1:]
            term = entry * pf(rest)
            # 1-based column position pos+1 in the submatrix: sign (-1)^(pos+1+1)
            if pos % 2 == 0:
                term = -term
            total = term if total is None else total + term
        if total is None:
            total = unit * 0
        memo[s] = total
        return total

    return pf(idx)


def minors_2x2(grad: Sequence[Sequence[Polynomial]]) -> Dict[Tuple[int, int], Polynomial]:
    """All 2x2 minors ``g[0][i] g[1][j] - g[0][j] g[1][i]`` for i < j (0-based)."""
    if len(grad) != 2:
        raise ValueError(f"need exactly two rows, got {len(grad)}")
    r1, r2 = grad
    if len(r1) != len(r2):
        raise ValueError("rows differ in length")
    n = len(r1)
    return {
        (i, j): r1[i] * r2[j] - r1[j] * r2[i]
        for i in range(n)
        for j in range(i + 1, n)
    }


def gradient(p: Polynomial) -> List[Polynomial]:
    return [poly_diff(p, i) for i in range(1, p.arity + 1)]


# ---------------------------------------------------------------------------
# multimodular kernels

_WORD_PRIME_TOP = 2 ** 31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11):  # deterministic below 2.1e12
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def word_primes():
    """Primes below 2^31 in decreasing order (products fit in int64)."""
    p = _WORD_PRIME_TOP - 1
    while p > 2 ** 20:
        if _is_prime(p):
            yield p
        p -= 2


def _rref_mod_p(rows: List[List[int]], ncols: int, p: int):
    """Reduced echelon form mod p; returns (pivot columns, reduced rows)."""
    import numpy as np

    a = np.array([[v % p for v in row] for row in rows], dtype=np.int64).reshape(len(rows), ncols)
    pivots = []
    r = 0
    m = a.shape[0]
    for c in range(ncols):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r]) % p) % p
        pivots.append(c)
        r += 1
    return pivots, a[:r]


def rank_mod_p(m, p: int = 2 ** 31 - 1) -> int:
    """Rank of ``m`` reduced mod p; never exceeds the rank over Q."""
    if not isinstance(m, RatMatrix):
        m = RatMatrix(m)
    rows = [r for r in _integer_rows(m.entries) if any(r)]
    if not rows:
        return 0
    return len(_rref_mod_p(rows, m.cols, p)[0])


def _rational_reconstruct(a: int, m: int):
    """Fraction n/d with n/d = a mod m and |n|, d below sqrt(m/2), or None."""
    bound = isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        s1, r1 = -s1, -r1
    if gcd(r1, s1) != 1:
        return None
    return Fraction(r1, s1)


def kernel_basis_modular(m, max_primes: int = 200) -> List[List[int]]:
    """Same result as :func:`kernel_basis`, computed modulo word-size primes.

    Each prime yields the reduced-echelon kernel basis mod p.  Results from
    primes with the same (maximal) pivot set are combined by CRT and lifted
    by rational reconstruction; a lift is accepted only once it is an exact
    kernel of ``m``.  Since the kernel mod p is never smaller than the kernel
    over Q, an exact lift of the full mod-p kernel is the whole kernel.
    """
    if not isinstance(m, RatMatrix):
        m = RatMatrix(m)
    ncols = m.cols
    if ncols == 0:
        return []
    rows = [r for r in _integer_rows(m.entries) if any(r)]
    if not rows:
        return canonical_basis([[int(i == j) for j in range(ncols)] for i in range(ncols)], ncols)
    best_pivots = None
    residues: List[List[int]] = []
    modulus = 1
    for count, p in enumerate(word_primes()):
        if count >= max_primes:
            break
        pivots, red = _rref_mod_p(rows, ncols, p)
        if best_pivots is not None and len(pivots) < len(best_pivots):
            continue  # unlucky prime
        if pivots != best_pivots:
            # higher rank than seen so far: earlier primes were unlucky
            best_pivots = pivots
            residues = []
            modulus = 1
        pivset = set(pivots)
        free = [c for c in range(ncols) if c not in pivset]
        flat = []
        for f in free:
            for k in range(len(pivots)):
                flat.append(int(-red[k, f]) % p)
        if not residues:
            residues = flat
        else:
            # CRT: x = residues mod modulus, x = flat mod p
            inv = pow(modulus % p, p - 2, p)
            residues = [x + modulus * (((y - x) * inv) % p) for x, y in zip(residues, flat)]
        modulus *= p
        lifted = []
        ok = True
        for v in residues:
            q = _rational_reconstruct(v, modulus)
            if q is None:
                ok = False
                break
            lifted.append(q)
        if not ok:
            continue
        vecs = []
        it = iter(lifted)
        for f in free:
            v = [0] * ncols
            v[f] = 1
            for pc in pivots:
                v[pc] = next(it)
            vecs.append(v)
        if all(
            sum(a * b for a, b in zip(row, v) if a) == 0 for v in vecs for row in rows
        ):
            return canonical_basis(vecs, ncols) if vecs else []
    # fall back to exact elimination
    return kernel_basis(m)
