import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from g1omega.exactmath import Polynomial
from g1omega.linalg import (
    AltPolyMatrix,
    RatMatrix,
    canonical_basis,
    kernel_basis,
    kernel_basis_modular,
    minors_2x2,
    pfaffian,
    primitive,
    rank,
    rank_mod_p,
    sparse_kernel_basis,
)

from strategies import low_rank_matrices, rational_matrices, small_ints


def _apply(m, v):
    return [sum(Fraction(a) * b for a, b in zip(row, v)) for row in m]


def _random_alternating(n, rng):
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            m[i][j], m[j][i] = v, -v
    return m


class TestKernel:
    def test_identity(self):
        assert kernel_basis(RatMatrix.identity(3)) == []

    def test_zero(self):
        assert len(kernel_basis([[0, 0, 0], [0, 0, 0]])) == 3

    def test_single_row(self):
        basis = kernel_basis([[1, 2, 3]])
        assert basis == [[3, 0, -1], [0, 3, -2]]
        # (-2, 1, 0) lies in the span
        assert rank([[3, 0, -1], [0, 3, -2], [-2, 1, 0]]) == 2

    def test_primitive(self):
        assert primitive([Fraction(-2, 3), Fraction(4, 9)]) == [3, -2]
        assert primitive([0, -4, 6]) == [0, 2, -3]

    @given(rational_matrices())
    def test_vectors_are_in_kernel(self, m):
        for v in kernel_basis(m):
            assert all(x == 0 for x in _apply(m, v))

    @given(rational_matrices())
    def test_rank_nullity(self, m):
        assert rank(m) + len(kernel_basis(m)) == len(m[0])

    @given(low_rank_matrices())
    def test_three_routes_agree(self, m):
        dense = kernel_basis(m)
        sparse = sparse_kernel_basis([{j: v for j, v in enumerate(row) if v} for row in m], len(m[0]))
        modular = kernel_basis_modular(m)
        assert dense == sparse == modular

    @given(low_rank_matrices())
    def test_canonical_form(self, m):
        basis = kernel_basis(m)
        for v in basis:
            lead = next(x for x in v if x)
            assert lead > 0
        if basis:
            assert canonical_basis(basis, len(m[0])) == basis

    @given(low_rank_matrices())
    def test_rank_mod_p_bounded(self, m):
        assert rank_mod_p(m) <= rank(m)

    def test_modular_needs_several_primes(self):
        # kernel vector with entries far beyond one word-size prime
        big = 3 ** 45 + 1
        m = [[big, -(big + 2), 0], [0, 1, -1]]
        assert kernel_basis_modular(m) == kernel_basis(m)


class TestRank:
    def test_identity(self):
        assert rank(RatMatrix.identity(4)) == 4

    def test_zero(self):
        assert rank([[0, 0], [0, 0]]) == 0

    def test_outer_product(self):
        u, v = [1, -2, 3], [Fraction(1, 2), 5]
        assert rank([[a * b for b in v] for a in u]) == 1


class TestMatrix:
    def test_inverse(self):
        m = RatMatrix([[2, 1], [7, 4]])
        assert m @ m.inverse() == RatMatrix.identity(2)

    def test_singular_inverse(self):
        with pytest.raises(ZeroDivisionError):
            RatMatrix([[1, 2], [2, 4]]).inverse()

    @given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=3, max_size=3))
    def test_determinant_cofactor(self, g):
        (a, b, c), (d, e, f), (h, i, j) = g
        cofactor = a * (e * j - f * i) - b * (d * j - f * h) + c * (d * i - e * h)
        assert RatMatrix(g).determinant() == cofactor


class TestPfaffian:
    def test_two_by_two(self):
        assert pfaffian([[0, 5], [-5, 0]]) == 5

    def test_four_by_four(self):
        n = 6
        xs = Polynomial.variables(n)
        m = AltPolyMatrix(4, n)
        pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        for k, ij in enumerate(pairs):
            m[ij] = xs[k]
        m12, m13, m14, m23, m24, m34 = xs
        assert pfaffian(m) == m12 * m34 - m13 * m24 + m14 * m23

    def test_odd_rejected(self):
        with pytest.raises(ValueError):
            pfaffian([[0, 1, 2], [-1, 0, 3], [-2, -3, 0]])

    @pytest.mark.parametrize("n", [2, 4, 6])
    @pytest.mark.parametrize("seed", range(5))
    def test_square_is_determinant(self, n, seed):
        m = _random_alternating(n, random.Random(seed))
        assert pfaffian(m) ** 2 == RatMatrix(m).determinant()

    @pytest.mark.parametrize("n", [4, 6])
    @pytest.mark.parametrize("seed", range(5))
    def test_swap_negates(self, n, seed):
        rng = random.Random(100 + seed)
        m = _random_alternating(n, rng)
        i, j = rng.sample(range(n), 2)
        perm = list(range(n))
        perm[i], perm[j] = perm[j], perm[i]
        swapped = [[m[perm[a]][perm[b]] for b in range(n)] for a in range(n)]
        assert pfaffian(swapped) == -pfaffian(m)

    def test_index_subset(self):
        m = _random_alternating(4, random.Random(7))
        assert pfaffian(m, [1, 3]) == m[1][3]


class TestMinors:
    def test_two_columns(self):
        x1, x2, x3, x4 = Polynomial.variables(4)
        assert minors_2x2([[x1, x2], [x3, x4]]) == {(0, 1): x1 * x4 - x2 * x3}

    def test_proportional_rows(self):
        x1, x2, x3, _ = Polynomial.variables(4)
        minors = minors_2x2([[x1, x2, x3], [x1.scale(3), x2.scale(3), x3.scale(3)]])
        assert all(p.is_zero() for p in minors.values())

    def test_quadric_gradients(self):
        x1, x2, x3, x4 = Polynomial.variables(4)
        g1 = [x3, x2.scale(-2), x1, Polynomial.zero(4)]  # grad(x1 x3 - x2^2)
        g2 = [Polynomial.zero(4), x4, x3.scale(-2), x2]  # grad(x2 x4 - x3^2)
        minors = minors_2x2([g1, g2])
        assert minors[(0, 1)] == x3 * x4
        assert minors[(1, 2)] == (x2 * x3).scale(4) - x1 * x4

    def test_row_count(self):
        with pytest.raises(ValueError):
            minors_2x2([[Polynomial.zero(1)]])


class TestAltPolyMatrix:
    def test_antisymmetry(self):
        x1, x2 = Polynomial.variables(2)
        m = AltPolyMatrix(3, 2)
        m[0, 2] = x1 * x2
        assert m[2, 0] == -(x1 * x2)
        assert m[1, 1].is_zero()

    def test_diagonal_rejected(self):
        m = AltPolyMatrix(2, 1)
        with pytest.raises(ValueError):
            m[0, 0] = Polynomial.variable(1, 1)

    def test_from_rows_checks(self):
        x = Polynomial.variable(1, 1)
        z = Polynomial.zero(1)
        with pytest.raises(ValueError):
            AltPolyMatrix.from_rows([[z, x], [x, z]])
