from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from g1omega.exactmath import (
    Polynomial,
    format_rational,
    from_vector,
    monomial_basis,
    normalize_forms,
    parse_rational,
    poly_diff,
    poly_eval,
    poly_substitute_linear,
    to_vector,
)

from strategies import forms, invertible_matrices, polynomials, rationals, small_ints

x1, x2, x3 = Polynomial.variables(3)


class TestRationals:
    def test_format(self):
        assert format_rational(Fraction(6, 4)) == "3/2"
        assert format_rational(-7) == "-7"
        assert format_rational(Fraction(8, 4)) == "2"

    def test_parse_returns_int_when_integral(self):
        assert parse_rational("4/2") == 2 and type(parse_rational("4/2")) is int
        assert parse_rational(" -3/9 ") == Fraction(-1, 3)

    @pytest.mark.parametrize("bad", ["", "1/0", "abc"])
    def test_parse_rejects(self, bad):
        with pytest.raises((ValueError, ZeroDivisionError)):
            parse_rational(bad)

    @given(rationals)
    def test_round_trip(self, q):
        assert parse_rational(format_rational(q)) == q


class TestDiff:
    def test_constant(self):
        assert poly_diff(Polynomial.constant(3, 5), 1).is_zero()

    def test_power_rule(self):
        assert poly_diff(x1 * x1 * x2, 1) == (x1 * x2).scale(2)

    def test_mixed(self):
        p = x1 ** 3 - (x1 * x2 * x3).scale(3)
        assert poly_diff(p, 2) == (x1 * x3).scale(-3)

    @pytest.mark.parametrize("i", [0, 4])
    def test_index_out_of_range(self, i):
        with pytest.raises(IndexError):
            poly_diff(x1, i)

    @given(polynomials(), st.integers(1, 3), st.integers(1, 3))
    def test_partials_commute(self, p, i, j):
        assert poly_diff(poly_diff(p, i), j) == poly_diff(poly_diff(p, j), i)

    @given(st.integers(0, 4).flatmap(lambda d: st.tuples(st.just(d), forms(degree=d) if d else st.just(None))))
    def test_euler_identity(self, pair):
        d, p = pair
        if p is None:
            return
        total = sum((v * poly_diff(p, i + 1) for i, v in enumerate(Polynomial.variables(3))),
                    Polynomial.zero(3))
        assert total == p.scale(d)


class TestEval:
    def test_examples(self):
        p = x1 * x1 + x2
        assert poly_eval(Polynomial(2, {(2, 0): 1, (0, 1): 1}), [2, 3]) == 7
        assert poly_eval(x1 * x2 - x3 * x3, [1, 4, 2]) == 0
        assert poly_eval((x1 * x2).scale(7), [0, 0, 0]) == 0
        assert p(2, 3, 0) == 7

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            poly_eval(x1, [1, 2])

    @given(polynomials(), polynomials(), st.lists(small_ints, min_size=3, max_size=3))
    def test_evaluation_is_a_ring_map(self, p, q, pt):
        assert poly_eval(p * q, pt) == poly_eval(p, pt) * poly_eval(q, pt)
        assert poly_eval(p + q, pt) == poly_eval(p, pt) + poly_eval(q, pt)


class TestRing:
    @given(polynomials(), polynomials(), polynomials())
    def test_distributive(self, p, q, r):
        assert (p + q) * r == p * r + q * r

    @given(polynomials(), polynomials(), polynomials())
    def test_associative(self, p, q, r):
        assert (p * q) * r == p * (q * r)
        assert (p + q) + r == p + (q + r)

    @given(polynomials())
    def test_additive_inverse(self, p):
        assert (p - p).is_zero()
        assert p + Polynomial.zero(3) == p

    def test_str(self):
        assert str((x1 + x2) ** 2) == "x1^2 + 2*x1*x2 + x2^2"
        assert str(Polynomial.zero(2)) == "0"

    def test_arity_mismatch(self):
        with pytest.raises(ValueError):
            x1 + Polynomial.variable(2, 1)


class TestSubstitution:
    def test_identity(self):
        eye = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        assert poly_substitute_linear(x1 * x2, eye) == x1 * x2

    def test_diagonal(self):
        g = [[2, 0, 0], [0, 1, 0], [0, 0, 1]]
        assert poly_substitute_linear(x1 * x1, g) == (x1 * x1).scale(4)

    def test_swap(self):
        g = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
        assert poly_substitute_linear(x1 * x2, g) == x1 * x2
        assert poly_substitute_linear(x1 * x1 * x3, g) == x2 * x2 * x3

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            poly_substitute_linear(x1, [[1, 0], [0, 1]])

    @given(forms(degree=2), invertible_matrices(3), invertible_matrices(3))
    def test_composition(self, p, g, h):
        def matmul(a, b):
            return [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]

        lhs = poly_substitute_linear(poly_substitute_linear(p, g), h)
        assert lhs == poly_substitute_linear(p, matmul(h, g))


class TestMonomialBasis:
    @pytest.mark.parametrize("n,d,count", [(3, 2, 6), (1, 5, 1), (5, 2, 15), (7, 6, comb(12, 6))])
    def test_counts(self, n, d, count):
        assert len(monomial_basis(n, d)) == count

    def test_single_variable(self):
        assert monomial_basis(1, 5) == [(5,)]

    def test_grlex_order(self):
        assert monomial_basis(2, 2) == [(2, 0), (1, 1), (0, 2)]

    @given(forms(degree=3))
    def test_vector_round_trip(self, p):
        assert from_vector(to_vector(p, 3), 3, 3) == p


class TestNormalize:
    def test_primitive_positive(self):
        out = normalize_forms([(x1 * x2).scale(Fraction(-2, 3)), (x2 * x2).scale(4)])
        assert out == [(x1 * x2).scale(1), (x2 * x2).scale(-6)]

    @given(st.lists(forms(degree=2), min_size=1, max_size=3), st.sampled_from([Fraction(-3, 2), 5, Fraction(1, 7)]))
    def test_scale_invariance(self, ps, lam):
        if all(p.is_zero() for p in ps):
            return
        assert normalize_forms(ps) == normalize_forms([p.scale(lam) for p in ps])
