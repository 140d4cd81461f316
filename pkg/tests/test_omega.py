import random

import pytest
from hypothesis import given

from g1omega.elliptic import CurvePoint, WeierstrassCurve, curve_quadrics, homogenized_cubic, standard_points
from g1omega.errors import DegenerateModelError, InconsistentInputError
from g1omega.exactmath import Polynomial, poly_substitute_linear
from g1omega.explicit import build_omega_explicit, classical_omega_cubic, classical_omega_quadric_pair
from g1omega.linalg import RatMatrix, gradient
from g1omega.omega import (
    OmegaMatrix,
    PfaffianMismatch,
    gl_act,
    normalize_omega,
    proportionality,
    random_invertible,
    rank_at_secant_point,
    solve_omega,
    verify_annihilation,
    verify_pfaffians,
)
from g1omega.secant import secant_chain

from strategies import alternating_quadratic, invertible_matrices

E37 = WeierstrassCurve(0, 0, 1, -1, 0)
POINTS = standard_points(E37, CurvePoint(0, 0), 4)


def _rows(eqs):
    return [gradient(f) for f in eqs] if isinstance(eqs, tuple) else [gradient(eqs)]


@pytest.fixture(scope="module")
def solved():
    out = {}
    for n in (4, 5, 6):
        rows = _rows(secant_chain(curve_quadrics(E37, n), n))
        out[n] = (solve_omega(rows, n), rows)
    F = homogenized_cubic(E37)
    out[3] = (solve_omega([gradient(F)], 3), [gradient(F)])
    return out


def _proportional(a, b):
    keys = [ij for ij, _ in a.upper_items()]
    return proportionality([a[ij] for ij in keys], [b[ij] for ij in keys]) not in (None, 0)


class TestSolve:
    def test_cubic_matches_classical(self, solved):
        om, _ = solved[3]
        assert _proportional(om, classical_omega_cubic(homogenized_cubic(E37)))

    def test_quadric_pair_matches_classical(self, solved):
        om, _ = solved[4]
        F1, F2 = secant_chain(curve_quadrics(E37, 4), 4)
        assert _proportional(om, classical_omega_quadric_pair(F1, F2))

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_matches_explicit(self, solved, n):
        om, _ = solved[n]
        assert om == normalize_omega(build_omega_explicit(E37, n))

    def test_normalized(self, solved):
        om, _ = solved[5]
        assert normalize_omega(om) == om
        assert om.provenance == "solved"

    def test_degenerate_cubic(self):
        x, _, _ = Polynomial.variables(3)
        with pytest.raises(DegenerateModelError):
            solve_omega([gradient(x ** 3)], 3)

    def test_no_quadratic_syzygies(self):
        x, y, z = Polynomial.variables(3)
        with pytest.raises(InconsistentInputError):
            solve_omega([gradient(x ** 5 + y ** 5 + z ** 5)], 3)

    def test_bad_rows(self):
        with pytest.raises(ValueError):
            solve_omega([], 3)


class TestGLAction:
    def _omega(self):
        return build_omega_explicit(E37, 4)

    def test_identity(self):
        om = self._omega()
        assert gl_act(RatMatrix.identity(4), om) == om

    @pytest.mark.parametrize("lam", [2, -3])
    def test_scalars_act_trivially(self, lam):
        om = self._omega()
        g = [[lam if i == j else 0 for j in range(4)] for i in range(4)]
        assert gl_act(g, om) == om

    def test_composition(self):
        rng = random.Random(5)
        om = build_omega_explicit(E37, 3)
        g, h = random_invertible(3, rng), random_invertible(3, rng)
        assert gl_act(g, gl_act(h, om)) == gl_act(g @ h, om)

    def test_singular(self):
        with pytest.raises(ZeroDivisionError):
            gl_act([[1, 1, 0], [1, 1, 0], [0, 0, 1]], build_omega_explicit(E37, 3))

    def test_provenance_kept(self):
        om = build_omega_explicit(E37, 3)
        assert isinstance(gl_act(RatMatrix.identity(3), om), OmegaMatrix)

    @given(alternating_quadratic(3), invertible_matrices(3))
    def test_preserves_shape(self, om, g):
        out = gl_act(g, om)
        assert out.degrees() <= {2}
        for i in range(3):
            assert out[i, i].is_zero()

    @given(invertible_matrices(3))
    def test_transports_annihilation(self, g):
        F = homogenized_cubic(E37)
        om = classical_omega_cubic(F)
        # F(g x) is annihilated by g . Omega
        Fg = poly_substitute_linear(F, g)
        assert verify_annihilation(gl_act(g, om), [gradient(Fg)])["ok"]


class TestCertificates:
    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_annihilation(self, solved, n):
        om, rows = solved[n]
        report = verify_annihilation(om, rows)
        assert report["ok"]
        assert ("bilinear" in report) == (n % 2 == 0)

    def test_perturbation_detected(self, solved):
        om, rows = solved[5]
        bad = OmegaMatrix.wrap(om, "solved")
        bad[0, 1] = om[0, 1] + Polynomial.variable(5, 1) * Polynomial.variable(5, 2)
        assert not verify_annihilation(bad, rows)["ok"]

    def test_classical_pair(self):
        F1, F2 = curve_quadrics(E37, 4)
        om = classical_omega_quadric_pair(F1, F2)
        assert verify_annihilation(om, [gradient(F1), gradient(F2)]) == {
            "annihilation": True, "bilinear": True, "ok": True}

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_pfaffians(self, solved, n):
        om, rows = solved[n]
        assert verify_pfaffians(om, rows) != 0

    def test_classical_pfaffian_scalars(self):
        F = homogenized_cubic(E37)
        assert verify_pfaffians(classical_omega_cubic(F), [gradient(F)]) == -1
        F1, F2 = curve_quadrics(E37, 4)
        om = classical_omega_quadric_pair(F1, F2)
        assert verify_pfaffians(om, [gradient(F1), gradient(F2)]) == -1

    def test_pfaffian_mismatch(self, solved):
        om, rows = solved[5]
        with pytest.raises(PfaffianMismatch):
            verify_pfaffians(om, [[r.scale(k + 1) for k, r in enumerate(rows[0])]])


class TestSecantRank:
    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
    def test_on_curve(self, n):
        om = build_omega_explicit(E37, n)
        for P in POINTS:
            assert rank_at_secant_point(om, E37, [P], [3]) == 2

    @pytest.mark.parametrize("n", [5, 6, 7])
    def test_secant_line(self, n):
        om = build_omega_explicit(E37, n)
        assert rank_at_secant_point(om, E37, POINTS[:2], [1, 1]) == 4

    def test_zero_coefficient_degenerates(self):
        om = build_omega_explicit(E37, 5)
        assert rank_at_secant_point(om, E37, POINTS[:2], [1, 0]) == 2

    def test_plane(self):
        om = build_omega_explicit(E37, 7)
        assert rank_at_secant_point(om, E37, POINTS[:3], [1, -2, 5]) == 6
