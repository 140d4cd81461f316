"""Built-in self-check: exact certificates for every stage, up to a degree bound."""

from __future__ import annotations

import random
import time
from math import comb
from typing import Callable, Iterator, List, Tuple

from .elliptic import CurvePoint, WeierstrassCurve, curve_quadrics, homogenized_cubic, standard_points
from .explicit import (
    a_coefficient,
    build_A,
    build_B,
    build_omega_explicit,
    classical_omega_cubic,
    classical_omega_quadric_pair,
    lambda_matrix,
    om1_formula,
    symbolic_omega,
)
from .invariants import c4_sum, c6_sum, invariants, jacobian_equation
from .linalg import gradient
from .omega import (
    gl_act,
    normalize_omega,
    random_invertible,
    rank_at_secant_point,
    solve_omega,
    verify_annihilation,
    verify_pfaffians,
)
from .secant import secant_chain

__all__ = ["TEST_CURVES", "run_selfcheck", "iter_checks"]

TEST_CURVES = {
    "y^2+y=x^3": (0, 0, 1, 0, 0),
    "y^2+y=x^3-x": (0, 0, 1, -1, 0),
    "y^2=x^3+1": (0, 0, 0, 0, 1),
    "y^2+xy+y=x^3-x^2-3x+3": (1, -1, 1, -3, 3),
}
_BASE = "y^2+y=x^3-x"

Check = Tuple[str, Callable[[], bool]]


def _lambda_checks(n_max: int) -> Iterator[Check]:
    for n in range(4, min(n_max, 9) + 1):
        def inv(n=n):
            L = lambda_matrix(n)
            return invariants(L) == ((n - 2) ** 4, -(n - 2) ** 6)

        def sums(n=n):
            L = lambda_matrix(n)
            return (3 * c4_sum(L) == 16 * n * (n - 2) ** 2 * comb(n + 3, 5)
                    and c6_sum(L) == 64 * n * (n - 2) ** 3 * comb(n + 5, 7))

        yield f"Lambda invariants n={n}", inv
        yield f"Lambda unscaled sums n={n}", sums


def _explicit_checks(n_max: int) -> Iterator[Check]:
    for name, a in TEST_CURVES.items():
        for n in range(3, min(n_max, 7) + 1):
            def scaling(a=a, n=n):
                E = WeierstrassCurve(*a)
                return invariants(build_omega_explicit(E, n)) == ((n - 2) ** 4 * E.c4, (n - 2) ** 6 * E.c6)

            yield f"explicit scaling {name} n={n}", scaling
    for n in range(3, min(n_max, 9) + 1):
        def cancel(n=n):
            build_A(n)
            build_B(n)
            symbolic_omega(n)  # each raises if a variable escapes
            return True

        yield f"variable cancellation n={n}", cancel
    for n in range(3, min(n_max, 8) + 1):
        def om1(n=n):
            got = a_coefficient(symbolic_omega(n), 1)
            want = om1_formula(n)
            return all(
                {k: c.constant_value() for k, c in got[key].coeffs.items()} == want[key] for key in got
            )

        yield f"a1-coefficient closed form n={n}", om1


def _solver_checks(n_max: int) -> Iterator[Check]:
    E = WeierstrassCurve(*TEST_CURVES[_BASE])

    def cubic():
        F = homogenized_cubic(E)
        om = classical_omega_cubic(F)
        verify_pfaffians(om, [gradient(F)])
        return (verify_annihilation(om, [gradient(F)])["ok"]
                and invariants(om) == (E.c4, E.c6))

    yield "classical cubic", cubic
    if n_max >= 4:
        def pair():
            F1, F2 = curve_quadrics(E, 4)
            om = classical_omega_quadric_pair(F1, F2)
            rows = [gradient(F1), gradient(F2)]
            verify_pfaffians(om, rows)
            return verify_annihilation(om, rows)["ok"] and invariants(om) == (E.c4, E.c6)

        yield "classical quadric pair", pair
    for n in range(4, min(n_max, 7) + 1):
        def round_trip(n=n):
            eqs = secant_chain(curve_quadrics(E, n), n)
            rows = [gradient(f) for f in eqs] if isinstance(eqs, tuple) else [gradient(eqs)]
            om = solve_omega(rows, n)
            if om != normalize_omega(build_omega_explicit(E, n)):
                return False
            if not verify_annihilation(om, rows)["ok"]:
                return False
            if n <= 5:
                verify_pfaffians(om, rows)
            return jacobian_equation(*invariants(om)).j_invariant == E.j_invariant

        yield f"solver round trip n={n}", round_trip


def _invariance_checks(n_max: int) -> Iterator[Check]:
    E = WeierstrassCurve(*TEST_CURVES[_BASE])
    for n in range(3, min(n_max, 5) + 1):
        def invariance(n=n):
            rng = random.Random(1000 + n)
            om = build_omega_explicit(E, n)
            base = invariants(om)
            for _ in range(20):
                g = random_invertible(n, rng)
                if invariants(gl_act(g, om)) != base:
                    return False
            lam = 3
            c4, c6 = base
            return invariants(om.scale(lam)) == (lam ** 4 * c4, lam ** 6 * c6)

        yield f"GL_n invariance n={n}", invariance

    def ranks():
        pts = standard_points(E, CurvePoint(0, 0), 3)
        for n in range(3, min(n_max, 7) + 1):
            om = build_omega_explicit(E, n)
            for r in (1, 2):
                if 2 * r < n and rank_at_secant_point(om, E, pts[:r], [1, 2][:r]) != 2 * r:
                    return False
        return True

    yield "rank on secant points", ranks


def iter_checks(n_max: int) -> Iterator[Check]:
    yield from _solver_checks(n_max)
    yield from _lambda_checks(n_max)
    yield from _explicit_checks(n_max)
    yield from _invariance_checks(n_max)


def run_selfcheck(n_max: int = 5, echo: Callable[[str], None] = print) -> bool:
    """Run every check up to degree ``n_max``; print one line each."""
    ok_all = True
    for name, fn in iter_checks(n_max):
        t0 = time.perf_counter()
        try:
            ok = bool(fn())
            detail = ""
        except Exception as exc:  # report, keep going
            ok = False
            detail = f" ({type(exc).__name__}: {exc})"
        ok_all &= ok
        echo(f"{'PASS' if ok else 'FAIL'}  {name}  [{time.perf_counter() - t0:.2f}s]{detail}")
    return ok_all
