"""From the quadrics of an embedded curve back to its Jacobian.

Only the defining quadrics are used: the secant chain produces the
codimension one or two secant equations, Omega is found as the unique
alternating syzygy matrix, and c4, c6 give the Jacobian.
"""

import time

from g1omega import WeierstrassCurve, curve_quadrics, invariants, jacobian_equation
from g1omega.linalg import gradient
from g1omega.omega import solve_omega, verify_annihilation
from g1omega.secant import secant_chain

E = WeierstrassCurve(1, -1, 1, -3, 3)
print("E:", E, " j(E) =", E.j_invariant)

for n in (4, 5, 6, 7):
    t0 = time.perf_counter()
    quadrics = curve_quadrics(E, n)
    eqs = secant_chain(quadrics, n) if n > 4 else tuple(quadrics)
    rows = [gradient(f) for f in eqs] if isinstance(eqs, tuple) else [gradient(eqs)]
    om = solve_omega(rows, n)
    ok = verify_annihilation(om, rows)["ok"]
    jac = jacobian_equation(*invariants(om))
    print(f"n = {n}: {len(quadrics)} quadrics, annihilation {ok}, Jacobian {jac},"
          f" j = {jac.j_invariant}  [{time.perf_counter() - t0:.1f}s]")
