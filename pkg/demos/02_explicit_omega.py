"""Omega in closed form for a Weierstrass curve embedded in degree n.

The matrix nB - 2A is built symbolically in a1, ..., a6.  All auxiliary
variables cancel, and after substituting the curve the invariants come out
as (n-2)^4 c4(E) and (n-2)^6 c6(E).
"""

from fractions import Fraction

from g1omega import WeierstrassCurve, build_omega_explicit, invariants, jacobian_equation
from g1omega.explicit import symbolic_omega

E = WeierstrassCurve(0, 0, 1, -1, 0)  # conductor 37
print("E:", E, " c4 =", E.c4, " c6 =", E.c6, " j =", E.j_invariant)

sym = symbolic_omega(5)
print("\nentry (x_0, x_3) of nB - 2A over Q[a1, a2, a3, a4, a6]:")
print(" ", sym[(0, 3)])

for n in range(3, 8):
    om = build_omega_explicit(E, n)
    c4, c6 = invariants(om)
    print(f"n = {n}: c4 = {c4} = {Fraction(c4, E.c4)} * c4(E),"
          f" j(Jacobian) = {jacobian_equation(c4, c6).j_invariant}")
