"""Invariants of the diagonal test matrix Lambda.

Lambda has entries (sign(j-i) n - 2(j-i)) x_i x_j.  Its invariants are
(n-2)^4 and -(n-2)^6, so it is the model of a curve with j = 1728 after
rescaling.  We print M, a slice of N, and the invariants for small n.
"""

from g1omega import c4, c6, lambda_matrix, matrix_M, tensor_N

for n in range(4, 8):
    L = lambda_matrix(n)
    print(f"n = {n}:  c4 = {c4(L)}  c6 = {c6(L)}  (n-2)^4 = {(n - 2) ** 4}")

L = lambda_matrix(5)
print("\nLambda for n = 5, above the diagonal:")
for i in range(4):
    print("  ", "   ".join(str(L[i, j]) for j in range(i + 1, 5)))
M = matrix_M(L)
print("\nfirst row of M:", [str(p) for p in M[0]])
N = tensor_N(L)
print("N_123 =", N[0][1][2])
