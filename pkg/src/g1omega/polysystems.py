"""Kernels of linear maps whose values are polynomial identities.

Many systems in the package have the shape "find all coefficient vectors
v such that some polynomials built linearly from v vanish identically".
Writing out every coefficient equation is expensive, so the kernel is
first cut down by evaluating the identities at random integer points
(each point gives valid linear equations, so the true kernel is never
lost), and the candidate space is then certified symbolically.  If the
candidates are too many, the symbolic equations restricted to them pick
out the exact kernel.  The answer is always exact and independent of the
random points; only the running time depends on them.
"""

from __future__ import annotations

import random
from typing import Callable, List, Sequence

from .errors import DegenerateModelError, InconsistentInputError
from .exactmath import Polynomial
from .linalg import RatMatrix, canonical_basis, kernel_basis, kernel_basis_modular, rank_mod_p

__all__ = ["solve_identity", "DegenerateModelError", "InconsistentInputError"]

_SEED = 20240917


def _rank_mod_p(rows, ncols):
    return rank_mod_p(RatMatrix(rows, ncols))


def solve_identity(
    unknowns: int,
    rows_at: Callable[[Sequence[int]], List[List]],
    residues: Callable[[Sequence], List[Polynomial]],
    arity: int,
    rng: random.Random | None = None,
    extra: int = 6,
    bound: int = 4,
) -> List[List[int]]:
    """Canonical basis of ``{v : residues(v) == 0}``.

    ``rows_at(point)`` must return the linear equations on ``v`` obtained by
    evaluating every residue polynomial at ``point``.
    """
    rng = rng or random.Random(_SEED)
    rows: List[List] = []

    def sample(count):
        target = len(rows) + count
        while len(rows) < target:
            point = [rng.randint(-bound, bound) for _ in range(arity)]
            rows.extend(row for row in rows_at(point) if any(row))

    # rows from one point may be dependent (e.g. through Euler's identity),
    # so keep sampling until the rank mod a prime stops growing
    sample(unknowns + extra)
    rk = _rank_mod_p(rows, unknowns)
    while rk < unknowns:
        sample(max(extra, unknowns - rk))
        new_rk = _rank_mod_p(rows, unknowns)
        if new_rk == rk:
            break
        rk = new_rk
    candidates = kernel_basis_modular(RatMatrix(rows, unknowns))
    if not candidates:
        return []
    images = [residues(v) for v in candidates]
    if all(p.is_zero() for img in images for p in img):
        return candidates
    # restrict the symbolic equations to the candidate span
    keys = sorted({(k, m) for img in images for k, p in enumerate(img) for m in p.monomials()})
    matrix = [[img[k].coeff(m) for img in images] for k, m in keys]
    combos = kernel_basis(RatMatrix(matrix, len(candidates)))
    vecs = [
        [sum(c * v[i] for c, v in zip(combo, candidates)) for i in range(unknowns)]
        for combo in combos
    ]
    return canonical_basis(vecs, unknowns) if vecs else []
