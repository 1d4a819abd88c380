"""Independent oracles used by the test suite.

Each oracle computes the same quantity as a library routine by a different
route: determinants by recursive cofactor expansion instead of Bareiss,
matrix evaluation by a Horner sum of coefficient matrices, partial
multiplicities by kernel dimensions of stacked block-Toeplitz derivative
systems instead of the diagonal form, and ODE solutions by the matrix
exponential instead of symbolic chains.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from mpk import linalg
from mpk.matpoly import MatPoly
from mpk.polyalg import GR_ZERO, GaussianRational, Poly


def cofactor_det(m: MatPoly) -> Poly:
    """Recursive cofactor expansion along the first row."""
    return _cofactor(list(list(row) for row in m.rows))


def _cofactor(grid: list[list[Poly]]) -> Poly:
    n = len(grid)
    if n == 0:
        return Poly.one()
    if n == 1:
        return grid[0][0]
    acc = Poly.zero()
    for j in range(n):
        if grid[0][j].is_zero():
            continue
        minor = [[grid[r][c] for c in range(n) if c != j] for r in range(1, n)]
        term = grid[0][j] * _cofactor(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def horner_eval(m: MatPoly, z: GaussianRational) -> linalg.Matrix:
    """Evaluate via the coefficient-matrix Horner sum."""
    mats = m.coefficient_matrices()
    acc = linalg.zeros(m.n, m.n)
    for mat in reversed(mats):
        acc = linalg.mat_add(linalg.scalar_mul(z, acc), mat)
    return acc


def toeplitz_kernel_dims(l: MatPoly, alpha: GaussianRational, depth: int) -> list[int]:
    """Kernel dimensions of the stacked derivative systems of length 1..depth.

    The length-k system acts on stacked vectors (phi_0, ..., phi_(k-1)) by
    rows sum_p (1/p!) L^(p)(alpha) phi_(i-p) = 0 for i < k; its kernel
    dimension is sum_j min(k, m_j) over the partial multiplicities m_j.
    """
    n = l.n
    slices = []
    for p in range(depth):
        mat = l.derivative(p)(alpha)
        scale = GaussianRational(Fraction(1, factorial(p)))
        slices.append([[scale * x for x in row] for row in mat])
    dims = []
    for k in range(1, depth + 1):
        big = linalg.zeros(k * n, k * n)
        for i in range(k):
            for p in range(i + 1):
                block = slices[p]
                for r in range(n):
                    for c in range(n):
                        big[i * n + r][(i - p) * n + c] = block[r][c]
        dims.append(linalg.nullity(big))
    return dims


def partial_multiplicities(l: MatPoly, alpha: GaussianRational) -> list[int]:
    """Partial multiplicities of alpha from kernel dimensions alone."""
    chi = l.det()
    if chi.is_zero():
        raise ValueError("matrix polynomial is not invertible")
    depth = chi.degree + 1
    dims = toeplitz_kernel_dims(l, alpha, depth)
    counts = []  # counts[k-1] = number of partial multiplicities >= k
    prev = 0
    for k, d in enumerate(dims, start=1):
        counts.append(d - prev)
        prev = d
    out = []
    for k in range(len(counts), 0, -1):
        ge_k = counts[k - 1]
        ge_k1 = counts[k] if k < len(counts) else 0
        out.extend([k] * (ge_k - ge_k1))
    return sorted(out, reverse=True)


def order_partition(records, alpha) -> list[int]:
    """Chain orders of the records at one exact eigenvalue, descending."""
    return sorted(
        (r.order for r in records if r.alpha.exact and r.alpha.value == alpha),
        reverse=True,
    )
