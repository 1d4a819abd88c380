"""Exact dense linear algebra over the Gaussian rationals.

Matrices are plain lists of lists of :class:`~mpk.polyalg.GaussianRational`.
Everything here is elimination-based and exact; the only outputs touching
floats are the explicit ``to_complex_array`` conversions used by numeric
fallback paths and tests.

The Hermitian routines express a matrix as an exact signed sum of scaled
rank-one outer products, M = sum_t sign_t * scale_t * (w_t)* (w_t), with
rational rows w_t and positive rational scales.  That decomposition is a
congruence diagonalization, so it doubles as a Sylvester inertia count and
as the factor extractor for state-space residue matching.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .polyalg import GR_ONE, GR_ZERO, GaussianRational

Matrix = list[list[GaussianRational]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[GR_ZERO] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = GR_ONE
    return out


def copy(m: Matrix) -> Matrix:
    return [row[:] for row in m]


def dims(m: Matrix) -> tuple[int, int]:
    return len(m), len(m[0]) if m else 0


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k = dims(a)
    k2, m = dims(b)
    if k != k2:
        raise ValueError(f"shape mismatch: {n}x{k} times {k2}x{m}")
    bt = list(zip(*b))
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        for j in range(m):
            acc = GR_ZERO
            for x, y in zip(ai, bt[j]):
                if x and y:
                    acc = acc + x * y
            out[i][j] = acc
    return out


def scalar_mul(c, m: Matrix) -> Matrix:
    c = c if isinstance(c, GaussianRational) else GaussianRational(c)
    return [[c * x for x in row] for row in m]


def transpose(m: Matrix) -> Matrix:
    return [list(row) for row in zip(*m)]


def conj_transpose(m: Matrix) -> Matrix:
    return [[x.conjugate() for x in row] for row in zip(*m)]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return dims(a) == dims(b) and all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero_matrix(m: Matrix) -> bool:
    return all(x.is_zero() for row in m for x in row)


def is_hermitian_matrix(m: Matrix) -> bool:
    n, c = dims(m)
    if n != c:
        return False
    return all(m[i][j] == m[j][i].conjugate() for i in range(n) for j in range(i, n))


def mat_vec(m: Matrix, v: list[GaussianRational]) -> list[GaussianRational]:
    out = []
    for row in m:
        acc = GR_ZERO
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def dot_hermitian(a: list[GaussianRational], b: list[GaussianRational]) -> GaussianRational:
    """Sum a_k * conj(b_k) (second argument conjugated)."""
    acc = GR_ZERO
    for x, y in zip(a, b):
        acc = acc + x * y.conjugate()
    return acc


def outer_conj(a: list[GaussianRational], b: list[GaussianRational]) -> Matrix:
    """The outer product a* b for row vectors: entry (r, c) = conj(a_r) b_c."""
    return [[ar.conjugate() * bc for bc in b] for ar in a]


def _echelon(m: Matrix) -> tuple[Matrix, list[int]]:
    """Row echelon form (in place on a copy); returns (matrix, pivot columns)."""
    m = copy(m)
    rows, cols = dims(m)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if m[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = GR_ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(m: Matrix) -> int:
    if not m or not m[0]:
        return 0
    return len(_echelon(m)[1])


def nullity(m: Matrix) -> int:
    return dims(m)[1] - rank(m)


def solve(a: Matrix, b: list[GaussianRational]) -> list[GaussianRational] | None:
    """One solution of a x = b with free variables set to zero, or None."""
    rows, cols = dims(a)
    aug = [a[i][:] + [b[i]] for i in range(rows)]
    ech, pivots = _echelon(aug)
    if cols in pivots:
        return None  # inconsistent: pivot in the augmented column
    x = [GR_ZERO] * cols
    for r, c in enumerate(pivots):
        x[c] = ech[r][cols]
    # reduced echelon: pivot rows read off directly, but eliminate the
    # contribution of non-pivot columns we zeroed (they are free = 0)
    return x


def is_consistent(a: Matrix, b: list[GaussianRational]) -> bool:
    rows, cols = dims(a)
    aug = [a[i][:] + [b[i]] for i in range(rows)]
    return rank(a) == len(_echelon(aug)[1])


def invert(m: Matrix) -> Matrix:
    n, c = dims(m)
    if n != c:
        raise ValueError("only square matrices invert")
    aug = [m[i][:] + identity(n)[i] for i in range(n)]
    ech, pivots = _echelon(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in ech[:n]]


class RankOneTerm:
    """One signed, scaled rank-one summand of a Hermitian matrix.

    Represents sign * scale_sq * (row)*(row); scale_sq is a positive
    rational standing for the square of an (often irrational) length.
    """

    __slots__ = ("sign", "scale_sq", "row")

    def __init__(self, sign: int, scale_sq: Fraction, row: list[GaussianRational]):
        assert sign in (1, -1) and scale_sq > 0
        self.sign = sign
        self.scale_sq = scale_sq
        self.row = row

    def matrix(self) -> Matrix:
        return scalar_mul(self.sign * self.scale_sq, outer_conj(self.row, self.row))


def hermitian_rank_one_sum(m: Matrix) -> list[RankOneTerm]:
    """Exact decomposition of a Hermitian matrix into signed rank-one terms.

    Diagonal pivots peel one term; a zero diagonal with a nonzero
    off-diagonal entry peels a hyperbolic pair (one +, one -).  The number
    of terms equals the rank and the sign counts are the Sylvester inertia.
    """
    n, c = dims(m)
    if n != c or not is_hermitian_matrix(m):
        raise ValueError("Hermitian matrix expected")
    m = copy(m)
    terms: list[RankOneTerm] = []
    while not is_zero_matrix(m):
        pivot = next((i for i in range(n) if m[i][i]), None)
        if pivot is not None:
            d = m[pivot][pivot]
            assert d.is_real()
            sign = d.real_sign()
            scale = Fraction(1, 1) / abs(d.re)
            row = m[pivot][:]
            term = RankOneTerm(sign, scale, row)
            m = mat_sub(m, term.matrix())
            terms.append(term)
            continue
        # zero diagonal: find a nonzero off-diagonal pivot pair
        ij = next(
            ((i, j) for i in range(n) for j in range(i + 1, n) if m[i][j]),
            None,
        )
        assert ij is not None
        i, j = ij
        cij = m[i][j]
        # rows of the 2xN block eliminated through the antidiagonal pivot
        f = [x + y / cij.conjugate() for x, y in zip(m[i], m[j])]
        g = [x - y / cij.conjugate() for x, y in zip(m[i], m[j])]
        half = Fraction(1, 2)
        t_plus = RankOneTerm(1, half, f)
        t_minus = RankOneTerm(-1, half, g)
        m = mat_sub(m, mat_add(t_plus.matrix(), t_minus.matrix()))
        terms.extend((t_plus, t_minus))
    return terms


def hermitian_inertia(m: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts by exact congruence."""
    terms = hermitian_rank_one_sum(m)
    pos = sum(1 for t in terms if t.sign > 0)
    neg = len(terms) - pos
    return pos, neg, dims(m)[0] - len(terms)


def to_complex_array(m: Matrix) -> np.ndarray:
    return np.array([[x.to_complex() for x in row] for row in m], dtype=complex)


def from_int_grid(grid) -> Matrix:
    return [[x if isinstance(x, GaussianRational) else GaussianRational(x) for x in row] for row in grid]
