"""Square matrix polynomials L(z) and their rational-function inverses.

A MatPoly is an immutable n x n grid of :class:`~mpk.polyalg.Poly`; the
coefficient-matrix view (constant matrices A_0..A_l with
L(z) = sum A_j z^j) is available through ``coefficient_matrices``.

Determinants are computed by Bareiss fraction-free elimination over the
polynomial ring, entirely without rational-function intermediates.  The
inverse is exposed as hat(L) = -L(z)^-1, an n x n grid of reduced RatFun
built from the adjugate, so L(z) * (-hat(L)(z)) = I holds as an exact
identity.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import NotInvertibleError
from .polyalg import GR_ONE, GR_ZERO, GaussianRational, Poly, RatFun


def _coerce_entry(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (list, tuple)):
        return Poly(value)
    return Poly((value,))


class MatPoly:
    """Immutable square matrix of polynomials."""

    __slots__ = ("n", "rows", "_det")

    def __init__(self, rows):
        grid = tuple(tuple(_coerce_entry(e) for e in row) for row in rows)
        n = len(grid)
        if any(len(row) != n for row in grid):
            raise ValueError("matrix polynomial must be square")
        self.n = n
        self.rows = grid
        self._det = None

    # -- constructors -----------------------------------------------------

    @staticmethod
    def identity(n: int) -> "MatPoly":
        return MatPoly([[Poly.one() if i == j else Poly.zero() for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(n: int) -> "MatPoly":
        return MatPoly([[Poly.zero()] * n for _ in range(n)])

    @staticmethod
    def from_coefficient_matrices(mats) -> "MatPoly":
        """Build L(z) = sum_j mats[j] z^j from constant matrices."""
        if not mats:
            raise ValueError("at least one coefficient matrix required")
        n = len(mats[0])
        entries = [[[] for _ in range(n)] for _ in range(n)]
        for mat in mats:
            if len(mat) != n or any(len(r) != n for r in mat):
                raise ValueError("coefficient matrices must share one square shape")
            for i in range(n):
                for j in range(n):
                    entries[i][j].append(mat[i][j])
        return MatPoly([[Poly(entries[i][j]) for j in range(n)] for i in range(n)])

    @staticmethod
    def shift_identity(n: int) -> "MatPoly":
        """z * I, the matrix pencil of the plain derivative operator."""
        return MatPoly([[Poly.z() if i == j else Poly.zero() for j in range(n)] for i in range(n)])

    # -- structure --------------------------------------------------------

    @property
    def degree(self) -> int:
        """Max entry degree l (0 for the zero matrix)."""
        return max(0, max((e.degree for row in self.rows for e in row), default=0))

    def entry(self, i: int, j: int) -> Poly:
        return self.rows[i][j]

    def column(self, j: int) -> list[Poly]:
        return [self.rows[i][j] for i in range(self.n)]

    def coefficient_matrix(self, k: int) -> linalg.Matrix:
        return [[self.rows[i][j][k] for j in range(self.n)] for i in range(self.n)]

    def coefficient_matrices(self) -> list[linalg.Matrix]:
        l = max(self.degree, 0)
        return [self.coefficient_matrix(k) for k in range(l + 1)]

    def __eq__(self, other):
        if not isinstance(other, MatPoly):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(repr(e) for e in row) for row in self.rows)
        return f"MatPoly[{body}]"

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "MatPoly") -> "MatPoly":
        self._check_shape(other)
        return MatPoly([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "MatPoly") -> "MatPoly":
        self._check_shape(other)
        return MatPoly([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self) -> "MatPoly":
        return MatPoly([[-e for e in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, MatPoly):
            self._check_shape(other)
            n = self.n
            cols = list(zip(*other.rows))
            out = []
            for i in range(n):
                out.append(
                    [sum((a * b for a, b in zip(self.rows[i], cols[j])), Poly.zero()) for j in range(n)]
                )
            return MatPoly(out)
        if isinstance(other, (Poly, GaussianRational, int)):
            p = _coerce_entry(other)
            return MatPoly([[e * p for e in row] for row in self.rows])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Poly, GaussianRational, int)):
            return self * other
        return NotImplemented

    def mul_vector(self, vec: list[Poly]) -> list[Poly]:
        if len(vec) != self.n:
            raise ValueError("vector length mismatch")
        return [sum((a * b for a, b in zip(row, vec)), Poly.zero()) for row in self.rows]

    def _check_shape(self, other: "MatPoly"):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    # -- views ------------------------------------------------------------

    def transpose(self) -> "MatPoly":
        return MatPoly(list(zip(*self.rows)))

    def conj_coeffs(self) -> "MatPoly":
        """Entrywise coefficient conjugation (no transpose)."""
        return MatPoly([[e.conj_coeffs() for e in row] for row in self.rows])

    def hermitian_transpose(self) -> "MatPoly":
        """Coefficient-conjugated transpose; fixes Hermitian matrices."""
        return self.transpose().conj_coeffs()

    def is_hermitian(self) -> bool:
        """True iff every coefficient matrix is Hermitian."""
        return all(
            self.rows[i][j] == self.rows[j][i].conj_coeffs()
            for i in range(self.n)
            for j in range(i, self.n)
        )

    # -- analysis ---------------------------------------------------------

    def __call__(self, z):
        """Entrywise exact evaluation (complex z gives a float matrix)."""
        return [[e(z) for e in row] for row in self.rows]

    def eval_complex(self, z: complex):
        import numpy as np

        return np.array([[e(complex(z)) for e in row] for row in self.rows], dtype=complex)

    def derivative(self, order: int = 1) -> "MatPoly":
        if order < 0:
            raise ValueError("negative derivative order")
        return MatPoly([[e.derivative(order) for e in row] for row in self.rows])

    def det(self) -> Poly:
        """Exact determinant by Bareiss fraction-free elimination."""
        if self._det is None:
            self._det = _bareiss_det([list(row) for row in self.rows])
        return self._det

    def is_invertible(self) -> bool:
        return not self.det().is_zero()

    def first_minor(self, i: int, j: int) -> Poly:
        """Determinant of the submatrix with row i and column j removed."""
        sub = [
            [self.rows[r][c] for c in range(self.n) if c != j]
            for r in range(self.n)
            if r != i
        ]
        return _bareiss_det(sub)

    def degree_report(self) -> "DegreeReport":
        """Degree bookkeeping for det and all first minors.

        Requires an invertible matrix; reports whether every minor degree
        stays within deg det, the condition under which -L^-1 converges at
        infinity.
        """
        chi = self.det()
        if chi.is_zero():
            raise NotInvertibleError("det L(z) is identically zero")
        n, l = self.n, self.degree
        monic = self.coefficient_matrix(l) == linalg.identity(n)
        minor_degrees = [[self.first_minor(i, j).degree for j in range(n)] for i in range(n)]
        max_minor = max((d for row in minor_degrees for d in row), default=-1)
        condition = max_minor <= chi.degree
        report = DegreeReport(
            deg_chi=chi.degree,
            n_times_l=n * l,
            monic=monic,
            minor_degrees=minor_degrees,
            max_minor_degree=max_minor,
            condition_310=condition,
        )
        assert report.deg_chi <= report.n_times_l
        if monic:
            assert report.deg_chi == report.n_times_l, "monic matrix polynomial must have deg det = n*l"
        return report

    def inverse_hat(self) -> "MatRatFun":
        """The matrix rational function -L(z)^-1 with reduced entries."""
        chi = self.det()
        if chi.is_zero():
            raise NotInvertibleError("det L(z) is identically zero; no inverse exists")
        n = self.n
        entries = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = self.first_minor(j, i)
                num = -minor if (i + j) % 2 == 0 else minor
                row.append(RatFun(num, chi))
            entries.append(row)
        return MatRatFun(entries)


def _bareiss_det(grid: list[list[Poly]]) -> Poly:
    n = len(grid)
    if n == 0:
        return Poly.one()
    m = [row[:] for row in grid]
    sign = 1
    prev = Poly.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return Poly.zero()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = Poly.zero()
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


@dataclass(frozen=True)
class DegreeReport:
    """Degrees of det and minors; powers the convergence-at-infinity test."""

    deg_chi: int
    n_times_l: int
    monic: bool
    minor_degrees: list[list[int]]
    max_minor_degree: int
    condition_310: bool


class MatRatFun:
    """Immutable square matrix of reduced rational functions."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        grid = tuple(
            tuple(e if isinstance(e, RatFun) else RatFun(_coerce_entry(e)) for e in row) for row in rows
        )
        n = len(grid)
        if any(len(row) != n for row in grid):
            raise ValueError("matrix must be square")
        self.n = n
        self.rows = grid

    @staticmethod
    def from_matpoly(m: MatPoly) -> "MatRatFun":
        return MatRatFun([[RatFun(e) for e in row] for row in m.rows])

    @staticmethod
    def from_constant(mat: linalg.Matrix) -> "MatRatFun":
        return MatRatFun([[RatFun(Poly((c,))) for c in row] for row in mat])

    def entry(self, i: int, j: int) -> RatFun:
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, MatRatFun):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other: "MatRatFun") -> "MatRatFun":
        return MatRatFun([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "MatRatFun") -> "MatRatFun":
        return MatRatFun([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self) -> "MatRatFun":
        return MatRatFun([[-e for e in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, MatRatFun):
            cols = list(zip(*other.rows))
            return MatRatFun(
                [
                    [sum((a * b for a, b in zip(row, col)), RatFun(Poly.zero())) for col in cols]
                    for row in self.rows
                ]
            )
        if isinstance(other, MatPoly):
            return self * MatRatFun.from_matpoly(other)
        return NotImplemented

    def sub_constant(self, mat: linalg.Matrix) -> "MatRatFun":
        return self - MatRatFun.from_constant(mat)

    def conj_coeffs_transpose(self) -> "MatRatFun":
        return MatRatFun([[e.conj_coeffs() for e in row] for row in zip(*self.rows)])

    def is_identity(self) -> bool:
        one = RatFun(Poly.one())
        zero = RatFun(Poly.zero())
        return all(
            self.rows[i][j] == (one if i == j else zero)
            for i in range(self.n)
            for j in range(self.n)
        )

    def __call__(self, z):
        return [[e(z) for e in row] for row in self.rows]

    def __repr__(self):
        body = "; ".join(", ".join(repr(e) for e in row) for row in self.rows)
        return f"MatRatFun[{body}]"
