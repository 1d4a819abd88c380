"""Diagonalization D = S L T by tracked elementary transformations.

The reduction runs on the block scheme [[I, L], [0, I]]: every row operation
applied to the working matrix is mirrored on the left tracker S, every
column operation on the right tracker T, so S(z) L(z) T(z) = D(z) holds
exactly at the end with det S and det T nonzero constants.

The output is *a* diagonal form, not the Smith form: no divisibility chain
is enforced, and diagonal entries appear in the order the pivot strategy
produces them.  Only the product of the diagonal entries (up to a constant)
and the per-eigenvalue multiplicity partitions are invariants.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import VerificationError
from .matpoly import MatPoly
from .polyalg import GR_ONE, GaussianRational, Poly

#: Pivot strategies: map a candidate (degree, row, col) to a sort key.
STRATEGIES = {
    "min_degree": lambda deg, i, j: (deg, i, j),
    "min_degree_rev": lambda deg, i, j: (deg, -i, -j),
}


@dataclass(frozen=True)
class ElementaryMove:
    """One invertible row/column operation.

    kinds: ``swap`` lines i and j; ``scale`` line i by the nonzero constant
    c; ``add_multiple`` adds q(z) times line j to line i.
    """

    side: str  # "row" | "col"
    kind: str  # "swap" | "scale" | "add_multiple"
    i: int
    j: int | None = None
    c: GaussianRational | None = None
    q: Poly | None = None

    def det_factor(self) -> GaussianRational:
        if self.kind == "swap":
            return GaussianRational(-1)
        if self.kind == "scale":
            return self.c
        return GR_ONE


@dataclass(frozen=True)
class DiagForm:
    """Triple (S, D, T) with transcript; S L T = D exactly."""

    s: MatPoly
    d: MatPoly
    t: MatPoly
    det_s: GaussianRational
    det_t: GaussianRational
    transcript: tuple[ElementaryMove, ...] = field(default=())

    def diagonal(self) -> list[Poly]:
        return [self.d.entry(i, i) for i in range(self.d.n)]


class _Worker:
    """Mutable reduction state: working grid plus S/T trackers."""

    def __init__(self, l: MatPoly):
        self.n = l.n
        self.d = [list(row) for row in l.rows]
        self.s = [list(row) for row in MatPoly.identity(l.n).rows]
        self.t = [list(row) for row in MatPoly.identity(l.n).rows]
        self.det_s = GR_ONE
        self.det_t = GR_ONE
        self.transcript: list[ElementaryMove] = []

    def apply(self, move: ElementaryMove):
        grids = (self.d, self.s) if move.side == "row" else (self.d, self.t)
        for grid in grids:
            _apply_to_grid(grid, move)
        if move.side == "row":
            self.det_s = self.det_s * move.det_factor()
        else:
            self.det_t = self.det_t * move.det_factor()
        self.transcript.append(move)

    def row(self, kind, i, j=None, c=None, q=None):
        self.apply(ElementaryMove("row", kind, i, j, c, q))

    def col(self, kind, i, j=None, c=None, q=None):
        self.apply(ElementaryMove("col", kind, i, j, c, q))


def _apply_to_grid(grid: list[list[Poly]], move: ElementaryMove):
    n = len(grid)
    if move.side == "row":
        if move.kind == "swap":
            grid[move.i], grid[move.j] = grid[move.j], grid[move.i]
        elif move.kind == "scale":
            grid[move.i] = [move.c * e for e in grid[move.i]]
        else:
            grid[move.i] = [a + move.q * b for a, b in zip(grid[move.i], grid[move.j])]
    else:
        if move.kind == "swap":
            for r in range(n):
                grid[r][move.i], grid[r][move.j] = grid[r][move.j], grid[r][move.i]
        elif move.kind == "scale":
            for r in range(n):
                grid[r][move.i] = move.c * grid[r][move.i]
        else:
            for r in range(n):
                grid[r][move.i] = grid[r][move.i] + move.q * grid[r][move.j]


def _find_pivot(d, stage, n, key):
    best = None
    best_key = None
    for i in range(stage, n):
        for j in range(stage, n):
            e = d[i][j]
            if e.is_zero():
                continue
            k = key(e.degree, i, j)
            if best_key is None or k < best_key:
                best, best_key = (i, j), k
    return best


def diagonalize(l: MatPoly, strategy: str = "min_degree") -> DiagForm:
    """Reduce L to a diagonal form with tracked unimodular S and T.

    At each stage the nonzero entry of minimal degree in the trailing
    submatrix becomes the pivot; its row and column are reduced by exact
    polynomial division until the remainders vanish (every nonzero
    remainder has strictly smaller degree, so a finer pivot is re-selected
    and the stage terminates).  Works for any square L; a zero matrix maps
    to D = 0 with S = T = I.
    """
    try:
        key = STRATEGIES[strategy]
    except KeyError:
        raise ValueError(f"unknown pivot strategy {strategy!r}") from None
    w = _Worker(l)
    n = w.n
    for stage in range(n):
        while True:
            pivot = _find_pivot(w.d, stage, n, key)
            if pivot is None:
                break  # trailing block is zero
            pi, pj = pivot
            if pi != stage:
                w.row("swap", stage, pi)
            if pj != stage:
                w.col("swap", stage, pj)
            dirty = False
            for i in range(stage + 1, n):
                if w.d[i][stage].is_zero():
                    continue
                quo, rem = divmod(w.d[i][stage], w.d[stage][stage])
                if not quo.is_zero():
                    w.row("add_multiple", i, stage, q=-quo)
                if not rem.is_zero():
                    dirty = True
            if dirty:
                continue
            for j in range(stage + 1, n):
                if w.d[stage][j].is_zero():
                    continue
                quo, rem = divmod(w.d[stage][j], w.d[stage][stage])
                if not quo.is_zero():
                    w.col("add_multiple", j, stage, q=-quo)
                if not rem.is_zero():
                    dirty = True
            if not dirty:
                break
    return DiagForm(
        s=MatPoly(w.s),
        d=MatPoly(w.d),
        t=MatPoly(w.t),
        det_s=w.det_s,
        det_t=w.det_t,
        transcript=tuple(w.transcript),
    )


def replay_transcript(n: int, transcript) -> tuple[MatPoly, MatPoly]:
    """Rebuild (S, T) from a transcript alone, starting at identities."""
    s = [list(row) for row in MatPoly.identity(n).rows]
    t = [list(row) for row in MatPoly.identity(n).rows]
    for move in transcript:
        _apply_to_grid(s if move.side == "row" else t, move)
    return MatPoly(s), MatPoly(t)


@dataclass(frozen=True)
class DiagCheck:
    """Verifier outcome; ``failed`` names the first violated check."""

    ok: bool
    failed: str | None = None
    message: str = ""

    def require(self):
        if not self.ok:
            raise VerificationError(f"diagonal form check ({self.failed}) failed: {self.message}")


def verify_diag(l: MatPoly, form: DiagForm) -> DiagCheck:
    """Exact verification of a claimed diagonal form of L.

    Checks, in order: (a) S L T = D; (b) D diagonal; (c) det S and det T
    are nonzero constants; (d) prod d_i = det S * det T * det L.  Check (d)
    is skipped for det L = 0, where it is vacuous.
    """
    if not (l.n == form.s.n == form.d.n == form.t.n):
        return DiagCheck(False, "a", "dimension mismatch")
    product = form.s * l * form.t
    if product != form.d:
        return DiagCheck(False, "a", "S*L*T differs from D")
    for i in range(form.d.n):
        for j in range(form.d.n):
            if i != j and not form.d.entry(i, j).is_zero():
                return DiagCheck(False, "b", f"off-diagonal entry ({i},{j}) is nonzero")
    det_s = form.s.det()
    det_t = form.t.det()
    for name, det in (("S", det_s), ("T", det_t)):
        if det.degree != 0:
            return DiagCheck(False, "c", f"det {name} is not a nonzero constant: {det!r}")
    det_l = l.det()
    if not det_l.is_zero():
        prod = Poly.one()
        for p in form.diagonal():
            prod = prod * p
        expected = det_s.constant_term() * det_t.constant_term()
        if prod != det_l * Poly.constant(expected):
            return DiagCheck(False, "d", "product of diagonal entries != det S * det T * det L")
    return DiagCheck(True)
