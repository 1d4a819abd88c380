"""Finite-dimensional operator representations of hat(L) = -L(z)^-1.

For a Hermitian invertible matrix polynomial whose inverse converges at
infinity and whose spectrum is real and exact, this module produces
(S, A, J, Gamma, kappa) with

    hat(L)(z) = S + Gamma^+ (A - z)^-1 Gamma,      Gamma^+ = Gamma* J,

where A is block-diagonal Jordan (one block per canonical root function),
J is the matching block-diagonal fundamental symmetry (a signed sip matrix
per block, the sign read off an exact chain limit), and kappa is the
negative index of the resulting Pontryagin scalar product.

Gamma is found by residue matching.  The partial-fraction residues of
hat(L) - S at a pole are signed sums of outer products of the rows of
Gamma; the rows are recovered top order down, one anti-diagonal level at a
time: the deepest level factors as a signed sum of rank-one terms, and
each shallower level is linear in one new row per surviving block.  Rows
may need a square root of a positive rational; each Gamma block therefore
carries a rational ``scale_sq`` with rows scaled by sqrt(scale_sq), which
keeps every verifiable product exactly rational.

Gamma is unique only up to J-unitary equivalence; the implementation fixes
the gauge deterministically (phase-normalized deepest rows, zero free
components in the linear steps) and defines correctness by the exact
reconstruction identity, which is always verified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (
    ConvergenceAtInfinityError,
    GammaSolveError,
    NotHermitianError,
    NotInvertibleError,
    SpectrumError,
    VerificationError,
)
from .matpoly import DegreeReport, MatPoly, MatRatFun
from .polyalg import (
    GR_ONE,
    GR_ZERO,
    GaussianRational,
    Poly,
    RatFun,
    ratfun_limit,
    ratfun_limit_at_infinity,
    root_multiplicity,
    taylor_ratio,
)
from .spectral import (
    CanonicalSystem,
    RootFunctionRecord,
    canonical_system,
    pole_cancellation,
)

Matrix = linalg.Matrix


@dataclass(frozen=True)
class BlockSpec:
    """One Jordan block of the representation: eigenvalue, order, sign."""

    alpha: GaussianRational
    order: int
    sign: int  # +1 -> +G block, -1 -> -G block
    column: int  # diagonal column the root function came from
    limit: GaussianRational  # the certified nonzero chain limit


@dataclass(frozen=True)
class GammaBlock:
    """Rows of Gamma for one block, scaled by sqrt(scale_sq)."""

    scale_sq: Fraction
    rows: tuple[tuple[GaussianRational, ...], ...]

    @property
    def order(self) -> int:
        return len(self.rows)

    def dense_complex(self):
        from math import sqrt

        s = sqrt(float(self.scale_sq))
        return [[complex(x) * s for x in row] for row in self.rows]


@dataclass(frozen=True)
class Representation:
    """A verified realization of hat(L); ``dimension`` is deg det L."""

    n: int
    s_infinity: Matrix
    a_matrix: Matrix
    j_matrix: Matrix
    gamma: tuple[GammaBlock, ...]
    kappa: int
    blocks: tuple[BlockSpec, ...]
    verified: bool = False

    @property
    def dimension(self) -> int:
        return sum(b.order for b in self.blocks)

    @staticmethod
    def from_plain_gamma(n, s_infinity, a_matrix, j_matrix, blocks, gamma_rows) -> "Representation":
        """Wrap an explicit rational Gamma matrix (rows split per block)."""
        gamma_blocks = []
        at = 0
        for b in blocks:
            rows = tuple(tuple(r) for r in gamma_rows[at : at + b.order])
            gamma_blocks.append(GammaBlock(Fraction(1), rows))
            at += b.order
        if at != len(gamma_rows):
            raise ValueError("Gamma row count does not match the block orders")
        kappa = _kappa_from_blocks(blocks)
        return Representation(n, s_infinity, a_matrix, j_matrix, tuple(gamma_blocks), kappa, tuple(blocks))


def sip_matrix(k: int) -> Matrix:
    """The k x k anti-diagonal matrix of ones."""
    out = linalg.zeros(k, k)
    for i in range(k):
        out[i][k - 1 - i] = GR_ONE
    return out


def jordan_block(alpha: GaussianRational, k: int) -> Matrix:
    out = linalg.zeros(k, k)
    for i in range(k):
        out[i][i] = alpha
        if i + 1 < k:
            out[i][i + 1] = GR_ONE
    return out


@dataclass(frozen=True)
class RepresentabilityReport:
    """Successful admission check with the data the pipeline reuses."""

    degree_report: DegreeReport
    system: CanonicalSystem
    lhat: MatRatFun


def check_representability(l: MatPoly, strategy: str = "min_degree") -> RepresentabilityReport:
    """Admission control, failing with a distinct error per clause.

    Requires, in order: Hermitian coefficients; det L not identically
    zero; every first-minor degree at most deg det L (otherwise the
    inverse has a spectral point at infinity and only a relation-based
    representation exists, which is refused); an exact, real spectrum.
    """
    if not l.is_hermitian():
        raise NotHermitianError("matrix polynomial is not Hermitian")
    if not l.is_invertible():
        raise NotInvertibleError("det L(z) is identically zero")
    report = l.degree_report()
    if not report.condition_310:
        raise ConvergenceAtInfinityError(
            "a first minor has degree exceeding deg det L "
            f"(max minor degree {report.max_minor_degree} > deg det = {report.deg_chi}); "
            "-L(z)^-1 diverges at infinity, i.e. the representing object has a "
            "spectral point at infinity"
        )
    system = canonical_system(l, strategy=strategy, numeric_fallback=True)
    bad = [e for e in system.table.entries if not (e.alpha.exact and e.alpha.is_real())]
    if bad:
        raise SpectrumError(
            "spectrum must consist of exact real Gaussian rationals; offending "
            f"eigenvalues: {[e.alpha.value for e in bad]}"
        )
    return RepresentabilityReport(report, system, l.inverse_hat())


def limit_at_infinity_matrix(lhat: MatRatFun) -> Matrix:
    """Entrywise limit of hat(L) at infinity; Hermitian by construction."""
    out = []
    for i in range(lhat.n):
        row = []
        for j in range(lhat.n):
            lim = ratfun_limit_at_infinity(lhat.entry(i, j))
            if not lim.is_finite:
                raise ConvergenceAtInfinityError(
                    f"entry ({i},{j}) diverges at infinity; the degree condition was not checked"
                )
            row.append(lim.value)
        out.append(row)
    if not linalg.is_hermitian_matrix(out):
        raise VerificationError("limit of hat(L) at infinity is not Hermitian")
    return out


def chain_limit(l: MatPoly, rec: RootFunctionRecord) -> GaussianRational:
    """The exact scalar limit <psi, phi> / (z-alpha)^k at the eigenvalue.

    psi = L*phi is the pole cancellation function; the pairing conjugates
    the second argument's coefficients, which agrees with the Hermitian
    inner product on the real axis.  The value must be real and nonzero;
    its sign selects the block's fundamental symmetry.
    """
    if not rec.exact:
        raise SpectrumError("chain limits need exact eigenvalues")
    alpha = rec.alpha.value
    if not alpha.is_real():
        raise SpectrumError(f"eigenvalue {alpha!r} is not real")
    psi = pole_cancellation(l, rec).psi
    h = Poly.zero()
    for pc, fc in zip(psi, rec.phi):
        h = h + pc * fc.conj_coeffs()
    if h.is_zero():
        raise VerificationError(
            f"pairing of psi and phi vanishes identically at {alpha!r}; non-canonical chain"
        )
    lim = ratfun_limit(RatFun(h, Poly.linear(alpha) ** rec.order), alpha)
    if not lim.is_finite or lim.order != 0:
        raise VerificationError(
            f"chain limit at {alpha!r} is zero or infinite; the root function is not canonical"
        )
    value = lim.value
    if not value.is_real():
        raise VerificationError(f"chain limit {value!r} is not real; Hermitian structure violated")
    return value


def _kappa_from_blocks(blocks) -> int:
    kappa = 0
    for b in blocks:
        if b.order % 2 == 0:
            kappa += b.order // 2
        else:
            half = (b.order - 1) // 2
            kappa += half if b.sign > 0 else half + 1
    return kappa


def assemble_aj(blocks) -> tuple[Matrix, Matrix, int]:
    """Block-diagonal (A, J) plus the negative index kappa.

    kappa follows the closed-form signature of a signed sip matrix: a
    block of odd order 2l+1 contributes l negatives with sign +1 and l+1
    with sign -1; an even order 2l contributes l either way.  The
    self-adjointness identities J A = A^T J and J^2 = I are asserted.
    """
    dim = sum(b.order for b in blocks)
    a = linalg.zeros(dim, dim)
    j = linalg.zeros(dim, dim)
    at = 0
    for b in blocks:
        jb = jordan_block(b.alpha, b.order)
        sip = sip_matrix(b.order)
        for r in range(b.order):
            for c in range(b.order):
                a[at + r][at + c] = jb[r][c]
                j[at + r][at + c] = sip[r][c] if b.sign > 0 else -sip[r][c]
        at += b.order
    kappa = _kappa_from_blocks(blocks)
    if not linalg.mat_eq(linalg.mat_mul(j, a), linalg.mat_mul(linalg.transpose(a), j)):
        raise VerificationError("J A != A^T J; assembled blocks are inconsistent")
    if not linalg.mat_eq(linalg.mat_mul(j, j), linalg.identity(dim)):
        raise VerificationError("J^2 != I")
    return a, j, kappa


def sort_blocks(blocks) -> tuple[BlockSpec, ...]:
    return tuple(sorted(blocks, key=lambda b: (b.alpha.sort_key(), -b.order, b.column)))


def blocks_from_system(l: MatPoly, system: CanonicalSystem) -> tuple[BlockSpec, ...]:
    """One signed block per canonical root function, in canonical order."""
    blocks = []
    for rec in system.records:
        value = chain_limit(l, rec)
        blocks.append(
            BlockSpec(rec.alpha.value, rec.order, value.real_sign(), rec.column, value)
        )
    return sort_blocks(blocks)


def partial_fractions(strict: MatRatFun, poles: dict[GaussianRational, int]) -> dict[GaussianRational, list[Matrix]]:
    """Exact residue matrices of a strictly proper matrix rational function.

    ``poles`` maps each admissible pole to its maximal order; the result
    maps alpha to [R_0, ..., R_{kmax-1}] with

        strict(z) = sum_alpha sum_m R_m / (z - alpha)^(m+1).

    Raises when an entry has a pole outside ``poles``, a pole order above
    the stated maximum, or fails to be strictly proper.
    """
    n = strict.n
    out = {a: [linalg.zeros(n, n) for _ in range(k)] for a, k in poles.items()}
    for i in range(n):
        for j in range(n):
            f = strict.entry(i, j)
            if f.is_zero():
                continue
            if f.num.degree >= f.den.degree:
                raise GammaSolveError(f"entry ({i},{j}) is not strictly proper: {f!r}")
            den = f.den
            remaining = den
            for alpha, kmax in poles.items():
                e = root_multiplicity(den, alpha)
                if e == 0:
                    continue
                if e > kmax:
                    raise GammaSolveError(
                        f"entry ({i},{j}) has pole order {e} at {alpha!r}, above the chain order {kmax}"
                    )
                co = den.exact_div(Poly.linear(alpha) ** e)
                coeffs = taylor_ratio(f.num, co, alpha, e)
                for m in range(e):
                    out[alpha][m][i][j] = coeffs[e - 1 - m]
                remaining = remaining.exact_div(Poly.linear(alpha) ** e)
            if not remaining.is_constant():
                raise GammaSolveError(
                    f"entry ({i},{j}) has poles outside the spectrum: leftover factor {remaining!r}"
                )
    return out


class _PoleSolver:
    """Level-by-level recovery of the Gamma rows for one pole."""

    def __init__(self, alpha, blocks_at_pole, residues):
        self.alpha = alpha
        self.blocks = blocks_at_pole  # list of (block_index, BlockSpec)
        self.kmax = max(b.order for _, b in blocks_at_pole)
        if len(residues) > self.kmax:
            raise GammaSolveError(
                f"pole {alpha!r} has residue order {len(residues)} above the top chain order {self.kmax}"
            )
        self.residues = residues
        self.n = len(residues[0]) if residues else 0
        # rows[idx][i] = rational part of row i+1 of block idx; scales[idx] = scale_sq
        self.rows: dict[int, list] = {}
        self.scales: dict[int, Fraction] = {}

    def residue(self, m: int) -> Matrix:
        if m < len(self.residues):
            return self.residues[m]
        return linalg.zeros(self.n, self.n)

    def solve(self):
        for m in range(self.kmax - 1, -1, -1):
            self._solve_level(m)
        return self.rows, self.scales

    def _known_pairs(self, m: int) -> Matrix:
        """Sum of the level-m terms built entirely from known rows."""
        acc = linalg.zeros(self.n, self.n)
        for idx, b in self.blocks:
            if b.order < m + 2:
                continue
            cb = self.scales[idx]
            sign = b.sign
            for i in range(m + 2, b.order):  # 1-based rows i in [m+2, k-1]
                jrow = b.order + 1 + m - i
                term = linalg.outer_conj(self.rows[idx][i - 1], self.rows[idx][jrow - 1])
                acc = linalg.mat_add(acc, linalg.scalar_mul(sign * cb, term))
        return acc

    def _solve_level(self, m: int):
        new = [(idx, b) for idx, b in self.blocks if b.order == m + 1]
        deep = [(idx, b) for idx, b in self.blocks if b.order >= m + 2]
        c_m = linalg.scalar_mul(-1, self.residue(m))
        m_mat = linalg.mat_sub(c_m, self._known_pairs(m))

        proj = None
        if deep:
            # signed, scale-free projector onto the span of the deepest rows
            v_rows = [
                [b.sign * x for x in self.rows[idx][b.order - 1]] for idx, b in deep
            ]
            gram = [[linalg.dot_hermitian(v, w) for w in v_rows] for v in v_rows]
            try:
                gram_inv = linalg.invert(gram)
            except ValueError:
                raise GammaSolveError(
                    f"deepest rows at pole {self.alpha!r} are linearly dependent"
                ) from None
            proj = linalg.mat_mul(linalg.conj_transpose(v_rows), linalg.mat_mul(gram_inv, v_rows))

        if proj is not None:
            comp = linalg.mat_sub(linalg.identity(self.n), proj)
            z_mat = linalg.mat_mul(comp, linalg.mat_mul(m_mat, comp))
        else:
            z_mat = m_mat

        if new:
            terms = linalg.hermitian_rank_one_sum(z_mat)
            self._assign_new_rows(new, terms, m)
        elif not linalg.is_zero_matrix(z_mat):
            raise GammaSolveError(
                f"level {m} at pole {self.alpha!r} has residue mass outside the "
                "span of the existing blocks"
            )

        if deep:
            y_sum = linalg.zeros(self.n, self.n)
            for idx, b in new:
                term = linalg.outer_conj(self.rows[idx][b.order - 1], self.rows[idx][b.order - 1])
                y_sum = linalg.mat_add(y_sum, linalg.scalar_mul(b.sign * self.scales[idx], term))
            m_prime = linalg.mat_sub(m_mat, y_sum)
            self._solve_linear_level(deep, proj, m_prime, m)

        self._verify_level(m)

    def _assign_new_rows(self, new, terms, m):
        available = list(terms)
        if len(available) != len(new):
            raise GammaSolveError(
                f"residue at pole {self.alpha!r}, level {m}: rank {len(available)} "
                f"does not match the {len(new)} chains of order {m + 1}"
            )
        for idx, b in new:
            pick = next((t for t in available if t.sign == b.sign), None)
            if pick is None:
                raise GammaSolveError(
                    f"residue signature at pole {self.alpha!r}, level {m} does not "
                    f"match the chain-limit sign {b.sign:+d}"
                )
            available.remove(pick)
            row, scale = _phase_normalize(pick.row, pick.scale_sq)
            self.rows[idx] = [None] * b.order
            self.rows[idx][b.order - 1] = row
            self.scales[idx] = scale

    def _solve_linear_level(self, deep, proj, m_prime, m):
        # solve sum_b (x_b)* v_b + (v_b)* x_b = M' for the signed rows v_b;
        # X = (VV*)^-1 V (P M' P / 2 + P M' (I-P)) in scale-free form
        v_rows = [[b.sign * x for x in self.rows[idx][b.order - 1]] for idx, b in deep]
        gram = [[linalg.dot_hermitian(v, w) for w in v_rows] for v in v_rows]
        gram_inv = linalg.invert(gram)
        comp = linalg.mat_sub(linalg.identity(self.n), proj)
        pmp = linalg.mat_mul(proj, linalg.mat_mul(m_prime, proj))
        pmc = linalg.mat_mul(proj, linalg.mat_mul(m_prime, comp))
        bracket = linalg.mat_add(linalg.scalar_mul(Fraction(1, 2), pmp), pmc)
        x = linalg.mat_mul(gram_inv, linalg.mat_mul(v_rows, bracket))
        for pos, (idx, b) in enumerate(deep):
            # true row is (1/sqrt(c_b)) x = sqrt(c_b) * (x / c_b)
            cb = GaussianRational(self.scales[idx])
            self.rows[idx][m] = [v / cb for v in x[pos]]  # row m+1, 0-based index m

    def _verify_level(self, m):
        acc = linalg.zeros(self.n, self.n)
        for idx, b in self.blocks:
            if b.order < m + 1:
                continue
            cb = self.scales[idx]
            for i in range(max(1, m + 1), b.order + 1):
                jrow = b.order + 1 + m - i
                if not 1 <= jrow <= b.order:
                    continue
                term = linalg.outer_conj(self.rows[idx][i - 1], self.rows[idx][jrow - 1])
                acc = linalg.mat_add(acc, linalg.scalar_mul(b.sign * cb, term))
        target = linalg.scalar_mul(-1, self.residue(m))
        if not linalg.mat_eq(acc, target):
            raise GammaSolveError(
                f"residue matching failed exactly at pole {self.alpha!r}, level {m}"
            )


def _phase_normalize(row, scale_sq):
    """Rotate a scaled row so its first nonzero entry is positive real."""
    lead = next((x for x in row if x), None)
    if lead is None:
        raise GammaSolveError("zero row produced during residue factorization")
    if lead.is_real() and lead.re > 0:
        return list(row), scale_sq
    # multiply by conj(lead)/|lead|: stays in the scaled-rational class
    new_row = [lead.conjugate() * x for x in row]
    new_scale = scale_sq / lead.norm_sq()
    return new_row, Fraction(new_scale)


def solve_gamma(
    lhat: MatRatFun, s_infinity: Matrix, blocks: tuple[BlockSpec, ...]
) -> tuple[GammaBlock, ...]:
    """Recover Gamma from the partial fractions of hat(L) - S.

    Works pole by pole: the top level of each pole is a signed rank-one
    (or rank-s) factorization problem, every lower level is linear in one
    new row per deeper block, and each level is re-verified exactly before
    descending.  Returns blocks aligned with ``blocks``.
    """
    strict = lhat.sub_constant(s_infinity)
    if not blocks:
        if any(not strict.entry(i, j).is_zero() for i in range(strict.n) for j in range(strict.n)):
            raise GammaSolveError("no blocks given but hat(L) - S is nonzero")
        return ()
    poles: dict[GaussianRational, int] = {}
    per_pole: dict[GaussianRational, list] = {}
    for idx, b in enumerate(blocks):
        poles[b.alpha] = max(poles.get(b.alpha, 0), b.order)
        per_pole.setdefault(b.alpha, []).append((idx, b))
    residues = partial_fractions(strict, poles)
    rows: dict[int, list] = {}
    scales: dict[int, Fraction] = {}
    for alpha, group in per_pole.items():
        solver = _PoleSolver(alpha, group, residues[alpha])
        got_rows, got_scales = solver.solve()
        rows.update(got_rows)
        scales.update(got_scales)
    out = []
    for idx, b in enumerate(blocks):
        block_rows = tuple(tuple(r) for r in rows[idx])
        out.append(GammaBlock(scales[idx], block_rows))
    return tuple(out)


def _block_resolvent(alpha: GaussianRational, k: int) -> list[list[RatFun]]:
    """(A_block - z)^-1 for a Jordan block: entries -1/(z-a)^(j-i+1)."""
    zero = RatFun(Poly.zero())
    out = [[zero] * k for _ in range(k)]
    base = Poly.linear(alpha)
    for i in range(k):
        for j in range(i, k):
            out[i][j] = RatFun(Poly.constant(GaussianRational(-1)), base ** (j - i + 1))
    return out


@dataclass(frozen=True)
class ReprCheck:
    """Entrywise comparison outcome of the reconstruction identity."""

    ok: bool
    entry: tuple[int, int] | None = None
    defect: RatFun | None = None

    def require(self):
        if not self.ok:
            raise VerificationError(
                f"representation mismatch at entry {self.entry}: defect {self.defect!r}"
            )


def reconstruct(rep: Representation) -> MatRatFun:
    """S + Gamma^+ (A - z)^-1 Gamma as an exact matrix rational function."""
    n = rep.n
    acc = [[RatFun(Poly.constant(rep.s_infinity[i][j])) for j in range(n)] for i in range(n)]
    for block, gamma in zip(rep.blocks, rep.gamma):
        k = block.order
        rows = [list(r) for r in gamma.rows]
        # Gamma_b^+ = sqrt(c) * rows* . (sign * sip); scale c multiplies once
        left = linalg.conj_transpose(rows)  # n x k
        signed_sip = linalg.scalar_mul(block.sign, sip_matrix(k))
        left = linalg.mat_mul(left, signed_sip)
        res = _block_resolvent(block.alpha, k)
        # (n x k rational) * (k x k ratfun) * (k x n rational), times scale_sq
        mid = [
            [
                sum((RatFun(Poly.constant(left[i][t])) * res[t][j] for t in range(k)), RatFun(Poly.zero()))
                for j in range(k)
            ]
            for i in range(n)
        ]
        scale = GaussianRational(gamma.scale_sq)
        for i in range(n):
            for j in range(n):
                entry = sum(
                    (mid[i][t] * RatFun(Poly.constant(rows[t][j])) for t in range(k)),
                    RatFun(Poly.zero()),
                )
                acc[i][j] = acc[i][j] + RatFun(Poly.constant(scale)) * entry
    return MatRatFun(acc)


def verify_representation(lhat: MatRatFun, rep: Representation) -> ReprCheck:
    """Exact entrywise comparison of hat(L) with the reconstruction."""
    recon = reconstruct(rep)
    for i in range(lhat.n):
        for j in range(lhat.n):
            if recon.entry(i, j) != lhat.entry(i, j):
                defect = recon.entry(i, j) - lhat.entry(i, j)
                return ReprCheck(False, (i, j), defect)
    return ReprCheck(True)


def represent(l: MatPoly, strategy: str = "min_degree") -> Representation:
    """Full pipeline: admission, chain limits, (A, J, kappa), Gamma, verify."""
    report = check_representability(l, strategy)
    blocks = blocks_from_system(l, report.system)
    a, j, kappa = assemble_aj(blocks)
    s_inf = limit_at_infinity_matrix(report.lhat)
    gamma = solve_gamma(report.lhat, s_inf, blocks)
    rep = Representation(l.n, s_inf, a, j, gamma, kappa, blocks, verified=False)
    check = verify_representation(report.lhat, rep)
    check.require()
    return Representation(l.n, s_inf, a, j, gamma, kappa, blocks, verified=True)
