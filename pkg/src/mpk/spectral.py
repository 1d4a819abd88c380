"""Eigenvalue tables, canonical root functions and Jordan chains.

All spectral data is read off a tracked diagonal form D = S L T: the
eigenvalues are the roots of the diagonal entries d_i, and for every
column index i with d_i(alpha) = 0 the i-th column of T is a canonical
root function at alpha whose first k Taylor coefficients (k = the
multiplicity of alpha in d_i) form a maximal Jordan chain.  The direct
derivative-relation solver exists only as a verifier; chains are never
produced by it.

Eigenvalues that fall to the numeric root fallback give records flagged
``exact=False`` with complex-float chains; downstream consumers decide
whether to accept them (the ODE solver does, the representation builder
refuses).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from . import linalg
from .errors import NotInvertibleError, VerificationError
from .matpoly import MatPoly
from .polyalg import (
    NUMERIC_TOL,
    GR_ZERO,
    GaussianRational,
    Poly,
    RootSpec,
    find_roots,
    root_multiplicity,
    taylor_shift,
)
from .smith import DiagForm, diagonalize


@dataclass(frozen=True)
class EigenEntry:
    """One (eigenvalue, diagonal column) incidence with its order."""

    alpha: RootSpec
    column: int  # 0-based index of the diagonal entry d_column
    order: int


@dataclass(frozen=True)
class EigenTable:
    """All roots of all diagonal entries, with multiplicities."""

    entries: tuple[EigenEntry, ...]
    deg_det: int

    @property
    def total_order(self) -> int:
        return sum(e.order for e in self.entries)

    @property
    def all_exact(self) -> bool:
        return all(e.alpha.exact for e in self.entries)

    @property
    def all_real(self) -> bool:
        return all(e.alpha.is_real() for e in self.entries)

    def groups(self) -> list[tuple[RootSpec, list[EigenEntry]]]:
        """Entries grouped by eigenvalue (exact values grouped exactly)."""
        order: list = []
        grouped: dict = {}
        for e in self.entries:
            key = e.alpha.value if e.alpha.exact else ("approx", repr(e.alpha.value))
            if key not in grouped:
                grouped[key] = (e.alpha, [])
                order.append(key)
            grouped[key][1].append(e)
        return [grouped[k] for k in order]

    def columns_at(self, alpha: GaussianRational) -> list[int]:
        return [e.column for e in self.entries if e.alpha.exact and e.alpha.value == alpha]


def eigen_table(form: DiagForm, numeric_fallback: bool = True, tol: float = NUMERIC_TOL) -> EigenTable:
    """Roots of every diagonal entry of a diagonal form, grouped per column."""
    diag = form.diagonal()
    if any(p.is_zero() for p in diag):
        raise NotInvertibleError("diagonal form has a zero entry; det L(z) = 0")
    deg_det = sum(p.degree for p in diag)
    entries: list[EigenEntry] = []
    for i, d in enumerate(diag):
        if d.is_constant():
            continue
        for spec in find_roots(d, numeric_fallback=numeric_fallback, tol=tol):
            entries.append(EigenEntry(spec, i, spec.multiplicity))
    table = EigenTable(tuple(entries), deg_det)
    if numeric_fallback and table.total_order != deg_det:
        raise VerificationError(
            f"root bookkeeping lost multiplicity: {table.total_order} != deg det = {deg_det}"
        )
    return table


@dataclass(frozen=True)
class RootFunctionRecord:
    """A canonical root function with its Jordan chain at one eigenvalue.

    ``phi`` is the (always exact) column of T; ``chain`` holds the first
    ``order`` Taylor coefficients of phi at alpha, and ``tail`` the exact
    remainder factor, so phi = sum_j (z-a)^j chain[j] + (z-a)^order * tail.
    Numeric records carry complex chains and no tail.
    """

    alpha: RootSpec
    column: int
    order: int
    phi: tuple[Poly, ...]
    chain: tuple[tuple, ...]
    tail: tuple[Poly, ...] | None
    exact: bool


def _complex_taylor(p: Poly, alpha: complex) -> list[complex]:
    work = p.to_complex_coeffs()
    n = len(work)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            work[k] = work[k] + alpha * work[k + 1]
    return work


def root_function(form: DiagForm, alpha, column: int, order: int | None = None) -> RootFunctionRecord:
    """Chain extraction for one eigenvalue/column pair of a diagonal form.

    ``alpha`` is a GaussianRational, or a RootSpec for the numeric path.
    The exact path recomputes the order from the diagonal entry and
    checks the Taylor split identity before returning.
    """
    spec = alpha if isinstance(alpha, RootSpec) else RootSpec(_as_gr(alpha), 1)
    phi = tuple(form.t.column(column))
    d = form.d.entry(column, column)
    if spec.exact:
        a = spec.value
        k = root_multiplicity(d, a) if d else 0
        if k == 0:
            raise ValueError(f"column {column} is not in the index set of eigenvalue {a!r}")
        if order is not None and order != k:
            raise ValueError(f"stated order {order} contradicts multiplicity {k}")
        shifted = [taylor_shift(p, a) for p in phi]
        chain = tuple(tuple(s[j] for s in shifted) for j in range(k))
        tail = tuple(taylor_shift(Poly(s.coeffs[k:]), -a) for s in shifted)
        if all(c.is_zero() for c in chain[0]):
            raise VerificationError("root function vanishes at the eigenvalue; T is not unimodular")
        _check_taylor_split(phi, a, k, chain, tail)
        rec = RootFunctionRecord(RootSpec(a, k), column, k, phi, chain, tail, exact=True)
        return rec
    # numeric path: trust the clustered multiplicity handed in
    k = order if order is not None else spec.multiplicity
    a = spec.value
    shifted = [_complex_taylor(p, a) for p in phi]
    chain = tuple(
        tuple(s[j] if j < len(s) else 0j for s in shifted) for j in range(k)
    )
    return RootFunctionRecord(RootSpec(a, k, exact=False, tol=spec.tol), column, k, phi, chain, None, exact=False)


def _as_gr(value) -> GaussianRational:
    return value if isinstance(value, GaussianRational) else GaussianRational(value)


def _check_taylor_split(phi, a, k, chain, tail):
    base = Poly.linear(a)
    power = base**k
    for comp in range(len(phi)):
        acc = Poly.zero()
        for j in range(k):
            acc = acc + Poly.constant(chain[j][comp]) * base**j
        acc = acc + power * tail[comp]
        if acc != phi[comp]:
            raise VerificationError("Taylor split of the root function failed to reassemble")


@dataclass(frozen=True)
class PoleCancellationRecord:
    """psi = L * phi, vanishing at alpha to exactly the chain order."""

    alpha: RootSpec
    column: int
    psi: tuple[Poly, ...]
    vanish_order: int


def pole_cancellation(l: MatPoly, rec: RootFunctionRecord) -> PoleCancellationRecord:
    """Build and certify the pole cancellation function for a record.

    The componentwise vanishing order of psi = L*phi at alpha must be at
    least the chain order with equality overall; a mismatch means the
    record does not belong to this matrix polynomial.
    """
    if not rec.exact:
        raise ValueError("pole cancellation functions need an exact eigenvalue")
    psi = tuple(l.mul_vector(list(rec.phi)))
    a = rec.alpha.value
    orders = [root_multiplicity(c, a) for c in psi if not c.is_zero()]
    if not orders:
        raise VerificationError("L * phi is identically zero; L is not invertible")
    vanish = min(orders)
    if vanish != rec.order:
        raise VerificationError(
            f"pole cancellation order {vanish} != chain order {rec.order} at {a!r}"
        )
    return PoleCancellationRecord(rec.alpha, rec.column, psi, vanish)


@dataclass(frozen=True)
class ChainCheck:
    """Verifier outcome: how much of the chain satisfies the derivative
    relations, and whether the chain admits no extension."""

    valid_length: int
    maximal: bool

    def valid_through(self, k: int) -> bool:
        return self.valid_length >= k


def _derivative_slices(l: MatPoly, alpha: GaussianRational, count: int) -> list[linalg.Matrix]:
    """Matrices (1/p!) L^(p)(alpha) for p = 0..count-1."""
    out = []
    for p in range(count):
        mat = l.derivative(p)(alpha)
        scale = GaussianRational(Fraction(1, factorial(p)))
        out.append([[scale * x for x in row] for row in mat])
    return out


def verify_chain(l: MatPoly, alpha, chain, tol: float | None = None) -> ChainCheck:
    """Check the derivative relations for a chain and test maximality.

    Exact inputs are checked exactly: prefix i is valid when
    sum_p (1/p!) L^(p)(alpha) chain[i-p] = 0, and the chain is maximal when
    the linear system for a hypothetical next vector is inconsistent
    (decided by exact rank comparison of the augmented system).  Numeric
    inputs use the same relations with a residual tolerance.
    """
    if not chain:
        raise ValueError("empty chain")
    k = len(chain)
    exact = isinstance(alpha, GaussianRational) and all(
        isinstance(c, GaussianRational) for c in chain[0]
    )
    if exact:
        if all(c.is_zero() for c in chain[0]):
            raise ValueError("chain must start with a nonzero eigenvector")
        slices = _derivative_slices(l, alpha, k + 1)
        valid = 0
        for i in range(k):
            acc = [GR_ZERO] * l.n
            for p in range(i + 1):
                term = linalg.mat_vec(slices[p], list(chain[i - p]))
                acc = [a + t for a, t in zip(acc, term)]
            if any(acc):
                break
            valid += 1
        if valid < k:
            return ChainCheck(valid, False)
        rhs = [GR_ZERO] * l.n
        for p in range(1, k + 1):
            term = linalg.mat_vec(slices[p], list(chain[k - p]))
            rhs = [r - t for r, t in zip(rhs, term)]
        extendable = linalg.is_consistent(slices[0], rhs)
        return ChainCheck(k, not extendable)
    # numeric path
    tol = tol if tol is not None else NUMERIC_TOL
    a = alpha.value if isinstance(alpha, RootSpec) else complex(alpha)
    if isinstance(a, GaussianRational):
        a = a.to_complex()
    vecs = [np.array([complex(c) for c in v]) for v in chain]
    if np.linalg.norm(vecs[0]) == 0:
        raise ValueError("chain must start with a nonzero eigenvector")
    slices_c = [l.derivative(p).eval_complex(a) / factorial(p) for p in range(k + 1)]
    scale = max(np.linalg.norm(s) for s in slices_c) * max(np.linalg.norm(v) for v in vecs)
    bound = max(tol, 1e-9) * max(scale, 1.0)
    valid = 0
    for i in range(k):
        acc = sum(slices_c[p] @ vecs[i - p] for p in range(i + 1))
        if np.linalg.norm(acc) > bound:
            break
        valid += 1
    if valid < k:
        return ChainCheck(valid, False)
    rhs = -sum(slices_c[p] @ vecs[k - p] for p in range(1, k + 1))
    a_mat = slices_c[0]
    sol, residuals, _, _ = np.linalg.lstsq(a_mat, rhs, rcond=None)
    resid = np.linalg.norm(a_mat @ sol - rhs)
    return ChainCheck(k, bool(resid > bound))


@dataclass(frozen=True)
class CanonicalSystem:
    """The union of chains over all eigenvalues of one matrix polynomial."""

    l: MatPoly
    form: DiagForm
    table: EigenTable
    records: tuple[RootFunctionRecord, ...]

    @property
    def total_order(self) -> int:
        return sum(r.order for r in self.records)

    @property
    def all_exact(self) -> bool:
        return all(r.exact for r in self.records)


def canonical_system(
    l: MatPoly,
    strategy: str = "min_degree",
    numeric_fallback: bool = True,
    tol: float = NUMERIC_TOL,
    verify: bool = True,
) -> CanonicalSystem:
    """Diagonalize, tabulate eigenvalues, and extract one record per
    (eigenvalue, column) incidence.

    Verifies that the eigenvectors at each exact eigenvalue are linearly
    independent and span ker L(alpha), that the total chain length equals
    deg det L, and (when ``verify``) that every chain passes the exact
    derivative-relation check including maximality.
    """
    chi = l.det()
    if chi.is_zero():
        raise NotInvertibleError("det L(z) is identically zero")
    form = diagonalize(l, strategy)
    table = eigen_table(form, numeric_fallback=numeric_fallback, tol=tol)
    records = []
    for entry in table.entries:
        records.append(root_function(form, entry.alpha, entry.column, entry.order))
    system = CanonicalSystem(l, form, table, tuple(records))
    if system.total_order != chi.degree:
        raise VerificationError(
            f"total chain length {system.total_order} != deg det L = {chi.degree}"
        )
    for spec, group in table.groups():
        if not spec.exact:
            continue
        a = spec.value
        vectors = [[p(a) for p in form.t.column(e.column)] for e in group]
        ker_dim = l.n - linalg.rank(l(a))
        if linalg.rank(vectors) != len(group) or ker_dim != len(group):
            raise VerificationError(
                f"eigenvectors at {a!r} do not span the kernel: "
                f"{len(group)} records, kernel dimension {ker_dim}"
            )
    if verify:
        for rec in system.records:
            if not rec.exact:
                continue
            check = verify_chain(l, rec.alpha.value, rec.chain)
            if check.valid_length != rec.order or not check.maximal:
                raise VerificationError(
                    f"chain at {rec.alpha.value!r} (column {rec.column}) failed verification: {check}"
                )
    return system
