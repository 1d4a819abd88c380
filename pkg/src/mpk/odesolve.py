"""Symbolic general solutions of L(d/dt) u = 0 from Jordan chains.

Every chain prefix phi_0..phi_j at an eigenvalue alpha yields the solution

    u(t) = (t^j/j! * phi_0 + t^(j-1)/(j-1)! * phi_1 + ... + phi_j) e^(alpha t),

and the union over all prefixes of all chains of the canonical system is a
basis of the solution space, whose dimension equals deg det L.  Terms are
kept as chain-coefficient lists; factorial-scaled and expanded monomial
views of the t-polynomial are both available.

Verification substitutes u back through the exact rule
L(d/dt)[p e^(at)] = e^(at) * sum_p (1/p!) L^(p)(a) p^(p)(t) and demands an
identically zero residual (coefficientwise small for numeric eigenvalues).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np

from . import linalg
from .errors import NotInvertibleError, VerificationError
from .matpoly import MatPoly
from .polyalg import NUMERIC_TOL, GR_ZERO, GaussianRational, Poly, RootSpec
from .spectral import CanonicalSystem, canonical_system


@dataclass(frozen=True)
class SolutionTerm:
    """One basis solution built from a chain prefix.

    ``coeffs[p]`` is the chain vector phi_p; the represented function is
    u(t) = sum_p t^(j-p)/(j-p)! * coeffs[p] * e^(alpha t) with j = len-1.
    """

    alpha: RootSpec
    coeffs: tuple[tuple, ...]
    exact: bool
    source_column: int

    @property
    def n(self) -> int:
        return len(self.coeffs[0])

    @property
    def polynomial_degree(self) -> int:
        return len(self.coeffs) - 1

    def vector_polynomial(self):
        """The t-polynomial part, one entry per component.

        Exact terms give tuples of Poly in t with factorial-scaled
        coefficients already multiplied through; numeric terms give lists
        of complex coefficient lists.
        """
        j = self.polynomial_degree
        if self.exact:
            out = []
            for comp in range(self.n):
                coeffs = [GR_ZERO] * (j + 1)
                for p, vec in enumerate(self.coeffs):
                    coeffs[j - p] = vec[comp] * Fraction(1, factorial(j - p))
                out.append(Poly(coeffs))
            return tuple(out)
        out = []
        for comp in range(self.n):
            coeffs = [0j] * (j + 1)
            for p, vec in enumerate(self.coeffs):
                coeffs[j - p] = complex(vec[comp]) / factorial(j - p)
            out.append(coeffs)
        return out

    def jet_at_zero(self, count: int) -> list:
        """Stacked derivatives u(0), u'(0), ..., u^(count-1)(0)."""
        polys = self.vector_polynomial()
        if self.exact:
            a = self.alpha.value
            jets = []
            for r in range(count):
                for comp in range(self.n):
                    acc = GR_ZERO
                    for s in range(r + 1):
                        ps = polys[comp].derivative(s)(GR_ZERO)
                        if ps:
                            acc = acc + comb(r, s) * a ** (r - s) * ps
                    jets.append(acc)
            return jets
        a = complex(self.alpha.value)
        jets = []
        for r in range(count):
            for comp in range(self.n):
                acc = 0j
                for s in range(r + 1):
                    ps = _complex_poly_derivative_at_zero(polys[comp], s)
                    acc += comb(r, s) * (a ** (r - s)) * ps
                jets.append(acc)
        return jets


def _complex_poly_derivative_at_zero(coeffs: list[complex], s: int) -> complex:
    if s >= len(coeffs):
        return 0j
    return coeffs[s] * factorial(s)


@dataclass(frozen=True)
class GeneralSolution:
    """A verified basis of the solution space of L(d/dt) u = 0."""

    terms: tuple[SolutionTerm, ...]
    dimension: int

    @property
    def all_exact(self) -> bool:
        return all(t.exact for t in self.terms)


def general_solution(
    l: MatPoly,
    strategy: str = "min_degree",
    numeric_fallback: bool = True,
    tol: float = NUMERIC_TOL,
    system: CanonicalSystem | None = None,
) -> GeneralSolution:
    """Basis of solutions: one term per chain prefix of the canonical system.

    The number of terms equals deg det L; linear independence is certified
    through the exact rank of the stacked initial-data jets (floating rank
    with tolerance when numeric eigenvalues are present).
    """
    if system is None:
        system = canonical_system(l, strategy=strategy, numeric_fallback=numeric_fallback, tol=tol)
    chi_deg = l.det().degree
    terms: list[SolutionTerm] = []
    for rec in system.records:
        for j in range(rec.order):
            terms.append(
                SolutionTerm(rec.alpha, tuple(rec.chain[: j + 1]), rec.exact, rec.column)
            )
    if len(terms) != chi_deg:
        raise VerificationError(f"{len(terms)} terms for solution space of dimension {chi_deg}")
    solution = GeneralSolution(tuple(terms), len(terms))
    jet_count = l.degree * l.n + 1
    if solution.all_exact:
        stacked = [t.jet_at_zero(jet_count) for t in terms]
        if terms and linalg.rank(stacked) != len(terms):
            raise VerificationError("solution terms are not linearly independent")
    elif terms:
        stacked = np.array(
            [[complex(x) for x in t.jet_at_zero(jet_count)] for t in terms], dtype=complex
        )
        if np.linalg.matrix_rank(stacked, tol=1e-8 * max(1.0, float(np.abs(stacked).max()))) != len(terms):
            raise VerificationError("solution terms are not numerically independent")
    return solution


@dataclass(frozen=True)
class SolutionCheck:
    ok: bool
    residual: object  # tuple[Poly] for exact terms, float bound otherwise

    def require(self):
        if not self.ok:
            raise VerificationError(f"solution residual is nonzero: {self.residual!r}")


def verify_solution(l: MatPoly, term: SolutionTerm, tol: float = 1e-9) -> SolutionCheck:
    """Substitute u = p(t) e^(alpha t) into L(d/dt) u and demand zero.

    The substitution is the exact shift rule: the residual polynomial is
    sum_p (1/p!) L^(p)(alpha) p^(p)(t).  Exact terms must cancel
    identically; numeric ones must stay below ``tol`` coefficientwise.
    """
    polys = term.vector_polynomial()
    if term.exact:
        a = term.alpha.value
        residual = [Poly.zero() for _ in range(l.n)]
        for p in range(l.degree + 1):
            slice_p = l.derivative(p)(a)
            scale = GaussianRational(Fraction(1, factorial(p)))
            dpolys = [q.derivative(p) for q in polys]
            for i in range(l.n):
                for j in range(l.n):
                    c = slice_p[i][j]
                    if c:
                        residual[i] = residual[i] + Poly.constant(scale * c) * dpolys[j]
        ok = all(r.is_zero() for r in residual)
        return SolutionCheck(ok, tuple(residual))
    a = complex(term.alpha.value)
    deg = max(len(c) for c in polys)
    residual_c = np.zeros((l.n, deg), dtype=complex)
    for p in range(l.degree + 1):
        slice_p = l.derivative(p).eval_complex(a) / factorial(p)
        for j in range(l.n):
            dcoeffs = _complex_derivative_coeffs(polys[j], p)
            for i in range(l.n):
                for k, c in enumerate(dcoeffs):
                    residual_c[i, k] += slice_p[i, j] * c
    scale = max(1.0, max(abs(complex(x)) for vec in term.coeffs for x in vec))
    bound = tol * scale * max(1.0, float(np.abs(l.eval_complex(a)).max()))
    worst = float(np.abs(residual_c).max()) if residual_c.size else 0.0
    return SolutionCheck(worst <= bound, worst)


def _complex_derivative_coeffs(coeffs: list[complex], order: int) -> list[complex]:
    out = list(coeffs)
    for _ in range(order):
        out = [out[k] * k for k in range(1, len(out))]
        if not out:
            return [0j]
    return out
