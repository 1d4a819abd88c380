"""Exact scalar arithmetic: Gaussian rationals, polynomials, rational functions.

The base field is Q(i): complex numbers whose real and imaginary parts are
arbitrary-precision ``fractions.Fraction`` values.  Polynomials are dense
coefficient tuples indexed by exponent, with the zero polynomial stored as
the empty tuple (degree -1).  Rational functions are kept reduced with a
monic denominator at all times, so equality of reduced forms is structural
equality.

Roots are searched exactly first (Gaussian-rational candidates from divisor
enumeration over Z[i] after clearing denominators); whatever does not split
into linear factors over Q(i) is handed to a companion-matrix eigenvalue
fallback and flagged as approximate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from . import _gaussint

#: Default relative tolerance for the numeric root fallback.
NUMERIC_TOL = 1e-10

_FractionLike = (int, Fraction)


class GaussianRational:
    """An exact complex number re + im*i with Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = GR_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure --------------------------------------------------------

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def real_sign(self) -> int:
        """Sign of a real value; raises on a nonzero imaginary part."""
        if self.im:
            raise ValueError(f"{self} is not real")
        return (self.re > 0) - (self.re < 0)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self):
        return (self.re, self.im)

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __complex__(self) -> complex:
        return self.to_complex()

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _coerce(value):
    if type(value) is GaussianRational:
        return value
    if isinstance(value, _FractionLike):
        return GaussianRational(value)
    if isinstance(value, GaussianRational):
        return value
    return NotImplemented


def gr(re=0, im=0) -> GaussianRational:
    """Shorthand constructor used pervasively in tests and fixtures."""
    return GaussianRational(re, im)


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


class Poly:
    """Dense univariate polynomial over GaussianRational.

    ``coeffs[k]`` is the coefficient of z^k; the tuple never ends in a zero,
    and the zero polynomial is the empty tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if type(c) is GaussianRational else GaussianRational(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return _P_ZERO

    @staticmethod
    def one() -> "Poly":
        return _P_ONE

    @staticmethod
    def z() -> "Poly":
        return _P_Z

    @staticmethod
    def constant(c) -> "Poly":
        return Poly((c,))

    @staticmethod
    def monomial(c, k: int) -> "Poly":
        return Poly((GR_ZERO,) * k + (GaussianRational(c) if not isinstance(c, GaussianRational) else c,))

    @staticmethod
    def linear(alpha) -> "Poly":
        """The monic linear factor z - alpha."""
        return Poly((-GaussianRational(alpha) if not isinstance(alpha, GaussianRational) else -alpha, GR_ONE))

    # -- structure --------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> GaussianRational:
        if not self.coeffs:
            return GR_ZERO
        return self.coeffs[-1]

    def constant_term(self) -> GaussianRational:
        if not self.coeffs:
            return GR_ZERO
        return self.coeffs[0]

    def __getitem__(self, k: int) -> GaussianRational:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return GR_ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (GaussianRational, *_FractionLike)):
            return self == Poly((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # -- ring arithmetic --------------------------------------------------

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _P_ZERO
        out = [GR_ZERO] * (len(a) + len(b) - 1)
        for i, ci in enumerate(a):
            if ci.is_zero():
                continue
            for j, cj in enumerate(b):
                out[i + j] = out[i + j] + ci * cj
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = _P_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return _P_ZERO, self
        quo = [GR_ZERO] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            quo[k] = c
            if not c.is_zero():
                for j, oc in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * oc
        return Poly(quo), Poly(rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError(f"{other} does not divide {self} exactly")
        return q

    # -- analysis ---------------------------------------------------------

    def __call__(self, z):
        """Horner evaluation at a GaussianRational or a Python complex."""
        if isinstance(z, (GaussianRational, *_FractionLike)):
            acc = GR_ZERO
            for c in reversed(self.coeffs):
                acc = acc * z + c
            return acc
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c.to_complex()
        return acc

    def derivative(self, order: int = 1) -> "Poly":
        if order < 0:
            raise ValueError("negative derivative order")
        cs = self.coeffs
        for _ in range(order):
            cs = tuple(cs[k] * k for k in range(1, len(cs)))
            if not cs:
                break
        return Poly(cs)

    def conj_coeffs(self) -> "Poly":
        """Conjugate every coefficient (the map p(z) -> conj(p(conj(z)))."""
        return Poly(tuple(c.conjugate() for c in self.coeffs))

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ValueError("the zero polynomial has no monic form")
        lead = self.coeffs[-1]
        if lead == GR_ONE:
            return self
        return Poly(tuple(c / lead for c in self.coeffs))

    def to_complex_coeffs(self) -> list[complex]:
        return [c.to_complex() for c in self.coeffs]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            if k == 0:
                parts.append(f"{c}")
            else:
                zs = "z" if k == 1 else f"z^{k}"
                if c == GR_ONE:
                    parts.append(zs)
                elif c == -GR_ONE:
                    parts.append(f"-{zs}")
                elif c.is_real() or c.re == 0:
                    parts.append(f"{c}{zs}")
                else:
                    parts.append(f"({c}){zs}")
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out


def _coerce_poly(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (GaussianRational, *_FractionLike)):
        return Poly((value,))
    return NotImplemented


_P_ZERO = Poly(())
_P_ONE = Poly((1,))
_P_Z = Poly((0, 1))


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (0 for two zero inputs)."""
    while not q.is_zero():
        p, q = q, p % q
    if p.is_zero():
        return p
    return p.monic()


def taylor_shift(p: Poly, alpha: GaussianRational) -> Poly:
    """Re-center p at alpha: returns q with q(w) = p(w + alpha).

    The coefficients of q are the Taylor coefficients of p at alpha,
    computed by repeated synthetic division so the identity
    p(z) = sum_j q[j] (z - alpha)^j is exact.
    """
    alpha = alpha if isinstance(alpha, GaussianRational) else GaussianRational(alpha)
    if alpha.is_zero() or p.is_zero():
        return p
    work = list(p.coeffs)
    n = len(work)
    out = []
    for i in range(n):
        # one synthetic-division pass; the remainder is the next coefficient
        for k in range(n - 2, i - 1, -1):
            work[k] = work[k] + alpha * work[k + 1]
        out.append(work[i])
    return Poly(out)


def root_multiplicity(p: Poly, alpha) -> int:
    """Largest k with (z - alpha)^k dividing p, by repeated exact division."""
    if p.is_zero():
        raise ValueError("the zero polynomial vanishes at every point")
    alpha = alpha if isinstance(alpha, GaussianRational) else GaussianRational(alpha)
    k = 0
    while p(alpha).is_zero():
        p = p.exact_div(Poly.linear(alpha))
        k += 1
    return k


@dataclass(frozen=True)
class RootSpec:
    """A root with multiplicity; ``value`` is exact or a float complex."""

    value: object  # GaussianRational when exact, complex otherwise
    multiplicity: int
    exact: bool = True
    tol: float | None = None

    def approx(self) -> complex:
        return self.value.to_complex() if self.exact else self.value

    def is_real(self) -> bool:
        if self.exact:
            return self.value.is_real()
        return abs(self.value.imag) <= (self.tol or NUMERIC_TOL)


def _denominator_lcm(p: Poly) -> int:
    lcm = 1
    for c in p.coeffs:
        for d in (c.re.denominator, c.im.denominator):
            g = _gcd_int(lcm, d)
            lcm = lcm // g * d
    return lcm


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _as_gaussian_int(c: GaussianRational) -> tuple[int, int]:
    assert c.re.denominator == 1 and c.im.denominator == 1
    return (c.re.numerator, c.im.numerator)


#: Trial-division bound for divisor enumeration; beyond this the exact
#: search falls back to recognizing rationals near the numeric roots.
FACTOR_EFFORT = 100_000


def _numeric_root_values(p: Poly) -> list[complex]:
    coeffs = p.monic().to_complex_coeffs()
    deg = len(coeffs) - 1
    if deg <= 0:
        return []
    comp = np.zeros((deg, deg), dtype=complex)
    comp[1:, :-1] = np.eye(deg - 1)
    comp[:, -1] = [-c for c in coeffs[:-1]]
    return [complex(w) for w in np.linalg.eigvals(comp)]


def _divisor_candidates(residual: Poly) -> set[GaussianRational] | None:
    """Rational-root candidates a*u/b from Z[i] divisor enumeration.

    Returns None when the cleared coefficients are too hard to factor
    within the effort bound; the caller then relies on numeric recognition.
    """
    scale = _denominator_lcm(residual)
    zi = [_as_gaussian_int(c * scale) for c in residual.coeffs]
    content = _gaussint.content_gcd([c for c in zi if c != (0, 0)])
    if not _gaussint.is_unit(content):
        zi = [_gaussint.exact_div(c, content) if c != (0, 0) else c for c in zi]
    lead, trail = zi[-1], zi[0]
    try:
        num_divs = _gaussint.divisors(trail, FACTOR_EFFORT)
        den_divs = _gaussint.divisors(lead, FACTOR_EFFORT)
    except _gaussint.FactorBailout:
        return None
    candidates: set[GaussianRational] = set()
    units = (GR_ONE, -GR_ONE, GR_I, -GR_I)
    for a in num_divs:
        num = GaussianRational(Fraction(a[0]), Fraction(a[1]))
        for b in den_divs:
            den = GaussianRational(Fraction(b[0]), Fraction(b[1]))
            base = num / den
            for u in units:
                candidates.add(base * u)
    return candidates


def _recognized_candidates(numeric_roots: list[complex]) -> set[GaussianRational]:
    """Gaussian rationals with modest denominators near the numeric roots."""
    out: set[GaussianRational] = set()
    for w in numeric_roots:
        for bound in (1, 12, 720, 10_000, 1_000_000):
            try:
                re = Fraction(w.real).limit_denominator(bound)
                im = Fraction(w.imag).limit_denominator(bound)
            except (OverflowError, ValueError):
                continue
            out.add(GaussianRational(re, im))
    return out


def exact_root_split(p: Poly) -> tuple[list[tuple[GaussianRational, int]], Poly]:
    """All Gaussian-rational roots of p with multiplicities, plus the residual.

    The residual q satisfies p = prod (z-root)^mult * q exactly and has no
    roots in Q(i) that the search can reach.  Candidates come from divisor
    enumeration over Z[i] after clearing denominators (a root a/b in lowest
    terms needs a | trailing and b | leading coefficient), pre-screened
    against the numeric roots; when the cleared coefficients resist
    factorization, candidates are recognized from the numeric roots by
    continued fractions instead.  Every accepted root is verified exactly.
    """
    if p.is_zero():
        raise ValueError("cannot enumerate roots of the zero polynomial")
    roots: list[tuple[GaussianRational, int]] = []
    if p.is_constant():
        return roots, p

    residual = p
    # pull out z^m
    m = 0
    while residual.constant_term().is_zero():
        residual = Poly(residual.coeffs[1:])
        m += 1
    if m:
        roots.append((GR_ZERO, m))
    if residual.is_constant():
        return roots, residual

    numeric_roots = _numeric_root_values(residual)
    scale = max(1.0, max(abs(w) for w in numeric_roots)) if numeric_roots else 1.0
    # companion eigenvalues of a root of multiplicity m are only accurate to
    # roughly eps^(1/m); 5% of the root scale is safe for desk-scale inputs
    screen = 5e-2 * scale

    candidates = _divisor_candidates(residual)
    if candidates is None:
        candidates = set()
    candidates |= _recognized_candidates(numeric_roots)

    def near_numeric_root(c: GaussianRational) -> bool:
        try:
            w = c.to_complex()
        except OverflowError:
            return False
        return any(abs(w - r) <= screen for r in numeric_roots)

    for cand in sorted(candidates, key=lambda c: (c.norm_sq(), c.sort_key())):
        if residual.is_constant():
            break
        if not near_numeric_root(cand):
            continue
        if not residual(cand).is_zero():
            continue
        k = root_multiplicity(residual, cand)
        factor = Poly.linear(cand) ** k
        residual = residual.exact_div(factor)
        roots.append((cand, k))
    return roots, residual


def _numeric_roots(residual: Poly, tol: float) -> list[RootSpec]:
    """Companion-matrix eigenvalues of the residual, clustered to multiplicities."""
    coeffs = residual.monic().to_complex_coeffs()
    deg = len(coeffs) - 1
    if deg <= 0:
        return []
    comp = np.zeros((deg, deg), dtype=complex)
    comp[1:, :-1] = np.eye(deg - 1)
    comp[:, -1] = [-c for c in coeffs[:-1]]
    eig = sorted(np.linalg.eigvals(comp), key=lambda w: (w.real, w.imag))
    scale = max(1.0, max(abs(w) for w in eig))
    cluster_radius = max(1e-8, tol) * scale * 100
    out: list[RootSpec] = []
    group: list[complex] = []
    for w in eig:
        if group and abs(w - group[-1]) > cluster_radius:
            center = sum(group) / len(group)
            out.append(RootSpec(complex(center), len(group), exact=False, tol=tol))
            group = []
        group.append(complex(w))
    if group:
        center = sum(group) / len(group)
        out.append(RootSpec(complex(center), len(group), exact=False, tol=tol))
    return out


def find_roots(p: Poly, numeric_fallback: bool = True, tol: float = NUMERIC_TOL) -> list[RootSpec]:
    """All roots of p: exact Gaussian rationals first, numeric leftovers after.

    Exact roots carry exact multiplicities.  When ``numeric_fallback`` is set,
    the part of p that does not split over Q(i) is handed to the companion
    eigensolver and reported with ``exact=False``; otherwise it is ignored.
    """
    exact, residual = exact_root_split(p)
    out = [RootSpec(value, mult, exact=True) for value, mult in exact]
    if numeric_fallback and residual.degree > 0:
        out.extend(_numeric_roots(residual, tol))
    return out


class RatFun:
    """Reduced ratio of two polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=_P_ONE):
        num = num if isinstance(num, Poly) else Poly((num,)) if not isinstance(num, (list, tuple)) else Poly(num)
        den = den if isinstance(den, Poly) else Poly((den,)) if not isinstance(den, (list, tuple)) else Poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = _P_ZERO, _P_ONE
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        lead = den.leading()
        if lead != GR_ONE:
            num = Poly(tuple(c / lead for c in num.coeffs))
            den = Poly(tuple(c / lead for c in den.coeffs))
        self.num, self.den = num, den

    @staticmethod
    def from_poly(p) -> "RatFun":
        return RatFun(p, _P_ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == _P_ONE

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        other = _coerce_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _coerce_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        other = _coerce_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __mul__(self, other):
        other = _coerce_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def conj_coeffs(self) -> "RatFun":
        return RatFun(self.num.conj_coeffs(), self.den.conj_coeffs())

    def __call__(self, z):
        d = self.den(z)
        if isinstance(d, GaussianRational):
            if d.is_zero():
                raise ZeroDivisionError(f"evaluation at a pole: z = {z}")
        elif d == 0:
            raise ZeroDivisionError(f"evaluation at a pole: z = {z}")
        return self.num(z) / d

    def __repr__(self):
        if self.is_polynomial():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _coerce_ratfun(value):
    if isinstance(value, RatFun):
        return value
    if isinstance(value, Poly):
        return RatFun(value)
    if isinstance(value, (GaussianRational, *_FractionLike)):
        return RatFun(Poly((value,)))
    return NotImplemented


@dataclass(frozen=True)
class Limit:
    """Outcome of an exact limit of a rational function.

    ``order`` is the vanishing order of the function at the point: positive
    for a zero of that order (limit 0), zero for a finite nonzero limit, and
    negative for a pole of order ``-order`` (``value`` is then None).  For
    limits at infinity, ``order`` is the decay order deg den - deg num and a
    negative value means divergence.
    """

    value: GaussianRational | None
    order: int

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    @property
    def is_pole(self) -> bool:
        return self.order < 0

    @property
    def pole_order(self) -> int:
        return -self.order if self.order < 0 else 0


def ratfun_limit(f: RatFun, alpha) -> Limit:
    """Exact limit of a reduced rational function at a finite point."""
    alpha = alpha if isinstance(alpha, GaussianRational) else GaussianRational(alpha)
    if f.is_zero():
        return Limit(GR_ZERO, 0)
    k_den = root_multiplicity(f.den, alpha)
    k_num = root_multiplicity(f.num, alpha)
    order = k_num - k_den
    if order < 0:
        return Limit(None, order)
    if order > 0:
        return Limit(GR_ZERO, order)
    shrink = Poly.linear(alpha) ** k_den
    num = f.num.exact_div(shrink) if k_den else f.num
    den = f.den.exact_div(shrink) if k_den else f.den
    return Limit(num(alpha) / den(alpha), 0)


def ratfun_limit_at_infinity(f: RatFun) -> Limit:
    """Limit as z -> infinity: 0, a leading-coefficient ratio, or divergent."""
    if f.is_zero():
        return Limit(GR_ZERO, 1)
    excess = f.den.degree - f.num.degree
    if excess > 0:
        return Limit(GR_ZERO, excess)
    if excess == 0:
        return Limit(f.num.leading() / f.den.leading(), 0)
    return Limit(None, excess)


def series_inverse(coeffs: list[GaussianRational], order: int) -> list[GaussianRational]:
    """First ``order`` coefficients of 1/f for a power series with f(0) != 0."""
    if not coeffs or coeffs[0].is_zero():
        raise ZeroDivisionError("series inversion needs a unit constant term")
    inv = [GR_ONE / coeffs[0]]
    for k in range(1, order):
        acc = GR_ZERO
        for j in range(1, min(k, len(coeffs) - 1) + 1):
            acc = acc + coeffs[j] * inv[k - j]
        inv.append(-acc / coeffs[0])
    return inv


def taylor_ratio(num: Poly, den: Poly, alpha, order: int) -> list[GaussianRational]:
    """First ``order`` Taylor coefficients of num/den at alpha (den(alpha) != 0)."""
    alpha = alpha if isinstance(alpha, GaussianRational) else GaussianRational(alpha)
    n = list(taylor_shift(num, alpha).coeffs)
    d = list(taylor_shift(den, alpha).coeffs)
    if not d or d[0].is_zero():
        raise ZeroDivisionError("denominator vanishes at the expansion point")
    dinv = series_inverse(d, order)
    out = []
    for k in range(order):
        acc = GR_ZERO
        for j in range(min(k, len(n) - 1) + 1):
            acc = acc + n[j] * dinv[k - j]
        out.append(acc)
    return out


def inv_factorial(k: int) -> Fraction:
    return Fraction(1, factorial(k))
