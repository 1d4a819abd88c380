"""LaTeX rendering of scalars, polynomials, matrices and ODE solutions."""

from __future__ import annotations

from fractions import Fraction

from .matpoly import MatPoly
from .odesolve import SolutionTerm
from .polyalg import GaussianRational, Poly, RatFun


def latex_fraction(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    sign = "-" if f < 0 else ""
    return f"{sign}\\tfrac{{{abs(f.numerator)}}}{{{f.denominator}}}"


def latex_scalar(c: GaussianRational) -> str:
    if not c.im:
        return latex_fraction(c.re)
    im = latex_fraction(c.im) + "i"
    if im.startswith("1i"):
        im = "i"
    elif im.startswith("-1i"):
        im = "-i"
    if not c.re:
        return im
    joiner = "" if im.startswith("-") else "+"
    return f"{latex_fraction(c.re)}{joiner}{im}"


def latex_poly(p: Poly, var: str = "z") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p[k]
        if c.is_zero():
            continue
        if k == 0:
            body = latex_scalar(c)
        else:
            power = var if k == 1 else f"{var}^{{{k}}}"
            if c == GaussianRational(1):
                body = power
            elif c == GaussianRational(-1):
                body = f"-{power}"
            else:
                coeff = latex_scalar(c)
                if "+" in coeff[1:] or "-" in coeff[1:]:
                    coeff = f"({coeff})"
                body = f"{coeff}{power}"
        parts.append(body)
    out = parts[0]
    for term in parts[1:]:
        out += term if term.startswith("-") else f"+{term}"
    return out


def latex_ratfun(f: RatFun, var: str = "z") -> str:
    if f.is_polynomial():
        return latex_poly(f.num, var)
    return f"\\frac{{{latex_poly(f.num, var)}}}{{{latex_poly(f.den, var)}}}"


def latex_grid(rows: list[list[str]]) -> str:
    body = " \\\\ ".join(" & ".join(row) for row in rows)
    return f"\\begin{{pmatrix}} {body} \\end{{pmatrix}}"


def latex_matpoly(m: MatPoly, var: str = "z") -> str:
    return latex_grid([[latex_poly(e, var) for e in row] for row in m.rows])


def latex_const_matrix(mat) -> str:
    return latex_grid([[latex_scalar(x) for x in row] for row in mat])


def latex_solution_term(term: SolutionTerm) -> str:
    """Render u(t) = (vector t-polynomial) e^{alpha t}."""
    if term.exact:
        polys = term.vector_polynomial()
        vec = latex_grid([[latex_poly(p, "t")] for p in polys])
        alpha = term.alpha.value
        if alpha.is_zero():
            return vec
        return f"{vec} e^{{{latex_scalar(alpha)} t}}"
    parts = []
    for coeffs in term.vector_polynomial():
        body = " + ".join(
            f"({c:.6g}) t^{{{k}}}" if k else f"({c:.6g})"
            for k, c in enumerate(coeffs)
            if c != 0
        )
        parts.append([body or "0"])
    return f"{latex_grid(parts)} e^{{({complex(term.alpha.value):.6g}) t}}"
