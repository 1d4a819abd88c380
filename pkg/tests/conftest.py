"""Shared fixtures: golden example matrices and random generators."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from mpk.matpoly import MatPoly
from mpk.polyalg import GaussianRational, Poly, gr

Z = Poly.z()


@pytest.fixture
def z():
    return Z


@pytest.fixture
def l_shift3() -> MatPoly:
    """3x3 system with eigenvalue 0 (orders 1 and 2) and eigenvalue 1."""
    return MatPoly([[0, Z, 0], [1, 0, Z], [0, 0, Z**3 - Z**2]])


@pytest.fixture
def shift3_triple() -> tuple[MatPoly, MatPoly, MatPoly]:
    """A known-good (S, D, T) for l_shift3."""
    s = MatPoly([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    d = MatPoly([[1, 0, 0], [0, Z, 0], [0, 0, Z**3 - Z**2]])
    t = MatPoly([[1, 0, -Z], [0, 1, 0], [0, 0, 1]])
    return s, d, t


@pytest.fixture
def l_hermpair() -> MatPoly:
    """Hermitian 2x2 with double eigenvalues at 0 and 1; kappa = 2."""
    q = Z**2 - Z
    return MatPoly([[1, q], [q, 0]])


@pytest.fixture
def l_corner_cubic() -> MatPoly:
    """Hermitian 2x2 whose inverse diverges at infinity."""
    return MatPoly([[Z**3, Z], [Z, 0]])


@pytest.fixture
def l_affine() -> MatPoly:
    """Hermitian 2x2 with a nonzero limit of the inverse at infinity."""
    return MatPoly([[Z, 1], [1, 1]])


def random_gr(rng: random.Random, lo=-3, hi=3, complex_part=False) -> GaussianRational:
    re = rng.randint(lo, hi)
    im = rng.randint(lo, hi) if complex_part else 0
    return gr(re, im)


def random_poly(rng: random.Random, max_deg: int, lo=-3, hi=3, complex_part=False) -> Poly:
    deg = rng.randint(0, max_deg)
    return Poly([random_gr(rng, lo, hi, complex_part) for _ in range(deg + 1)])


def random_matpoly(rng: random.Random, n: int, l: int, lo=-3, hi=3, complex_part=False) -> MatPoly:
    return MatPoly(
        [[random_poly(rng, l, lo, hi, complex_part) for _ in range(n)] for _ in range(n)]
    )


def random_monic_matpoly(rng: random.Random, n: int, l: int, lo=-3, hi=3) -> MatPoly:
    """Monic: leading coefficient matrix is the identity."""
    mats = [
        [[random_gr(rng, lo, hi) for _ in range(n)] for _ in range(n)] for _ in range(l)
    ]
    lead = [[gr(1 if i == j else 0) for j in range(n)] for i in range(n)]
    mats.append(lead)
    return MatPoly.from_coefficient_matrices(mats)


def random_constant_unimodular(rng: random.Random, n: int, moves: int = 5):
    """Invertible constant matrix built from elementary column operations."""
    u = [[gr(1 if i == j else 0) for j in range(n)] for i in range(n)]
    scales = [gr(2), gr(-1), gr(0, 1), gr(Fraction(1, 2)), gr(1, 1)]
    for _ in range(moves):
        kind = rng.choice(["add", "swap", "scale"])
        i, j = rng.sample(range(n), 2)
        if kind == "add":
            c = random_gr(rng, -2, 2, complex_part=True)
            for t in range(n):
                u[t][i] = u[t][i] + c * u[t][j]
        elif kind == "swap":
            for t in range(n):
                u[t][i], u[t][j] = u[t][j], u[t][i]
        else:
            c = rng.choice(scales)
            for t in range(n):
                u[t][i] = c * u[t][i]
    return u


def random_representable_pair(rng: random.Random):
    """Hermitian L = U^T diag(s1(z-a), s2(z-b)) conj(U), constant unimodular U.

    Returns (L, kappa) with kappa the count of negative signs; distinct
    rational a, b keep the two blocks at distinct poles.
    """
    a, b = rng.sample(range(-5, 6), 2)
    s1, s2 = rng.choice([1, -1]), rng.choice([1, -1])
    u = random_constant_unimodular(rng, 2)
    umat = MatPoly([[Poly([c]) for c in row] for row in u])
    d = MatPoly([[s1 * (Z - a), 0], [0, s2 * (Z - b)]])
    l = umat.transpose() * d * umat.conj_coeffs()
    kappa = (1 if s1 < 0 else 0) + (1 if s2 < 0 else 0)
    return l, kappa


SMALL_FAMILY_ENTRIES = (Poly.zero(), Poly.one(), -Poly.one(), Z, Z**2, Z**2 - Z)
