"""Gaussian-integer arithmetic used by the exact root finder.

A Gaussian integer a+bi is a plain ``(a, b)`` tuple of Python ints.  The
only consumer is divisor enumeration for the rational-root search, so the
interface is small: exact division, gcd, factorization into Gaussian
primes, and enumeration of divisors up to units.
"""

from __future__ import annotations

from math import isqrt

ZERO = (0, 0)
ONE = (1, 0)


def norm(g: tuple[int, int]) -> int:
    a, b = g
    return a * a + b * b


def mul(g: tuple[int, int], h: tuple[int, int]) -> tuple[int, int]:
    a, b = g
    c, d = h
    return (a * c - b * d, a * d + b * c)


def conj(g: tuple[int, int]) -> tuple[int, int]:
    return (g[0], -g[1])


def divmod_rounded(g: tuple[int, int], h: tuple[int, int]):
    """Euclidean division: g = q*h + r with norm(r) < norm(h)."""
    if h == ZERO:
        raise ZeroDivisionError("division by zero Gaussian integer")
    n = norm(h)
    num = mul(g, conj(h))
    # round num/n to the nearest Gaussian integer
    q = (_round_div(num[0], n), _round_div(num[1], n))
    r = (g[0] - (q[0] * h[0] - q[1] * h[1]), g[1] - (q[0] * h[1] + q[1] * h[0]))
    return q, r


def _round_div(a: int, n: int) -> int:
    # nearest integer to a/n, n > 0
    return (2 * a + n) // (2 * n)


def divides(h: tuple[int, int], g: tuple[int, int]) -> bool:
    """True when h | g exactly."""
    if h == ZERO:
        return g == ZERO
    _, r = divmod_rounded(g, h)
    return r == ZERO


def exact_div(g: tuple[int, int], h: tuple[int, int]) -> tuple[int, int]:
    q, r = divmod_rounded(g, h)
    if r != ZERO:
        raise ValueError(f"{h} does not divide {g}")
    return q


def gcd(g: tuple[int, int], h: tuple[int, int]) -> tuple[int, int]:
    while h != ZERO:
        _, r = divmod_rounded(g, h)
        g, h = h, r
    return canonical_associate(g)


def canonical_associate(g: tuple[int, int]) -> tuple[int, int]:
    """The associate of g in the quadrant {a > 0, b >= 0} (0 for 0)."""
    if g == ZERO:
        return g
    for _ in range(4):
        if g[0] > 0 and g[1] >= 0:
            return g
        g = (-g[1], g[0])  # multiply by i
    raise AssertionError("unreachable")


def is_unit(g: tuple[int, int]) -> bool:
    return norm(g) == 1


class FactorBailout(Exception):
    """Raised when a cofactor cannot be factored within the effort bound."""


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for anything this package can produce."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factor_int(n: int, limit: int = 1 << 62) -> dict[int, int]:
    """Trial-division factorization up to ``limit``.

    A leftover cofactor is accepted if prime; a composite cofactor beyond
    the trial bound raises FactorBailout so callers can fall back to a
    numeric route instead of stalling on a hard factorization.
    """
    if n <= 0:
        raise ValueError("positive integer expected")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n and d <= limit:
        for p in (d, d + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        if d * d <= n and not is_probable_prime(n):
            raise FactorBailout(f"cofactor {n} not factored within effort bound")
        out[n] = out.get(n, 0) + 1
    return out


def _sqrt_minus_one_mod(p: int) -> int:
    # p ≡ 1 (mod 4): x with x² ≡ −1 via a non-residue to the (p−1)/4 power
    for a in range(2, p):
        x = pow(a, (p - 1) // 4, p)
        if (x * x) % p == p - 1:
            return x
    raise ValueError(f"{p} is not 1 mod 4")


def _gaussian_primes_above(p: int) -> list[tuple[int, int]]:
    if p == 2:
        return [(1, 1)]
    if p % 4 == 3:
        return [(p, 0)]
    x = _sqrt_minus_one_mod(p)
    pi = gcd((p, 0), (x, 1))
    assert norm(pi) == p
    pi_bar = canonical_associate(conj(pi))
    return [pi, pi_bar]


def factor(g: tuple[int, int], limit: int = 1 << 62) -> dict[tuple[int, int], int]:
    """Factor a nonzero Gaussian integer into canonical Gaussian primes."""
    if g == ZERO:
        raise ValueError("cannot factor zero")
    out: dict[tuple[int, int], int] = {}
    for p in factor_int(norm(g), limit) if norm(g) > 1 else {}:
        for pi in _gaussian_primes_above(p):
            e = 0
            while divides(pi, g) and not is_unit(g):
                g = exact_div(g, pi)
                e += 1
            if e:
                out[pi] = e
    assert is_unit(g)
    return out


def divisors(g: tuple[int, int], limit: int = 1 << 62) -> list[tuple[int, int]]:
    """All divisors of a nonzero g, one canonical associate per class."""
    divs = [ONE]
    for pi, e in factor(g, limit).items():
        grown = []
        for d in divs:
            acc = d
            for _ in range(e):
                acc = mul(acc, pi)
                grown.append(canonical_associate(acc))
        divs.extend(grown)
    # canonicalization can collide only for associates; dedupe
    return sorted(set(divs))


def content_gcd(values: list[tuple[int, int]]) -> tuple[int, int]:
    """gcd of a list of Gaussian integers (canonical associate)."""
    acc = ZERO
    for v in values:
        acc = gcd(acc, v)
        if is_unit(acc):
            return ONE
    return acc if acc != ZERO else ONE
