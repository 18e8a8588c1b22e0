"""Exact coprime-constrained rational approximation.

Two primitives used by the Ford-domain analysis of Gamma0(Q):

* ``jacobsthal_shift``: the smallest k >= 1 making a + k*b coprime to a
  modulus D (a Jacobsthal-type gap search along an arithmetic progression).
* ``coprime_approx``: given a rational x and a modulus D, produce either an
  integer c with |x - c| <= 1/(2(1+C)) or a fraction a/b with
  b <= 2(1+C)^2, gcd(a, b*D) = 1 and |b*x - a| <= 1/2, where C is an
  explicit quality parameter chosen by the caller.

All arithmetic is exact; no floats enter any comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def jacobsthal_shift(a: int, b: int, modulus: int) -> int:
    """Smallest k >= 1 with gcd(a + k*b, modulus) = 1.

    Requires gcd(a, b) = 1; otherwise every a + k*b shares that common
    factor and, when it also divides the modulus, no k exists.
    """
    if modulus < 1:
        raise ValueError("modulus must be a positive integer")
    if math.gcd(a, b) != 1:
        raise ValueError(f"a, b must be coprime; gcd({a}, {b}) = {math.gcd(a, b)}")
    k = 1
    while math.gcd(a + k * b, modulus) != 1:
        k += 1
    return k


def default_tradeoff(modulus: int) -> int:
    """Default quality parameter C = max(1, ceil(ln(D + 2)))."""
    return max(1, math.ceil(math.log(modulus + 2)))


def convergents(x: Fraction) -> list[tuple[int, int]]:
    """Continued-fraction convergents (p, q) of x, ending at x itself."""
    num, den = x.numerator, x.denominator
    out: list[tuple[int, int]] = []
    p1, p0 = 1, 0  # p_{-1}, p_{-2}
    q1, q0 = 0, 1
    while den != 0:
        a = num // den
        num, den = den, num - a * den
        p1, p0 = a * p1 + p0, p1
        q1, q0 = a * q1 + q0, q1
        out.append((p1, q1))
    return out


def dirichlet_approx(x: Fraction | int, K: int) -> tuple[int, int]:
    """Best small-denominator approximation: (c, d) with 1 <= d <= K and
    |d*x - c| <= 1/K, gcd(c, d) = 1.

    Takes the last continued-fraction convergent of x with denominator <= K;
    the classical convergent error bound gives |d*x - c| < 1/K whenever the
    next convergent has a larger denominator, and 0 when x itself is reached.
    """
    if K < 1:
        raise ValueError("K must be a positive integer")
    x = Fraction(x)
    best = None
    for p, q in convergents(x):
        if q > K:
            break
        best = (p, q)
    assert best is not None  # the first convergent has denominator 1
    return best


@dataclass(frozen=True)
class IntegralApprox:
    """Case (i): an integer c with |x - c| <= 1/(2(1+C))."""

    c: int


@dataclass(frozen=True)
class FractionApprox:
    """Case (ii): a/b with b <= 2(1+C)^2, gcd(a, b*D) = 1, |b*x - a| <= 1/2."""

    a: int
    b: int


ApproxResult = IntegralApprox | FractionApprox


def _neighbor_candidates(
    x: Fraction, c: int, d: int, modulus: int
) -> list[tuple[int, int]]:
    """Unimodular neighbors a/b of c/d on x's side, Jacobsthal-shifted so that
    gcd(a, b*modulus) = 1.

    Returns one candidate per admissible sign of a*d - b*c (two on an exact
    tie x = c/d).
    """
    side = (x > Fraction(c, d)) - (x < Fraction(c, d))
    signs = (1, -1) if side == 0 else (side,)
    # extended gcd: u*d - v*c = 1
    u, v = _bezout_for(d, c)
    cands = []
    for sigma in signs:
        b0 = (sigma * v) % d  # in [0, d); 0 impossible since gcd(b, d) = 1, d >= 2
        t = (b0 - sigma * v) // d
        a0 = sigma * u + t * c
        # a0*d - b0*c = sigma; gcd(a0, c) = 1, so the shift below is legal
        if math.gcd(a0, modulus) == 1:
            k = 0
        else:
            k = jacobsthal_shift(a0, c, modulus)
        cands.append((a0 + k * c, b0 + k * d))
    return cands


def _bezout_for(d: int, c: int) -> tuple[int, int]:
    """(u, v) with u*d - v*c = 1 for coprime d, c."""
    g, s, t = _ext_gcd(d, c)
    if g == -1:
        s, t = -s, -t
    # s*d + t*c = 1  ->  u = s, v = -t
    return s, -t


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def coprime_approx(x: Fraction | int, modulus: int, C: int) -> ApproxResult:
    """Approximate x by an integer or by a fraction coprime to b*modulus.

    Follows the constructive proof: Dirichlet approximation with
    K = 2(1+C); a denominator-1 convergent settles the integral case,
    otherwise the unimodular neighbor of the convergent on x's side is
    Jacobsthal-shifted until its numerator is coprime to b*modulus.

    The shift can overshoot the stated b-bound when the minimal k exceeds C,
    so the result is verified and, failing that, replaced by a direct search
    over all admissible small denominators (one always exists for C >= 1;
    exercised heavily in the tests).
    """
    if modulus < 1:
        raise ValueError("modulus must be a positive integer")
    if C < 1:
        raise ValueError("C must be a positive integer")
    x = Fraction(x)
    K = 2 * (1 + C)
    b_max = 2 * (1 + C) ** 2
    c, d = dirichlet_approx(x, K)
    if d == 1:
        return IntegralApprox(c)

    best: tuple[tuple[int, int, int], int, int] | None = None
    for a, b in _neighbor_candidates(x, c, d, modulus):
        if b <= b_max and abs(b * x - a) <= Fraction(1, 2):
            key = (b, abs(a), 0 if a >= 0 else 1)
            if best is None or key < best[0]:
                best = (key, a, b)
    if best is not None:
        return FractionApprox(best[1], best[2])

    # Fallback: the proof-shaped route overshot; search directly.
    c0 = math.floor(x + Fraction(1, 2))
    if abs(x - c0) <= Fraction(1, 2 * (1 + C)):
        return IntegralApprox(c0)
    for b in range(1, b_max + 1):
        bx = b * x
        lo = math.ceil(bx - Fraction(1, 2))
        hi = math.floor(bx + Fraction(1, 2))
        hits = [a for a in range(lo, hi + 1) if math.gcd(a, b * modulus) == 1]
        if hits:
            hits.sort(key=abs)
            return FractionApprox(hits[0], b)
    raise ArithmeticError(
        f"no admissible approximation for x={x}, D={modulus}, C={C}"
    )
