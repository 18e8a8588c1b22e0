"""Upper half-plane and Poincare-disk geometry.

Exact rational arithmetic carries every comparison: the point-pair
invariant u(z, w) = |w - z|^2 / (4 Im z Im w) is a monotone transform of
hyperbolic distance, so membership predicates compare u values as
fractions and only the distances themselves are floats.

The Cayley transform z -> (z - i)/(z + i) conjugates a real Moebius
motion (a b; c d) to a disk motion (conj(F) conj(E); E F) with

    E = (a - d)/2 + i (b + c)/2,      F = (a + d)/2 - i (b - c)/2,

|F|^2 - |E|^2 = ad - bc.  A non-rotation disk motion acts as a Euclidean
isometry exactly on its isometric circle |E z + F| = 1, of radius 1/|E|
and center -F/E; those circles bound Ford domains, and the squared
Frobenius norm of the originating matrix is 4|E|^2 + 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Number = Union[int, float, Fraction]

_DET_TOL = Fraction(1, 10**12)


def _exact(v: Number) -> Fraction:
    """Lift to Fraction; binary floats convert exactly."""
    return v if isinstance(v, Fraction) else Fraction(v)


def _is_exact(v: Number) -> bool:
    return isinstance(v, (int, Rational))


@dataclass(frozen=True)
class UHPoint:
    """Point x + iy of the open upper half-plane, exact coordinates."""

    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", _exact(self.x))
        object.__setattr__(self, "y", _exact(self.y))
        if self.y <= 0:
            raise ValueError(f"point {self.x} + {self.y}i is not in the upper half-plane")

    def as_complex(self) -> complex:
        return complex(self.x) + 1j * complex(self.y)


@dataclass(frozen=True)
class RealMotion:
    """Element (a b; c d) of SL2(R); entries exact or float."""

    a: Number
    b: Number
    c: Number
    d: Number

    def __post_init__(self):
        det = _exact(self.a) * _exact(self.d) - _exact(self.b) * _exact(self.c)
        if abs(det - 1) > _DET_TOL:
            raise ValueError(f"determinant {float(det)} is not 1")

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(v) for v in (self.a, self.b, self.c, self.d))

    def is_center(self) -> bool:
        """True for +-identity."""
        return self.b == 0 and self.c == 0 and self.a == self.d and self.a * self.a == 1

    def compose(self, other: "RealMotion") -> "RealMotion":
        return RealMotion(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def frobenius_sq(self) -> Number:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d


@dataclass(frozen=True)
class DiskMotion:
    """Motion of the unit disk, stored as E = e_re + i e_im, F = f_re + i f_im.

    Components are exact fractions (floats lift exactly), so the defect
    |F|^2 - |E|^2 - 1 is computed without rounding.
    """

    e_re: Fraction
    e_im: Fraction
    f_re: Fraction
    f_im: Fraction

    def __post_init__(self):
        for name in ("e_re", "e_im", "f_re", "f_im"):
            object.__setattr__(self, name, _exact(getattr(self, name)))
        if abs(self.f_abs_sq() - self.e_abs_sq() - 1) > _DET_TOL:
            raise ValueError("|F|^2 - |E|^2 must equal 1")

    def e_abs_sq(self) -> Fraction:
        return self.e_re * self.e_re + self.e_im * self.e_im

    def f_abs_sq(self) -> Fraction:
        return self.f_re * self.f_re + self.f_im * self.f_im

    @property
    def E(self) -> complex:
        return complex(self.e_re) + 1j * complex(self.e_im)

    @property
    def F(self) -> complex:
        return complex(self.f_re) + 1j * complex(self.f_im)

    def is_rotation(self) -> bool:
        return self.e_re == 0 and self.e_im == 0


@dataclass(frozen=True)
class IsometricCircle:
    """Circle |Ez + F| = 1: center -F/E, radius 1/|E|, exact components."""

    center_re: Fraction
    center_im: Fraction
    radius_sq: Fraction
    source: DiskMotion

    @property
    def center(self) -> complex:
        return complex(self.center_re) + 1j * complex(self.center_im)

    @property
    def radius(self) -> float:
        return math.sqrt(self.radius_sq)

    def center_abs_sq(self) -> Fraction:
        return self.center_re * self.center_re + self.center_im * self.center_im


def mobius_act(g: RealMotion, z: Union[UHPoint, complex]) -> Union[UHPoint, complex]:
    """Apply (az + b)/(cz + d); exact on UHPoint input with exact g."""
    if isinstance(z, UHPoint):
        if g.is_exact:
            a, b, c, d = (_exact(v) for v in (g.a, g.b, g.c, g.d))
            den = (c * z.x + d) ** 2 + (c * z.y) ** 2  # > 0: y > 0, det = 1
            x = ((a * z.x + b) * (c * z.x + d) + a * c * z.y * z.y) / den
            y = z.y / den  # determinant 1
            return UHPoint(x, y)
        z = z.as_complex()
        w = (g.a * z + g.b) / (g.c * z + g.d)
        return UHPoint(Fraction(w.real), Fraction(w.imag))
    if isinstance(z, complex):
        if z.imag <= 0:
            raise ValueError("point must lie in the open upper half-plane")
        return (g.a * z + g.b) / (g.c * z + g.d)
    raise TypeError(f"unsupported point type {type(z)!r}")


def point_pair_u(z: UHPoint, w: UHPoint) -> Fraction:
    """u(z, w) = |w - z|^2 / (4 Im z Im w), exact."""
    dx = w.x - z.x
    dy = w.y - z.y
    return (dx * dx + dy * dy) / (4 * z.y * w.y)


def hyp_dist(z: UHPoint, w: UHPoint) -> float:
    """Hyperbolic distance arcosh(1 + 2u)."""
    return math.acosh(1 + 2 * float(point_pair_u(z, w)))


def motion_u(g: RealMotion) -> Number:
    """u(g) = tr(g g^T)/4 - 1/2; equals u(z, gz) for any z, bi-K-invariant."""
    s = g.frobenius_sq()
    if _is_exact(s):
        return Fraction(s) / 4 - Fraction(1, 2)
    return s / 4.0 - 0.5


def cayley_motion(g: RealMotion) -> DiskMotion:
    """Conjugate by the Cayley transform z -> (z - i)/(z + i)."""
    a, b, c, d = (_exact(v) for v in (g.a, g.b, g.c, g.d))
    half = Fraction(1, 2)
    return DiskMotion(
        e_re=(a - d) * half,
        e_im=(b + c) * half,
        f_re=(a + d) * half,
        f_im=-(b - c) * half,
    )


def isometric_circle(m: DiskMotion) -> IsometricCircle:
    """Circle |Ez + F| = 1 of a non-rotation disk motion."""
    e_sq = m.e_abs_sq()
    if e_sq == 0:
        raise ValueError("rotation about the disk center has no isometric circle")
    # -F / E = -F * conj(E) / |E|^2
    c_re = -(m.f_re * m.e_re + m.f_im * m.e_im) / e_sq
    c_im = -(m.f_im * m.e_re - m.f_re * m.e_im) / e_sq
    return IsometricCircle(c_re, c_im, 1 / e_sq, m)


def norm_from_disk(m: DiskMotion) -> Fraction:
    """Squared Frobenius norm of the originating matrix: 4|E|^2 + 2."""
    return 4 * m.e_abs_sq() + 2


def radius_to_norm_bound(r: float) -> float:
    """Norm budget 4 sinh(r)^2 + 2 for motions whose isometric circle meets
    the hyperbolic ball of radius r about the disk center.

    The ball has Euclidean radius tanh(r/2), and the circle of a motion
    with |E| = sinh(r) satisfies (|F| - 1)/|E| = tanh(r/2) exactly, i.e.
    it is tangent to the ball boundary.
    """
    if r <= 0:
        raise ValueError("radius must be positive")
    s = math.sinh(r)
    return 4 * s * s + 2


def dirichlet_member(z: UHPoint, w: UHPoint, candidates: Iterable[RealMotion]) -> bool:
    """True iff d(z, w) < d(gz, w) strictly for every candidate g != +-I.

    Certifies membership of z in the Dirichlet polygon centered at w only
    relative to the supplied candidate set; the caller must enumerate every
    motion that could move z closer to w.
    """
    cands = list(candidates)
    if not cands:
        raise ValueError("candidate list must be nonempty")
    u0 = point_pair_u(z, w)
    for g in cands:
        if g.is_center():
            continue
        if point_pair_u(mobius_act(g, z), w) <= u0:
            return False
    return True
