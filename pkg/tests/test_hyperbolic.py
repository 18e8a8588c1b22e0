import math
import random
from fractions import Fraction

import pytest

from alk.hyperbolic import (
    DiskMotion,
    RealMotion,
    UHPoint,
    cayley_motion,
    dirichlet_member,
    hyp_dist,
    isometric_circle,
    mobius_act,
    motion_u,
    norm_from_disk,
    point_pair_u,
    radius_to_norm_bound,
)

I2 = RealMotion(1, 0, 0, 1)
T = RealMotion(1, 1, 0, 1)
S = RealMotion(0, -1, 1, 0)
TOL = 1e-12


def pt(x, y):
    return UHPoint(Fraction(x), Fraction(y))


def random_sl2z(rng, length=8):
    """Random word in S, T as an exact integral motion."""
    m = I2
    for _ in range(rng.randint(1, length)):
        if rng.random() < 0.5:
            m = m.compose(S)
        else:
            e = rng.choice([-2, -1, 1, 2])
            m = m.compose(RealMotion(1, e, 0, 1))
    return m


def random_point(rng):
    return UHPoint(
        Fraction(rng.randint(-50, 50), rng.randint(1, 20)),
        Fraction(rng.randint(1, 60), rng.randint(1, 20)),
    )


def test_mobius_examples():
    i = pt(0, 1)
    assert mobius_act(I2, i) == i
    assert mobius_act(T, i) == pt(1, 1)
    assert mobius_act(S, pt(0, 2)) == pt(0, Fraction(1, 2))


def test_mobius_rejects_lower_half_plane():
    with pytest.raises(ValueError):
        mobius_act(I2, complex(1, -1))
    with pytest.raises(ValueError):
        UHPoint(Fraction(0), Fraction(0))


def test_point_pair_u_examples():
    i = pt(0, 1)
    assert point_pair_u(i, i) == 0
    assert point_pair_u(i, pt(0, 2)) == Fraction(1, 8)
    # cross-check: cosh(log 2) = 5/4 and (5/4 - 1)/2 = 1/8
    assert (math.cosh(math.log(2)) - 1) / 2 == pytest.approx(1 / 8, abs=TOL)
    assert point_pair_u(i, pt(1, 1)) == Fraction(1, 4)


def test_hyp_dist_examples():
    i = pt(0, 1)
    assert hyp_dist(i, i) == 0
    assert hyp_dist(i, pt(0, 2)) == pytest.approx(math.log(2), abs=TOL)
    # geodesic additivity along the imaginary axis
    assert hyp_dist(i, pt(0, 4)) == pytest.approx(2 * hyp_dist(i, pt(0, 2)), abs=TOL)


def test_motion_u_examples():
    assert motion_u(I2) == 0
    g = RealMotion(2, 0, 0, Fraction(1, 2))
    assert motion_u(g) == Fraction(9, 16)
    assert point_pair_u(pt(0, 1), pt(0, 4)) == Fraction(9, 16)
    assert motion_u(T) == Fraction(1, 4)
    assert point_pair_u(pt(0, 1), pt(1, 1)) == Fraction(1, 4)


def test_motion_u_matches_point_pair_and_k_invariance():
    rng = random.Random(11)
    i = pt(0, 1)
    for _ in range(200):
        g = random_sl2z(rng)
        assert motion_u(g) == point_pair_u(i, mobius_act(g, i))
    # bi-K-invariance: rotations about i do not change u
    for theta in (0.3, 1.1, 2.0):
        c, s = math.cos(theta), math.sin(theta)
        k = RealMotion(c, -s, s, c)
        g = RealMotion(2.0, 1.0, 1.0, 1.0)
        left = motion_u(k.compose(g))
        right = motion_u(g.compose(k))
        assert left == pytest.approx(float(motion_u(g)), abs=1e-9)
        assert right == pytest.approx(float(motion_u(g)), abs=1e-9)


def test_cayley_examples():
    m = cayley_motion(I2)
    assert (m.e_re, m.e_im, m.f_re, m.f_im) == (0, 0, 1, 0)
    m = cayley_motion(T)
    assert (m.e_re, m.e_im) == (0, Fraction(1, 2))
    assert (m.f_re, m.f_im) == (1, Fraction(-1, 2))
    assert m.f_abs_sq() - m.e_abs_sq() == 1
    # S = (0 -1; 1 0) is a rotation: E = 0, F = i
    m = cayley_motion(S)
    assert m.is_rotation()
    assert (m.f_re, m.f_im) == (0, 1)


def test_isometric_circle_examples():
    circ = isometric_circle(cayley_motion(T))
    assert circ.radius_sq == 4
    assert (circ.center_re, circ.center_im) == (1, 2)
    assert circ.center_abs_sq() == circ.radius_sq + 1

    with pytest.raises(ValueError):
        isometric_circle(cayley_motion(I2))

    g = RealMotion(2, 0, 0, Fraction(1, 2))
    circ = isometric_circle(cayley_motion(g))
    assert circ.radius_sq == Fraction(16, 9)
    assert (circ.center_re, circ.center_im) == (Fraction(-5, 3), 0)
    assert circ.center_abs_sq() == Fraction(25, 9)


def test_norm_from_disk_examples():
    assert norm_from_disk(cayley_motion(I2)) == 2
    assert norm_from_disk(cayley_motion(T)) == 3
    g = RealMotion(2, 0, 0, Fraction(1, 2))
    assert norm_from_disk(cayley_motion(g)) == Fraction(17, 4)


def test_radius_to_norm_bound():
    assert radius_to_norm_bound(1e-9) == pytest.approx(2.0, abs=1e-6)
    r = math.log(3)
    assert radius_to_norm_bound(r) == pytest.approx(64 / 9 + 2, abs=TOL)
    with pytest.raises(ValueError):
        radius_to_norm_bound(0)
    # equality witness: diagonal motion with |E| = sinh(r) has its circle
    # tangent to the hyperbolic ball of radius r (Euclidean radius tanh(r/2))
    lam = math.exp(r)
    g = RealMotion(lam, 0.0, 0.0, 1 / lam)
    m = cayley_motion(g)
    assert math.sqrt(float(m.e_abs_sq())) == pytest.approx(math.sinh(r), abs=1e-9)
    circ = isometric_circle(m)
    gap = abs(circ.center) - circ.radius
    assert gap == pytest.approx(math.tanh(r / 2), abs=1e-9)


def sl2z_ball(norm_sq_bound):
    """All integral motions with Frobenius norm squared <= bound."""
    out = []
    m = int(math.isqrt(norm_sq_bound))
    for a in range(-m, m + 1):
        for b in range(-m, m + 1):
            for c in range(-m, m + 1):
                for d in range(-m, m + 1):
                    if a * d - b * c == 1 and a * a + b * b + c * c + d * d <= norm_sq_bound:
                        out.append(RealMotion(a, b, c, d))
    return out


def test_dirichlet_member():
    w = pt(0, 2)
    ball = sl2z_ball(40)
    assert dirichlet_member(w, w, ball)
    far = pt(10, 2)
    shift = RealMotion(1, -10, 0, 1)
    assert not dirichlet_member(far, w, ball + [shift])
    assert dirichlet_member(pt(0, Fraction(21, 10)), w, ball)
    with pytest.raises(ValueError):
        dirichlet_member(w, w, [])


def test_invariance_properties():
    rng = random.Random(5)
    for _ in range(1000):
        z, w = random_point(rng), random_point(rng)
        g = random_sl2z(rng)
        u = point_pair_u(z, w)
        assert point_pair_u(mobius_act(g, z), mobius_act(g, w)) == u
        assert math.cosh(hyp_dist(z, w)) == pytest.approx(1 + 2 * float(u), rel=TOL)


def test_norm_and_circle_invariants():
    rng = random.Random(6)
    for _ in range(1000):
        g = random_sl2z(rng)
        m = cayley_motion(g)
        assert norm_from_disk(m) == g.frobenius_sq()
        if not m.is_rotation():
            circ = isometric_circle(m)
            assert circ.center_abs_sq() - circ.radius_sq == 1
