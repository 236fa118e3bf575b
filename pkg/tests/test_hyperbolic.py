import cmath
import math

import numpy as np
import pytest

from polyharmonic import hyperbolic as h

RHO = complex(-0.5, math.sqrt(3) / 2)


def in_fd(z, tol=1e-12):
    return abs(z.real) <= 0.5 + tol and abs(z) >= 1 - tol


@pytest.mark.parametrize("z", [0.3 + 0.2j, -2.7 + 0.01j, 0.49 + 0.9j, 5 + 3j])
def test_reduce_lands_in_domain_and_matches_matrix(z):
    w, g = h.reduce(z)
    assert in_fd(w)
    assert abs(h.mobius(g, z) - w) < 1e-9
    (a, b), (c, d) = g
    assert a * d - b * c == 1


def test_reduce_np_agrees_with_scalar():
    zs = np.array([0.3 + 0.2j, -2.7 + 0.05j, 0.1 + 1.5j])
    x, y = h.reduce_np(zs.real, zs.imag)
    for k, z in enumerate(zs):
        assert abs(complex(x[k], y[k]) - h.reduce(complex(z))[0]) < 1e-9


def test_stabilizer_orders():
    assert (h.stabilizer_order(1j), h.stabilizer_order(RHO), h.stabilizer_order(2j)) == (2, 3, 1)


def test_cosh_dist_invariant():
    z, w = 0.2 + 1.1j, -0.4 + 2.3j
    g = ((2, 1), (1, 1))
    assert abs(h.cosh_dist(h.mobius(g, z), h.mobius(g, w)) - h.cosh_dist(z, w)) < 1e-12


def test_frame_round_trip():
    fr = h.EllipticFrame.at(2j)
    z = 0.1 + 1.8j
    assert abs(fr.point(fr.X(z)) - z) < 1e-12
    assert fr.omega == 1


def test_bottom_row_completion_and_cosets():
    for c, d in [(5, 3), (7, 2), (1, 0)]:
        (a, b), (cc, dd) = h.bottom_row_completion(c, d)
        assert (cc, dd) == (c, d) and a * d - b * c == 1
    cos = h.coset_enumerate(6)
    assert len(cos) == 1 + sum(sum(1 for d in range(c) if math.gcd(c, d) == 1) for c in range(1, 7))


def test_hpoint_rejects_lower_half_plane():
    with pytest.raises(ValueError):
        h.HPoint(0.0, -1.0)
