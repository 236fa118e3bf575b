import cmath

import mpmath
import pytest

from polyharmonic import specfun as sf


def test_ein_matches_exponential_integral():
    for w in (0.3, 1.0, 4.5, -2.0):
        with mpmath.workdps(40):
            ref = mpmath.e1(w) + mpmath.euler + mpmath.log(w)
            assert abs(sf.ein(w) - ref) < 1e-25


@pytest.mark.parametrize("kappa", [0, 2])
@pytest.mark.parametrize("w", [0.7, 3.0, -1.5, -20.0])
def test_W_two_routes(kappa, w):
    a, b = sf.W_kappa(kappa, w), sf.W_kappa_gamma(kappa, w)
    assert abs(a - b) <= 1e-25 * max(1, abs(b))


def test_boldW_error_estimate_is_small():
    v, err = sf.boldW_err(0, 2.0)
    assert err < 1e-15 and abs(v - sf.boldW(0, 2.0)) < 1e-20


def test_kloosterman_direct_sum():
    for m, n, c in [(1, 1, 5), (2, 3, 7), (1, -1, 12)]:
        ref = sum(cmath.exp(2j * cmath.pi * (m * d + n * pow(d, -1, c)) / c)
                  for d in range(c) if __import__("math").gcd(d, c) == 1)
        assert abs(sf.kloosterman(m, n, c) - ref.real) < 1e-12 and abs(ref.imag) < 1e-12


def test_ramanujan_sum():
    assert sf.ramanujan_sum(6, 2) == -1
    assert sf.ramanujan_sum(5, 5) == 4


def test_beta_rejects_unsupported():
    with pytest.raises(ValueError):
        sf.beta_series(0.4, 3, 1)


def test_B_limit_small_r():
    assert abs(sf.B_of_r(0.01)) < 0.05


def test_bessel_K_half_order_closed_form():
    w = 2.5
    with mpmath.workdps(40):
        ref = mpmath.sqrt(mpmath.pi / (2 * w)) * mpmath.exp(-w)
        assert abs(sf.bessel_K(0.5, w) - ref) < 1e-25
