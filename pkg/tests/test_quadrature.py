import math

import numpy as np

from polyharmonic import quadrature as qd


def test_volume_of_fundamental_domain():
    assert qd.volume_check().status == "pass"


def test_contour_picks_out_laurent_coefficient():
    zeta = 2j
    f = lambda z: ((z - zeta) / (z - np.conj(zeta))) ** 3  # noqa: E731
    assert abs(qd.elliptic_coeff(f, zeta, 3, 0.2) - 1) < 1e-12
    assert abs(qd.elliptic_coeff(f, zeta, 2, 0.2)) < 1e-12


def test_partition_of_unity_cutoff():
    r = np.array([0.0, 0.05, 0.5, 10.0])
    v = qd.chi(r)
    assert v[0] == 1 and v[-1] == 0 and np.all((v >= 0) & (v <= 1))


def test_default_height_clears_punctures():
    assert qd.default_y0([2j]) >= 3.0
    assert qd.default_y0([1j]) >= 1.2


def test_contour_orthogonality():
    assert qd.contour_orthogonality_check().status == "pass"


def test_divisor_orders():
    assert qd.divisor_orders("(j-1728)/j") == {"i": 2, "rho": -3}


def test_log_f_divisor_matches_direct_evaluation():
    assert qd.log_f_divisor_check().status == "pass"


def test_elliptic_constant_term_of_g_at_i():
    rep = qd.elliptic_constant_g_check()
    assert rep.status == "pass"
    assert math.isfinite(rep.max_defect)
