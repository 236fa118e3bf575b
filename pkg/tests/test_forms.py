import math

import numpy as np
import pytest

from polyharmonic._mp import ctx
from polyharmonic.forms import core, eisenstein, fast, green, niebur
from polyharmonic.hyperbolic import mobius

C = ctx(35)
RHO = C.mpc(-0.5, C.sqrt(3) / 2)
Z = C.mpc("0.2", "1.3")
S_MAT = ((0, -1), (1, 0))


def test_j_special_values():
    assert abs(core.eval_j(C.mpc(0, 1)) - 1728) < 1e-25
    assert abs(core.eval_j(RHO)) < 1e-25


@pytest.mark.parametrize("f", [core.eval_j, core.eval_jj0, lambda z: core.eval_jn(2, z)])
def test_weight_zero_invariance(f):
    w = C.mpc("0.35", "0.6")
    assert abs(f(mobius(S_MAT, w)) - f(w)) < 1e-20 * max(1, abs(f(w)))


def test_delta_weight_twelve():
    w = C.mpc("0.1", "0.9")
    assert abs(core.eval_delta(-1 / w) - w ** 12 * core.eval_delta(w)) < 1e-25 * abs(core.eval_delta(-1 / w))


def test_jn_routes_agree():
    assert abs(core.eval_jn(3, Z) - core.eval_jn(3, Z, route="hecke")) < 1e-20 * abs(core.eval_jn(3, Z))


def test_fast_matches_mp():
    assert abs(fast.jj0(np.array([0.2]), np.array([1.3]))[0] - float(core.eval_jj0(Z))) < 1e-12
    assert abs(complex(fast.j1(np.array([0.2]), np.array([1.3]))[0]) - complex(core.eval_j(Z) - 744)) < 1e-8


def test_g_zeta_pole_free_value_finite():
    v = core.eval_g_zeta(C.mpc(0, 2), Z)
    assert C.isfinite(v)


def test_eisenstein_routes_and_symmetry():
    s = 1.5
    a = eisenstein.eval_E(Z, s)
    b = eisenstein.eval_E(Z, s, route="direct")
    assert abs(a - b) < 1e-8
    w = C.mpc("0.3", "0.7")
    assert abs(eisenstein.eval_E(-1 / w, s) - eisenstein.eval_E(w, s)) < 1e-20


def test_calE_routes_agree():
    assert abs(eisenstein.eval_calE(Z) - eisenstein.eval_calE_kronecker(Z)) < 1e-8


def test_green_symmetric_in_arguments():
    z, zeta = complex(0.1, 1.7), complex(0, 2)
    assert abs(green.eval_Gs(z, zeta, 1.5) - green.eval_Gs(zeta, z, 1.5)) < 1e-6


def test_niebur_constant_closed_form():
    assert niebur.C_n_closed_form(1) == 24
    assert niebur.C_n_closed_form(2) == 72
