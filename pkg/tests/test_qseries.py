from fractions import Fraction

import pytest

from polyharmonic import qseries as q

TAU = [1, -24, 252, -1472, 4830, -6048, -16744, 84480]


def test_delta_matches_ramanujan_tau():
    d = q.delta_qexp(8)
    assert [d[n] for n in range(1, 9)] == TAU


def test_j_leading_coefficients():
    j = q.j_qexp(3)
    assert (j[-1], j[0], j[1], j[2], j[3]) == (1, 744, 196884, 21493760, 864299970)


def test_eisenstein_coefficients_are_divisor_sums():
    e4 = q.eisenstein_qexp(4, 10)
    assert e4[0] == 1
    assert all(e4[n] == 240 * q.sigma(3, n) for n in range(1, 11))


def test_j_equals_E4_cubed_over_delta():
    N = 12
    lhs = q.eisenstein_qexp(4, N + 2) ** 3 / q.delta_qexp(N + 2)
    j = q.j_qexp(N)
    assert lhs.trunc == N
    assert all(lhs[n] == j[n] for n in range(-1, N + 1))


def test_reading_past_truncation_raises():
    with pytest.raises(q.TruncationError):
        q.j_qexp(4)[5]


def test_hecke_of_j1_is_faber_image():
    for n in (2, 3, 5):
        assert all(q.hecke(q.j1_qexp(20 * n), n)[k] == q.jn_qexp(n, 20)[k] for k in range(-n, 11))


def test_faber_polynomial_degree_two():
    P, _ = q.faber_poly(2)
    assert [Fraction(c) for c in P.c] == [-2 * 196884, 0, 1]


def test_truncation_is_tracked():
    f = q.j1_qexp(5) * q.j1_qexp(5)
    assert f.trunc <= 4


@pytest.mark.parametrize("check", [lambda: q.akn_check(N=12), lambda: q.bko_check("j-1728", N=12),
                                   lambda: q.denominator_check(D=3), lambda: q.hecke_faber_check(nmax=4, N=12)])
def test_exact_checks_pass_small(check):
    assert check().status == "pass"
