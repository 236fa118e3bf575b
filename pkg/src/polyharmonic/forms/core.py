"""Point evaluation of holomorphic and weight-zero log-type modular objects.

All evaluators reduce the argument to the fundamental domain first and then
sum q-series or products that converge geometrically there.
"""

from __future__ import annotations

from functools import lru_cache

from .._mp import DEFAULT_DPS, ctx
from ..hyperbolic import HPoint, reduce
from ..qseries import faber_poly, sigma


def mp_point(z, dps: int = DEFAULT_DPS):
    c = ctx(dps)
    if isinstance(z, HPoint):
        return c.mpc(z.x, z.y)
    if isinstance(z, str):
        return c.mpc(complex(z.replace("i", "j")))
    return c.mpc(z)


def reduced_mp(z, dps: int = DEFAULT_DPS):
    """(z*, g) with z* reduced, computed in the requested precision."""
    return reduce(mp_point(z, dps))


def _q(z, c):
    return c.exp(2j * c.pi * z)


def _delta_reduced(z, c):
    q = _q(z, c)
    prod = c.one
    qn = c.one
    while True:
        qn *= q
        prod *= (1 - qn)
        if abs(qn) < c.eps:
            break
    return q * prod ** 24


def _eis_reduced(k: int, z, c):
    q = _q(z, c)
    const = {4: 240, 6: -504, 2: -24}[k]
    total = c.one
    qm = c.one
    m = 0
    while True:
        m += 1
        qm *= q
        term = const * sigma(k - 1, m) * qm
        total += term
        if abs(term) < c.eps * 1e-3:
            break
    return total


def eval_delta(z, dps: int = DEFAULT_DPS):
    c = ctx(dps)
    z = mp_point(z, dps)
    zs, g = reduce(z)
    cz_d = g[1][0] * z + g[1][1]
    return _delta_reduced(zs, c) / cz_d ** 12


def eval_eisenstein(k: int, z, dps: int = DEFAULT_DPS):
    """Holomorphic E_4 or E_6 (weight k) via reduction and covariance."""
    c = ctx(dps)
    z = mp_point(z, dps)
    zs, g = reduce(z)
    cz_d = g[1][0] * z + g[1][1]
    return _eis_reduced(k, zs, c) / cz_d ** k


def eval_j(z, dps: int = DEFAULT_DPS):
    """j = E_4^3 / Delta at the reduced point."""
    c = ctx(dps)
    zs, _ = reduced_mp(z, dps)
    return _eis_reduced(4, zs, c) ** 3 / _delta_reduced(zs, c)


def eval_j_minus(z, J, dps: int = DEFAULT_DPS):
    """j(z) - J, using E_6^2/Delta for J = 1728 and E_4^3/Delta for J = 0 to avoid cancellation."""
    c = ctx(dps)
    zs, _ = reduced_mp(z, dps)
    if J == 1728:
        return _eis_reduced(6, zs, c) ** 2 / _delta_reduced(zs, c)
    if J == 0:
        return _eis_reduced(4, zs, c) ** 3 / _delta_reduced(zs, c)
    return eval_j(zs, dps) - J


@lru_cache(maxsize=None)
def _faber(n: int):
    return faber_poly(n, 0)[0]


def eval_jn(n: int, z, dps: int = DEFAULT_DPS, route: str = "faber"):
    """j_n(z) = q^-n + O(q); j_0 = 1.

    route="faber": the Faber polynomial in j_1.
    route="hecke": sum over ad = n, b mod d of j_1((az + b)/d).
    """
    if n == 0:
        return ctx(dps).one
    c = ctx(dps)
    if route == "faber":
        P = _faber(n)
        x = eval_j(z, dps) - 744
        acc = c.zero
        for a in reversed(P.c):
            acc = acc * x + c.mpf(a.numerator) / a.denominator
        return acc
    if route == "hecke":
        z = mp_point(z, dps)
        total = c.zero
        for a in range(1, n + 1):
            if n % a:
                continue
            d = n // a
            for b in range(d):
                total += eval_j((a * z + b) / d, dps) - 744
        return total
    raise ValueError(f"unknown route {route!r}")


def eval_g_zeta(zeta, z, dps: int = DEFAULT_DPS):
    """log(y^6 |Delta(z) (j(z) - j(zeta))|), invariant in z."""
    c = ctx(dps)
    zs, _ = reduced_mp(z, dps)
    J = _j_of_zeta(zeta, dps)
    d = _delta_reduced(zs, c)
    return 6 * c.log(zs.imag) + c.log(abs(d)) + c.log(abs(eval_j_minus(zs, J, dps)))


def _j_of_zeta(zeta, dps):
    """j(zeta), snapped to the exact special values at i and rho."""
    c = ctx(dps)
    zr, _ = reduced_mp(zeta, dps)
    tol = c.mpf(10) ** (-(dps - 8))
    if abs(zr - c.mpc(0, 1)) < tol:
        return 1728
    if abs(zr - c.mpc(-0.5, c.sqrt(3) / 2)) < tol:
        return 0
    return eval_j(zr, dps)


def eval_jj0(z, dps: int = DEFAULT_DPS):
    """(1/6) log(y^6 |Delta(z)|) + 1."""
    c = ctx(dps)
    zs, _ = reduced_mp(z, dps)
    return 1 + c.log(zs.imag) + c.log(abs(_delta_reduced(zs, c))) / 6


def eval_E2hat(z, dps: int = DEFAULT_DPS):
    """Completed weight-two Eisenstein series 1 - 24 sum sigma_1(m) q^m - 3/(pi y)."""
    c = ctx(dps)
    z = mp_point(z, dps)
    zs, g = reduce(z)
    cz_d = g[1][0] * z + g[1][1]
    val = _eis_reduced(2, zs, c) - 3 / (c.pi * zs.imag)
    return val / cz_d ** 2
