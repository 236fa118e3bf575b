"""Real-analytic Eisenstein series E(z, s) and its Kronecker-limit companion.

The Fourier route

    E(z,s) = y^s + xi(2s-1)/xi(2s) y^(1-s)
             + 4/xi(2s) sqrt(y) sum_{k>=1} k^(s-1/2) sigma_{1-2s}(k) K_{s-1/2}(2 pi k y) cos(2 pi k x),

with xi(s) = pi^(-s/2) Gamma(s/2) zeta(s), continues E to all s != 1 (pole at
s = 1, residue 3/pi).  The coset-sum route lives in ``lattice``.
"""

from __future__ import annotations

from .._mp import DEFAULT_DPS, ctx
from .core import reduced_mp
from .lattice import eisenstein_direct


def completed_zeta(s, c):
    return c.pi ** (-s / 2) * c.gamma(s / 2) * c.zeta(s)


def _sigma_pow(a, k: int, c):
    return c.fsum(c.mpf(d) ** a for d in range(1, k + 1) if k % d == 0)


def eval_E(z, s, dps: int = DEFAULT_DPS, route: str = "fourier"):
    """E(z, s); route "fourier" (all s != 1) or "direct" (float64 coset sum, Re s > 1)."""
    c = ctx(dps)
    zs, _ = reduced_mp(z, dps)
    if route == "direct":
        return c.mpf(eisenstein_direct(float(zs.real), float(zs.imag), float(s))[0])
    s = c.mpf(s) if not isinstance(s, complex) else c.mpc(s)
    x, y = zs.real, zs.imag
    xi2s = completed_zeta(2 * s, c)
    total = y ** s + completed_zeta(2 * s - 1, c) / xi2s * y ** (1 - s)
    pref = 4 / xi2s * c.sqrt(y)
    nu = s - c.mpf(1) / 2
    k = 0
    target = c.eps * abs(total)
    while True:
        k += 1
        term = pref * c.mpf(k) ** nu * _sigma_pow(1 - 2 * s, k, c) * c.besselk(nu, 2 * c.pi * k * y) * c.cos(2 * c.pi * k * x)
        total += term
        if c.exp(-2 * c.pi * k * y) < target * 1e-3:
            break
    return total


def calE_constant(dps: int = DEFAULT_DPS):
    """-24 gamma + 24 log 2 + 144 zeta'(2)/pi^2."""
    c = ctx(dps)
    return -24 * c.euler + 24 * c.log(2) + 144 * c.zeta(2, derivative=1) / c.pi ** 2


def eval_calE(z, dps: int = DEFAULT_DPS, h: float = 1e-2):
    """lim_{s->1} (4 pi E(z,s) - 12/(s-1)) + constant, by symmetric averaging in s.

    The pole's odd part cancels in E(1+h) + E(1-h); the even O(h^2) error is
    removed by one Richardson step between h and h/2.
    """
    c = ctx(dps + 10)
    h = c.mpf(h)

    def sym(hh):
        return 2 * c.pi * (eval_E(z, 1 + hh, dps + 10) + eval_E(z, 1 - hh, dps + 10))

    a1, a2 = sym(h), sym(h / 2)
    lim = (4 * a2 - a1) / 3
    # second Richardson step for the h^4 term
    a3 = sym(h / 4)
    lim2 = (4 * a3 - a2) / 3
    lim = (16 * lim2 - lim) / 15
    return ctx(dps).mpf(lim + calE_constant(dps + 10))


def eval_calE_kronecker(z, dps: int = DEFAULT_DPS):
    """Independent closed form -2 log(y^6 |Delta(z)|) (Kronecker limit formula)."""
    from .core import eval_jj0
    return 12 - 12 * eval_jj0(z, dps)
