"""Niebur Poincare series F_{-n}(z, s) through their Fourier expansion.

With nu = s - 1/2 and m = -n,

    F_m(z, s) = phi_m(z) + b_0(s) y^(1-s) + sum_{k != 0} 2 sqrt(y) K_nu(2 pi |k| y) B_k(s) e(kx),

    b_0(s) = 2 sqrt(pi) (pi n)^nu sigma_{1-2s}(n) / ((2s - 1) Gamma(s) zeta(2s)),
    B_k(s) = sum_{c >= 1} S(m, k; c)/c * J_{2s-1}(4 pi sqrt(n|k|)/c)  (k < 0)
                                          I_{2s-1}(4 pi sqrt(n|k|)/c)  (k > 0).

The seed phi_m is evaluated in mpmath (it carries the exponentially large
q^-n part); the Kloosterman-Bessel remainder is evaluated in float64 with
cached Kloosterman rows and per-s coefficient sums.  Every term is itself an
eigenfunction of the Laplacian, so truncating the c-sum at C preserves the
eigenvalue equation and only perturbs the mode coefficients.
"""

from __future__ import annotations

import math
import threading
from functools import lru_cache

import numpy as np
from scipy import special as sp

from .._mp import DEFAULT_DPS, ctx
from ..qseries import sigma
from ..specfun import dI_dorder_at_half
from .core import reduced_mp
from .lattice import kloosterman_row

DEFAULT_C = 2500
_LOCK = threading.Lock()


def _sigma_real(a: float, n: int) -> float:
    return sum(d ** a for d in range(1, n + 1) if n % d == 0)


class NieburSeries:
    """Cached expansion data for F_{-n}; instances are shared through ``niebur_series``."""

    def __init__(self, n: int, C: int = DEFAULT_C):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = n
        self.C = C
        self._rows: dict[int, np.ndarray] = {}
        self._B: dict[tuple[float, int], float] = {}
        self.cs = np.arange(1, C + 1, dtype=float)

    # Kloosterman rows S(-n, k; c), c = 1..C
    def row(self, k: int) -> np.ndarray:
        r = self._rows.get(k)
        if r is None:
            r = kloosterman_row(-self.n, k, self.C)[1:]
            with _LOCK:
                self._rows[k] = r
        return r

    def B(self, k: int, s: float) -> float:
        key = (float(s), k)
        v = self._B.get(key)
        if v is None:
            x = 4 * np.pi * np.sqrt(self.n * abs(k)) / self.cs
            order = 2 * s - 1
            bes = sp.jv(order, x) if k < 0 else sp.iv(order, x)
            v = float(np.sum(self.row(k) / self.cs * bes))
            with _LOCK:
                self._B[key] = v
        return v

    def b0(self, s: float) -> float:
        n = self.n
        nu = s - 0.5
        return (2 * math.sqrt(math.pi) * (math.pi * n) ** nu * _sigma_real(1 - 2 * s, n)
                / ((2 * s - 1) * math.gamma(s) * sp.zeta(2 * s)))

    def kmax(self, y: float, tol: float = 1e-18) -> int:
        """Largest |k| whose mode can exceed tol at height y (I-side growth bound)."""
        k = 1
        while True:
            grow = 4 * np.pi * np.sqrt(self.n * k) - 2 * np.pi * k * y
            if grow < math.log(tol) and k > self.n + 2:
                return k
            k += 1

    def remainder(self, x: float, y: float, s: float) -> complex:
        """Everything except the seed: constant mode and Kloosterman-Bessel modes (float64)."""
        nu = s - 0.5
        total = self.b0(s) * y ** (1 - s)
        K = self.kmax(y)
        for k in range(1, K + 1):
            kb = 2 * math.sqrt(y) * sp.kv(nu, 2 * math.pi * k * y)
            if kb == 0.0:
                break
            ph = complex(math.cos(2 * math.pi * k * x), math.sin(2 * math.pi * k * x))
            total += kb * (self.B(k, s) * ph + self.B(-k, s) * ph.conjugate())
        return total

    def mode(self, k: int, y: float, s: float) -> complex:
        """Coefficient of e(kx) in the remainder (k = 0 gives the constant mode)."""
        if k == 0:
            return self.b0(s) * y ** (1 - s)
        return 2 * math.sqrt(y) * sp.kv(s - 0.5, 2 * math.pi * abs(k) * y) * self.B(k, s)

    def d_remainder_ds(self, x: float, y: float, s0: float = 1.0, h: float = 1e-3) -> complex:
        """d/ds of the remainder by central differences with one Richardson step."""
        def cd(hh):
            return (self.remainder(x, y, s0 + hh) - self.remainder(x, y, s0 - hh)) / (2 * hh)
        d1, d2 = cd(h), cd(h / 2)
        return (4 * d2 - d1) / 3


@lru_cache(maxsize=None)
def niebur_series(n: int, C: int = DEFAULT_C) -> NieburSeries:
    return NieburSeries(n, C)


def seed(n: int, z, s, dps: int = DEFAULT_DPS):
    """phi_{-n,s}(z) = sqrt(y) I_{s-1/2}(2 pi n y) e(-n x)."""
    c = ctx(dps)
    return c.sqrt(z.imag) * c.besseli(c.mpf(s) - c.mpf(1) / 2, 2 * c.pi * n * z.imag) * c.exp(-2j * c.pi * n * z.real)


def eval_F(n: int, z, s, dps: int = DEFAULT_DPS, C: int = DEFAULT_C):
    """F_{-n}(z, s) via the Fourier expansion, at the reduced point."""
    c = ctx(dps)
    zs, _ = reduced_mp(z, dps)
    ser = niebur_series(n, C)
    rem = ser.remainder(float(zs.real), float(zs.imag), float(s))
    return seed(n, zs, s, dps) + c.mpc(rem)


def seed_ds_at_1(n: int, z, dps: int = DEFAULT_DPS):
    """d/ds phi_{-n,s}(z) at s = 1 through the closed form of d/d(order) I at order 1/2."""
    c = ctx(dps)
    y = z.imag
    return c.sqrt(y) * dI_dorder_at_half(2 * c.pi * n * y, dps) * c.exp(-2j * c.pi * n * z.real)


def eval_dF_ds(n: int, z, dps: int = DEFAULT_DPS, C: int = DEFAULT_C):
    """d/ds F_{-n}(z, s) at s = 1."""
    c = ctx(dps)
    zs, _ = reduced_mp(z, dps)
    ser = niebur_series(n, C)
    rem = ser.d_remainder_ds(float(zs.real), float(zs.imag))
    return seed_ds_at_1(n, zs, dps) + c.mpc(rem)


def C_n_closed_form(n: int) -> int:
    return 24 * sigma(1, n)


def eval_jjn(n: int, z, dps: int = DEFAULT_DPS, C: int = DEFAULT_C, Cn=None):
    """-2 pi sqrt(n) dF_{-n}/ds(z, 1) + (C_n/12) calE(z), up to an additive constant.

    ``Cn`` defaults to 24 sigma_1(n), the value measured by the constancy check.
    """
    from .eisenstein import eval_calE
    from .core import eval_jj0

    if n == 0:
        return eval_jj0(z, dps)
    c = ctx(dps)
    Cn = C_n_closed_form(n) if Cn is None else Cn
    return -2 * c.pi * c.sqrt(n) * eval_dF_ds(n, z, dps, C) + c.mpf(Cn) / 12 * eval_calE(z, dps)
