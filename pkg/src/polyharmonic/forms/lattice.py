"""Coset sums over Gamma_infty \\ SL2(Z) in float64, and Kloosterman tables.

A coset with bottom row (c, d), c >= 1, is split as d = d0 + l c with d0 a
reduced residue mod c.  For each (c, d0) the l-sum is summed directly for
|l| <= L and completed by an Euler-Maclaurin tail of the seed's small-height
asymptotic.  Blocks with c > C are replaced by their x-average, which only
involves Ramanujan sums.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy import special as sp


@lru_cache(maxsize=None)
def totients(N: int) -> np.ndarray:
    phi = np.arange(N + 1, dtype=np.int64)
    for p in range(2, N + 1):
        if phi[p] == p:
            phi[p::p] -= phi[p::p] // p
    return phi


@lru_cache(maxsize=None)
def mobius_table(N: int) -> np.ndarray:
    mu = np.ones(N + 1, dtype=np.int64)
    is_p = np.ones(N + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, N + 1):
        if is_p[p]:
            is_p[2 * p::p] = False
            mu[p::p] *= -1
            mu[p * p::p * p] = 0
    mu[0] = 0
    return mu


@lru_cache(maxsize=None)
def ramanujan_sums(n: int, N: int) -> np.ndarray:
    """c_c(n) for c = 0..N (entry 0 unused)."""
    mu = mobius_table(N)
    out = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, n + 1):
        if n % d:
            continue
        cs = np.arange(d, N + 1, d)
        out[cs] += mu[cs // d] * d
    return out


def _modinv_vec(d: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Inverse of d mod c for coprime arrays (extended Euclid, vectorized)."""
    r0, r1 = c.copy(), d % c
    s0, s1 = np.zeros_like(d), np.ones_like(d)
    while np.any(r1 != 0):
        nz = r1 != 0
        q = np.where(nz, r0 // np.where(nz, r1, 1), 0)
        r0, r1 = np.where(nz, r1, r0), np.where(nz, r0 - q * r1, r1)
        s0, s1 = np.where(nz, s1, s0), np.where(nz, s0 - q * s1, s1)
    return s0 % c


@lru_cache(maxsize=None)
def residue_table(C: int):
    """Flattened (c, d0, d0^-1 mod c) over 1 <= c <= C, 0 <= d0 < c, gcd = 1."""
    cs, ds = [], []
    for c in range(1, C + 1):
        d = np.arange(c, dtype=np.int64)
        keep = np.gcd(d, c) == 1
        ds.append(d[keep])
        cs.append(np.full(keep.sum(), c, dtype=np.int64))
    c = np.concatenate(cs)
    d = np.concatenate(ds)
    dbar = np.where(c == 1, 0, _modinv_vec(d, np.maximum(c, 1)))
    return c, d, dbar


def kloosterman_row(m: int, k: int, C: int) -> np.ndarray:
    """S(m, k; c) for c = 0..C (entry 0 unused), real parts."""
    c, d, dbar = residue_table(C)
    phase = ((m * dbar + k * d) % c).astype(float) / c
    vals = np.cos(2 * np.pi * phase)
    return np.bincount(c, weights=vals, minlength=C + 1)


# ---------------------------------------------------------------------------
# direct coset sums

def _tail_series(y: float, s: float, beta: np.ndarray, kappa2: np.ndarray, J: int = 8) -> np.ndarray:
    """Coefficients a_j (shape (len(beta), J+1), complex) with
    (u^2 + y^2)^-s exp(i beta u/(u^2 + y^2)) (1 + kappa2 (u^2+y^2)^-2 u^0 ...) ~ u^-2s sum_j a_j u^-j.
    """
    nb = len(beta)
    P = np.zeros(J + 1)
    coef = 1.0
    for k in range(0, J // 2 + 1):
        P[2 * k] = coef * y ** (2 * k)
        coef *= -(s + k) / (k + 1)
    theta = np.zeros((nb, J + 1))
    for k in range(0, (J - 1) // 2 + 1):
        theta[:, 2 * k + 1] = beta * (-(y * y)) ** k
    # exp(i theta) as a truncated power series in v = 1/u
    E = np.zeros((nb, J + 1), dtype=complex)
    E[:, 0] = 1.0
    term = np.zeros((nb, J + 1), dtype=complex)
    term[:, 0] = 1.0
    for m in range(1, J + 1):
        term = _polymul(term, 1j * theta, J) / m
        E += term
    Bf = np.zeros((nb, J + 1))
    Bf[:, 0] = 1.0
    if J >= 4:
        Bf[:, 4] = kappa2
    return _polymul(_polymul(E, Bf, J), np.broadcast_to(P, (nb, J + 1)), J)


def _polymul(a, b, J):
    out = np.zeros((a.shape[0], J + 1), dtype=np.result_type(a, b))
    for i in range(J + 1):
        out[:, i:] += a[:, i:i + 1] * b[:, : J + 1 - i]
    return out


def _ell_tail(x0: np.ndarray, y: float, s: float, L: int, beta=None, kappa2=None, J: int = 8):
    """Approximate sum over |l| > L of f(l + x0), f(u) = u^-2s sum_j a_j u^-j.

    Euler-Maclaurin from the half-integer point with the first derivative
    correction; odd powers change sign on the negative side.
    """
    nb = len(x0)
    beta = np.zeros(nb) if beta is None else beta
    kappa2 = np.zeros(nb) if kappa2 is None else kappa2
    a = _tail_series(y, s, beta, kappa2, J)
    out = np.zeros(nb, dtype=complex)
    for sgn in (1.0, -1.0):
        U = (L + 0.5) + sgn * x0
        for jj in range(J + 1):
            p = 2 * s + jj
            T = U ** (1 - p) / (p - 1) - p * U ** (-p - 1) / 24
            out += a[:, jj] * T * (sgn ** jj)
    return out


def eisenstein_direct(x: float, y: float, s: float, C: int = 150, L: int = 100):
    """E(z, s) = y^s + sum over c >= 1 of (y/|cz + d|^2)^s, Re s > 1.

    Returns (value, tail_part) where tail_part is the analytic completion of
    the truncated c-range.
    """
    c, d0, _ = residue_table(C)
    ell = np.arange(-L, L + 1)
    total = y ** s
    cf = c.astype(float)
    x0 = x + d0 / cf
    for i0 in range(0, len(c), 4096):
        sl = slice(i0, i0 + 4096)
        w_r = x0[sl, None] + ell[None, :]
        eta = y / (cf[sl, None] ** 2 * (w_r ** 2 + y * y))
        total += np.sum(eta ** s)
        total += np.sum((y / cf[sl] ** 2) ** s * _ell_tail(x0[sl], y, s, L).real)
    tail = _c_tail_eisenstein(y, s, C)
    return total + tail, tail


def _c_tail_eisenstein(y, s, C, C2: int = 200_000):
    phi = totients(C2).astype(float)
    cs = np.arange(C + 1, C2 + 1, dtype=float)
    part = np.sum(phi[C + 1:] * cs ** (-2 * s))
    part += (6 / np.pi ** 2) * C2 ** (2 - 2 * s) / (2 * s - 2)
    avg = np.sqrt(np.pi) * sp.gamma(s - 0.5) / sp.gamma(s)
    return part * avg * y ** (1 - s)


def niebur_direct(n: int, x: float, y: float, s: float, C: int = 150, L: int = 100,
                  include_identity: bool = True):
    """F_{-n}(z, s) as the coset sum of sqrt(Im) I_{s-1/2}(2 pi n Im) e(-n Re), Re s > 1.

    Returns (value, tail_part).
    """
    nu = s - 0.5
    c, d0, dbar = residue_table(C)
    ell = np.arange(-L, L + 1)
    total = 0j
    if include_identity:
        total += np.sqrt(y) * sp.iv(nu, 2 * np.pi * n * y) * np.exp(-2j * np.pi * n * x)
    cf = c.astype(float)
    x0 = x + d0 / cf
    amp = (np.pi * n) ** nu / sp.gamma(s + 0.5)
    for i0 in range(0, len(c), 2048):
        sl = slice(i0, i0 + 2048)
        w_r = x0[sl, None] + ell[None, :]
        r2 = w_r ** 2 + y * y
        eta = y / (cf[sl, None] ** 2 * r2)
        xi = dbar[sl, None] / cf[sl, None] - w_r / (cf[sl, None] ** 2 * r2)
        total += np.sum(np.sqrt(eta) * sp.iv(nu, 2 * np.pi * n * eta) * np.exp(-2j * np.pi * n * xi))
        ph = np.exp(-2j * np.pi * n * dbar[sl] / cf[sl])
        beta = 2 * np.pi * n / cf[sl] ** 2
        kappa2 = (np.pi * n * y / cf[sl] ** 2) ** 2 / (s + 0.5)
        total += np.sum(amp * ph * (y / cf[sl] ** 2) ** s * _ell_tail(x0[sl], y, s, L, beta, kappa2))
    tail = _c_tail_niebur(n, y, s, C)
    return total + tail, tail


def _c_tail_niebur(n, y, s, C, C2: int = 200_000):
    cc = ramanujan_sums(n, C2).astype(float)
    cs = np.arange(C + 1, C2 + 1, dtype=float)
    part = np.sum(cc[C + 1:] * cs ** (-2 * s))
    nu = s - 0.5
    avg = (np.pi * n) ** nu / sp.gamma(s + 0.5) * np.sqrt(np.pi) * sp.gamma(s - 0.5) / sp.gamma(s)
    return part * avg * y ** (1 - s)
