"""Vectorized float64 evaluators used by the 2-d quadratures.

Inputs are arrays of points already in (or near) the fundamental domain, where
|q| <= e^{-pi sqrt 3} and short q-series converge to machine precision.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..hyperbolic import reduce_np
from ..qseries import eisenstein_qexp, j1_qexp

NTERMS = 40


@lru_cache(maxsize=None)
def _j1_coeffs(N: int = NTERMS) -> np.ndarray:
    s = j1_qexp(N)
    return np.array([float(s[k]) for k in range(1, N + 1)])


@lru_cache(maxsize=None)
def _eis_coeffs(k: int, N: int = NTERMS) -> np.ndarray:
    s = eisenstein_qexp(k, N)
    return np.array([float(s[m]) for m in range(0, N + 1)])


def _q(x, y):
    return np.exp(2j * np.pi * (np.asarray(x) + 1j * np.asarray(y)))


def _poly(coeffs, q, start):
    """sum_k coeffs[k] q^(k+start) by Horner."""
    acc = np.zeros_like(q)
    for c in coeffs[::-1]:
        acc = acc * q + c
    return acc * q ** start


def j1(x, y):
    """j - 744 at reduced points."""
    q = _q(x, y)
    return 1 / q + _poly(_j1_coeffs(), q, 1)


def j(x, y):
    return j1(x, y) + 744


def log_abs_delta(x, y, nprod: int = 60):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    q = _q(x, y)
    acc = -2 * np.pi * y
    qn = np.ones_like(q)
    for _ in range(nprod):
        qn = qn * q
        acc = acc + 24 * np.log(np.abs(1 - qn))
        if np.max(np.abs(qn)) < 1e-18:
            break
    return acc


def log_abs_eis(k: int, x, y):
    return np.log(np.abs(_poly(_eis_coeffs(k), _q(x, y), 0)))


def log_abs_j_minus(x, y, J: complex):
    """log|j(z) - J| with cancellation-free forms for J = 1728 and J = 0."""
    if J == 1728:
        return 2 * log_abs_eis(6, x, y) - log_abs_delta(x, y)
    if J == 0:
        return 3 * log_abs_eis(4, x, y) - log_abs_delta(x, y)
    return np.log(np.abs(j(x, y) - J))


def g_zeta(x, y, J: complex):
    """log(y^6 |Delta(z) (j(z) - J)|) with J = j(zeta); expects reduced points."""
    return 6 * np.log(y) + log_abs_delta(x, y) + log_abs_j_minus(x, y, J)


def jj0(x, y):
    return 1 + np.log(y) + log_abs_delta(x, y) / 6


def reduced(x, y):
    return reduce_np(x, y)
