"""Geometry of SL2(Z) acting on the upper half-plane.

Reduction to the standard fundamental domain, stabilizer orders, the local
disk coordinates X = (z - zeta)/(z - conj(zeta)) with r = |X|, and coset
enumeration for Poincare-type sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd

import numpy as np

from ._mp import DEFAULT_DPS, ctx


@dataclass(frozen=True)
class HPoint:
    """A point x + iy of the upper half-plane (y > 0)."""

    x: object
    y: object

    def __post_init__(self):
        if not self.y > 0:
            raise ValueError(f"HPoint needs y > 0, got y = {self.y}")

    @classmethod
    def from_complex(cls, z) -> "HPoint":
        return cls(z.real, z.imag)

    @property
    def z(self):
        if isinstance(self.x, float) and isinstance(self.y, float):
            return complex(self.x, self.y)
        c = getattr(self.x, "context", None) or getattr(self.y, "context", None) or ctx()
        return c.mpc(self.x, self.y)

    def __complex__(self):
        return complex(float(self.x), float(self.y))


def as_complex(z, dps: int | None = None):
    """Normalize an HPoint, complex or mpc into a complex number of the requested kind."""
    if isinstance(z, HPoint):
        z = z.z
    if dps is None:
        return z
    return ctx(dps).mpc(z)


RHO = complex(0.5, math.sqrt(3) / 2)  # e^{i pi / 3}


def rho(dps: int = DEFAULT_DPS):
    c = ctx(dps)
    return c.mpc(c.mpf(1) / 2, c.sqrt(3) / 2)


def mobius(g, z):
    a, b, c, d = g[0][0], g[0][1], g[1][0], g[1][1]
    return (a * z + b) / (c * z + d)


def im_gamma(g, z):
    """Im(gz) through |cz + d|^-2 Im z."""
    c, d = g[1][0], g[1][1]
    return z.imag / abs(c * z + d) ** 2


def _matmul(A, B):
    return ((A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]))


S = ((0, -1), (1, 0))
T = ((1, 1), (0, 1))
IDENTITY = ((1, 0), (0, 1))


def _tol_for(z) -> float:
    re = z.real
    if hasattr(re, "context"):
        return float(re.context.mpf(10) ** (-(re.context.dps - 5)))
    return 1e-12


def reduce(z, max_steps: int = 10_000):
    """Return (z*, g) with g in SL2(Z), g z = z* in the closed fundamental domain.

    Boundary points are sent to the half with Re z* <= 0.
    """
    if isinstance(z, HPoint):
        z = z.z
    if not z.imag > 0:
        raise ValueError("point must lie in the upper half-plane")
    tol = _tol_for(z)
    g = IDENTITY
    for _ in range(max_steps):
        n = int(math.floor(float(z.real) + 0.5))
        if n:
            z = z - n
            g = _matmul(((1, -n), (0, 1)), g)
        if abs(z) ** 2 < 1 - tol:
            z = -1 / z
            g = _matmul(S, g)
            continue
        break
    else:
        raise RuntimeError("reduction did not terminate")
    # tie-breaks on the boundary
    if z.real > 0.5 - tol:
        z = z - 1
        g = _matmul(((1, -1), (0, 1)), g)
    if abs(abs(z) ** 2 - 1) <= tol and z.real > tol:
        z = -1 / z
        g = _matmul(S, g)
    return z, g


def reduce_np(x: np.ndarray, y: np.ndarray, max_steps: int = 200):
    """Vectorized float64 reduction; returns reduced (x, y) arrays."""
    x = np.array(x, dtype=float, copy=True)
    y = np.array(y, dtype=float, copy=True)
    for _ in range(max_steps):
        x = x - np.floor(x + 0.5)
        r2 = x * x + y * y
        m = r2 < 1 - 1e-14
        if not m.any():
            break
        x = np.where(m, -x / r2, x)
        y = np.where(m, y / r2, y)
    return x, y


def stabilizer_order(zeta, bound: int = 3) -> int:
    """Order omega of the stabilizer of zeta in PSL2(Z), via an elliptic-element search.

    The point is first reduced; elements with |trace| < 2 and entries bounded by
    ``bound`` are tested.  Near-misses (fixing zeta only approximately, beyond
    the precision tolerance but within 1e-6) raise rather than guess.
    """
    z, _ = reduce(zeta)
    tol = _tol_for(z) * 100
    count = 0
    rng = range(-bound, bound + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                for d in rng:
                    if a * d - b * c != 1:
                        continue
                    if abs(a + d) >= 2 and not (b == 0 and c == 0):
                        continue
                    dist = abs(mobius(((a, b), (c, d)), z) - z)
                    if dist <= tol:
                        count += 1
                    elif dist < 1e-6:
                        raise ValueError("point is ambiguously close to an elliptic fixed point")
    return count // 2


@dataclass(frozen=True)
class EllipticFrame:
    """Local coordinates around zeta: X(z) = (z - zeta)/(z - conj zeta), r = |X|."""

    zeta: object
    omega: int

    @classmethod
    def at(cls, zeta) -> "EllipticFrame":
        zeta = as_complex(zeta)
        return cls(zeta, stabilizer_order(zeta))

    def X(self, z):
        return (z - self.zeta) / (z - self.zeta.conjugate())

    def r(self, z):
        return abs(self.X(z))

    def point(self, X):
        """Inverse map X -> z."""
        zb = self.zeta.conjugate()
        return (self.zeta - zb * X) / (1 - X)


def frame(zeta, z):
    """Return (r, X) of z relative to zeta."""
    zeta = as_complex(zeta)
    z = as_complex(z)
    X = (z - zeta) / (z - zeta.conjugate())
    return abs(X), X


def cosh_dist(z, w):
    """cosh of the hyperbolic distance: 1 + |z - w|^2 / (2 Im z Im w)."""
    return 1 + abs(z - w) ** 2 / (2 * z.imag * w.imag)


def coset_enumerate(bound: int) -> list[tuple[int, int]]:
    """Bottom rows (c, d) of coset representatives up to translation.

    Returns (0, 1) and, for 1 <= c <= bound, one residue 0 <= d < c per class
    coprime to c.  Summing over all translates d + kc recovers the coset sum.
    """
    out = [(0, 1)]
    for c in range(1, bound + 1):
        for d in range(c):
            if gcd(c, d) == 1:
                out.append((c, d))
    return out


def modular_inverse(d: int, c: int) -> int:
    return pow(d, -1, c) if c > 1 else 0


def bottom_row_completion(c: int, d: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Some matrix in SL2(Z) with bottom row (c, d)."""
    if c == 0:
        return ((1, 0), (0, 1)) if d == 1 else ((-1, 0), (0, -1))
    # a d - b c = 1
    a = pow(d, -1, c) if c > 1 else 1
    if c == 1:
        a = 1
        b = a * d - 1
    else:
        b = (a * d - 1) // c
    return ((a, b), (c, d))
