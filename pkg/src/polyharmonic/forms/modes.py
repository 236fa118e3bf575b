"""Finite Fourier-mode models of translation-invariant real-analytic functions.

A mode a_m(y) = int_0^1 f(x + iy) e(-mx) dx is measured with the trapezoid
rule at several heights and fitted against a small dictionary of permitted
y-shapes.  Non-constant modes have a single shape of the form
Phi(2 pi m y) e^{-2 pi m y}, Phi in {1, W_kappa, boldW_kappa}; the constant
mode has a per-family dictionary (powers of y and log y).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..specfun import W_kappa, boldW

# constant-mode dictionaries
CONST_SHAPES: dict[str, Callable[[float], float]] = {
    "1": lambda y: 1.0,
    "y": lambda y: y,
    "log y": lambda y: math.log(y),
    "1/y": lambda y: 1.0 / y,
}


class ShapeFitError(RuntimeError):
    """A mode did not match its permitted shape dictionary."""


def mode_shape(tag: str, m: int, y: float, kappa: int = 0) -> float:
    """Height profile of the e(mx) mode with the given shape tag."""
    w = 2 * math.pi * m * y
    if tag == "hol":
        return math.exp(-w)
    if tag == "W":
        return float(W_kappa(kappa, w, 20)) * math.exp(-w)
    if tag == "boldW":
        return float(boldW(kappa, w, 20)) * math.exp(-w)
    if tag in CONST_SHAPES:
        return CONST_SHAPES[tag](y)
    raise ValueError(f"unknown shape {tag!r}")


@dataclass
class Mode:
    m: int
    shape: str
    coefficient: complex


@dataclass
class ModeExpansion:
    """Fitted modes valid for y >= y0; ``residuals`` holds the relative fit residual per m."""

    modes: list[Mode]
    y0: float
    kappa: int = 0
    residuals: dict[int, float] = field(default_factory=dict)

    def coefficient(self, m: int, shape: str) -> complex:
        for md in self.modes:
            if md.m == m and md.shape == shape:
                return md.coefficient
        return 0j

    def mode_value(self, m: int, y: float) -> complex:
        return sum(md.coefficient * mode_shape(md.shape, m, y, self.kappa) for md in self.modes if md.m == m)

    def __call__(self, x: float, y: float) -> complex:
        total = 0j
        for md in self.modes:
            total += md.coefficient * mode_shape(md.shape, md.m, y, self.kappa) * complex(
                math.cos(2 * math.pi * md.m * x), math.sin(2 * math.pi * md.m * x))
        return total


def fourier_modes(f: Callable[[float, float], complex], y: float, M: int, npts: int = 64,
                  vectorized: bool = False) -> dict[int, complex]:
    """a_m(y) for |m| <= M by the trapezoid rule on npts equispaced x.

    With ``vectorized`` the evaluator receives the whole x array at once.
    """
    xs = np.arange(npts) / npts
    if vectorized:
        vals = np.asarray(f(xs, np.full(npts, y)), dtype=complex)
    else:
        vals = np.array([complex(f(float(x), y)) for x in xs])
    fft = np.fft.fft(vals) / npts
    return {m: complex(fft[m % npts]) for m in range(-M, M + 1)}


# family name -> (constant-mode dictionary, shape for m > 0, shape for m < 0)
FAMILIES: dict[str, tuple[tuple[str, ...], str | None, str | None]] = {
    "sesqui0": (("1", "y", "log y"), "hol", "W"),
    "weight2": (("1", "1/y"), "hol", None),
    "harmonic0": (("1", "y"), "hol", "W"),
}


def mode_extract(f: Callable[[float, float], complex], kappa: int, y0: float, M: int,
                 family: str = "sesqui0", heights: int = 4, dy: float = 0.25,
                 npts: int = 64, tol: float = 1e-6, eps: float = 1e-14,
                 vectorized: bool = False) -> ModeExpansion:
    """Measure and fit the Fourier modes of f at heights y0 + dy*j, j < heights.

    The sampling noise is eps times the largest constant-mode magnitude.
    Modes below 100 times that noise are dropped; a retained mode whose
    least-squares residual exceeds tol*|mode| + 10*noise raises ShapeFitError.
    """
    const_tags, pos_tag, neg_tag = FAMILIES[family]
    ys = [y0 + dy * j for j in range(heights)]
    samples = [fourier_modes(f, y, M, npts, vectorized) for y in ys]
    noise = eps * max(1.0, max(abs(smp[0]) for smp in samples))
    modes: list[Mode] = []
    residuals: dict[int, float] = {}
    for m in range(-M, M + 1):
        a = np.array([smp[m] for smp in samples])
        scale = float(np.max(np.abs(a)))
        if scale < 100 * noise:
            continue
        if m == 0:
            tags = const_tags
        else:
            tag = pos_tag if m > 0 else neg_tag
            if tag is None:
                raise ShapeFitError(f"mode {m} present (|a|={scale:.2e}) but no shape is permitted")
            tags = (tag,)
        A = np.array([[mode_shape(t, m, y, kappa) for t in tags] for y in ys])
        coef, *_ = np.linalg.lstsq(A.astype(complex), a, rcond=None)
        err = float(np.max(np.abs(A @ coef - a)))
        res = err / scale
        residuals[m] = res
        if err > tol * scale + 10 * noise:
            raise ShapeFitError(f"mode {m}: residual {res:.2e} against shapes {tags}")
        modes.extend(Mode(m, t, complex(cf)) for t, cf in zip(tags, coef))
    return ModeExpansion(modes, y0, kappa, residuals)
