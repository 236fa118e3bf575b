"""Finite-difference xi_kappa and Delta_kappa, and the operator-diagram checks.

xi_kappa f = 2 i y^kappa conj(d f / d zbar),
Delta_kappa f = -y^2 (f_xx + f_yy) + i kappa y (f_x + i f_y).

Evaluators take an mpmath complex point and return a number.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

from ._mp import DEFAULT_DPS, ctx
from .reports import CheckReport

Evaluator = Callable[[object], object]

_D1 = {2: {1: 1 / 2, -1: -1 / 2}, 4: {2: -1 / 12, 1: 8 / 12, -1: -8 / 12, -2: 1 / 12}}
_D2 = {2: {1: 1, 0: -2, -1: 1}, 4: {2: -1 / 12, 1: 16 / 12, 0: -30 / 12, -1: 16 / 12, -2: -1 / 12}}


@dataclass(frozen=True)
class Stencil:
    h: float = 1e-4
    order: int = 4
    dps: int = DEFAULT_DPS

    def __post_init__(self):
        if self.order not in (2, 4):
            raise ValueError("stencil order must be 2 or 4")
        if not 0 < self.h < 0.5:
            raise ValueError("stencil step must lie in (0, 0.5)")

    def halved(self) -> "Stencil":
        return Stencil(self.h / 2, self.order, self.dps)

    def error_bound(self, deriv: int) -> float:
        """Truncation-versus-roundoff scale h^order + 10^-p / h^deriv."""
        return self.h ** self.order + 10.0 ** (-self.dps) / self.h ** deriv


def _partials(f: Evaluator, z, st: Stencil, second: bool):
    c = ctx(st.dps)
    z = c.mpc(z)
    h = c.mpf(st.h)
    cache = {}

    def ev(a, b):
        key = (a, b)
        if key not in cache:
            cache[key] = f(z + a * h + 1j * b * h)
        return cache[key]

    fx = c.fsum(w * ev(k, 0) for k, w in _D1[st.order].items()) / h
    fy = c.fsum(w * ev(0, k) for k, w in _D1[st.order].items()) / h
    if not second:
        return fx, fy, None, None
    fxx = c.fsum(w * ev(k, 0) for k, w in _D2[st.order].items()) / h ** 2
    fyy = c.fsum(w * ev(0, k) for k, w in _D2[st.order].items()) / h ** 2
    return fx, fy, fxx, fyy


def xi_op(f: Evaluator, kappa: int, z, stencil: Stencil = Stencil()):
    c = ctx(stencil.dps)
    z = c.mpc(z)
    fx, fy, _, _ = _partials(f, z, stencil, False)
    dzbar = (fx + 1j * fy) / 2
    return 2j * z.imag ** kappa * c.conj(dzbar)


def laplacian_op(f: Evaluator, kappa: int, z, stencil: Stencil = Stencil(1e-3)):
    c = ctx(stencil.dps)
    z = c.mpc(z)
    fx, fy, fxx, fyy = _partials(f, z, stencil, True)
    y = z.imag
    return -y ** 2 * (fxx + fyy) + 1j * kappa * y * (fx + 1j * fy)


def with_error(op, f: Evaluator, kappa: int, z, stencil: Stencil):
    """(value at h/2, |value(h) - value(h/2)|) as a practical error estimate."""
    a = op(f, kappa, z, stencil)
    b = op(f, kappa, z, stencil.halved())
    return b, abs(complex(a - b))


def stencil_order(f: Evaluator, kappa: int, z, target, h: float, order: int = 2,
                  dps: int = DEFAULT_DPS, op=laplacian_op) -> float:
    """Observed log2 of the defect ratio between steps h and h/2."""
    d1 = abs(complex(op(f, kappa, z, Stencil(h, order, dps)) - target))
    d2 = abs(complex(op(f, kappa, z, Stencil(h / 2, order, dps)) - target))
    return math.log2(d1 / d2)


# ---------------------------------------------------------------------------
# the evaluable edges of the operator diagram

def _edge_report(name, inputs, computed, reference, tol, t0, relative=False, **extra):
    if relative:
        defect = abs(complex(computed) - complex(reference)) / abs(complex(reference))
        return CheckReport(name=name, inputs=inputs, computed=defect, reference=0.0, tolerance=tol,
                           runtime_s=time.perf_counter() - t0,
                           breakdown={"value": complex(computed), "target": complex(reference), **extra})
    return CheckReport(name=name, inputs=inputs, computed=complex(computed), reference=complex(reference),
                       tolerance=tol, runtime_s=time.perf_counter() - t0, breakdown=extra)


def _edges():
    from .forms import core
    from .forms.niebur import eval_jjn
    from .specfun import W_kappa, boldW

    def E2hat(z):
        return core.eval_E2hat(z, DEFAULT_DPS)

    def jj0(z):
        return core.eval_jj0(z, DEFAULT_DPS)

    def g2i(z):
        return core.eval_g_zeta(2j, z, DEFAULT_DPS)

    def Wq(z):  # W_0(2 pi m y) q^m, m = -1
        c = ctx(DEFAULT_DPS)
        return W_kappa(0, -2 * c.pi * z.imag) * c.exp(-2j * c.pi * z)

    def bWq(z):  # boldW_0(2 pi m y) q^m, m = -1
        c = ctx(DEFAULT_DPS)
        return boldW(0, -2 * c.pi * z.imag) * c.exp(-2j * c.pi * z)

    def q3(z):
        c = ctx(DEFAULT_DPS)
        return c.exp(6j * c.pi * z)

    def jj1(z):
        return eval_jjn(1, z, 50)

    return locals()


def edge_check(name: str, z=complex(0.2, 1.3)) -> CheckReport:
    """One named edge of the operator diagram at the point z."""
    t0 = time.perf_counter()
    e = _edges()
    c = ctx(DEFAULT_DPS)
    z = c.mpc(z)
    inp = {"z": str(complex(z)), "edge": name}
    if name == "xi_E2hat":
        v = xi_op(e["E2hat"], 2, z)
        return _edge_report(name, inp, v, 3 / math.pi, 1e-6, t0)
    if name == "diagram_E2hat":
        v = xi_op(lambda w: 4 * c.pi * e["E2hat"](w), 2, z)
        return _edge_report(name, inp, v, 12.0, 1e-6 * 4 * math.pi, t0)
    if name == "xi_W_mode":
        # xi_0(W_0(2 pi m y) q^m) = -(-4 pi m) q^{-m}, m = -1
        v = xi_op(e["Wq"], 0, z)
        ref = -(4 * c.pi) * c.exp(2j * c.pi * z)
        return _edge_report(name, inp, v, ref, 1e-5, t0, relative=True)
    if name == "xi_boldW_mode":
        # xi_0(boldW_0(2 pi m y) q^m) = (2 pi m) W_2(-2 pi m y) q^{-m}, m = -1
        from .specfun import W_kappa
        v = xi_op(e["bWq"], 0, z, Stencil(1e-3))
        ref = -2 * c.pi * W_kappa(2, 2 * c.pi * z.imag) * c.exp(2j * c.pi * z)
        return _edge_report(name, inp, v, ref, 1e-5, t0, relative=True)
    if name == "laplace_jj0":
        return _edge_report(name, inp, laplacian_op(e["jj0"], 0, z), 1.0, 1e-5, t0)
    if name == "laplace_g_zeta":
        z = c.mpc(0.2, 1.4)
        inp["z"] = str(complex(z))
        inp["zeta"] = "2i"
        return _edge_report(name, inp, laplacian_op(e["g2i"], 0, z), 6.0, 1e-4, t0)
    if name == "sesquiharmonic_jj0":
        inner = lambda w: laplacian_op(e["jj0"], 0, w, Stencil(1e-2, 4, DEFAULT_DPS))
        v = laplacian_op(inner, 0, z, Stencil(1e-2, 4, DEFAULT_DPS))
        return _edge_report(name, inp, v, 0.0, 1e-5, t0)
    if name == "xi_holomorphic":
        return _edge_report(name, inp, xi_op(e["q3"], 0, z), 0.0, 1e-8, t0)
    if name == "laplace_composition":
        lap = laplacian_op(e["E2hat"], 2, z)
        comp = xi_op(lambda w: xi_op(e["E2hat"], 2, w), 0, z, Stencil(1e-3))
        return _edge_report(name, inp, lap + comp, 0.0, 1e-5, t0,
                            laplacian=complex(lap), xi_xi=complex(comp))
    if name == "laplace_jj1":
        from .forms.core import eval_jn
        st = Stencil(1e-2, 4, 50)
        v = laplacian_op(e["jj1"], 0, z, st)
        return _edge_report(name, inp, v, eval_jn(1, z), 1e-3, t0, relative=True)
    raise KeyError(f"unknown edge {name!r}")


EDGES = ("xi_E2hat", "diagram_E2hat", "xi_W_mode", "xi_boldW_mode", "laplace_jj0", "laplace_g_zeta",
         "sesquiharmonic_jj0", "xi_holomorphic", "laplace_composition", "laplace_jj1")


def xi_seq_check(chain_spec=EDGES, z=complex(0.2, 1.3)) -> CheckReport:
    """Run the listed diagram edges; one report with a per-edge breakdown."""
    t0 = time.perf_counter()
    reps = [edge_check(n, z) for n in chain_spec]
    return CheckReport(
        name="xi_seq_check", inputs={"edges": list(chain_spec), "z": str(z)},
        computed=float(sum(not r.passed for r in reps)), reference=0.0, tolerance=0.0,
        runtime_s=time.perf_counter() - t0,
        breakdown={r.name: {"status": r.status, "defect": r.max_defect} for r in reps})


def eigen_check(kind: str, s: float, z=complex(0.2, 1.3), tol: float = 1e-5) -> CheckReport:
    """Delta_0 f = s(1-s) f for f = E(., s), G_s(., 2i) or F_{-1}(., s); relative defect."""
    from .forms.eisenstein import eval_E
    from .forms.green import eval_Gs
    from .forms.niebur import eval_F

    t0 = time.perf_counter()
    fns = {
        "E": lambda w: eval_E(w, s, DEFAULT_DPS),
        "G": lambda w: eval_Gs(w, 2j, s, DEFAULT_DPS, route="fourier"),
        "F": lambda w: eval_F(1, w, s, DEFAULT_DPS),
    }
    f = fns[kind]
    c = ctx(DEFAULT_DPS)
    z = c.mpc(z)
    lap = laplacian_op(f, 0, z, Stencil(1e-2, 4, DEFAULT_DPS))
    target = s * (1 - s) * f(z)
    rep = _edge_report("eigen_" + kind, {"z": str(complex(z)), "s": s}, lap, target, tol, t0, relative=True)
    return rep


def stencil_convergence_check(h: float = 0.1, order: int = 2, z=complex(0.2, 1.3)) -> CheckReport:
    """Observed order of Delta_0 jj_0 = 1 between h and h/2 lies within order +- 2."""
    from .forms.core import eval_jj0

    t0 = time.perf_counter()
    p = stencil_order(lambda w: eval_jj0(w, DEFAULT_DPS), 0, z, 1.0, h, order)
    return CheckReport(name="stencil_convergence", inputs={"h": h, "order": order, "z": str(z)},
                       computed=p, reference=float(order), tolerance=2.0,
                       runtime_s=time.perf_counter() - t0)
