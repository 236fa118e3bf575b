"""Verification routines for the special functions and the point evaluators.

Each routine returns a CheckReport.  Exact q-series identities live in
``qseries``; operator identities in ``xi``; integrals in ``quadrature``.
"""

from __future__ import annotations

import math
import time

from ._mp import DEFAULT_DPS, ctx
from .reports import CheckReport


def _elapsed(t0: float) -> float:
    return time.perf_counter() - t0


# ---------------------------------------------------------------------------
# special functions

W_BRANCH_POINTS = (0.7, -0.7, 1.5, -1.5, 3.0, -3.0)


def W_branches_check(points=W_BRANCH_POINTS, kappas=(0, 2), tol: float = 1e-10,
                           dps: int = DEFAULT_DPS) -> CheckReport:
    """Re E_kappa route against the incomplete-gamma route of W_kappa (relative)."""
    from .specfun import W_kappa, W_kappa_gamma

    t0 = time.perf_counter()
    defects, rows = [], {}
    for k in kappas:
        for w in points:
            a = W_kappa(k, w, dps)
            b = W_kappa_gamma(k, w, dps)
            d = float(abs(a - b) / abs(a))
            defects.append(d)
            rows[f"kappa={k},w={w}"] = {"re_route": float(a), "gamma_route": complex(b), "rel": d}
    return CheckReport(name="W_branches", inputs={"points": list(points), "kappas": list(kappas)},
                       computed=defects, reference=0.0, tolerance=tol, runtime_s=_elapsed(t0),
                       precision_digits=dps, breakdown=rows)


def W_asymptotic_check(absw: float = 20.0, kappas=(0, 2), tol: float = 0.02,
                       dps: int = DEFAULT_DPS, first_order: bool = False) -> CheckReport:
    """W_kappa(w) (-2w)^kappa e^(-2w) against 1 at w = +-absw.

    With ``first_order`` the ratio is divided by 1 + kappa/(2w), the next term
    of the incomplete-gamma expansion, and the report is informational.
    """
    from .specfun import W_kappa

    t0 = time.perf_counter()
    c = ctx(dps)
    ratios, rows = [], {}
    for k in kappas:
        for w in (absw, -absw):
            wm = c.mpf(w)
            r = W_kappa(k, wm, dps) * (-2 * wm) ** k * c.exp(-2 * wm)
            if first_order:
                r /= 1 + c.mpf(k) / (2 * wm)
            ratios.append(float(r))
            rows[f"kappa={k},w={w}"] = float(r)
    name = "W_asymptotic_first_order" if first_order else "W_asymptotic"
    rep = CheckReport(name=name, inputs={"|w|": absw, "kappas": list(kappas)}, computed=ratios,
                      reference=1.0, tolerance=tol, runtime_s=_elapsed(t0), precision_digits=dps,
                      breakdown=rows)
    if first_order:
        rep.mark_info("ratio divided by 1 + kappa/(2w)")
    return rep


def boldW_asymptotic_check(absw: float = 50.0, tol: float = 0.05, dps: int = DEFAULT_DPS) -> CheckReport:
    """w boldW_0(w) / (-1/4) against 1 at w = +-absw."""
    from .specfun import boldW_err

    t0 = time.perf_counter()
    ratios, rows = [], {}
    for w in (-absw, absw):
        v, err = boldW_err(0, w, dps)
        r = float(w * v / (-0.25))
        ratios.append(r)
        rows[f"w={w}"] = {"ratio": r, "quadrature_error": float(err)}
    return CheckReport(name="boldW_asymptotic", inputs={"|w|": absw, "kappa": 0}, computed=ratios,
                       reference=1.0, tolerance=tol, runtime_s=_elapsed(t0), precision_digits=dps,
                       breakdown=rows)


BETA_PAIRS = tuple((a, b) for a in (-1, 1) for b in (-2, -1, 0, 1, 2))


def beta_t0_independence_check(w: float = 0.4, t0s=(0.25, 0.75), pairs=BETA_PAIRS,
                               log_rule: str = "stated", tol: float = 1e-12,
                               dps: int = DEFAULT_DPS) -> CheckReport:
    """beta_t0(w; a, b) at two cut points t0, plus agreement with the series form."""
    from .specfun import beta_series, beta_t0

    t_start = time.perf_counter()
    defects, rows = [], {}
    for a, b in pairs:
        v1 = beta_t0(w, a, b, t0s[0], dps, log_rule)
        v2 = beta_t0(w, a, b, t0s[1], dps, log_rule)
        ser = beta_series(w, a, b, dps, log_rule)
        d = float(max(abs(v1 - v2), abs(v1 - ser)))
        defects.append(d)
        rows[f"a={a},b={b}"] = {"t0_a": float(v1), "t0_b": float(v2), "series": float(ser), "defect": d}
    name = "beta_t0_independence" if log_rule == "stated" else "beta_t0_independence_binomial_log"
    rep = CheckReport(name=name, inputs={"w": w, "t0": list(t0s), "pairs": [list(p) for p in pairs],
                                         "log_rule": log_rule},
                      computed=defects, reference=0.0, tolerance=tol, runtime_s=_elapsed(t_start),
                      precision_digits=dps, breakdown=rows)
    bad = [k for k, v in rows.items() if v["defect"] > tol]
    if bad:
        rep.note = "t0-dependent for " + ", ".join(bad)
    if log_rule != "stated":
        rep.mark_info("log(t0) correction applied whenever binom(a-1, -b) != 0")
    return rep


def beta_asymptotic_check(x: float = 1e-4, tol: float = 0.01, dps: int = DEFAULT_DPS) -> CheckReport:
    """beta(w; a, b) against its leading term as w -> 1 (x = 1 - w)."""
    from .specfun import beta_series_x

    t0 = time.perf_counter()
    c = ctx(dps)
    xm = c.mpf(x)
    ratios, rows = [], {}
    for a, b in ((1, 1), (-1, 1), (1, 2), (-1, 2), (1, -1), (1, -2), (1, 0)):
        lead = -xm ** b / b if b else -c.log(xm)
        r = float(beta_series_x(xm, a, b, dps) / lead)
        ratios.append(r)
        rows[f"a={a},b={b}"] = r
    return CheckReport(name="beta_asymptotic", inputs={"1-w": x}, computed=ratios, reference=1.0,
                       tolerance=tol, runtime_s=_elapsed(t0), precision_digits=dps, breakdown=rows)


def boldbeta_asymptotic_check(r: float = 1e-3, m: int = 2, kappa: int = 0, tol: float = 0.01,
                              dps: int = DEFAULT_DPS) -> CheckReport:
    """boldbeta_{kappa-1,-m}(r) / (-r^2/(m+1)) against 1 as stated."""
    from .specfun import boldbeta

    t0 = time.perf_counter()
    c = ctx(dps)
    rm = c.mpf(r)
    v = boldbeta(kappa - 1, -m, rm, dps)
    ratio = float(v / (-rm ** 2 / (m + 1)))
    rep = CheckReport(name="boldbeta_asymptotic", inputs={"r": r, "m": m, "kappa": kappa},
                      computed=ratio, reference=1.0, tolerance=tol, runtime_s=_elapsed(t0),
                      precision_digits=dps, breakdown={"boldbeta": float(v), "ratio": ratio})
    if not rep.passed and abs(ratio + 1) < tol:
        rep.note = "ratio is -1: the leading term has the opposite sign"
    return rep


def boldbeta_corrected_sign_check(r: float = 1e-3, ms=(-3, -2, 0, 1, 2, 3), kappas=(0, 2),
                                  tol: float = 0.01, dps: int = DEFAULT_DPS) -> CheckReport:
    """Informational: boldbeta_{kappa-1,-m}(r) against +r^2/(m+1) over several m."""
    from .specfun import boldbeta

    t0 = time.perf_counter()
    c = ctx(dps)
    rm = c.mpf(r)
    ratios, rows = [], {}
    for k in kappas:
        for m in ms:
            q = float(boldbeta(k - 1, -m, rm, dps) / (rm ** 2 / (m + 1)))
            ratios.append(q)
            rows[f"kappa={k},m={m}"] = q
    rep = CheckReport(name="boldbeta_asymptotic_corrected_sign", inputs={"r": r, "m": list(ms),
                                                                          "kappa": list(kappas)},
                      computed=ratios, reference=1.0, tolerance=tol, runtime_s=_elapsed(t0),
                      precision_digits=dps, breakdown=rows)
    rep.mark_info("leading term taken as +r^2/(m+1)")
    return rep


def beta_derivative_relations_check(radii=(0.3, 0.6), h: float = 1e-5, tol: float = 1e-6, dps: int = DEFAULT_DPS) -> CheckReport:
    """Radial derivative relations with C = -2 at (kappa, m) = (2, -1), by central differences.

    B_{2,2}(r;-1) = beta(1-r^2; -1, 1), B_{2,3}(r;-1) = boldbeta_{1,1}(r) and
    B_{2,4}(r;-1) = B24(r) have derivatives -2 r (1-r^2)^-2 times 1,
    beta(1-r^2; 1, 0) and boldbeta_{-1,0}(r) respectively.
    """
    from .specfun import B24, beta_series, boldbeta

    t0 = time.perf_counter()
    c = ctx(dps)
    hm = c.mpf(h)

    def deriv(f, r):
        return (f(r + hm) - f(r - hm)) / (2 * hm)

    fams = {
        "B22": (lambda r: beta_series(1 - r * r, -1, 1, dps), lambda r: c.one),
        "boldbeta11": (lambda r: boldbeta(1, 1, r, dps), lambda r: beta_series(1 - r * r, 1, 0, dps)),
        "B24": (lambda r: B24(r, dps), lambda r: boldbeta(-1, 0, r, dps)),
    }
    defects, rows = [], {}
    for name, (f, lower) in fams.items():
        for r in radii:
            rm = c.mpf(r)
            lhs = deriv(f, rm)
            rhs = -2 * rm * (1 - rm * rm) ** -2 * lower(rm)
            d = float(abs(lhs - rhs) / abs(rhs))
            defects.append(d)
            rows[f"{name},r={r}"] = {"derivative": float(lhs), "relation": float(rhs), "rel": d}
    return CheckReport(name="beta_derivative_relations", inputs={"r": list(radii), "h": h, "C": -2},
                       computed=defects, reference=0.0, tolerance=tol, runtime_s=_elapsed(t0),
                       precision_digits=dps, breakdown=rows)


def B_limit_check(r: float = 0.01, tol: float = 0.05, dps: int = DEFAULT_DPS) -> CheckReport:
    """|B(r)| small at r = 0.01, with the Legendre-Q route alongside."""
    from .specfun import B_of_r_err, B_of_r_from_Q

    t0 = time.perf_counter()
    v, err = B_of_r_err(r, dps)
    alt = B_of_r_from_Q(r, dps)
    return CheckReport(name="B_limit", inputs={"r": r}, computed=float(v), reference=0.0, tolerance=tol,
                       runtime_s=_elapsed(t0), precision_digits=dps,
                       breakdown={"quadrature_error": float(err), "from_Q": float(alt)})


def specfun_sweeps(dps: int = 20) -> dict[str, list[dict]]:
    """Data series for the W, boldW and B(r) asymptotics."""
    from .specfun import B_of_r, W_kappa, boldW

    c = ctx(dps)
    out: dict[str, list[dict]] = {"W_asymptotic": [], "boldW_asymptotic": [], "B_limit": []}
    for k in (0, 2):
        for a in (2, 5, 10, 20, 50, 100, 200):
            for w in (a, -a):
                wm = c.mpf(w)
                r = W_kappa(k, wm, dps) * (-2 * wm) ** k * c.exp(-2 * wm)
                out["W_asymptotic"].append({"kappa": k, "w": w, "ratio": float(r)})
    for a in (5, 10, 20, 50, 100):
        for w in (a, -a):
            out["boldW_asymptotic"].append({"kappa": 0, "w": w, "ratio": float(w * boldW(0, w, dps) / -0.25)})
    for r in (0.3, 0.1, 0.03, 0.01, 0.003, 0.001):
        out["B_limit"].append({"r": r, "B": float(B_of_r(r, dps))})
    return out


# ---------------------------------------------------------------------------
# Eisenstein series

def residue_E_check(z=complex(0.2, 1.3), h: float = 1e-6, tol: float = 1e-4,
                    dps: int = DEFAULT_DPS) -> CheckReport:
    """(s - 1) 4 pi E(z, s) at s = 1 + h against 12."""
    from .forms.eisenstein import eval_E

    t0 = time.perf_counter()
    c = ctx(dps)
    s = 1 + c.mpf(h)
    v = (s - 1) * 4 * c.pi * eval_E(c.mpc(z), s, dps)
    return CheckReport(name="residue_E", inputs={"z": str(z), "s": f"1+{h:g}"}, computed=float(v),
                       reference=12.0, tolerance=tol, runtime_s=_elapsed(t0), precision_digits=dps)


def calE_growth_check(y: float = 50.0, tol: float = 1e-3, dps: int = DEFAULT_DPS) -> CheckReport:
    """calE(iy) - 4 pi y + 12 log y against 0; the Kronecker closed form is reported alongside."""
    from .forms.eisenstein import eval_calE, eval_calE_kronecker

    t0 = time.perf_counter()
    c = ctx(dps)
    z = c.mpc(0, y)
    v = eval_calE(z, dps)
    defect = v - 4 * c.pi * y + 12 * c.log(y)
    kr = eval_calE_kronecker(z, dps)
    return CheckReport(name="calE_growth", inputs={"y": y}, computed=float(defect), reference=0.0,
                       tolerance=tol, runtime_s=_elapsed(t0), precision_digits=dps,
                       breakdown={"calE": float(v), "kronecker_closed_form": float(kr),
                                  "routes_difference": float(abs(v - kr))})


def calE_sweep(ys=(2, 5, 10, 20, 50, 100), dps: int = DEFAULT_DPS) -> list[dict]:
    from .forms.eisenstein import eval_calE

    c = ctx(dps)
    rows = []
    for y in ys:
        v = eval_calE(c.mpc(0, y), dps)
        rows.append({"y": y, "calE": float(v), "defect": float(v - 4 * c.pi * y + 12 * c.log(y))})
    return rows


# ---------------------------------------------------------------------------
# Green's function

def Gs_large_height_check(y: float = 10.0, zeta=2j, s: float = 1.5, tol: float = 1e-3,
                          dps: int = DEFAULT_DPS, M: float = 120.0) -> CheckReport:
    """Direct-route G_s(iy, zeta) against its constant-mode asymptotic."""
    from .forms.eisenstein import eval_E
    from .forms.green import eval_Gs

    t0 = time.perf_counter()
    c = ctx(dps)
    v = eval_Gs(c.mpc(0, y), c.mpc(zeta), s, dps, route="direct", M=M)
    sm = c.mpf(s)
    ref = 4 * c.pi / (1 - 2 * sm) * c.mpf(y) ** (1 - sm) * eval_E(c.mpc(zeta), s, dps)
    return CheckReport(name="Gs_large_height", inputs={"y": y, "zeta": str(zeta), "s": s, "M": M},
                       computed=float(v), reference=float(ref), tolerance=tol, runtime_s=_elapsed(t0),
                       precision_digits=15)


def Gs_routes_check(z=complex(0.1, 1.7), zeta=2j, s: float = 2.0, tol: float = 1e-6,
                    dps: int = DEFAULT_DPS) -> CheckReport:
    """Direct coset sum against the Fourier route and against the direct sum with the points swapped."""
    from .forms.green import eval_Gs

    t0 = time.perf_counter()
    c = ctx(dps)
    zm, wm = c.mpc(z), c.mpc(zeta)
    d = eval_Gs(zm, wm, s, dps, route="direct")
    f = eval_Gs(zm, wm, s, dps, route="fourier")
    sym = eval_Gs(wm, zm, s, dps, route="direct")
    vals = [float(f), float(sym)]
    return CheckReport(name="Gs_routes", inputs={"z": str(z), "zeta": str(zeta), "s": s},
                       computed=vals, reference=float(d), tolerance=tol, runtime_s=_elapsed(t0),
                       precision_digits=15,
                       breakdown={"direct": float(d), "fourier": vals[0], "swapped": vals[1]})


def klf_pole_cancellation_check(z=complex(1 / 3, 1.1), zeta=2j, s: float = 1.01, bound: float = 0.5,
                                dps: int = 30) -> CheckReport:
    """|(s - 1)(G_s + 4 pi E(zeta, s))| stays below ``bound`` at s close to 1."""
    from .forms.eisenstein import eval_E
    from .forms.green import eval_Gs

    t0 = time.perf_counter()
    c = ctx(dps)
    sm = c.mpf(s)
    g = eval_Gs(c.mpc(z), c.mpc(zeta), s, dps, route="fourier")
    e = 4 * c.pi * eval_E(c.mpc(zeta), s, dps)
    v = float(abs((sm - 1) * (g + e)))
    return CheckReport(name="klf_pole_cancellation", inputs={"z": str(z), "zeta": str(zeta), "s": s},
                       computed=v, reference=0.0, tolerance=bound, runtime_s=_elapsed(t0),
                       precision_digits=15,
                       breakdown={"(s-1)G_s": float((sm - 1) * g), "(s-1)4piE": float((sm - 1) * e)})


def g_zeta_principal_part_check(zeta=2j, radii=(1e-3, 1e-4), coefficient: str = "4omega",
                                theta: float = 0.7, tol: float = 1e-2, dps: int = DEFAULT_DPS) -> CheckReport:
    """g_zeta(z) - a log r_zeta(z) at two small radii; bounded means the two values agree.

    ``coefficient`` is "4omega" (a = 4 omega_zeta) or "omega" (a = omega_zeta,
    informational).
    """
    from .forms.core import eval_g_zeta
    from .hyperbolic import stabilizer_order

    t0 = time.perf_counter()
    c = ctx(dps)
    w = c.mpc(zeta)
    omega = stabilizer_order(complex(zeta))
    a = 4 * omega if coefficient == "4omega" else omega
    vals = []
    for r in radii:
        X = c.mpf(r) * c.expj(theta)
        z = (w - c.conj(w) * X) / (1 - X)
        vals.append(float(eval_g_zeta(w, z, dps) - a * c.log(r)))
    name = "g_zeta_principal_part" if coefficient == "4omega" else "g_zeta_principal_part_omega"
    rep = CheckReport(name=name, inputs={"zeta": str(zeta), "r": list(radii), "coefficient": a},
                      computed=vals[-1], reference=vals[0], tolerance=tol, runtime_s=_elapsed(t0),
                      precision_digits=dps, breakdown={"remainders": vals, "omega": omega})
    if coefficient != "4omega":
        rep.mark_info("log coefficient omega_zeta")
    return rep


# ---------------------------------------------------------------------------
# Niebur Poincare series

NIEBUR_POINTS = (complex(0.1, 1.2), complex(-0.3, 1.5), complex(0.45, 2.0))


def niebur_routes_check(n: int = 1, s: float = 1.5, points=NIEBUR_POINTS, tol: float = 1e-8,
                        C_direct: int = 150) -> CheckReport:
    """Fourier expansion against the coset sum at s = 1.5, relative to |F|."""
    from .forms.lattice import niebur_direct
    from .forms.niebur import eval_F

    t0 = time.perf_counter()
    defects, rows = [], {}
    for z in points:
        e = complex(eval_F(n, z, s))
        d, tail = niebur_direct(n, z.real, z.imag, s, C_direct)
        rel = abs(e - d) / abs(e)
        defects.append(rel)
        rows[str(z)] = {"expansion": e, "direct": complex(d), "abs": abs(e - d), "rel": rel,
                        "direct_tail": complex(tail)}
    return CheckReport(name="niebur_routes", inputs={"n": n, "s": s, "points": [str(p) for p in points]},
                       computed=defects, reference=0.0, tolerance=tol, runtime_s=_elapsed(t0),
                       breakdown=rows, note="relative to |F(z, s)|")


CN_POINTS = (complex(0.0, 2.0), complex(0.13, 2.2), complex(-0.31, 2.5), complex(0.42, 3.0),
             complex(-0.07, 3.4))


def Cn_constancy_check(n: int, points=CN_POINTS, tol: float = 1e-6, C: int = 2500,
                       dps: int = DEFAULT_DPS) -> CheckReport:
    """2 pi sqrt(n) F_{-n}(z, 1) - j_n(z) over sample points: spread and distance to 24 sigma_1(n).

    ``computed`` is [spread, |mean - 24 sigma_1(n)|].
    """
    from .forms.core import eval_jn
    from .forms.niebur import C_n_closed_form, eval_F

    t0 = time.perf_counter()
    c = ctx(dps)
    vals = []
    for z in points:
        v = 2 * c.pi * c.sqrt(n) * eval_F(n, c.mpc(z), 1, dps, C) - eval_jn(n, c.mpc(z), dps)
        vals.append(complex(v))
    mean = sum(vals) / len(vals)
    spread = max(abs(a - b) for a in vals for b in vals)
    closed = C_n_closed_form(n)
    return CheckReport(name="Cn_constancy", inputs={"n": n, "C": C, "points": [str(p) for p in points]},
                       computed=[spread, abs(mean - closed)], reference=0.0, tolerance=tol,
                       runtime_s=_elapsed(t0),
                       breakdown={"values": vals, "measured_C_n": mean, "24*sigma_1(n)": closed})


def _f_minus_n_0(n, z, c):
    from .specfun import W_kappa

    y = z.imag
    qn = c.exp(-2j * c.pi * n * z)
    return (qn - W_kappa(0, -2 * c.pi * n * y, c.dps) * qn) / (2 * c.pi * c.sqrt(n))


def _f_minus_n_1(n, z, c):
    from .specfun import boldW, gen_expint

    y = z.imag
    qn = c.exp(-2j * c.pi * n * z)
    return -(2 * boldW(0, -2 * c.pi * n * y, c.dps) * qn
             + gen_expint(1, 4 * c.pi * n * y, c.dps) * qn) / (2 * c.pi * c.sqrt(n))


def seed_modes_check(ns=(1, 2), points=(complex(0.2, 1.3), complex(-0.4, 2.1)), tol: float = 1e-6,
                       dps: int = DEFAULT_DPS) -> CheckReport:
    """The e(-nx) seed at s = 1 against (q^-n - W_0(-2 pi n y) q^-n)/(2 pi sqrt n), relative."""
    from .forms.niebur import seed

    t0 = time.perf_counter()
    c = ctx(dps)
    defects, rows = [], {}
    for n in ns:
        for z in points:
            zm = c.mpc(z)
            a = seed(n, zm, 1, dps)
            b = _f_minus_n_0(n, zm, c)
            d = float(abs(a - b) / abs(b))
            defects.append(d)
            rows[f"n={n},z={z}"] = d
    return CheckReport(name="seed_modes", inputs={"n": list(ns), "points": [str(p) for p in points]},
                       computed=defects, reference=0.0, tolerance=tol, runtime_s=_elapsed(t0),
                       precision_digits=dps, breakdown=rows)


def seed_ds_modes_check(ns=(1, 2), points=(complex(0.2, 1.3), complex(-0.4, 2.1)),
                                  tol: float = 1e-6, dps: int = DEFAULT_DPS) -> CheckReport:
    """d/ds of the seed at s = 1 (numerical s-derivative of I) against the boldW/E_1 formula.

    The closed-form route used by the evaluators is reported alongside.
    """
    from .forms.niebur import seed, seed_ds_at_1

    t0 = time.perf_counter()
    c = ctx(dps)
    defects, rows = [], {}
    for n in ns:
        for z in points:
            zm = c.mpc(z)
            num = c.diff(lambda s: seed(n, zm, s, dps), 1)
            formula = _f_minus_n_1(n, zm, c)
            closed = seed_ds_at_1(n, zm, dps)
            d = float(abs(num - formula) / abs(formula))
            defects.append(d)
            rows[f"n={n},z={z}"] = {"rel": d, "closed_form_rel": float(abs(closed - formula) / abs(formula))}
    return CheckReport(name="seed_ds_modes",
                       inputs={"n": list(ns), "points": [str(p) for p in points]},
                       computed=defects, reference=0.0, tolerance=tol, runtime_s=_elapsed(t0),
                       precision_digits=dps, breakdown=rows)


def jjn_modularity_check(n: int = 1, z=complex(0.15, 0.8), tol: float = 1e-4, dps: int = DEFAULT_DPS) -> CheckReport:
    """eval_jjn(n, Sz) - eval_jjn(n, z) through the public evaluator."""
    from .forms.niebur import eval_jjn

    t0 = time.perf_counter()
    c = ctx(dps)
    zm = c.mpc(z)
    a = eval_jjn(n, zm, dps)
    b = eval_jjn(n, -1 / zm, dps)
    return CheckReport(name="jjn_modularity", inputs={"n": n, "z": str(z), "gamma": "S"},
                       computed=abs(complex(a - b)), reference=0.0, tolerance=tol, runtime_s=_elapsed(t0),
                       breakdown={"at_z": complex(a), "at_Sz": complex(b)},
                       note="both sides pass through fundamental-domain reduction")


def jjn_off_domain_check(n: int = 1, z=complex(0.15, 0.8), tol: float = 1e-4, dps: int = DEFAULT_DPS) -> CheckReport:
    """Informational: the Niebur part of jj_n summed at an unreduced point against jj_n(Sz).

    Measures how the truncated Kloosterman sums behave below the fundamental
    domain; calE enters both sides through the reduced point.
    """
    from .forms.eisenstein import eval_calE
    from .forms.niebur import C_n_closed_form, eval_jjn, niebur_series, seed_ds_at_1

    t0 = time.perf_counter()
    c = ctx(dps)
    zm = c.mpc(z)
    ser = niebur_series(n)
    dF = seed_ds_at_1(n, zm, dps) + c.mpc(ser.d_remainder_ds(float(zm.real), float(zm.imag)))
    raw = -2 * c.pi * c.sqrt(n) * dF + c.mpf(C_n_closed_form(n)) / 12 * eval_calE(zm, dps)
    img = eval_jjn(n, -1 / zm, dps)
    rep = CheckReport(name="jjn_off_domain", inputs={"n": n, "z": str(z), "C": ser.C},
                      computed=abs(complex(raw - img)), reference=0.0, tolerance=tol, runtime_s=_elapsed(t0),
                      breakdown={"unreduced": complex(raw), "at_Sz": complex(img)})
    rep.mark_info("expansion summed at Im z < 1; limited by the Kloosterman cutoff C")
    return rep


# ---------------------------------------------------------------------------
# Fourier-mode shapes

def modes_jj0_check(y0: float = 3.0, M: int = 8, tol: float = 1e-4) -> CheckReport:
    """Constant mode of jj_0 is 1 - (pi/3) y + log y; the y-coefficient is the tested one."""
    from .forms import fast
    from .forms.modes import mode_extract

    t0 = time.perf_counter()
    ex = mode_extract(fast.jj0, 0, y0, M, family="sesqui0", vectorized=True)
    cy = ex.coefficient(0, "y")
    bd = {"c(0)[1]": ex.coefficient(0, "1"), "c(0)[y]": cy, "c(0)[log y]": ex.coefficient(0, "log y"),
          "modes": sorted({(md.m, md.shape) for md in ex.modes}), "residuals": ex.residuals}
    return CheckReport(name="modes_jj0", inputs={"y0": y0, "M": M}, computed=[cy.real, ex.coefficient(0, "1").real,
                                                                              ex.coefficient(0, "log y").real],
                       reference=[-math.pi / 3, 1.0, 1.0], tolerance=tol, runtime_s=_elapsed(t0), breakdown=bd)


def modes_g_zeta_check(zeta=2j, y0: float = 3.0, M: int = 8, tol: float = 1e-4) -> CheckReport:
    """Constant mode of g_zeta carries 6 log y; non-constant modes are q^m (m >= 1) or W-type (m <= -1)."""
    from .forms import fast
    from .forms.core import _j_of_zeta
    from .forms.modes import ShapeFitError, mode_extract

    t0 = time.perf_counter()
    J = complex(_j_of_zeta(zeta, 30))
    bd: dict = {}
    try:
        ex = mode_extract(lambda x, y: fast.g_zeta(x, y, J), 0, y0, M, family="sesqui0", vectorized=True)
        w_modes = sorted(md.m for md in ex.modes if md.shape == "W")
        bad = [m for m in w_modes if m > -1]
        clog = ex.coefficient(0, "log y").real
        bd = {"c(0)[log y]": clog, "c(0)[y]": ex.coefficient(0, "y"), "c(0)[1]": ex.coefficient(0, "1"),
              "W_modes": w_modes, "residuals": ex.residuals}
        computed = [clog, float(len(bad))]
    except ShapeFitError as e:
        computed = [float("nan"), 1.0]
        bd = {"error": str(e)}
    return CheckReport(name="modes_g_zeta", inputs={"zeta": str(zeta), "y0": y0, "M": M},
                       computed=computed, reference=[6.0, 0.0], tolerance=tol, runtime_s=_elapsed(t0),
                       breakdown=bd)


def modes_E2hat_check(y0: float = 1.0, M: int = 8, tol: float = 1e-6) -> CheckReport:
    """Modes of the completed weight-two series: 1 - 3/(pi y) and -24 sigma_1(m) q^m."""
    from .forms.core import eval_E2hat
    from .forms.modes import mode_extract
    from .qseries import sigma

    t0 = time.perf_counter()
    c = ctx(20)

    def f(x, y):
        return complex(eval_E2hat(c.mpc(x, y), 20))

    ex = mode_extract(f, 2, y0, M, family="weight2", npts=32)
    comp = [ex.coefficient(0, "1"), ex.coefficient(0, "1/y")]
    ref = [1.0, -3 / math.pi]
    for m in range(1, 4):
        comp.append(ex.coefficient(m, "hol"))
        ref.append(-24.0 * sigma(1, m))
    scale = [max(1.0, abs(r)) for r in ref]
    rel = [abs(a - b) / s for a, b, s in zip(comp, ref, scale)]
    return CheckReport(name="modes_E2hat", inputs={"y0": y0, "M": M}, computed=rel, reference=0.0,
                       tolerance=tol, runtime_s=_elapsed(t0),
                       breakdown={"coefficients": comp, "expected": ref,
                                  "modes": sorted({(md.m, md.shape) for md in ex.modes})})
