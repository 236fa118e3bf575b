"""Special functions at configurable precision.

Every function takes ``dps`` (decimal digits, default 35) and evaluates in a
private mpmath context of that precision.  Functions defined through improper
integrals have ``*_err`` variants returning ``(value, error_estimate)``.
"""

from __future__ import annotations

import math
from functools import lru_cache

from ._mp import DEFAULT_DPS, ctx


class UnsupportedParameter(ValueError):
    """Raised for parameters outside the implemented and tested range."""


# ---------------------------------------------------------------------------
# incomplete gamma family

def inc_gamma(s, w, dps: int = DEFAULT_DPS):
    """Upper incomplete gamma Gamma(s, w), principal branch."""
    c = ctx(dps)
    return c.gammainc(s, w)


def gen_expint(s, w, dps: int = DEFAULT_DPS):
    """Generalized exponential integral E_s(w) = w^(s-1) Gamma(1-s, w)."""
    c = ctx(dps)
    return c.expint(s, w)


def ein(w, dps: int = DEFAULT_DPS):
    """Entire function Ein(w) = sum_{n>=1} (-1)^(n+1) w^n / (n n!)."""
    c = ctx(dps)
    w = c.convert(w)
    if w == 0:
        return c.zero
    eps = c.eps
    term = c.one  # holds (-1)^(n+1) w^n / n!
    total = c.zero
    n = 0
    while True:
        n += 1
        term = term * w / n if n > 1 else w
        add = term / n if n % 2 else -term / n
        total += add
        if n > abs(w) and abs(add) <= eps * max(abs(total), eps):
            break
        if n > 100000:
            raise RuntimeError("Ein series did not converge")
    return total


def ei(w, dps: int = DEFAULT_DPS):
    """Exponential integral Ei(w) = -Ein(-w) + log w + gamma, real w != 0."""
    c = ctx(dps)
    w = c.mpf(w)
    if w == 0:
        raise ValueError("Ei has a logarithmic singularity at 0")
    return -ein(-w, dps) + c.log(abs(w)) + c.euler if w > 0 else c.ei(w)


def expint_n(n: int, z, dps: int = DEFAULT_DPS):
    """E_n(z) for integer n >= 0 via Ein and the upward recursion.

    E_1(z) = Ein(z) - Log(z) - gamma uses the principal logarithm, so for
    negative real z the result carries the branch value Log(z) = log|z| + i pi.
    """
    c = ctx(dps)
    z = c.mpc(z)
    if n < 0:
        raise UnsupportedParameter("negative order")
    if n == 0:
        return c.exp(-z) / z
    # the Ein series cancels about |z|/ln 10 digits and E_1 itself is near e^-|z|
    work = dps + int(2 * abs(complex(z)) / math.log(10)) + 10
    cw = ctx(work)
    zw = cw.mpc(z)
    E = ein(zw, work) - cw.log(zw) - cw.euler
    for k in range(1, n):
        E = (cw.exp(-zw) - zw * E) / k
    return c.mpc(E)


# ---------------------------------------------------------------------------
# W and bold-W

def W_kappa(kappa: int, w, dps: int = DEFAULT_DPS):
    """W_kappa(w) = (-2w)^(1-kappa) Re E_kappa(-2w), for real w != 0."""
    c = ctx(dps)
    w = c.mpf(w)
    if w == 0:
        raise ValueError("W is defined for w != 0")
    return ((-2 * w) ** (1 - kappa) * c.re(expint_n(kappa, -2 * w, dps))).real if kappa >= 0 \
        else W_kappa_gamma(kappa, w, dps).real


def W_kappa_gamma(kappa: int, w, dps: int = DEFAULT_DPS):
    """Incomplete-gamma closed form; complex-valued in floating point.

    For w > 0 the term (-1)^(1-kappa) pi i / (kappa-1)! is added, which vanishes
    when kappa <= 0.  The imaginary part of the result is a branch-consistency
    diagnostic and should vanish.
    """
    c = ctx(dps)
    w = c.mpf(w)
    g = c.gammainc(1 - kappa, -2 * w)
    if w > 0 and kappa >= 1:
        g += (-1) ** (1 - kappa) * c.pi * 1j / c.factorial(kappa - 1)
    return g


def _boldW0_integrand(t, c):
    """W_2(-t) e^{2t} written without cancellation-prone exponentials."""
    if t < 0:
        u = -t  # W_2(u) e^{-2u} = Ei(2u) e^{-2u} - 1/(2u)
        return c.ei(2 * u) * c.exp(-2 * u) - 1 / (2 * u)
    return 1 / (2 * t) - c.e1(2 * t) * c.exp(2 * t)


def _boldW0_tail(T, sign: int, c, terms: int = 60):
    """Integral of the integrand beyond |t| = T, from the termwise asymptotic series.

    sign = -1: int_{-inf}^{-T}; sign = +1: int_{T}^{inf}.  Returns (value, err).
    """
    x = 2 * T
    total = c.zero
    last = None
    for k in range(1, terms + 1):
        term = c.factorial(k - 1) / 2 / x ** k
        if sign > 0:
            term = -term * (-1) ** k
        if last is not None and abs(term) > abs(last):
            break
        total += term
        last = term
        if abs(term) < c.eps * abs(total):
            break
    return total, abs(last)


def boldW_err(s: int, w, dps: int = DEFAULT_DPS):
    """bold-W_s(w) = int_{sgn(w) inf}^{w} W_{2-s}(-t) t^(-s) e^(2t) dt, with error estimate.

    Implemented for s in {0, 2}.  For s = 2 the integrand is t^-2 and the value
    is -1/w.  For s = 0 the finite part is integrated by Gauss-Legendre panels
    that double in width, and the part beyond |t| = T0 comes from the
    asymptotic expansion of the integrand.
    """
    c = ctx(dps)
    w = c.mpf(w)
    if w == 0:
        raise ValueError("bold-W is defined for w != 0")
    if s == 2:
        return -1 / w, c.zero
    if s != 0:
        raise UnsupportedParameter("bold-W implemented for s in {0, 2}")
    sign = 1 if w > 0 else -1
    a = abs(w)
    T0 = max(c.mpf(dps + 25), a)
    tail, terr = _boldW0_tail(T0, sign, c)
    # panels from |w| outward with doubling widths
    pts = [a]
    h = c.mpf(1) / 2
    while pts[-1] < T0:
        pts.append(min(pts[-1] + h, T0))
        h *= 2
    f = (lambda u: _boldW0_integrand(u, c)) if sign > 0 else (lambda u: _boldW0_integrand(-u, c))
    val, qerr = c.quad(f, pts, error=True)
    total = val + tail
    # orientation: for w < 0 the integral runs from -inf up to w; for w > 0 from +inf down to w
    return (total, terr + qerr) if sign < 0 else (-total, terr + qerr)


def boldW(s: int, w, dps: int = DEFAULT_DPS):
    return boldW_err(s, w, dps)[0]


# ---------------------------------------------------------------------------
# Bessel functions

def bessel_I(nu, w, dps: int = DEFAULT_DPS):
    return ctx(dps).besseli(nu, w)


def bessel_K(nu, w, dps: int = DEFAULT_DPS):
    return ctx(dps).besselk(nu, w)


def dI_dorder_at_half(w, dps: int = DEFAULT_DPS):
    """d/ds I_{s-1/2}(w) at s = 1, closed form in E_1 and Ei."""
    c = ctx(dps)
    w = c.mpf(w)
    return -(E1 := c.e1(2 * w)) * c.exp(w) / c.sqrt(2 * c.pi * w) - c.ei(2 * w) * c.exp(-w) / c.sqrt(2 * c.pi * w) \
        if w > 0 else _bad_arg()


def _bad_arg():
    raise ValueError("argument must be positive")


# ---------------------------------------------------------------------------
# Legendre Q and the biharmonic profile B(r)

def legendre_Q_err(sm1, w, dps: int = DEFAULT_DPS):
    """Q_{s-1}(w) = int_0^inf (w + sqrt(w^2-1) cosh u)^(-s) du for w > 1."""
    c = ctx(dps)
    s = c.mpf(sm1) + 1
    w = c.mpf(w)
    if not w > 1:
        raise ValueError("legendre_Q needs w > 1")
    if not s > 0:
        raise ValueError("legendre_Q needs s - 1 > -1")
    rt = c.sqrt(w * w - 1)
    # the integrand decays like e^{-s u}; split into unit panels out to a cutoff
    U = (dps + 5) * c.log(10) / s + 5
    pts = [c.mpf(k) for k in range(0, int(U) + 2)]
    val, err = c.quad(lambda u: (w + rt * c.cosh(u)) ** (-s), pts, error=True)
    return val, err


def legendre_Q(sm1, w, dps: int = DEFAULT_DPS):
    return legendre_Q_err(sm1, w, dps)[0]


def dsdw_legendre_Q(w, dps: int = DEFAULT_DPS):
    """d/ds d/dw Q_{s-1}(w) at s = 1 by the differentiated integrand A_w A^-2 (log A - 1)."""
    c = ctx(dps)
    w = c.mpf(w)
    rt = c.sqrt(w * w - 1)

    def f(u):
        A = w + rt * c.cosh(u)
        Aw = 1 + w * c.cosh(u) / rt
        return Aw / A ** 2 * (c.log(A) - 1)

    U = (dps + 5) * c.log(10) + 10
    return c.quad(f, [c.mpf(k) for k in range(0, int(U) + 2)])


def B_of_r_err(r, dps: int = DEFAULT_DPS):
    """The profile B(r) of the s-derivative of xi_0 g_s, via its u-integral form."""
    c = ctx(dps)
    r = c.mpf(r)
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")

    def f(u):
        ch = c.cosh(u)
        num = 1 + c.log(1 - r * r) - c.log(1 + r * r + 2 * r * ch)
        den = (1 + r * c.exp(u)) ** 2 * (1 + r * c.exp(-u)) ** 2
        return num / den * (r + (1 + r * r) / 2 * ch)

    # integrand ~ e^{-u} log(e^u) once r e^u >> 1; the bulk sits at u ~ log(1/r)
    L = -c.log(r)
    pts = sorted({c.mpf(0), L / 2, L, L + 2, L + 6} | {L + 6 + k * 8 for k in range(1, 2 * dps)})
    val, err = c.quad(f, pts, error=True)
    return -4 * r * val, 4 * r * err


def B_of_r(r, dps: int = DEFAULT_DPS):
    return B_of_r_err(r, dps)[0]


def B_of_r_from_Q(r, dps: int = DEFAULT_DPS):
    """Oracle: 4r^2/(1-r^2)^2 times the mixed derivative of Q at s = 1."""
    c = ctx(dps)
    r = c.mpf(r)
    return 4 * r * r / (1 - r * r) ** 2 * dsdw_legendre_Q((1 + r * r) / (1 - r * r), dps)


# ---------------------------------------------------------------------------
# elliptic beta functions

def _check_beta_params(a, b):
    if int(a) != a or int(b) != b:
        raise UnsupportedParameter("beta supports integer parameters only")
    if int(a) not in (-1, 1):
        raise UnsupportedParameter("beta supports a in {-1, 1}")


def _binom_gen(a1: int, n: int):
    """binomial(a1, n) for integer (possibly negative) a1."""
    out = 1
    for i in range(n):
        out *= a1 - i
    return out // math.factorial(n)


def _excluded_log(a: int, b: int, rule: str) -> int:
    """Coefficient multiplying -log of the excluded term n = -b.

    "stated": (-1)^b when a is a positive integer and 0 <= -b < a.
    "binomial": (-1)^b binom(a-1, -b) whenever -b >= 0, which is what
    t0-independence requires for every integer a.
    """
    if -b < 0:
        return 0
    if rule == "stated":
        return (-1) ** b if a >= 1 and -b < a else 0
    if rule == "binomial":
        return (-1) ** b * _binom_gen(a - 1, -b)
    raise ValueError(f"unknown log rule {rule!r}")


def _beta_terms(x, a: int, b: int, c):
    """sum over n != -b of (-1)^n binom(a-1, n) x^(n+b) / (n+b)."""
    total = c.zero
    n = 0
    while True:
        if n + b != 0:
            bn = _binom_gen(a - 1, n)
            if bn:
                term = c.mpf((-1) ** n * bn) / (n + b) * x ** (n + b)
                total += term
                if n > 4 and abs(term) < c.eps * max(abs(total), c.eps):
                    break
            elif a >= 1 and n > a:
                break
        n += 1
        if n > 20000:
            raise RuntimeError("beta series did not converge")
    return total


def beta_series_x(x, a: int, b: int, dps: int = DEFAULT_DPS, log_rule: str = "stated"):
    """The series form as a function of x = 1 - w, which avoids cancellation near w = 1."""
    _check_beta_params(a, b)
    c = ctx(dps)
    x = c.mpf(x)
    return -_beta_terms(x, a, b, c) - _excluded_log(a, b, log_rule) * c.log(x)


def beta_series(w, a: int, b: int, dps: int = DEFAULT_DPS, log_rule: str = "stated"):
    """Series form in powers of 1 - w (valid for 0 < w < 1)."""
    c = ctx(dps)
    return beta_series_x(1 - c.mpf(w), a, b, dps, log_rule)


def beta_t0(w, a: int, b: int, t0, dps: int = DEFAULT_DPS, log_rule: str = "stated"):
    """Defining form: a finite integral over [w, 1 - t0] plus the t0-series correction.

    ``log_rule`` selects which excluded terms receive the log(t0) correction
    (see ``_excluded_log``); "stated" is the defining formula as given.
    """
    _check_beta_params(a, b)
    c = ctx(dps)
    w = c.mpf(w)
    t0 = c.mpf(t0)
    integral = c.quad(lambda t: t ** (a - 1) * (1 - t) ** (b - 1), [w, 1 - t0])
    return -integral - _beta_terms(t0, a, b, c) - _excluded_log(a, b, log_rule) * c.log(t0)


def boldbeta(a: int, b: int, r, dps: int = DEFAULT_DPS):
    """-2 int_0^r t^(2b-1) (1-t^2)^(-a-1) beta(1-t^2; a, 1-b) dt."""
    c = ctx(dps)
    r = c.mpf(r)

    def f(t):
        if t == 0:
            return c.zero
        return t ** (2 * b - 1) * (1 - t * t) ** (-a - 1) * beta_series_x(t * t, a, 1 - b, dps)

    return -2 * c.quad(f, [0, r / 2, r])


def B24(r, dps: int = DEFAULT_DPS):
    c = ctx(dps)
    r = c.mpf(r)
    return (c.log(1 - r * r) + r * r) / (1 - r * r)


# ---------------------------------------------------------------------------
# Kloosterman sums

def kloosterman(m: int, n: int, c: int) -> float:
    """S(m, n; c) = sum over d mod c, gcd(d, c) = 1, of e((m dbar + n d)/c); real-valued."""
    if c < 1:
        raise ValueError("c must be >= 1")
    if c == 1:
        return 1.0
    total = 0.0
    for d in range(1, c):
        if math.gcd(d, c) == 1:
            dbar = pow(d, -1, c)
            total += math.cos(2 * math.pi * ((m * dbar + n * d) % c) / c)
    return total


@lru_cache(maxsize=None)
def _ramanujan_table(n: int, C: int):
    import numpy as np
    out = np.zeros(C + 1)
    for c in range(1, C + 1):
        s = 0
        for d in range(1, c + 1):
            if c % d == 0 and n % d == 0:
                s += _mobius(c // d) * d
        out[c] = s
    return out


def ramanujan_sum(c: int, n: int) -> int:
    """c_c(n) = S(n, 0; c) via the Mobius formula."""
    return int(_ramanujan_table(n, c)[c])


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    res = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res
