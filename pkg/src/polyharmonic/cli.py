"""Command-line front end.

Subcommands: eval, forms, qseries, specfun, xi, coeff, check, report.
Exit codes: 0 all pass, 1 some check failed, 2 inconclusive without failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ._mp import DEFAULT_DPS, ctx
from .reports import CheckReport, exit_code
from .suites import (SUITE_NAMES, Config, ConfigError, parse_point, parse_points, run_suite, summarize,
                     sweeps_for, write_sweeps_csv)

# ---------------------------------------------------------------------------
# point evaluators


def _eval_value(name: str, z, zeta, s, n, dps: int):
    from .forms import core, eisenstein, green, niebur

    c = ctx(dps)
    z = c.mpc(z)
    table = {
        "delta": lambda: core.eval_delta(z, dps),
        "j": lambda: core.eval_j(z, dps),
        "jn": lambda: core.eval_jn(n, z, dps),
        "g_zeta": lambda: core.eval_g_zeta(c.mpc(zeta), z, dps),
        "jj0": lambda: core.eval_jj0(z, dps),
        "E2hat": lambda: core.eval_E2hat(z, dps),
        "E": lambda: eisenstein.eval_E(z, s, dps),
        "calE": lambda: eisenstein.eval_calE(z, dps),
        "gs": lambda: green.eval_gs(z, c.mpc(zeta), s, dps),
        "Gs": lambda: green.eval_Gs(z, c.mpc(zeta), s, dps),
        "F": lambda: niebur.eval_F(n, z, s, dps),
        "dF_ds": lambda: niebur.eval_dF_ds(n, z, dps),
        "jjn": lambda: niebur.eval_jjn(n, z, dps),
    }
    if name not in table:
        raise KeyError(f"unknown evaluator {name!r}; choose from {', '.join(table)}")
    return table[name]()


FLOAT_ROUTES = {"Gs", "F", "dF_ds", "jjn"}


def cmd_eval(args) -> int:
    z = parse_point(args.z)
    zeta = parse_point(args.zeta) if args.zeta else None
    if args.name in ("g_zeta", "gs", "Gs") and zeta is None:
        raise SystemExit("--zeta is required for " + args.name)
    dps = args.precision
    v = _eval_value(args.name, z, zeta, args.s, args.n, dps)
    v2 = _eval_value(args.name, z, zeta, args.s, args.n, dps + 10)
    hi = ctx(dps + 10)
    err = float(abs(hi.mpc(v) - hi.mpc(v2))) if args.name not in FLOAT_ROUTES else abs(complex(v) - complex(v2))
    kind = "float64 summation; precision-change estimate is a lower bound" if args.name in FLOAT_ROUTES \
        else "difference from a run 10 digits higher"
    out = {"name": args.name, "z": str(z), "zeta": str(zeta) if zeta is not None else None, "s": args.s,
           "n": args.n, "value": complex(v), "error_estimate": err, "error_kind": kind}
    if args.json:
        print(json.dumps({**out, "value": {"re": complex(v).real, "im": complex(v).imag},
                          "value_str": ctx(dps).nstr(v, dps)}))
    else:
        print(f"{args.name}({z}) = {ctx(dps).nstr(v, min(dps, 20))} ± {err:.1e}  [{kind}]")
    return 0


# ---------------------------------------------------------------------------
# q-series


def cmd_qseries(args) -> int:
    from . import qseries as q

    N = args.N
    makers = {
        "delta": lambda: q.delta_qexp(N),
        "j": lambda: q.j_qexp(N),
        "j1": lambda: q.j1_qexp(N),
        "jn": lambda: q.jn_qexp(args.n, N),
        "E4": lambda: q.eisenstein_qexp(4, N),
        "E6": lambda: q.eisenstein_qexp(6, N),
        "E2": lambda: q.eisenstein_qexp(2, N),
    }
    if args.name not in makers:
        raise SystemExit(f"unknown series {args.name!r}; choose from {', '.join(makers)}")
    f = makers[args.name]()
    items = [(k, str(c)) for k, c in f.items()]
    if args.json:
        print(json.dumps({"name": args.name, "trunc": f.trunc, "coefficients": items}))
    else:
        for k, c in items:
            print(f"q^{k}\t{c}")
        print(f"+ O(q^{f.trunc + 1})")
    return 0


# ---------------------------------------------------------------------------
# special functions

def _specfun_table():
    from . import specfun as sf

    return {
        "inc_gamma": (sf.inc_gamma, (complex, complex)),
        "gen_expint": (sf.gen_expint, (complex, complex)),
        "ein": (sf.ein, (complex,)),
        "ei": (sf.ei, (float,)),
        "W": (sf.W_kappa, (int, float)),
        "boldW": (sf.boldW_err, (int, float)),
        "bessel_I": (sf.bessel_I, (float, float)),
        "bessel_K": (sf.bessel_K, (float, float)),
        "dI_dorder_at_half": (sf.dI_dorder_at_half, (float,)),
        "legendre_Q": (sf.legendre_Q_err, (float, float)),
        "dsdw_legendre_Q": (sf.dsdw_legendre_Q, (float,)),
        "B": (sf.B_of_r_err, (float,)),
        "beta": (sf.beta_series, (float, int, int)),
        "beta_t0": (sf.beta_t0, (float, int, int, float)),
        "boldbeta": (sf.boldbeta, (int, int, float)),
        "B24": (sf.B24, (float,)),
        "kloosterman": (sf.kloosterman, (int, int, int)),
    }


def cmd_specfun(args) -> int:
    table = _specfun_table()
    if args.name not in table:
        raise SystemExit(f"unknown function {args.name!r}; choose from {', '.join(table)}")
    fn, types = table[args.name]
    if len(args.args) != len(types):
        raise SystemExit(f"{args.name} takes {len(types)} arguments")
    vals = []
    for t, a in zip(types, args.args):
        vals.append(parse_point(a) if t is complex else t(a))
    kw = {"dps": args.precision} if args.name != "kloosterman" else {}
    res = fn(*vals, **kw)
    value, err = (res if isinstance(res, tuple) else (res, None))
    if args.json:
        cv = complex(value)
        print(json.dumps({"name": args.name, "args": args.args, "value": {"re": cv.real, "im": cv.imag},
                          "error_estimate": None if err is None else float(err)}))
    else:
        s = ctx(args.precision).nstr(value, min(args.precision, 25)) if not isinstance(value, (int, float)) \
            else repr(value)
        print(s + ("" if err is None else f" ± {float(err):.1e}"))
    return 0


# ---------------------------------------------------------------------------
# operator edges

def cmd_xi(args) -> int:
    from .xi import EDGES, edge_check, xi_seq_check

    if args.action == "list":
        print("\n".join(EDGES))
        return 0
    z = parse_point(args.z)
    if args.action == "check":
        rep = edge_check(args.edge, z)
    else:
        rep = xi_seq_check(tuple(args.edge.split(",")) if args.edge else EDGES, z)
    return _emit([rep], args)


# ---------------------------------------------------------------------------
# coefficients

def _np_evaluator(name: str, zeta):
    from .forms import fast
    from .forms.core import _j_of_zeta

    if name == "j1":
        return lambda z: fast.j1(*fast.reduced(z.real, z.imag))
    if name == "jj0":
        return lambda z: fast.jj0(*fast.reduced(z.real, z.imag)).astype(complex)
    if name == "g_zeta":
        J = _j_of_zeta(zeta, 30)
        J = J if J in (0, 1728) else complex(J)
        return lambda z: fast.g_zeta(*fast.reduced(z.real, z.imag), J).astype(complex)
    raise SystemExit(f"unknown function {name!r}; choose from j1, jj0, g_zeta")


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        a, b = text.split("..")
        return list(range(int(a), int(b) + 1))
    return [int(t) for t in text.split(",")]


def cmd_coeff(args) -> int:
    if args.kind == "elliptic":
        from .quadrature import elliptic_coeff

        zeta = parse_point(args.zeta)
        f = _np_evaluator(args.f, zeta)
        rows = [(m, elliptic_coeff(f, zeta, m, args.radius, args.npts)) for m in _parse_range(args.m)]
        if args.json:
            print(json.dumps({"kind": "elliptic", "f": args.f, "zeta": str(zeta), "radius": args.radius,
                              "coefficients": [[m, {"re": v.real, "im": v.imag}] for m, v in rows]}))
        else:
            for m, v in rows:
                print(f"c({m}) = {v.real:+.15e} {v.imag:+.3e}i")
        return 0
    from .forms import fast
    from .forms.core import _j_of_zeta
    from .forms.modes import mode_extract

    if args.f == "jj0":
        f = fast.jj0
    elif args.f == "g_zeta":
        J = _j_of_zeta(parse_point(args.zeta), 30)
        J = J if J in (0, 1728) else complex(J)
        f = lambda x, y: fast.g_zeta(x, y, J)  # noqa: E731
    elif args.f == "j1":
        f = fast.j1
    else:
        raise SystemExit("fourier coefficients are available for jj0, g_zeta, j1")
    fam = "sesqui0" if args.f != "j1" else "harmonic0"
    ex = mode_extract(f, 0, args.y0, args.M, family=fam, vectorized=True)
    rows = [(md.m, md.shape, md.coefficient) for md in ex.modes]
    if args.json:
        print(json.dumps({"kind": "fourier", "f": args.f, "y0": args.y0,
                          "modes": [[m, s, {"re": complex(v).real, "im": complex(v).imag}] for m, s, v in rows]}))
    else:
        for m, s, v in rows:
            v = complex(v)
            print(f"m={m:>3} {s:<6} {v.real:+.12e} {v.imag:+.3e}i")
    return 0


# ---------------------------------------------------------------------------
# checks and reports

def _named_check(args) -> list[CheckReport] | None:
    """Single checks with their own options; None means 'treat as a suite'."""
    if args.target == "rohrlich" and args.f:
        from .quadrature import rohrlich_check
        return [rohrlich_check(args.f)]
    if args.target == "theorem12" and (args.n is not None or args.zetas):
        from .quadrature import theorem12_check
        n = 1 if args.n is None else args.n
        zetas = parse_points(args.zetas) if args.zetas else ([1j, 2j] if n == 1 else [1j, complex(-0.5, 0.8660254037844386), 2j])
        return [theorem12_check(n, zetas)]
    if args.target == "klf":
        from .forms.green import klf_check
        return [klf_check(parse_point(args.z or "0.3333333333333333,1.1"), parse_point(args.zeta or "2i"))]
    if args.target == "log_f_divisor":
        from .quadrature import log_f_divisor_check
        return [log_f_divisor_check(args.f or "(j-1728)/j")]
    return None


def _emit(reports: list[CheckReport], args) -> int:
    if args.json:
        print(json.dumps({"reports": [r.to_dict() for r in reports], "summary": summarize(reports)}))
    else:
        for r in reports:
            print(r.line())
        s = summarize(reports)
        print(f"-- {len(reports)} checks: " + ", ".join(f"{k} {v}" for k, v in sorted(s["counts"].items())))
    if getattr(args, "out", None):
        Path(args.out).write_text(json.dumps([r.to_dict() for r in reports], indent=1), encoding="utf-8")
    return exit_code(reports)


def cmd_check(args, cfg: Config) -> int:
    reports = _named_check(args)
    if reports is None:
        if args.target not in (*SUITE_NAMES, "all"):
            raise SystemExit(f"unknown suite {args.target!r}")
        reports = run_suite(args.target, cfg)
        if args.csv:
            sweeps = sweeps_for(args.target)
            if sweeps:
                n = write_sweeps_csv(args.csv, sweeps)
                print(f"wrote {n} sweep rows to {args.csv}", file=sys.stderr)
            else:
                print(f"suite {args.target!r} has no sweep data", file=sys.stderr)
    return _emit(reports, args)


def cmd_report(args) -> int:
    data = json.loads(Path(args.path).read_text(encoding="utf-8"))
    items = data["reports"] if isinstance(data, dict) else data
    reports = [CheckReport.from_dict(d) for d in items]
    return _emit(reports, args)


# ---------------------------------------------------------------------------
# parser

def _common(top: bool) -> argparse.ArgumentParser:
    # subcommand copies use SUPPRESS so they do not overwrite options given before the subcommand
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    p.add_argument("--csv", metavar="PATH", default=d(None), help="write sweep data (check specfun/eisenstein/all)")
    p.add_argument("--precision", type=int, default=d(None), help="working precision in decimal digits")
    p.add_argument("--config", metavar="PATH", default=d(None), help="key = value configuration file")
    p.add_argument("--jobs", type=int, default=d(None), help="worker processes for independent checks")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common(False)
    ap = argparse.ArgumentParser(prog="polyharmonic", parents=[_common(True)],
                                 description="Verification toolkit for polyharmonic Maass forms of level one.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add_eval(p):
        p.add_argument("name")
        p.add_argument("--z", required=True, help="point as x,y or 0.2+1.3j")
        p.add_argument("--zeta")
        p.add_argument("--s", type=float, default=1.5)
        p.add_argument("--n", type=int, default=1)

    add_eval(sub.add_parser("eval", parents=[common], help="evaluate a form at a point"))
    pf = sub.add_parser("forms", parents=[common], help="form evaluators")
    fsub = pf.add_subparsers(dest="action", required=True)
    add_eval(fsub.add_parser("eval", parents=[common]))

    pq = sub.add_parser("qseries", parents=[common], help="exact q-expansions")
    pq.add_argument("name")
    pq.add_argument("--N", type=int, default=10)
    pq.add_argument("--n", type=int, default=2)

    ps = sub.add_parser("specfun", parents=[common], help="special functions")
    ssub = ps.add_subparsers(dest="action", required=True)
    pse = ssub.add_parser("eval", parents=[common])
    pse.add_argument("name")
    pse.add_argument("args", nargs="*")

    px = sub.add_parser("xi", parents=[common], help="operator-diagram edges")
    xsub = px.add_subparsers(dest="action", required=True)
    xsub.add_parser("list", parents=[common])
    pxc = xsub.add_parser("check", parents=[common])
    pxc.add_argument("edge")
    pxc.add_argument("--z", default="0.2,1.3")
    pxs = xsub.add_parser("seq", parents=[common])
    pxs.add_argument("edge", nargs="?", default="")
    pxs.add_argument("--z", default="0.2,1.3")

    pc = sub.add_parser("coeff", parents=[common], help="elliptic or Fourier coefficients")
    pc.add_argument("kind", choices=["elliptic", "fourier"])
    pc.add_argument("--f", required=True)
    pc.add_argument("--zeta", default="2i")
    pc.add_argument("--m", default="0..6")
    pc.add_argument("--radius", type=float, default=0.1)
    pc.add_argument("--npts", type=int, default=128)
    pc.add_argument("--y0", type=float, default=3.0)
    pc.add_argument("--M", type=int, default=8)

    pk = sub.add_parser("check", parents=[common], help="run a suite or a named check")
    pk.add_argument("target", help="suite name (" + ", ".join((*SUITE_NAMES, "all")) + ") or klf/log_f_divisor")
    pk.add_argument("--f")
    pk.add_argument("--n", type=int)
    pk.add_argument("--zetas")
    pk.add_argument("--z")
    pk.add_argument("--zeta")
    pk.add_argument("--out", help="write the JSON report to this path")

    pr = sub.add_parser("report", parents=[common], help="summarize a saved JSON report")
    pr.add_argument("path")
    return ap


def _config(args) -> Config:
    cfg = Config.from_file(args.config) if args.config else Config()
    over = {}
    if args.precision is not None:
        over["precision"] = args.precision
    if args.jobs is not None:
        over["jobs"] = args.jobs
    cfg.update(over)
    return cfg


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _config(args)
    except (ConfigError, OSError) as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 1
    args.precision = cfg.precision
    try:
        if args.cmd in ("eval", "forms"):
            return cmd_eval(args)
        if args.cmd == "qseries":
            return cmd_qseries(args)
        if args.cmd == "specfun":
            return cmd_specfun(args)
        if args.cmd == "xi":
            return cmd_xi(args)
        if args.cmd == "coeff":
            return cmd_coeff(args)
        if args.cmd == "check":
            return cmd_check(args, cfg)
        if args.cmd == "report":
            return cmd_report(args)
    except (KeyError, ValueError, RuntimeError) as e:
        # RuntimeError covers divergent mode pairs, e.g. log|f| for f with a pole at the cusp
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
