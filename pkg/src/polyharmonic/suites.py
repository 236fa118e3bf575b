"""Named check suites, run configuration and CSV sweep data.

A task is a picklable (module, function, kwargs) triple so that ``jobs > 1``
can fan tasks out to worker processes.
"""

from __future__ import annotations

import importlib
import inspect
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path

from ._mp import DEFAULT_DPS
from .reports import CheckReport, exit_code

SUITE_NAMES = ("qseries", "specfun", "operators", "eisenstein", "green", "niebur", "rohrlich",
               "theorem12", "modes")


class ConfigError(ValueError):
    """Malformed configuration text or value."""


def parse_point(text: str) -> complex:
    """'i', '2i', 'rho', 'x,y' or a Python complex literal such as '0.2+1.3j'."""
    t = text.strip().replace(" ", "")
    if t == "rho":
        return complex(-0.5, math.sqrt(3) / 2)
    if "," in t:
        x, y = t.split(",")
        return complex(float(x), float(y))
    if t.endswith("i") and "j" not in t:
        t = t[:-1] + "j"
        if t in ("j", "+j"):
            return 1j
        if t == "-j":
            return -1j
    try:
        return complex(t)
    except ValueError as e:
        raise ConfigError(f"cannot parse point {text!r}") from e


def parse_points(text: str) -> list[complex]:
    """Semicolon- or comma-separated list; 'x,y' pairs need semicolons."""
    parts = text.split(";") if ";" in text else text.split(",")
    return [parse_point(p) for p in parts if p.strip()]


@dataclass
class Config:
    precision: int = DEFAULT_DPS
    jobs: int = 1
    qseries_N: int = 30
    denominator_D: int = 6
    hecke_nmax: int = 10
    W_abs: float = 20.0
    boldW_abs: float = 50.0
    green_M: float = 120.0
    niebur_C: int = 2500
    klf_z: str = "1/3+1.1i"
    klf_zeta: str = "2i"
    rohrlich_f: str = "(j-1728)/j"
    theorem12_zetas_0: str = "i,rho,2i"
    theorem12_zetas_1: str = "i,2i"
    theorem12_resolution: int = 1
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_text(cls, text: str) -> "Config":
        cfg = cls()
        cfg.update(parse_config_text(text))
        return cfg

    @classmethod
    def from_file(cls, path: str | Path) -> "Config":
        return cls.from_text(Path(path).read_text(encoding="utf-8"))

    def update(self, values: dict) -> None:
        types = {f.name: f.type for f in fields(self)}
        for k, v in values.items():
            if k not in types or k == "extra":
                raise ConfigError(f"unknown configuration key {k!r}")
            cur = getattr(self, k)
            try:
                setattr(self, k, type(cur)(v))
            except (TypeError, ValueError) as e:
                raise ConfigError(f"bad value for {k}: {v!r}") from e
        if self.precision < 15:
            raise ConfigError("precision must be at least 15 digits")
        if self.jobs < 1:
            raise ConfigError("jobs must be positive")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != "extra"}


def parse_config_text(text: str) -> dict:
    """key = value lines; '#' starts a comment."""
    out = {}
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {i}: expected 'key = value'")
        k, v = (s.strip() for s in line.split("=", 1))
        if not k:
            raise ConfigError(f"line {i}: empty key")
        out[k] = v
    return out


def _klf_point(text: str) -> complex:
    # accepts fractions such as 1/3+1.1i
    t = text.replace(" ", "")
    if "/" in t:
        num, rest = t.split("/", 1)
        for i, ch in enumerate(rest):
            if ch in "+-" and i > 0:
                return float(num) / float(rest[:i]) + parse_point(rest[i:])
    return parse_point(t)


# ---------------------------------------------------------------------------
# suite contents

Task = tuple  # (module, function, kwargs)


def _suite_tasks(name: str, cfg: Config) -> list[Task]:
    N = cfg.qseries_N
    if name == "qseries":
        return [("qseries", "akn_check", {"N": N}),
                ("qseries", "bko_check", {"f_spec": "j-1728", "N": N}),
                ("qseries", "bko_check", {"f_spec": "j", "N": N}),
                ("qseries", "denominator_check", {"D": cfg.denominator_D}),
                ("qseries", "hecke_faber_check", {"nmax": cfg.hecke_nmax, "N": N}),
                ("qseries", "hecke_commutativity_check", {})]
    if name == "specfun":
        return [("checks", "W_branches_check", {}),
                ("checks", "W_asymptotic_check", {"absw": cfg.W_abs}),
                ("checks", "W_asymptotic_check", {"absw": cfg.W_abs, "first_order": True}),
                ("checks", "boldW_asymptotic_check", {"absw": cfg.boldW_abs}),
                ("checks", "beta_t0_independence_check", {}),
                ("checks", "beta_t0_independence_check", {"log_rule": "binomial"}),
                ("checks", "beta_asymptotic_check", {}),
                ("checks", "boldbeta_asymptotic_check", {}),
                ("checks", "boldbeta_corrected_sign_check", {}),
                ("checks", "beta_derivative_relations_check", {}),
                ("checks", "B_limit_check", {})]
    if name == "operators":
        edges = ("xi_E2hat", "diagram_E2hat", "xi_W_mode", "xi_boldW_mode", "laplace_jj0",
                 "laplace_g_zeta", "sesquiharmonic_jj0", "xi_holomorphic", "laplace_composition")
        tasks = [("xi", "edge_check", {"name": e}) for e in edges]
        tasks += [("xi", "eigen_check", {"kind": k, "s": s}) for k in ("E", "G", "F") for s in (1.3, 1.5)]
        tasks.append(("xi", "stencil_convergence_check", {}))
        return tasks
    if name == "eisenstein":
        return [("checks", "residue_E_check", {}),
                ("checks", "calE_growth_check", {})]
    if name == "green":
        return [("checks", "Gs_large_height_check", {"M": cfg.green_M}),
                ("checks", "Gs_routes_check", {}),
                ("forms.green", "klf_check", {"z": _klf_point(cfg.klf_z), "zeta": parse_point(cfg.klf_zeta)}),
                ("checks", "klf_pole_cancellation_check", {}),
                ("checks", "g_zeta_principal_part_check", {}),
                ("checks", "g_zeta_principal_part_check", {"coefficient": "omega"}),
                ("checks", "g_zeta_principal_part_check", {"zeta": 1j, "coefficient": "omega"})]
    if name == "niebur":
        return [("checks", "niebur_routes_check", {}),
                *[("checks", "Cn_constancy_check", {"n": n, "C": cfg.niebur_C}) for n in (1, 2, 3)],
                ("checks", "seed_modes_check", {}),
                ("checks", "seed_ds_modes_check", {}),
                ("xi", "edge_check", {"name": "laplace_jj1", "z": complex(0.2, 1.3)}),
                ("xi", "edge_check", {"name": "laplace_jj1", "z": complex(-0.35, 1.6)}),
                ("checks", "jjn_modularity_check", {}),
                ("checks", "jjn_off_domain_check", {})]
    if name == "rohrlich":
        return [("quadrature", "rohrlich_check", {"f_spec": cfg.rohrlich_f}),
                ("quadrature", "volume_check", {}),
                ("quadrature", "log_f_divisor_check", {"f_spec": cfg.rohrlich_f})]
    if name == "theorem12":
        return [("quadrature", "theorem12_check", {"n": 0, "zetas": parse_points(cfg.theorem12_zetas_0),
                                                   "resolution": cfg.theorem12_resolution}),
                ("quadrature", "theorem12_check", {"n": 1, "zetas": parse_points(cfg.theorem12_zetas_1),
                                                   "resolution": cfg.theorem12_resolution})]
    if name == "modes":
        return [("checks", "modes_jj0_check", {}),
                ("checks", "modes_g_zeta_check", {}),
                ("checks", "modes_E2hat_check", {}),
                ("quadrature", "contour_orthogonality_check", {}),
                ("quadrature", "elliptic_reconstruction_check", {}),
                ("quadrature", "elliptic_constant_g_check", {})]
    raise KeyError(f"unknown suite {name!r}")


def suite_tasks(name: str, cfg: Config | None = None) -> list[Task]:
    cfg = cfg or Config()
    if name == "all":
        return [t for s in SUITE_NAMES for t in _suite_tasks(s, cfg)]
    return _suite_tasks(name, cfg)


def run_task(task: Task, precision: int = DEFAULT_DPS) -> CheckReport:
    module, func, kwargs = task
    fn = getattr(importlib.import_module(f"polyharmonic.{module}"), func)
    kw = dict(kwargs)
    if precision != DEFAULT_DPS and "dps" in inspect.signature(fn).parameters:
        kw["dps"] = precision
    return fn(**kw)


def _run_task_star(args):
    return run_task(*args)


def run_suite(name: str, config: Config | None = None) -> list[CheckReport]:
    """Run every check of the named suite (or "all") and return the reports in order."""
    cfg = config or Config()
    tasks = suite_tasks(name, cfg)
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            return list(ex.map(_run_task_star, [(t, cfg.precision) for t in tasks]))
    return [run_task(t, cfg.precision) for t in tasks]


# ---------------------------------------------------------------------------
# acceptance criteria: suite tasks minus the diagnostic extras

_CRITERIA = {
    1: ("exact q-series identities", 30, "qseries", None),
    2: ("special functions", 60, "specfun", {"W_branches", "W_asymptotic", "boldW_asymptotic",
                                             "beta_t0_independence", "beta_asymptotic", "boldbeta_asymptotic",
                                             "beta_derivative_relations", "B_limit"}),
    3: ("operator identities", 300, "operators", None),
    4: ("Eisenstein and Green", 600, "eisenstein+green", {"residue_E", "calE_growth", "Gs_large_height", "klf_check"}),
    5: ("Niebur series", 600, "niebur", {"niebur_routes", "Cn_constancy", "seed_modes", "seed_ds_modes",
                                         "laplace_jj1"}),
    6: ("Rohrlich pairing", 600, "rohrlich", {"rohrlich"}),
    7: ("inner-product consistency", 1800, "theorem12", None),
    8: ("expansion shapes", 300, "modes", None),
}


@dataclass
class CriterionResult:
    number: int
    title: str
    status: str
    runtime_s: float
    budget_s: float
    reports: list

    def line(self) -> str:
        reds = [r.name for r in self.reports if r.status != "pass"]
        tail = f"  failing: {', '.join(reds)}" if reds else ""
        return (f"criterion {self.number} [{self.status.upper()}] {self.title}: {len(self.reports)} checks, "
                f"{self.runtime_s:.1f}s of {self.budget_s:.0f}s budget{tail}")


def criterion_tasks(number: int, cfg: Config | None = None) -> list[Task]:
    cfg = cfg or Config()
    _, _, suites, keep = _CRITERIA[number]
    tasks = [t for s in suites.split("+") for t in _suite_tasks(s, cfg)]
    if keep is None:
        return tasks
    # keep only the literal checks; the first-order and corrected-rule variants are diagnostics
    return [t for t in tasks if _task_name(t) in keep and not _is_variant(t)]


def _task_name(task: Task) -> str:
    module, func, kwargs = task
    if func == "edge_check":
        return kwargs["name"]
    return func[:-len("_check")] if func.endswith("_check") and func != "klf_check" else func


def _is_variant(task: Task) -> bool:
    kw = task[2]
    return bool(kw.get("first_order")) or kw.get("log_rule", "stated") != "stated"


def run_criterion(number: int, config: Config | None = None) -> CriterionResult:
    """Run one acceptance criterion; the wall-clock budget is part of the verdict."""
    import time

    cfg = config or Config()
    title, budget, _, _ = _CRITERIA[number]
    t0 = time.perf_counter()
    tasks = criterion_tasks(number, cfg)
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            reports = list(ex.map(_run_task_star, [(t, cfg.precision) for t in tasks]))
    else:
        reports = [run_task(t, cfg.precision) for t in tasks]
    dt = time.perf_counter() - t0
    code = exit_code(reports)
    status = {0: "pass", 1: "fail", 2: "inconclusive"}[code]
    if status == "pass" and dt > budget:
        status = "fail"
    return CriterionResult(number, title, status, dt, budget, reports)


# ---------------------------------------------------------------------------
# CSV sweeps

def sweeps_for(name: str) -> dict[str, list[dict]]:
    """Data series attached to a suite: W/boldW and B(r) for specfun, calE growth for eisenstein."""
    from .checks import calE_sweep, specfun_sweeps

    out: dict[str, list[dict]] = {}
    if name in ("specfun", "all"):
        out.update(specfun_sweeps())
    if name in ("eisenstein", "all"):
        out["calE_growth"] = calE_sweep()
    return out


def write_sweeps_csv(path: str | Path, sweeps: dict[str, list[dict]]) -> int:
    """Long-form CSV with one row per sample; returns the number of rows written."""
    import csv

    keys: list[str] = []
    for rows in sweeps.values():
        for r in rows:
            for k in r:
                if k not in keys:
                    keys.append(k)
    n = 0
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=["series", *keys])
        w.writeheader()
        for series, rows in sweeps.items():
            for r in rows:
                w.writerow({"series": series, **r})
                n += 1
    return n


def summarize(reports: list[CheckReport]) -> dict:
    counts: dict[str, int] = {}
    for r in reports:
        counts[r.status] = counts.get(r.status, 0) + 1
    return {"counts": counts, "exit_code": exit_code(reports),
            "runtime_s": sum(r.runtime_s for r in reports)}


__all__ = ["Config", "ConfigError", "SUITE_NAMES", "parse_point", "parse_points", "parse_config_text",
           "suite_tasks", "run_task", "run_suite",
           "CriterionResult", "criterion_tasks", "run_criterion", "sweeps_for", "write_sweeps_csv", "summarize"]
