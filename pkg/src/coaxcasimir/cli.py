"""Command-line front end: ``python -m coaxcasimir <command> [options]``.

Every command writes one table, either as CSV or as a JSON object
``{"config": ..., "rows": [...], "diagnostics": ...}``. Numbers are printed
with 15 significant digits in scientific notation, so identical
configurations give byte-identical output.

Exit status: 0 success, 2 configuration error, 3 convergence failure,
4 self-test tolerance breach.
"""
import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, fields

import numpy as np

from . import exact, observables, proximity, semiclassical, specfun
from .errors import CasimirError, ConvergenceError, NoSignChangeError
from .observables import Method

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CONVERGENCE = 3
EXIT_SELFTEST = 4

COMMANDS = ("energy", "pressure", "sweep", "figure4", "figure5", "crossover", "selftest")

EPS_COLUMN = {Method.EXACT: "eps_exact12", Method.SEM: "eps_sem",
              Method.PFA_INNER: "eps_pfa_inner", Method.PFA_OUTER: "eps_pfa_outer",
              Method.PFA_GEOM: "eps_pfa_geom"}
RHO_COLUMN = {Method.EXACT: "rho_exact12", Method.SEM: "rho_sem",
              Method.PFA_INNER: "rho_pfa_inner", Method.PFA_OUTER: "rho_pfa_outer",
              Method.PFA_GEOM: "rho_pfa_geom"}


class ConfigError(Exception):
    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


@dataclass
class RunConfig:
    command: str
    methods: tuple = ()
    alpha: float = None
    alpha_min: float = None
    alpha_max: float = None
    points: int = None
    spacing: str = "log"
    format: str = "csv"
    out: str = None
    jobs: int = 1
    rel_tol: float = 1e-8
    w_max: int = 200
    tail_rel_tol: float = 1e-10
    mode: str = "analytic"

    def exact_params(self):
        return exact.ExactParams(rel_tol=self.rel_tol)

    def semi_params(self):
        return semiclassical.SemiParams(w_max=self.w_max, tail_rel_tol=self.tail_rel_tol)

    def grid(self):
        if self.spacing == "log":
            return np.geomspace(self.alpha_min, self.alpha_max, self.points)
        return np.linspace(self.alpha_min, self.alpha_max, self.points)

    def as_dict(self):
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["methods"] = [m.value for m in self.methods]
        return d


# Defaults that depend on the command (flags and config file override them).
COMMAND_DEFAULTS = {
    "energy": {"methods": "exact,sem,pfa-inner,pfa-outer,pfa-geom"},
    "pressure": {"methods": "exact,sem"},
    "sweep": {"methods": "sem,exact", "alpha_min": 1.1, "alpha_max": 4.0, "points": 30},
    "figure4": {"methods": "exact,sem", "alpha_min": 1.1, "alpha_max": 10.0, "points": 40},
    "figure5": {"methods": "sem,pfa-inner,pfa-outer", "alpha_min": 1.02, "alpha_max": 2.5,
                "points": 40},
    "crossover": {"methods": "exact"},
    "selftest": {},
}

_CONVERTERS = {
    "alpha": float, "alpha_min": float, "alpha_max": float, "points": int,
    "spacing": str, "format": str, "out": str, "jobs": int, "rel_tol": float,
    "w_max": int, "tail_rel_tol": float, "mode": str, "methods": str,
}


def build_parser():
    p = argparse.ArgumentParser(prog="coaxcasimir",
                                description="Casimir energy and pressure for coaxial cylinders.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--method", dest="methods",
                   help="comma list of exact, sem, pfa-inner, pfa-outer, pfa-geom")
    p.add_argument("--alpha", type=float)
    p.add_argument("--alpha-min", type=float)
    p.add_argument("--alpha-max", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--spacing", choices=("linear", "log"))
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out", help="output path (default: standard output)")
    p.add_argument("--jobs", type=int, help="worker processes for sweeps")
    p.add_argument("--rel-tol", type=float, help="relative tolerance of the exact mode sum")
    p.add_argument("--w-max", type=int, help="winding-number cap of the semiclassical sum")
    p.add_argument("--tail-rel-tol", type=float)
    p.add_argument("--mode", choices=("analytic", "fd"), help="pressure derivative mode")
    p.add_argument("--config", help="key=value file with defaults for the options above")
    return p


def read_config_file(path):
    """Parse a ``key = value`` file; ``#`` starts a comment."""
    out = {}
    try:
        text = open(path, encoding="utf-8").read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}", "config") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value", "config")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "method":
            key = "methods"
        if key not in _CONVERTERS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}", key)
        out[key] = value
    return out


def _convert(key, value):
    try:
        return _CONVERTERS[key](value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value for {key}: {value!r}", key) from exc


def resolve_config(argv):
    """Merge built-in defaults, the config file and flags (in rising precedence)."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:
            raise
        raise ConfigError("invalid command line", "argv") from exc
    merged = dict(COMMAND_DEFAULTS[ns.command])
    if ns.config:
        merged.update(read_config_file(ns.config))
    for key in _CONVERTERS:
        v = getattr(ns, key, None)
        if v is not None:
            merged[key] = v
    values = {k: _convert(k, v) for k, v in merged.items()}
    methods = values.pop("methods", "")
    try:
        values["methods"] = tuple(Method(m.strip()) for m in methods.split(",") if m.strip())
    except ValueError as exc:
        raise ConfigError(f"unknown method in {methods!r}", "method") from exc
    cfg = RunConfig(command=ns.command, **values)
    validate_config(cfg)
    return cfg


def validate_config(cfg):
    if cfg.format not in ("csv", "json"):
        raise ConfigError("format must be csv or json", "format")
    if cfg.spacing not in ("linear", "log"):
        raise ConfigError("spacing must be linear or log", "spacing")
    if cfg.mode not in ("analytic", "fd"):
        raise ConfigError("mode must be analytic or fd", "mode")
    if cfg.jobs < 1:
        raise ConfigError("jobs must be >= 1", "jobs")
    if not (0 < cfg.rel_tol <= 1e-2):
        raise ConfigError("rel_tol must lie in (0, 1e-2]", "rel_tol")
    if cfg.w_max < 1:
        raise ConfigError("w_max must be >= 1", "w_max")
    if not (0 < cfg.tail_rel_tol < 1):
        raise ConfigError("tail_rel_tol must lie in (0, 1)", "tail_rel_tol")
    if cfg.command in ("energy", "pressure"):
        if cfg.alpha is None:
            raise ConfigError("--alpha is required", "alpha")
        if not cfg.alpha > 1:
            raise ConfigError("alpha must be > 1", "alpha")
        if Method.EXACT in cfg.methods and cfg.alpha < exact.ALPHA_MIN:
            raise ConfigError(f"exact method needs alpha >= {exact.ALPHA_MIN}", "alpha")
        if not cfg.methods:
            raise ConfigError("at least one method is required", "method")
    if cfg.command in ("sweep", "figure4", "figure5"):
        if cfg.points is None or cfg.points < 2:
            raise ConfigError("points must be >= 2", "points")
        if not (cfg.alpha_min > 1 and cfg.alpha_max > cfg.alpha_min):
            raise ConfigError("need 1 < alpha_min < alpha_max", "alpha_min")
        if Method.EXACT in cfg.methods and cfg.alpha_min <= exact.ALPHA_MIN:
            raise ConfigError(f"exact sweeps need alpha_min > {exact.ALPHA_MIN}", "alpha_min")
    if cfg.command == "crossover":
        if len(cfg.methods) != 1 or cfg.methods[0] not in (Method.EXACT, Method.SEM):
            raise ConfigError("crossover takes exactly one method: exact or sem", "method")


# --------------------------------------------------------------------------
# Formatting
# --------------------------------------------------------------------------

def fmt(x):
    """15 significant digits, scientific notation; ``nan`` for missing values."""
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return "nan"
    return "%.14e" % x


def _json_number(x):
    s = fmt(x)
    return None if s == "nan" else float(s)


def render(columns, rows, config, diagnostics, kind):
    if kind == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([fmt(r.get(c)) for c in columns])
        return buf.getvalue()
    obj = {"config": config,
           "rows": [{c: _json_number(r.get(c)) for c in columns} for r in rows],
           "diagnostics": diagnostics}
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=False) + "\n"


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------

def _mode(cfg):
    return (observables.DerivativeMode.ANALYTIC if cfg.mode == "analytic"
            else observables.DerivativeMode.CENTRAL_DIFFERENCE)


def cmd_energy(cfg):
    row = {"alpha": cfg.alpha}
    diag = {}
    for m in cfg.methods:
        p = observables.method_energy(m, cfg.alpha, cfg.exact_params(), cfg.semi_params())
        row[EPS_COLUMN[m]] = p.epsilon
        diag[m.value] = {"error_estimate": p.error}
        if m is Method.EXACT:
            row["err_est"] = p.error
    cols = ["alpha"] + [EPS_COLUMN[m] for m in cfg.methods]
    if Method.EXACT in cfg.methods:
        cols.append("err_est")
    return cols, [row], diag


def cmd_pressure(cfg):
    row = {"alpha": cfg.alpha}
    diag = {}
    for m in cfg.methods:
        r = observables.pressure(m, cfg.alpha, _mode(cfg), cfg.exact_params(), cfg.semi_params())
        row[RHO_COLUMN[m]] = r.rho
        diag[m.value] = {"error_estimate": r.error_estimate, "mode": r.derivative_mode.value}
        if m is Method.EXACT:
            row["rho_full_exact"] = r.rho - observables.SELF_PRESSURE
            row["err_est"] = r.error_estimate
    cols = ["alpha"] + [RHO_COLUMN[m] for m in cfg.methods]
    if Method.EXACT in cfg.methods:
        cols += ["rho_full_exact", "err_est"]
    return cols, [row], diag


def _sweep_rows(cfg):
    return observables.compare_methods(cfg.grid(), cfg.exact_params(), cfg.semi_params(),
                                       jobs=cfg.jobs)


def _row_dict(r):
    d = {"alpha": r.alpha, "rho_full_exact": r.rho_full_exact, "err_est": r.err_est}
    for m in Method:
        d[EPS_COLUMN[m]] = r.epsilon.get(m.value, math.nan)
        d[RHO_COLUMN[m]] = r.rho.get(m.value, math.nan)
    return d


def _row_diagnostics(rows):
    out = []
    for r in rows:
        out.append({"alpha": _json_number(r.alpha),
                    "deviation_eps": _json_number(r.deviation_eps),
                    "deviation_rho": _json_number(r.deviation_rho),
                    "wge1_share": _json_number(r.wge1_share),
                    "error": r.error})
    return out


def cmd_sweep(cfg):
    rows = _sweep_rows(cfg)
    cols = ["alpha"] + [EPS_COLUMN[m] for m in cfg.methods] + [RHO_COLUMN[m] for m in cfg.methods]
    if Method.EXACT in cfg.methods:
        cols += ["rho_full_exact", "err_est"]
    devs = [abs(r.deviation_rho) for r in rows if math.isfinite(r.deviation_rho)]
    diag = {"rows": _row_diagnostics(rows),
            "max_abs_deviation_rho": _json_number(max(devs)) if devs else None}
    return cols, [_row_dict(r) for r in rows], diag


def cmd_figure4(cfg):
    rows = _sweep_rows(cfg)
    cols = ["alpha", "eps_exact12", "eps_sem", "rho_exact12", "rho_sem"]
    return cols, [_row_dict(r) for r in rows], {"rows": _row_diagnostics(rows)}


def cmd_figure5(cfg):
    out = []
    sp = cfg.semi_params()
    for a in cfg.grid():
        a = float(a)
        out.append({"alpha": a,
                    "eps_sem": semiclassical.energy_sem(a, sp).epsilon,
                    "eps_pfa_inner": proximity.energy_pfa(a, proximity.PfaVariant.INNER_AREA),
                    "eps_pfa_outer": proximity.energy_pfa(a, proximity.PfaVariant.OUTER_AREA)})
    return ["alpha", "eps_sem", "eps_pfa_inner", "eps_pfa_outer"], out, {}


def cmd_crossover(cfg):
    m = cfg.methods[0]
    a = observables.find_crossover(cfg.exact_params(), method=m, semi_params=cfg.semi_params())
    return ["alpha"], [{"alpha": a}], {"method": m.value, "bracket": list(observables.CROSSOVER_BRACKET),
                                       "xtol": 1e-3}


def selftest_suites():
    """Named invariant checks; each returns ``(passed, detail)``."""
    def wronskian():
        rng = np.random.default_rng(12345)
        n = rng.integers(0, 2000, 2000)
        y = np.exp(rng.uniform(np.log(1e-6), np.log(1e5), 2000))
        worst = max(specfun.bessel_ik_scaled(int(a), float(b)).wronskian_residual()
                    for a, b in zip(n, y))
        return worst < 1e-11, f"max residual {worst:.3g}"

    def w0_closed_form():
        worst = max(abs(semiclassical.energy_sem(a).subtotals["w0"]
                        / semiclassical.energy_sem_w0_closed(a) - 1.0) for a in (1.1, 2.0, 5.0, 10.0))
        return worst < 1e-12, f"max relative deviation {worst:.3g}"

    def pfa_geom_identity():
        ok = all(proximity.energy_pfa(a, "GeometricMean") == semiclassical.energy_sem_w0_closed(a)
                 for a in (1.01, 1.5, 3.3, 17.0))
        return ok, "bit-identical" if ok else "mismatch"

    def inner_cylinder():
        terms = semiclassical.inner_cylinder_terms(50, 10)
        ok = all(d == -n for _, _, d, n in terms) and semiclassical.inner_cylinder_energy_sem() == 0.0
        return ok, f"{len(terms)} families"

    def derivative_modes():
        # Away from grazing ratios, where eps_sem is smooth.
        worst = 0.0
        for m in (Method.SEM, Method.PFA_INNER, Method.PFA_OUTER, Method.PFA_GEOM):
            for a in (1.5, 3.0):
                r1 = observables.pressure(m, a, observables.DerivativeMode.ANALYTIC)
                r2 = observables.pressure(m, a, observables.DerivativeMode.CENTRAL_DIFFERENCE)
                worst = max(worst, abs(r1.rho - r2.rho) / abs(r1.rho))
        return worst < 1e-6, f"max relative deviation {worst:.3g}"

    def pfa_recovery():
        a = 1.02
        v = (a - 1.0) ** 3 * exact.energy_exact_12(a).epsilon
        dev = abs(v / proximity.PFA_CONSTANT - 1.0)
        return dev < 0.03, f"relative deviation {dev:.3g} at alpha={a}"

    return {"bessel_wronskian": wronskian, "w0_closed_form": w0_closed_form,
            "pfa_geom_identity": pfa_geom_identity, "inner_cylinder_cancellation": inner_cylinder,
            "derivative_modes": derivative_modes, "pfa_recovery_exact": pfa_recovery}


def cmd_selftest(cfg):
    rows, diag = [], {}
    for name, fn in selftest_suites().items():
        try:
            ok, detail = fn()
        except CasimirError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        rows.append({"suite": name, "passed": ok})
        diag[name] = {"passed": ok, "detail": detail}
    return rows, diag


COMMAND_FUNCS = {"energy": cmd_energy, "pressure": cmd_pressure, "sweep": cmd_sweep,
                 "figure4": cmd_figure4, "figure5": cmd_figure5, "crossover": cmd_crossover}


def _emit(text, cfg):
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error_record(kind, exc, field=None):
    rec = {"error": kind, "message": str(exc)}
    if field:
        rec["field"] = field
    sys.stderr.write(json.dumps(rec) + "\n")


def run(cfg):
    """Execute a resolved configuration; returns the exit status."""
    if cfg.command == "selftest":
        rows, diag = cmd_selftest(cfg)
        if cfg.format == "json":
            text = json.dumps({"config": cfg.as_dict(), "rows": rows, "diagnostics": diag},
                              indent=2) + "\n"
        else:
            text = "".join(f"{r['suite']},{'pass' if r['passed'] else 'FAIL'}\n" for r in rows)
        _emit(text, cfg)
        return EXIT_OK if all(r["passed"] for r in rows) else EXIT_SELFTEST
    cols, rows, diag = COMMAND_FUNCS[cfg.command](cfg)
    _emit(render(cols, rows, cfg.as_dict(), diag, cfg.format), cfg)
    return EXIT_OK


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = resolve_config(argv)
    except ConfigError as exc:
        _error_record("config", exc, exc.field)
        return EXIT_CONFIG
    try:
        return run(cfg)
    except (ConvergenceError, NoSignChangeError) as exc:
        _error_record("convergence", exc)
        return EXIT_CONVERGENCE
    except CasimirError as exc:
        _error_record("config", exc)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
