"""
Command-line scenario runner.

    qdint <scenario> --config path.json [--out path] [--format csv|json]
                     [--sweep key=v1,v2,...] [--plot]

A config is a JSON object ``{"scenario": ..., "parameters": {...}}`` with an
optional ``"units"`` entry (only ``"gamma1"``: every rate and frequency is in
units of the first decay rate). Exit codes: 0 success, 2 invalid config,
3 physics or numerics failure.
"""
import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from . import __version__
from . import dressed as dr
from . import dynamics as dy
from . import interference as it
from . import numerics as nx
from . import operators as ops
from . import response as rs

__all__ = [
    "ScenarioConfig", "ResultEnvelope", "ConfigError", "PhysicsError", "SweepFailure",
    "SCENARIOS", "parse_config", "emit_config", "validate", "run_scenario", "sweep", "main",
]

REQUIRED = object()
REQUIRED_STR = object()
UNITS = ("gamma1",)
FORMATS = ("csv", "json")


class ConfigError(ValueError):
    """Invalid configuration; ``errors`` lists every offending key."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class PhysicsError(RuntimeError):
    """A scenario failed inside the physics or numerics layer."""


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    parameters: dict = field(default_factory=dict)
    output: str = None
    format: str = "csv"
    units: str = "gamma1"


@dataclass
class ResultEnvelope:
    config: ScenarioConfig
    columns: list
    rows: list
    summary: dict
    version: str = __version__

    def __post_init__(self):
        n = len(self.columns)
        bad = [k for k, r in enumerate(self.rows) if len(r) != n]
        if bad:
            raise ValueError(f"rows {bad[:5]} do not have {n} columns")

    def to_dict(self):
        return {"config": _config_dict(self.config), "version": self.version,
                "columns": list(self.columns), "rows": [[float(x) for x in r] for r in self.rows],
                "summary": _jsonable(self.summary)}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        buf.write(f"# qdint {self.version}\n")
        buf.write(f"# config {json.dumps(_config_dict(self.config), sort_keys=True)}\n")
        buf.write(f"# summary {json.dumps(_jsonable(self.summary), sort_keys=True)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow(["%.12g" % x for x in r])
        return buf.getvalue()


@dataclass(frozen=True)
class SweepFailure:
    value: object
    message: str


@dataclass(frozen=True)
class Scenario:
    params: dict
    run: object
    help: str


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (np.integer, int)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": float(x.real), "im": float(x.imag)}
    return x


# ---------------------------------------------------------------------------
# config parsing

def _config_dict(cfg):
    d = {"scenario": cfg.scenario, "parameters": dict(sorted(cfg.parameters.items())),
         "format": cfg.format, "units": cfg.units}
    if cfg.output is not None:
        d["output"] = cfg.output
    return d


def emit_config(cfg):
    return json.dumps(_config_dict(cfg), indent=2, sort_keys=True) + "\n"


def parse_config(text):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError([f"config is not valid JSON: {e}"]) from None
    if not isinstance(raw, dict):
        raise ConfigError(["config must be a JSON object"])
    errors = []
    unknown = sorted(set(raw) - {"scenario", "parameters", "output", "format", "units"})
    errors += [f"unknown top-level key {k!r}" for k in unknown]
    params = raw.get("parameters", {})
    if not isinstance(params, dict):
        errors.append("'parameters' must be an object")
        params = {}
    if errors:
        raise ConfigError(errors)
    return ScenarioConfig(raw.get("scenario"), dict(params), raw.get("output"),
                          raw.get("format", "csv"), raw.get("units", "gamma1"))


def validate(cfg):
    """Config with defaults filled in; raises ConfigError listing every problem."""
    errors = []
    if cfg.scenario not in SCENARIOS:
        raise ConfigError([f"unknown scenario {cfg.scenario!r}; choose from {', '.join(SCENARIOS)}"])
    if cfg.format not in FORMATS:
        errors.append(f"format {cfg.format!r} not in {FORMATS}")
    if cfg.units not in UNITS:
        errors.append(f"units {cfg.units!r} not supported; use {UNITS}")
    spec = SCENARIOS[cfg.scenario].params
    params = {}
    for key in sorted(set(cfg.parameters) - set(spec)):
        errors.append(f"unknown parameter {key!r} for scenario {cfg.scenario}")
    for key, default in spec.items():
        if key not in cfg.parameters:
            if default is REQUIRED or default is REQUIRED_STR:
                errors.append(f"missing parameter {key!r}")
            else:
                params[key] = default
            continue
        value = cfg.parameters[key]
        expected = str if isinstance(default, str) else (int if isinstance(default, int) else float)
        if default is REQUIRED:
            expected = float
        elif default is REQUIRED_STR:
            expected = str
        if expected is str:
            if not isinstance(value, str):
                errors.append(f"parameter {key!r} must be a string")
                continue
        elif isinstance(value, bool) or not isinstance(value, (int, float)) or not np.isfinite(value):
            errors.append(f"parameter {key!r} must be a finite number")
            continue
        elif expected is int and int(value) != value:
            errors.append(f"parameter {key!r} must be an integer")
            continue
        params[key] = expected(value)
    if errors:
        raise ConfigError(errors)
    return ScenarioConfig(cfg.scenario, params, cfg.output, cfg.format, cfg.units)


def _choice(p, key, options):
    if p[key] not in options:
        raise ConfigError([f"parameter {key!r} must be one of {options}"])
    return p[key]


def _positive(p, *keys):
    bad = [k for k in keys if p[k] <= 0]
    if bad:
        raise ConfigError([f"parameter {k!r} must be positive" for k in bad])


def _grid(p):
    _positive(p, "n_points")
    if p["d_max"] <= p["d_min"]:
        raise ConfigError(["'d_max' must exceed 'd_min'"])
    return np.linspace(p["d_min"], p["d_max"], p["n_points"])


def _times(p):
    _positive(p, "t_max", "n_times")
    return np.linspace(0.0, p["t_max"], p["n_times"])


# ---------------------------------------------------------------------------
# scenarios

def _v_decay_setup(p):
    scheme = ops.v_scheme(p["delta"], 1.0, p["gamma2"])
    c = ops.couplings_for(scheme, gamma12=p["gamma12"])
    return scheme, c, dy.liouvillian_for(scheme, None, c, ops.Frame.LAB)


def _v_initial(scheme, p):
    label = "1" if p["initial"] == "auto" else _choice(p, "initial", ("auto",) + scheme.basis_labels)
    return dy.DensityMatrix.basis_state(scheme.basis_labels, label)


def _fit_rate(t, y, floor=1e-12):
    mask = y > floor
    if mask.sum() < 2:
        return float("nan")
    return float(-np.polyfit(t[mask], np.log(y[mask]), 1)[0])


def run_decay(p):
    times = _times(p)
    system = _choice(p, "system", ("v", "two-atom"))
    if system == "two-atom":
        scheme = ops.two_atom_scheme()
        c = ops.couplings_for(scheme, gamma12=p["gamma12"])
        l = dy.liouvillian_for(scheme, None, c, ops.Frame.LAB)
        label = "eg" if p["initial"] == "auto" else _choice(p, "initial", ("auto",) + scheme.basis_labels)
        traj = dy.evolve(l, dy.DensityMatrix.basis_state(scheme.basis_labels, label), times)
        coll = [it.dicke_observables(s) for s in traj.states]
        rows = [(t, k.ee, k.ss, k.aa, k.sa.real, k.sa.imag) for t, k in zip(times, coll)]
        ss = np.array([r[2] for r in rows])
        aa = np.array([r[3] for r in rows])
        summary = {"rate_ss": _fit_rate(times, ss), "rate_aa": _fit_rate(times, aa),
                   "expected_ss": 1 + p["gamma12"], "expected_aa": 1 - p["gamma12"]}
        return ["t", "rho_ee", "rho_ss", "rho_aa", "re_rho_sa", "im_rho_sa"], rows, summary
    scheme, c, l = _v_decay_setup(p)
    traj = dy.evolve(l, _v_initial(scheme, p), times)
    alpha = dy.constant_of_motion_alpha(traj)
    sup = dy.superposition_populations(traj)
    rows = [(t, s.population("1"), s.population("2"), s.population("3"),
             s.element("1", "3").real, s.element("1", "3").imag, a, q[0], q[1])
            for t, s, a, q in zip(times, traj.states, alpha, sup)]
    final = traj.states[-1]
    summary = {"alpha_initial": alpha[0], "alpha_final": alpha[-1],
               "alpha_drift": float(np.max(np.abs(alpha - alpha[0]))),
               "final_populations": [final.population(k) for k in ("1", "2", "3")]}
    return ["t", "rho11", "rho22", "rho33", "re_rho13", "im_rho13", "alpha", "rho_ss", "rho_aa"], rows, summary


def run_steady(p):
    if p["omega"] > 0:
        scheme, c, l = rs.both_driven_v(p["omega"], p["delta"], p["gamma12"], 1.0, p["delta_l"])
        rho0 = None
    else:
        scheme, c, l = _v_decay_setup(p)
        rho0 = _v_initial(scheme, p)
    kernel = len(nx.null_space(l.generator, dy.KERNEL_TOL))
    rho = dy.steady_state(l, rho0 if kernel > 1 else None)
    labels = scheme.basis_labels
    rows = [(i + 1, j + 1, rho.matrix[i, j].real, rho.matrix[i, j].imag)
            for i in range(len(labels)) for j in range(len(labels))]
    summary = {"kernel_dimension": kernel, "labels": list(labels),
               "populations": [rho.population(k) for k in labels]}
    return ["row", "col", "re", "im"], rows, summary


def run_trap(p):
    times = _times(p)
    scheme, c, l = _v_decay_setup(p)
    traj = dy.evolve(l, _v_initial(scheme, p), times)
    sup = dy.superposition_populations(traj)
    rows = [(t,) + tuple(q) for t, q in zip(times, sup)]
    rates = ops.superposition_rates(1.0, p["gamma2"], p["gamma12"])
    summary = {"final_rho_ss": sup[-1, 0], "final_rho_aa": sup[-1, 1],
               "trapped": bool(sup[-1, 1] > 1e-6), "superposition_rates": list(rates)}
    return ["t", "rho_ss", "rho_aa", "re_rho_sa", "im_rho_sa"], rows, summary


def run_spectrum(p):
    grid = _grid(p)
    trace = rs.v_fluorescence(p["omega"], p["delta"], p["gamma12"], grid, 1.0, p["delta_l"])
    peaks = rs.find_spectrum_peaks(trace)
    summary = {"total_integrated": trace.integrated(), "coherent_weight": trace.coherent_weight,
               "peaks": list(peaks), "peak_count": len(peaks)}
    return ["delta", "spectrum"], list(zip(grid, trace.values)), summary


def run_absorb_w12(p):
    grid = _grid(p)
    trace = rs.probe_w12(p["omega"], p["splitting"], grid, p["p"], 1.0, p["gamma2"])
    marks = rs.probe_w12(p["omega"], p["splitting"], [-p["omega"], 0.0, p["omega"]], p["p"], 1.0, p["gamma2"])
    summary = {"w_minus": marks.values[0], "w_zero": marks.values[1], "w_plus": marks.values[2],
               "peak": float(np.max(np.abs(trace.values)))}
    return ["delta", "w12"], list(zip(grid, trace.values)), summary


def run_absorb_w23(p):
    grid = _grid(p)
    _positive(p, "r")
    trace = rs.probe_w23(p["omega"], p["splitting"], grid, p["p"], p["r"])
    marks = rs.probe_w23(p["omega"], p["splitting"], [0.0, p["omega"]], p["p"], p["r"])
    summary = {"w_zero": marks.values[0], "w_plus": marks.values[1],
               "emissive_at_plus": bool(marks.values[1] < 0)}
    return ["delta", "w23"], list(zip(grid, trace.values)), summary


def run_dressed(p):
    kind = _choice(p, "kind", ("aux", "both", "single", "lambda"))
    om, de, g1, g2, th = p["omega"], p["delta"], p["gamma1"], p["gamma2"], p["theta"]
    x = np.array([1.0, 0.0, 0.0])
    tilt = np.array([np.cos(th), np.sin(th), 0.0])
    if kind == "aux":
        m = dr.aux_level_manifold(om, de)
        table = dr.aux_level_transition_moments(m, x, tilt, g1)
    elif kind == "both":
        m = dr.both_drive_manifold(om, de)
        table = dr.both_drive_transition_moments(m, 1.0, th, g1)
    elif kind == "single":
        m = dr.single_drive_manifold(om, de, g1, g2)
        table = dr.single_drive_transition_moments(m, x, np.sqrt(g2 / g1) * tilt, g1)
    else:
        m, table = dr.lambda_manifold(om, de, g1, g2, p["delta12"],
                                      (np.sqrt(g1) * x, np.sqrt(g2) * tilt))
    h = dr.oracle_block(kind, om, de, g1, g2, p["delta12"])
    numeric, _ = dr.diagonalize_block(h)
    analytic = np.sort(m.energies)[::-1]
    rows = [(k, a, b, table.total_rate(lbl)) for k, (lbl, a, b) in enumerate(zip(m.labels, analytic, numeric))]
    summary = {"labels": list(m.labels), "alpha": m.alpha, "beta": m.beta,
               "max_energy_error": float(np.max(np.abs(analytic - numeric))),
               "classification": dict(dr.classify_states(table)),
               "transitions": [{"from": e.from_state, "to": e.to_state,
                                "moment": list(np.real(e.dipole)), "rate": e.rate} for e in table.entries]}
    return ["state", "energy", "oracle_energy", "total_rate"], rows, summary


def run_cpt(p):
    _positive(p, "gamma1", "gamma2", "n_points", "span")
    g1, g2 = p["gamma1"], p["gamma2"]

    def rho33(delta):
        scheme = ops.lambda_scheme(delta, g1, g2)
        c = ops.couplings_for(scheme, p=p["p"], delta12_plus=p["delta12"])
        drive = dy.matched_lambda_drive(scheme, p["omega"], p["delta_l"])
        mixed = dy.DensityMatrix(np.diag([0.5, 0.5, 0.0]), scheme.basis_labels)
        return dy.cpt_upper_population(scheme, drive, c, mixed)

    zero = dy.cpt_zero_splitting(g1, g2, p["delta12"])
    deltas = zero + np.linspace(-p["span"], p["span"], p["n_points"])
    values = np.array([rho33(d) for d in deltas])
    k = int(np.argmin(values))
    lo, hi = deltas[max(k - 1, 0)], deltas[min(k + 1, len(deltas) - 1)]
    best = minimize_scalar(rho33, bounds=(lo, hi), method="bounded", options={"xatol": 1e-10}) if hi > lo else None
    found = float(best.x) if best is not None else float(deltas[k])
    summary = {"predicted_zero": zero, "zero_crossing": found, "rho33_at_zero": rho33(zero),
               "rho33_at_displaced": [rho33(zero - 2 * g1), rho33(zero + 2 * g1)]}
    return ["delta", "rho33"], list(zip(deltas, values)), summary


def _fringe_phases(reach):
    psi = it.phase_sweep() - np.pi
    return psi[np.abs(psi) <= reach + 1e-12]


def run_young(p):
    _positive(p, "separation", "k0", "distance")
    g = p["g1_abs"] * np.exp(1j * p["g1_arg"])
    f = it.FieldPair(p["i1"], p["i2"], p["omega1"], p["omega2"], p["phi1"], p["phi2"], g)
    d = p["separation"]
    geom = it.SlitGeometry((-d / 2, 0.0, 0.0), (d / 2, 0.0, 0.0), p["k0"])
    psi = _fringe_phases(p["k0"] * d)
    theta = np.arcsin(psi / (p["k0"] * d))
    dirs = [(np.sin(t), 0.0, np.cos(t)) for t in theta]
    pattern = it.young_pattern(geom, f, dirs, p["distance"], p["depth"], p["depth_samples"])
    summary = {"visibility": it.fringe_visibility(pattern),
               "visibility_formula": it.visibility_first_order(f),
               "distinguishability": it.distinguishability(f.i1, f.i2)}
    return ["theta", "phase", "intensity"], list(zip(theta, psi, pattern)), summary


def run_two_atom_pattern(p):
    _positive(p, "kd")
    scheme = ops.two_atom_scheme()
    c = ops.couplings_for(scheme, gamma12=p["gamma12"], omega12=p["omega12"])
    drive = ops.laser(scheme, (p["omega"], p["omega"]), p["delta_l"], ops.DriveTarget.BOTH)
    rho = dy.steady_state(dy.liouvillian_for(scheme, drive, c))
    state = it.dicke_observables(rho)
    x = _fringe_phases(p["kd"])
    g1 = it.two_atom_g1_phase(state, x)
    g2 = it.two_atom_g2_phase(state, x)
    summary = {"rho_gg": state.gg, "rho_ss": state.ss, "rho_aa": state.aa, "rho_ee": state.ee,
               "rho_sa": state.sa, "g1_visibility": it.fringe_visibility(g1),
               "g2_visibility": it.fringe_visibility(g2),
               "first_order_fringes": bool(it.fringe_visibility(g1) > 1e-9)}
    return ["phase", "g1", "g2"], list(zip(x, g1, g2)), summary


def run_eigen(p):
    scheme = ops.aux_level_scheme(p["delta"])
    c = ops.couplings_for(scheme, gamma12=p["gamma12"])
    drive = ops.laser(scheme, (p["omega"], p["omega"]), 0.0, ops.DriveTarget.AUXILIARY)
    block = rs.coherence_block(scheme, drive, c)
    lam = block.eigenvalues()
    roots = np.roots(rs.aux_cubic_coefficients(p["omega"], p["delta"], 1.0, p["gamma12"]))
    roots = roots[np.lexsort((roots.imag, -roots.real))]
    lines = rs.spectral_line_structure(lam)
    rows = [(l.real, l.imag, r.real, r.imag) for l, r in zip(lam, roots)]
    summary = {"lines": [{"position": s.position, "halfwidth": s.halfwidth, "coherent": s.is_coherent}
                         for s in lines],
               "max_root_mismatch": float(max(np.min(np.abs(roots - l)) for l in lam))}
    return ["re_block", "im_block", "re_cubic", "im_cubic"], rows, summary


_GRID = {"d_min": -15.0, "d_max": 15.0, "n_points": 3001}
_TIME = {"t_max": 20.0, "n_times": 201}

SCENARIOS = {
    "decay": Scenario(dict(system="v", delta=0.0, gamma12=REQUIRED, gamma2=1.0, initial="auto", **_TIME),
                      run_decay, "spontaneous decay of a V scheme or two atoms"),
    "steady": Scenario(dict(delta=REQUIRED, gamma12=REQUIRED, gamma2=1.0, initial="auto",
                            omega=0.0, delta_l=0.0),
                       run_steady, "stationary state of a V scheme"),
    "trap": Scenario(dict(delta=REQUIRED, gamma12=REQUIRED, gamma2=1.0, initial="auto", **_TIME),
                     run_trap, "superposition populations and trapping"),
    "spectrum": Scenario(dict(omega=REQUIRED, delta=REQUIRED, gamma12=REQUIRED, delta_l=0.0, **_GRID),
                         run_spectrum, "fluorescence of the both-driven V scheme"),
    "absorb-w12": Scenario(dict(omega=REQUIRED, splitting=REQUIRED, p=REQUIRED, gamma2=1.0,
                                d_min=-45.0, d_max=45.0, n_points=2001),
                           run_absorb_w12, "probe absorption on the driven transition"),
    "absorb-w23": Scenario(dict(omega=REQUIRED, splitting=REQUIRED, p=REQUIRED, r=REQUIRED,
                                d_min=-45.0, d_max=45.0, n_points=2001),
                           run_absorb_w23, "probe absorption on the undriven transition"),
    "dressed": Scenario(dict(kind=REQUIRED_STR, omega=REQUIRED, delta=REQUIRED, gamma1=1.0, gamma2=1.0,
                             theta=0.0, delta12=0.0),
                        run_dressed, "dressed states, oracle check and transition moments"),
    "cpt": Scenario(dict(gamma1=1.0, gamma2=REQUIRED, delta12=REQUIRED, omega=5.0, p=0.5,
                         delta_l=0.0, span=4.0, n_points=161),
                    run_cpt, "upper-level population of a Lambda scheme"),
    "young": Scenario(dict(i1=1.0, i2=1.0, omega1=1.0, omega2=1.0, phi1=0.0, phi2=0.0,
                           g1_abs=1.0, g1_arg=0.0, separation=1.0, k0=2 * np.pi,
                           distance=1000.0, depth=0.0, depth_samples=256),
                      run_young, "two-source interference pattern"),
    "two-atom-pattern": Scenario(dict(omega=REQUIRED, delta_l=0.0, gamma12=0.0, omega12=0.0, kd=np.pi),
                                 run_two_atom_pattern, "first- and second-order fringes of two driven atoms"),
    "eigen": Scenario(dict(omega=REQUIRED, delta=REQUIRED, gamma12=REQUIRED),
                      run_eigen, "eigenvalues of the auxiliary-level coherence block"),
}


def run_scenario(cfg):
    """Validate ``cfg`` and run it.

    Raises
    ------
    ConfigError
        Invalid or missing parameters.
    PhysicsError
        The physics layer rejected the parameters or a solve failed.
    """
    cfg = validate(cfg)
    try:
        columns, rows, summary = SCENARIOS[cfg.scenario].run(dict(cfg.parameters))
    except ConfigError:
        raise
    except (ValueError, ArithmeticError, nx.NumericsError, np.linalg.LinAlgError) as e:
        raise PhysicsError(f"{cfg.scenario}: {e}") from e
    rows = [tuple(float(np.real(x)) for x in r) for r in rows]
    return ResultEnvelope(cfg, list(columns), rows, summary)


def _thread_count():
    env = os.environ.get("QDINT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def sweep(cfg, axis, values, threads=None):
    """Run ``cfg`` once per value of ``axis``, in order.

    Points run concurrently (``QDINT_THREADS`` caps the pool) and each point
    fails on its own: a failure becomes a :class:`SweepFailure` in its slot.
    """
    values = list(values)
    if not values:
        return []
    spec = SCENARIOS.get(cfg.scenario)
    if spec is None:
        raise ConfigError([f"unknown scenario {cfg.scenario!r}"])
    if axis not in spec.params:
        raise ConfigError([f"sweep axis {axis!r} is not a parameter of {cfg.scenario}"])

    def point(v):
        params = dict(cfg.parameters)
        params[axis] = v
        try:
            return run_scenario(ScenarioConfig(cfg.scenario, params, cfg.output, cfg.format, cfg.units))
        except (ConfigError, PhysicsError) as e:
            return SweepFailure(v, str(e))

    with ThreadPoolExecutor(max_workers=min(threads or _thread_count(), len(values))) as pool:
        return list(pool.map(point, values))


def _sweep_values(text):
    if "=" not in text:
        raise ConfigError([f"--sweep expects key=v1,v2,... got {text!r}"])
    key, _, rest = text.partition("=")
    out = []
    for tok in filter(None, (t.strip() for t in rest.split(","))):
        try:
            out.append(float(tok))
        except ValueError:
            out.append(tok)
    return key.strip(), out


def _merge_sweep(cfg, axis, results):
    ok = [r for r in results if isinstance(r, ResultEnvelope)]
    columns = [axis] + (ok[0].columns if ok else [])
    rows, points = [], []
    for r in results:
        if isinstance(r, SweepFailure):
            points.append({axis: r.value, "error": r.message})
            continue
        v = r.config.parameters[axis]
        if isinstance(v, str):
            v = float("nan")
        rows += [(v,) + tuple(row) for row in r.rows]
        points.append({axis: r.config.parameters[axis], **r.summary})
    return ResultEnvelope(cfg, columns, rows, {"sweep_axis": axis, "points": points})


def _plot_script(csv_path, columns):
    x = 1
    lines = [f"# gnuplot script for {os.path.basename(csv_path)}",
             "set datafile separator ','", "set datafile commentschars '#'", "set key autotitle columnhead",
             f"set xlabel '{columns[0]}'"]
    series = [f"'{csv_path}' using {x}:{k + 1} with lines" for k in range(1, len(columns))]
    lines.append("plot " + ", \\\n     ".join(series))
    return "\n".join(lines) + "\n"


def main(argv=None):
    parser = argparse.ArgumentParser(prog="qdint", description="Quantum interference scenario runner.")
    parser.add_argument("scenario", choices=sorted(SCENARIOS))
    parser.add_argument("--config", required=True, help="JSON config file")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--format", choices=FORMATS, help="output format (overrides the config)")
    parser.add_argument("--sweep", help="key=v1,v2,... to run one point per value")
    parser.add_argument("--plot", action="store_true", help="write a gnuplot script next to a CSV output")
    args = parser.parse_args(argv)

    try:
        with open(args.config) as fh:
            cfg = parse_config(fh.read())
        if cfg.scenario not in (None, args.scenario):
            raise ConfigError([f"config scenario {cfg.scenario!r} does not match {args.scenario!r}"])
        fmt = args.format or cfg.format
        out = args.out or cfg.output
        cfg = ScenarioConfig(args.scenario, cfg.parameters, out, fmt, cfg.units)
        if args.sweep:
            axis, values = _sweep_values(args.sweep)
            results = sweep(cfg, axis, values)
            result = _merge_sweep(cfg, axis, results)
            failed = [r for r in results if isinstance(r, SweepFailure)]
        else:
            result = run_scenario(cfg)
            failed = []
    except OSError as e:
        print(f"qdint: cannot read config: {e}", file=sys.stderr)
        return 2
    except ConfigError as e:
        for msg in e.errors:
            print(f"qdint: config error: {msg}", file=sys.stderr)
        return 2
    except PhysicsError as e:
        print(f"qdint: {e}", file=sys.stderr)
        return 3

    text = result.to_csv() if cfg.format == "csv" else result.to_json()
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        if args.plot and cfg.format == "csv":
            with open(os.path.splitext(out)[0] + ".gp", "w") as fh:
                fh.write(_plot_script(out, result.columns))
    else:
        sys.stdout.write(text)
    for f in failed:
        print(f"qdint: sweep point {f.value}: {f.message}", file=sys.stderr)
    return 3 if failed else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
