"""Command-line front end: scenario runners, oracle cross-checks, CSV/JSON.

Every scenario is a thin dispatcher over the pure library modules; the
result is a RunReport whose rows follow one of two schemas:

  spectrum rows:  omega, omega_prime, branch, value_re, value_im, tolerance
  response rows:  gap, value, tail_bound

All outputs state the natural units (c = hbar = k_B = 1) in their
header; numeric values are serialized at 17 significant digits so that a
re-parse reproduces them bit-exactly, and no scenario uses randomness
outside an explicitly seeded oracle point generator, so identical
configurations produce identical output bytes.
"""

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import detectors, diamond, oscint, rindler, specfun, superpose
from .errors import ConvergenceError, DomainError, ValidationError

UNITS_LINE = "natural units: c = hbar = k_B = 1"
SPECTRUM_HEADER = ("omega", "omega_prime", "branch", "value_re", "value_im",
                   "tolerance")
RESPONSE_HEADER = ("gap", "value", "tail_bound")

SCENARIOS = (
    "rindler-spectrum", "diamond-spectrum", "cross-term", "antiparallel",
    "transverse-3p1", "desitter-response", "btz-response", "kms-check",
    "oracle", "selftest",
)

DEFAULTS = {
    "a": 1.0,
    "s": 0.0,
    "n": 1,
    "omega_grid": "0.1:10:32",
    "gap_grid": "0.3:1.5:4",
    "kappa": 1.0,
    "mass": 1.0,
    "ads_length": 1.0,
    "radius": 1.5,
    "delta_phi": 0.0,
    "sigma": 10.0,
    "n_max": 20,
    "packet_center": 3.5,
    "packet_width": 0.35,
    "omega_prime_factor": 1.5,
    "kx": 1.0,
    "ky": 0.5,
    "kz": 0.25,
    "dy": 0.0,
    "dz": 0.0,
    "points": 5,
    "seed": 0,
    "tolerance": 1.0e-8,
    "input": None,
}


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    parameters: dict
    output: str = None
    fmt: str = "csv"


@dataclass
class RunReport:
    schema: tuple
    rows: list
    meta: dict = field(default_factory=dict)
    wall_time: float = 0.0


# ----------------------------------------------------------------------
# Validation
# ----------------------------------------------------------------------

def _parse_grid(spec_str):
    parts = str(spec_str).split(":")
    if len(parts) != 3:
        raise ValueError("grid spec must be lo:hi:count")
    lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 2 or lo <= 0.0 or hi <= lo:
        raise ValueError("grid needs 0 < lo < hi and count >= 2")
    return np.geomspace(lo, hi, count)


def validate(config):
    """Named violations of the configuration; empty list means valid."""
    out = []
    p = config.parameters
    if config.scenario not in SCENARIOS:
        out.append("unknown scenario %r" % config.scenario)
        return out
    if config.fmt not in ("csv", "json"):
        out.append("format must be csv or json")
    if p["a"] <= 0.0:
        out.append("a must be positive")
    try:
        _parse_grid(p["omega_grid"])
    except ValueError as exc:
        out.append("grid non-empty: %s" % exc)
    try:
        _parse_grid(p["gap_grid"])
    except ValueError as exc:
        out.append("gap grid non-empty: %s" % exc)
    if p["packet_width"] >= p["packet_center"] / 5.0:
        out.append("packet width must be < omega0/5")
    if p["packet_width"] <= 0.0 or p["packet_center"] <= 0.0:
        out.append("packet center and width must be positive")
    if p["sigma"] <= 0.0:
        out.append("sigma must be positive")
    if p["kappa"] <= 0.0:
        out.append("kappa must be positive")
    if config.scenario == "btz-response":
        if p["mass"] <= 0.0 or p["ads_length"] <= 0.0:
            out.append("mass and AdS length must be positive")
        elif p["radius"] <= math.sqrt(p["mass"]) * p["ads_length"]:
            out.append("radius must exceed the horizon sqrt(M) l")
        if not 0.0 <= p["delta_phi"] < 2.0 * math.pi:
            out.append("delta_phi must lie in [0, 2 pi)")
    if p["n_max"] < 1:
        out.append("n_max must be >= 1")
    if config.scenario == "desitter-response" and p["s"] < 0.0:
        out.append("separation s must be >= 0")
    if p["tolerance"] <= 0.0:
        out.append("tolerance must be positive")
    if config.scenario == "kms-check" and p["input"] is None:
        out.append("kms-check needs --input (a response curve file)")
    return out


# ----------------------------------------------------------------------
# Scenario runners
# ----------------------------------------------------------------------

def _pack(p):
    return oscint.Wavepacket(p["packet_center"], p["packet_width"])


_REG = oscint.RegulatorParams(epsilon=0.5, extrapolation_levels=8)


def _spectrum_rows(pair, grid, p, planck_fn):
    pack = _pack(p)
    tol = p["tolerance"]
    points = superpose.conditional_spectrum(pair, grid, pack, _REG, tol=tol)
    rows = [(pt.omega, pt.omega_prime, pt.branch, pt.value.real,
             pt.value.imag, tol) for pt in points]
    for om in grid:
        rows.append((float(om), float(om), "planck", planck_fn(float(om)),
                     0.0, tol))
    return rows


def _run_rindler_spectrum(p):
    pair = superpose.BranchPair(
        rindler.WedgeSpec(p["a"]),
        rindler.WedgeSpec(p["a"], null_shift=p["s"]))
    grid = _parse_grid(p["omega_grid"])
    rows = _spectrum_rows(pair, grid, p,
                          lambda om: rindler.planck_number(om, p["a"]))
    meta = {"a": p["a"], "s": p["s"], "temperature": p["a"] / (2.0 * math.pi)}
    return RunReport(SPECTRUM_HEADER, rows, meta)


def _run_diamond_spectrum(p):
    pair = superpose.BranchPair(
        diamond.DiamondSpec(p["a"], 0),
        diamond.DiamondSpec(p["a"], int(p["n"])))
    grid = _parse_grid(p["omega_grid"])
    rows = _spectrum_rows(pair, grid, p,
                          lambda om: diamond.diamond_planck_number(om, p["a"]))
    meta = {"a": p["a"], "n": int(p["n"]),
            "temperature": p["a"] / (2.0 * math.pi)}
    return RunReport(SPECTRUM_HEADER, rows, meta)


def _run_antiparallel(p):
    pair = superpose.BranchPair(
        rindler.WedgeSpec(p["a"], side=rindler.RIGHT),
        rindler.WedgeSpec(p["a"], side=rindler.LEFT))
    grid = _parse_grid(p["omega_grid"])
    rows = _spectrum_rows(pair, grid, p,
                          lambda om: rindler.planck_number(om, p["a"]))
    meta = {"a": p["a"], "temperature": p["a"] / (2.0 * math.pi)}
    return RunReport(SPECTRUM_HEADER, rows, meta)


def _run_cross_term(p):
    grid = _parse_grid(p["omega_grid"])
    fac = p["omega_prime_factor"]
    tol = p["tolerance"]
    rows = []
    for om in grid:
        omp = fac * float(om)
        val = rindler.cross_term_rr_shifted(float(om), omp, p["a"], p["s"])
        rows.append((float(om), omp, "lambda-rr-shifted", val.real, val.imag,
                     tol))
        val = rindler.lambda_rl(float(om), omp, p["a"])
        rows.append((float(om), omp, "lambda-rl", val.real, val.imag, tol))
    meta = {"a": p["a"], "s": p["s"], "omega_prime_factor": fac}
    return RunReport(SPECTRUM_HEADER, rows, meta)


def _run_transverse(p):
    grid = _parse_grid(p["omega_grid"])
    kperp = (p["ky"], p["kz"])
    shift = (p["dy"], p["dz"])
    tol = p["tolerance"]
    rows = []
    for om in grid:
        om = float(om)
        n0 = rindler.occupation_3p1(om, p["kx"], kperp, p["a"])
        ns = rindler.occupation_3p1(om, p["kx"], kperp, p["a"],
                                    transverse_shift=shift)
        pair = rindler.bogoliubov_3p1(om, p["kx"], kperp, p["a"],
                                      transverse_shift=shift)
        ratio = pair.beta / pair.alpha
        rows.append((om, p["kx"], "occupation-unshifted", n0, 0.0, tol))
        rows.append((om, p["kx"], "occupation-shifted", ns, 0.0, tol))
        rows.append((om, p["kx"], "beta-alpha-ratio", ratio.real, ratio.imag,
                     tol))
    meta = {"a": p["a"], "transverse_shift": list(shift),
            "kperp": list(kperp)}
    return RunReport(SPECTRUM_HEADER, rows, meta)


def _gap_pairs(p):
    grid = _parse_grid(p["gap_grid"])
    gaps = []
    for g in grid:
        gaps.extend((float(g), -float(g)))
    return gaps


def _run_desitter(p):
    gaps = _gap_pairs(p)
    rows = [(g, detectors.desitter_superposed_response(g, p["kappa"], p["s"]),
             0.0) for g in gaps]
    curve = detectors.ResponseCurve(tuple(r[0] for r in rows),
                                    tuple(r[1] for r in rows), {})
    t_eff, resid = detectors.kms_fit(curve)
    meta = {"kappa": p["kappa"], "s": p["s"], "t_eff": t_eff,
            "kms_residual": resid,
            "temperature": p["kappa"] / (2.0 * math.pi)}
    return RunReport(RESPONSE_HEADER, rows, meta)


def _run_btz(p):
    params = detectors.BTZParams(p["mass"], p["ads_length"], p["radius"],
                                 n_max=int(p["n_max"]),
                                 delta_phi=p["delta_phi"])
    gaps = _gap_pairs(p)
    rows = []
    for g in gaps:
        cfg = detectors.DetectorConfig(g, p["sigma"])
        val = detectors.btz_superposed_response(cfg, params)
        fermi = 1.0 / (math.exp(g / params.temperature()) + 1.0)
        bound = 0.5 * math.sqrt(math.pi) * fermi \
            * detectors._response_tail_bound(params)
        rows.append((g, val, bound))
    curve = detectors.ResponseCurve(tuple(r[0] for r in rows),
                                    tuple(r[1] for r in rows), {})
    t_eff, resid = detectors.kms_fit(curve)
    meta = {"mass": p["mass"], "ads_length": p["ads_length"],
            "radius": p["radius"], "delta_phi": p["delta_phi"],
            "n_max": int(p["n_max"]), "variant": detectors.CANONICAL,
            "temperature": params.temperature(), "t_eff": t_eff,
            "kms_residual": resid,
            "image_tail_bound": detectors.btz_image_tail_bound(params)}
    return RunReport(RESPONSE_HEADER, rows, meta)


def _read_curve(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    gaps, vals = [], []
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        for row in doc["rows"]:
            gaps.append(float(row["gap"]))
            vals.append(float(row["value"]))
    else:
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("gap"):
                continue
            parts = line.split(",")
            gaps.append(float(parts[0]))
            vals.append(float(parts[1]))
    if not gaps:
        raise ValidationError("input curve %r holds no rows" % path)
    return detectors.ResponseCurve(tuple(gaps), tuple(vals), {})


def _run_kms_check(p):
    curve = _read_curve(p["input"])
    t_eff, resid = detectors.kms_fit(curve)
    rows = [(g, v, 0.0) for g, v in zip(curve.gaps, curve.values)]
    meta = {"t_eff": t_eff, "kms_residual": resid, "input": p["input"]}
    return RunReport(RESPONSE_HEADER, rows, meta)


def _conj_mode(m):
    return oscint.ModeFunction(
        lambda V: np.conj(m.evaluator(V)), m.support, m.label + "*",
        lambda V: np.conj(m.d_evaluator(V)),
        edge_evaluator=(None if m.edge_evaluator is None
                        else lambda d: np.conj(m.edge_evaluator(d))),
        edge_d_evaluator=(None if m.edge_d_evaluator is None
                          else lambda d: np.conj(m.edge_d_evaluator(d))),
    )


def _run_oracle(p):
    """Closed forms vs Klein-Gordon / quadrature oracles at random points."""
    rng = np.random.default_rng(int(p["seed"]))
    tol = p["tolerance"]
    rows = []
    wedge = rindler.WedgeSpec(p["a"], null_shift=p["s"])
    dia = diamond.DiamondSpec(p["a"], 0)
    # the box omega in (0.4, 1.8), k in (0.7, 1.5) keeps the regulated
    # KG tail quadrature comfortably convergent; outside it the tail sum
    # plateaus near 4e-8 absolute and the cross-check would report
    # quadrature noise instead of closed-form accuracy
    for _ in range(int(p["points"])):
        om = float(rng.uniform(0.4, 1.8))
        k = float(rng.uniform(0.7, 1.5))
        pair = rindler.rindler_alpha_beta(om, k, wedge)
        g = rindler.wedge_mode(om, wedge)
        u = rindler.minkowski_mode(k)
        alpha = oscint.kg_inner_product(g, u, _REG)
        beta = oscint.kg_inner_product(_conj_mode(g), u, _REG)
        rows.append((om, k, "rindler-alpha-dev",
                     abs(alpha - pair.alpha) / abs(pair.alpha), 0.0, tol))
        rows.append((om, k, "rindler-beta-dev",
                     abs(beta - pair.beta) / abs(pair.beta), 0.0, tol))
        closed = diamond.diamond_alpha_beta(om, k, dia)
        quad = diamond.diamond_alpha_beta(om, k, dia,
                                          method=diamond.QUADRATURE)
        rows.append((om, k, "diamond-alpha-dev",
                     abs(quad.alpha - closed.alpha) / abs(closed.alpha),
                     0.0, tol))
        rows.append((om, k, "diamond-beta-dev",
                     abs(quad.beta - closed.beta) / abs(closed.beta),
                     0.0, tol))
    worst = max(r[3] for r in rows)
    meta = {"a": p["a"], "s": p["s"], "points": int(p["points"]),
            "seed": int(p["seed"]), "worst_deviation": worst}
    if worst > tol:
        raise ConvergenceError(
            "oracle cross-check deviation %.3e exceeds tolerance %.1e"
            % (worst, tol))
    return RunReport(SPECTRUM_HEADER, rows, meta)


def _run_selftest(p):
    results = specfun.selftest()
    rows = [(0.0, 0.0, name, worst, 0.0, p["tolerance"])
            for name, _passed, worst in results]
    meta = {"passed": all(ok for _, ok, _ in results)}
    for name, ok, worst in results:
        print("%s  %s  (worst %.3e)" % ("PASS" if ok else "FAIL", name, worst))
    if not meta["passed"]:
        raise ValidationError("special-function selftest failed")
    return RunReport(SPECTRUM_HEADER, rows, meta)


_RUNNERS = {
    "rindler-spectrum": _run_rindler_spectrum,
    "diamond-spectrum": _run_diamond_spectrum,
    "cross-term": _run_cross_term,
    "antiparallel": _run_antiparallel,
    "transverse-3p1": _run_transverse,
    "desitter-response": _run_desitter,
    "btz-response": _run_btz,
    "kms-check": _run_kms_check,
    "oracle": _run_oracle,
    "selftest": _run_selftest,
}


# ----------------------------------------------------------------------
# Serialization
# ----------------------------------------------------------------------

def _f17(x):
    """17-significant-digit decimal form; re-parses bit-exactly."""
    return "%.17g" % float(x)


def _emit_csv(report):
    lines = ["# " + UNITS_LINE]
    for key in sorted(report.meta):
        lines.append("# %s = %s" % (key, report.meta[key]))
    lines.append(",".join(report.schema))
    for row in report.rows:
        cells = []
        for cell in row:
            cells.append(cell if isinstance(cell, str) else _f17(cell))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _emit_json(report):
    rows = []
    for row in report.rows:
        obj = {}
        for key, cell in zip(report.schema, row):
            obj[key] = cell if isinstance(cell, str) else float(_f17(cell))
        rows.append(obj)
    meta = dict(report.meta)
    meta["units"] = UNITS_LINE
    doc = {"meta": meta, "rows": rows}
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def emit(report, fmt):
    return _emit_csv(report) if fmt == "csv" else _emit_json(report)


def run(config):
    """Execute a validated scenario and write its output; returns the report."""
    violations = validate(config)
    if violations:
        raise ValidationError("; ".join(violations))
    t0 = time.time()
    report = _RUNNERS[config.scenario](config.parameters)
    report.wall_time = time.time() - t0
    report.meta["scenario"] = config.scenario
    text = emit(report, config.fmt)
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return report


# ----------------------------------------------------------------------
# Argument handling
# ----------------------------------------------------------------------

def _build_parser():
    ap = argparse.ArgumentParser(
        prog="wedgeworks",
        description="Mode-overlap spectra and detector responses for "
                    "superposed noninertial frames (%s)." % UNITS_LINE)
    ap.add_argument("--scenario", choices=SCENARIOS)
    ap.add_argument("--config", help="flat JSON file mirroring the flags; "
                                     "explicit flags override it")
    ap.add_argument("--output", help="output path (default: stdout)")
    ap.add_argument("--format", dest="fmt", choices=("csv", "json"))
    ap.add_argument("--a", type=float)
    ap.add_argument("--s", type=float)
    ap.add_argument("--n", type=int)
    ap.add_argument("--omega-grid", dest="omega_grid",
                    help="lo:hi:count (geometric)")
    ap.add_argument("--gap-grid", dest="gap_grid",
                    help="lo:hi:count; runs use +-gap pairs")
    ap.add_argument("--kappa", type=float)
    ap.add_argument("--mass", type=float)
    ap.add_argument("--ads-length", dest="ads_length", type=float)
    ap.add_argument("--radius", type=float)
    ap.add_argument("--delta-phi", dest="delta_phi", type=float)
    ap.add_argument("--sigma", type=float)
    ap.add_argument("--n-max", dest="n_max", type=int)
    ap.add_argument("--packet-center", dest="packet_center", type=float)
    ap.add_argument("--packet-width", dest="packet_width", type=float)
    ap.add_argument("--omega-prime-factor", dest="omega_prime_factor",
                    type=float)
    ap.add_argument("--kx", type=float)
    ap.add_argument("--ky", type=float)
    ap.add_argument("--kz", type=float)
    ap.add_argument("--dy", type=float)
    ap.add_argument("--dz", type=float)
    ap.add_argument("--points", type=int)
    ap.add_argument("--seed", type=int)
    ap.add_argument("--tolerance", type=float)
    ap.add_argument("--input")
    return ap


def config_from_args(argv):
    args = vars(_build_parser().parse_args(argv))
    params = dict(DEFAULTS)
    env_tol = os.environ.get("WEDGEWORKS_TOL")
    if env_tol is not None:
        params["tolerance"] = float(env_tol)
    scenario, output, fmt = None, None, "csv"
    if args.get("config"):
        with open(args["config"], "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        for key, val in doc.items():
            if key == "scenario":
                scenario = val
            elif key == "output":
                output = val
            elif key == "format":
                fmt = val
            elif key in params:
                params[key] = val
            else:
                raise ValidationError("unknown config key %r" % key)
    for key, val in args.items():
        if key in ("config",) or val is None:
            continue
        if key == "scenario":
            scenario = val
        elif key == "output":
            output = val
        elif key == "fmt":
            fmt = val
        else:
            params[key] = val
    if scenario is None:
        raise ValidationError("a scenario is required (flag or config file)")
    return ScenarioConfig(scenario, params, output, fmt)


def main(argv=None):
    try:
        config = config_from_args(sys.argv[1:] if argv is None else argv)
        run(config)
    except (ValidationError, DomainError) as exc:
        print("validation error: %s" % exc, file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print("convergence error: %s" % exc, file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
