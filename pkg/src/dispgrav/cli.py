"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 numerical
failure (including instability).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .core import HBAR, M_U, CoefficientSource, Constant, London, Tabulated
from .dipole_fields import (
    EvaluationPoint,
    MonochromaticDipole,
    default_step,
    field_from_spectrum,
    field_time_domain,
    maxwell_residual,
)
from .dispersion_potential import (
    casimir_limit,
    expansion_polynomial,
    potential_expanded,
    potential_full,
    vdw_limit_general,
    vdw_limit_london,
)
from .exceptions import InstabilityError, InvalidInputError, NumericalFailureError
from .gravity_map import calibration, mass_to_polarizability, polarizability_to_mass
from .normal_modes import (
    ParticlePair,
    nonretarded_mode_spectrum,
    zero_point_energy_imaginary_axis_nonretarded,
    zero_point_energy_mode_sum,
)
from .quadrature import QuadratureSettings
from . import verification

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

CSV_HEADER = ["r_m", "V_full_J", "V_expanded_J", "V_vdw_J", "V_casimir_J", "err_estimate_J", "coeff_source"]

SHARED_DEFAULTS = {
    "coeff_source": "derived",
    "rel_tol": 1e-10,
    "abs_tol": 1e-16,
    "max_panels": 2000,
    "out": "csv",
}

COMMAND_DEFAULTS = {
    "potential": {
        "model": "london",
        "alpha0": None,
        "alpha0_2": None,
        "omega0": None,
        "table": None,
        "r_min": None,
        "r_max": None,
        "points": 50,
        "scale": "log",
    },
    "calibrate": {"mass_kg": None, "alpha0": None},
    "verify": {},
    "modes": {"alpha0": None, "omega0": 1.0},
    "fields": {"omega": 0.0, "r": 1.0, "theta": 0.0, "t": 0.0, "p0": 1.0, "h": None},
}


class UsageError(Exception):
    pass


def fmt(value) -> str:
    """17 significant digits, round-trip safe."""
    if isinstance(value, str):
        return value
    value = float(value)
    if math.isnan(value):
        return "nan"
    return f"{value:.16e}"


def _build_parser():
    shared = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    shared.add_argument("--coeff-source", choices=["paper", "derived"],
                        help="Casimir coefficient: printed (paper) or self-consistent (derived, default)")
    shared.add_argument("--rel-tol", type=float, help="quadrature relative tolerance (default 1e-10)")
    shared.add_argument("--abs-tol", type=float, help="quadrature absolute tolerance (default 1e-16)")
    shared.add_argument("--max-panels", type=int, help="quadrature panel budget (default 2000)")
    shared.add_argument("--out", choices=["csv", "json"], help="output encoding (default csv)")
    shared.add_argument("--config", help="flat JSON file with the same keys as the flags")

    parser = argparse.ArgumentParser(prog="dispgrav", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("potential", parents=[shared], argument_default=argparse.SUPPRESS,
                       help="sweep the interaction potential over separations")
    p.add_argument("--model", choices=["constant", "london", "tabulated"])
    p.add_argument("--alpha0", type=float, help="static polarizability of particle 1")
    p.add_argument("--alpha0-2", type=float, help="static polarizability of particle 2 (default: alpha0)")
    p.add_argument("--omega0", type=float, help="London resonance frequency, rad/s")
    p.add_argument("--table", help="CSV of omega,alpha samples for the tabulated model")
    p.add_argument("--r-min", type=float, help="smallest separation, m")
    p.add_argument("--r-max", type=float, help="largest separation, m")
    p.add_argument("--points", type=int)
    p.add_argument("--scale", choices=["log", "linear"])

    c = sub.add_parser("calibrate", parents=[shared], argument_default=argparse.SUPPRESS,
                       help="convert between mass and static polarizability")
    c.add_argument("--mass-kg", type=float)
    c.add_argument("--alpha0", type=float)

    sub.add_parser("verify", parents=[shared], argument_default=argparse.SUPPRESS,
                   help="run the cross-module consistency suite")

    m = sub.add_parser("modes", parents=[shared], argument_default=argparse.SUPPRESS,
                       help="non-retarded normal modes and zero-point energy")
    m.add_argument("--alpha0", type=float)
    m.add_argument("--omega0", type=float)

    f = sub.add_parser("fields", parents=[shared], argument_default=argparse.SUPPRESS,
                       help="dipole fields and field-equation residuals at one point")
    f.add_argument("--omega", type=float)
    f.add_argument("--r", type=float)
    f.add_argument("--theta", type=float)
    f.add_argument("--t", type=float)
    f.add_argument("--p0", type=float)
    f.add_argument("--h", type=float, help="finite-difference step, m")
    return parser


def _load_config(path, command):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config file must hold a flat JSON object")
    allowed = set(SHARED_DEFAULTS) | set(COMMAND_DEFAULTS[command])
    out = {}
    for key, value in data.items():
        norm = key.replace("-", "_")
        if norm not in allowed:
            raise UsageError(f"unknown config key {key!r} for '{command}'")
        out[norm] = value
    return out


def resolve_options(ns) -> dict:
    """defaults < config file < explicit flags."""
    flags = vars(ns).copy()
    command = flags.pop("command")
    opts = dict(SHARED_DEFAULTS)
    opts.update(COMMAND_DEFAULTS[command])
    config = flags.pop("config", None)
    if config:
        opts.update(_load_config(config, command))
    opts.update(flags)
    return opts


def _quadrature(opts):
    return QuadratureSettings(float(opts["rel_tol"]), float(opts["abs_tol"]), int(opts["max_panels"]))


def _read_table(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read table {path}: {exc}") from None
    samples = []
    for row in csv.reader(io.StringIO(text)):
        if not row or row[0].strip().startswith("#"):
            continue
        try:
            samples.append((float(row[0]), float(row[1])))
        except (ValueError, IndexError):
            if samples:
                raise UsageError(f"bad table row {row!r}") from None
            # header line
    return Tabulated.from_samples(samples)


def _models(opts):
    kind = opts["model"]
    if kind == "tabulated":
        if not opts["table"]:
            raise UsageError("--table is required for the tabulated model")
        model = _read_table(opts["table"])
        return model, model
    if opts["alpha0"] is None:
        raise UsageError("--alpha0 is required")
    a1 = float(opts["alpha0"])
    a2 = float(opts["alpha0_2"]) if opts["alpha0_2"] is not None else a1
    if kind == "constant":
        return Constant(a1), Constant(a2)
    if opts["omega0"] is None:
        raise UsageError("--omega0 is required for the London model")
    w0 = float(opts["omega0"])
    return London(a1, w0), London(a2, w0)


def _separations(opts):
    if opts["r_min"] is None or opts["r_max"] is None:
        raise UsageError("--r-min and --r-max are required")
    r_min, r_max, n = float(opts["r_min"]), float(opts["r_max"]), int(opts["points"])
    if not (0 < r_min < r_max):
        raise UsageError("need 0 < r_min < r_max")
    if n < 2:
        raise UsageError("need points >= 2")
    if opts["scale"] == "log":
        return np.geomspace(r_min, r_max, n)
    return np.linspace(r_min, r_max, n)


def _vdw(pair, q):
    m1, m2 = pair.model1, pair.model2
    if isinstance(m1, London) and isinstance(m2, London) and m1.omega0 == m2.omega0:
        return vdw_limit_london(m1.alpha0, m2.alpha0, m1.omega0).value_si
    if isinstance(m1, Constant) and isinstance(m2, Constant):
        # no plateau: the integral diverges without a response cutoff
        return float("nan")
    return vdw_limit_general(pair, q).value_si


def potential_rows(opts):
    source = CoefficientSource.parse(opts["coeff_source"])
    q = _quadrature(opts)
    m1, m2 = _models(opts)
    poly = expansion_polynomial(source)
    rows = []
    for r in _separations(opts):
        pair = ParticlePair(m1, m2, float(r))
        full = potential_full(pair, q)
        rows.append({
            "r_m": float(r),
            "V_full_J": full.value_si,
            "V_expanded_J": potential_expanded(pair, poly, q).value_si,
            "V_vdw_J": _vdw(pair, q),
            "V_casimir_J": casimir_limit(pair, source).value_si,
            "err_estimate_J": full.error_estimate,
            "coeff_source": source.value,
        })
    return rows


def _json_number(value):
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


def _emit_table(rows, header, opts, stream):
    if opts["out"] == "json":
        config = {k: v for k, v in sorted(opts.items()) if k != "config"}
        rows = [{k: _json_number(v) for k, v in row.items()} for row in rows]
        json.dump({"config": config, "rows": rows}, stream, indent=2)
        stream.write("\n")
        return
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(row[k]) for k in header])


def _emit_pairs(pairs, opts, stream):
    if opts["out"] == "json":
        config = {k: v for k, v in sorted(opts.items()) if k != "config"}
        json.dump({"config": config, "result": dict(pairs)}, stream, indent=2)
        stream.write("\n")
        return
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["key", "value"])
    for key, value in pairs:
        writer.writerow([key, fmt(value)])


def cmd_potential(opts, stream):
    _emit_table(potential_rows(opts), CSV_HEADER, opts, stream)
    return EXIT_OK


def cmd_calibrate(opts, stream):
    mass, alpha = opts["mass_kg"], opts["alpha0"]
    if (mass is None) == (alpha is None):
        raise UsageError("give exactly one of --mass-kg or --alpha0")
    cal = calibration(opts["coeff_source"])
    pairs = [("coeff_source", cal.source.value), ("k_per_kg", cal.k)]
    if mass is not None:
        pairs += [("mass_kg", float(mass)), ("alpha0", mass_to_polarizability(float(mass), cal))]
    else:
        m = polarizability_to_mass(float(alpha), cal)
        pairs += [("alpha0", float(alpha)), ("mass_kg", m), ("mass_u", m / M_U)]
    _emit_pairs(pairs, opts, stream)
    return EXIT_OK


def cmd_modes(opts, stream):
    if opts["alpha0"] is None:
        raise UsageError("--alpha0 is required")
    alpha0, omega0 = float(opts["alpha0"]), float(opts["omega0"])
    spectrum = nonretarded_mode_spectrum(alpha0, omega0)
    e_sum = zero_point_energy_mode_sum(spectrum)
    e_axis = zero_point_energy_imaginary_axis_nonretarded(alpha0, omega0, _quadrature(opts))
    pairs = []
    for i, (w, mult) in enumerate(spectrum.modes):
        pairs += [(f"mode{i}_omega", w), (f"mode{i}_multiplicity", str(mult))]
    for i, (w, mult) in enumerate(spectrum.reference):
        pairs += [(f"reference{i}_omega", w), (f"reference{i}_multiplicity", str(mult))]
    pairs += [
        ("energy_mode_sum_J", e_sum),
        ("energy_imaginary_axis_J", e_axis),
        ("energy_mode_sum_hbar_omega0", e_sum / (HBAR * omega0)),
        ("energy_imaginary_axis_hbar_omega0", e_axis / (HBAR * omega0)),
        ("relative_difference", abs(e_axis - e_sum) / abs(e_sum)),
    ]
    _emit_pairs(pairs, opts, stream)
    return EXIT_OK


def cmd_fields(opts, stream):
    dipole = MonochromaticDipole(float(opts["p0"]), float(opts["omega"]))
    if dipole.omega < 0:
        raise UsageError("omega must be >= 0")
    point = EvaluationPoint(float(opts["r"]), float(opts["theta"]), float(opts["t"]))
    sample = field_time_domain(dipole, point)
    spectral = field_from_spectrum(dipole, point)
    h = opts["h"] if opts["h"] is not None else default_step(point.r, dipole.omega)
    curl, div = maxwell_residual(dipole, point, float(h))
    scale = max(np.max(np.abs(sample.E)), np.finfo(float).tiny)
    pairs = [
        ("E_r", sample.E[0]),
        ("E_theta", sample.E[1]),
        ("E_phi", sample.E[2]),
        ("B_phi", sample.B[2]),
        ("E_r_spectral", spectral[0]),
        ("E_theta_spectral", spectral[1]),
        ("spectral_max_rel_diff", np.max(np.abs(sample.E - spectral)) / scale),
        ("step_m", h),
        ("curl_residual", np.linalg.norm(curl)),
        ("div_B_residual", abs(div)),
    ]
    _emit_pairs(pairs, opts, stream)
    return EXIT_OK


def cmd_verify(opts, stream):
    checks = verification.run_all()
    failed = [c for c in checks if not c.passed]
    if opts["out"] == "json":
        doc = {
            "checks": [{"name": c.name, "passed": bool(c.passed), "detail": str(c.detail)} for c in checks],
            "passed": not failed,
        }
        json.dump(doc, stream, indent=2)
        stream.write("\n")
    else:
        for c in checks:
            stream.write(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}\n")
        stream.write(f"{len(checks) - len(failed)}/{len(checks)} checks passed\n")
    if failed:
        print(f"verification failed: {failed[0].name}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


COMMANDS = {
    "potential": cmd_potential,
    "calibrate": cmd_calibrate,
    "verify": cmd_verify,
    "modes": cmd_modes,
    "fields": cmd_fields,
}


def main(argv=None, stream=None) -> int:
    stream = stream or sys.stdout
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    command = ns.command
    try:
        opts = resolve_options(ns)
        return COMMANDS[command](opts, stream)
    except (UsageError, InvalidInputError, TypeError, ValueError) as exc:
        print(f"dispgrav {command}: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InstabilityError, NumericalFailureError) as exc:
        print(f"dispgrav {command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
