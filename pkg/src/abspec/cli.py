"""Command-line front end.

    abspec <command> <config.json> [--set key=value]... [--out path]

Commands: eigen, spectrum, converge, coil, design. Results go to a CSV
file, written atomically; a summary of derived quantities goes to
stdout. Failures print one JSON line to stderr and exit with 2 (config),
3 (computation) or 4 (I/O).
"""

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import coil, molecule, oscillator, spectrum
from .config import COMMANDS, ConfigError, parse_config
from .eigensolver import (ConvergenceError, displaced_spectrum_oracle, eigenvalues,
                          phase_reduce)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_COMPUTE = 3
EXIT_IO = 4


def fmt(x):
    """Shortest round-trip decimal for a float."""
    return repr(float(x))


def csv_text(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def write_atomic(path, text):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp",
                               dir=path.parent if str(path.parent) else ".")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _toroid(cfg, current=None):
    t = cfg.toroid
    return coil.ToroidSpec(t.inner_radius, t.revolution_radius, t.n_loops,
                           t.current if current is None else current)


def _a0_and_ratio(cfg):
    """Vector potential (T*m) and its coupling ratio at cos(theta)=1."""
    mol = cfg.molecule
    source = cfg.coupling_source
    if source == "ratio":
        return oscillator.a0_for_ratio(cfg.ratio, mol), cfg.ratio
    a0 = cfg.a0 if source == "a0" else coil.a_z_on_axis(_toroid(cfg), 0.0)
    return a0, a0 * oscillator.ratio_per_a0(mol)


def _molecule_lines(mol):
    return [
        ("molecule", mol.name or "custom", ""),
        ("reduced_mass", molecule.reduced_mass(mol), "u"),
        ("reduced_rest_energy", molecule.reduced_rest_energy(mol), "eV"),
        ("hbar_omega0", mol.hbar_omega0, "eV"),
    ]


def run_eigen(cfg):
    mol = cfg.molecule
    a0, r0 = _a0_and_ratio(cfg)
    if cfg.coupling_source == "ratio":
        cp = oscillator.coupling_from_ratio(cfg.ratio, mol, cfg.cos_theta)
    else:
        cp = oscillator.coupling_alpha(a0, cfg.cos_theta, mol)
    h = oscillator.build_hamiltonian(cfg.n_levels, cp, mol)
    result = eigenvalues(phase_reduce(h))
    two = oscillator.two_level_energies(cp, mol)
    exact = displaced_spectrum_oracle(cfg.n_levels, cp, mol)
    summary = _molecule_lines(mol) + [
        ("a0", a0, "T*m"),
        ("cos_theta", cp.cos_theta, ""),
        ("alpha", cp.alpha, "eV"),
        ("ratio_r", cp.ratio_r, ""),
        ("n_levels", cfg.n_levels, ""),
        ("two_level_e_minus", two.e_minus, "eV"),
        ("two_level_e_plus", two.e_plus, "eV"),
        ("two_level_nu", two.transition_ratio, ""),
        ("exact_ground_energy", exact[0], "eV"),
        ("iterations", result.iterations, ""),
    ]
    if cfg.n_levels >= 2:
        ev = result.eigenvalues
        summary.append(("truncated_nu", (ev[1] - ev[0]) / mol.hbar_omega0, ""))
    rows = [(str(i), e) for i, e in enumerate(result.eigenvalues)]
    return csv_text(["index", "energy_ev"], rows), summary


def run_spectrum(cfg):
    mol = cfg.molecule
    a0, r0 = _a0_and_ratio(cfg)
    ens = spectrum.OrientationEnsemble(cfg.n_samples, cfg.scheme)
    spec = spectrum.line_profile(mol, a0, ens, cfg.mode, cfg.n_bins, cfg.n_levels,
                                 dipole_weighting=cfg.dipole_weighting)
    hw = mol.hbar_omega0
    summary = _molecule_lines(mol) + [
        ("a0", a0, "T*m"),
        ("alpha_max", r0 * hw, "eV"),
        ("ratio_r0", r0, ""),
        ("mode", spec.mode, ""),
        ("n_levels", spec.n_levels, ""),
        ("nu_min", spec.nu_min, ""),
        ("nu_max", spec.nu_max, ""),
        ("line_low", spec.nu_min * hw, "eV"),
        ("line_high", spec.nu_max * hw, "eV"),
        ("bins", len(spec.nu), ""),
    ]
    return spec.to_csv(), summary


def run_converge(cfg):
    mol = cfg.molecule
    a0, r0 = _a0_and_ratio(cfg)
    table = spectrum.convergence_study(mol, r0, cfg.n_levels_list)
    summary = _molecule_lines(mol) + [
        ("a0", a0, "T*m"),
        ("ratio_r0", r0, ""),
        ("two_level_nu", 2.0 * np.sqrt(0.25 + r0 * r0), ""),
        ("exact_nu", 1.0, ""),
        ("largest_n_nu", table[-1][1], ""),
    ]
    return csv_text(["n_levels", "nu"], [(str(n), nu) for n, nu in table]), summary


def run_coil(cfg):
    t = _toroid(cfg)
    b = t.revolution_radius
    z_min = -5.0 * b if cfg.z_min is None else cfg.z_min
    z_max = 5.0 * b if cfg.z_max is None else cfg.z_max
    z = np.linspace(z_min, z_max, cfg.n_z)
    az = np.atleast_1d(coil.a_z_on_axis(t, z))
    summary = [
        ("inner_radius", t.inner_radius, "m"),
        ("revolution_radius", b, "m"),
        ("n_loops", t.n_loops, ""),
        ("current", t.current, "A"),
        ("a_z_centre", coil.a_z_on_axis(t, 0.0), "T*m"),
        ("a0_gauge_independent", coil.a0_gauge_independent(t), "T*m"),
    ]
    if cfg.molecule is not None:
        summary.append(("ratio_r0_centre", coil.coupling_ratio(t, cfg.molecule), ""))
    return csv_text(["z_m", "a_z_tm"], zip(z, az)), summary


def design_rows(cfg):
    """Derivation chain for the current reaching ``target_ratio``."""
    mol = cfg.molecule
    t = _toroid(cfg, current=1.0)
    current = coil.required_current(t, mol, cfg.target_ratio)
    driven = _toroid(cfg, current=current)
    a_needed = oscillator.a0_for_ratio(cfg.target_ratio, mol)
    return [
        ("reduced_mass", molecule.reduced_mass(mol), "u"),
        ("reduced_rest_energy", molecule.reduced_rest_energy(mol), "eV"),
        ("hbar_omega0", mol.hbar_omega0, "eV"),
        ("target_ratio", cfg.target_ratio, ""),
        ("a0_required", a_needed, "T*m"),
        ("a_z_per_ampere", coil.a_z_on_axis(t, 0.0), "T*m/A"),
        ("required_current", current, "A"),
        ("ampere_turns", driven.ampere_turns, "A"),
        ("a0_gauge_independent_at_current", coil.a0_gauge_independent(driven), "T*m"),
        ("ratio_check", coil.coupling_ratio(driven, mol), ""),
    ]


def run_design(cfg):
    rows = design_rows(cfg)
    text = csv_text(["quantity", "value", "unit"],
                    [(name, value if isinstance(value, str) else fmt(value), unit)
                     for name, value, unit in rows])
    return text, [("molecule", cfg.molecule.name or "custom", "")] + rows


RUNNERS = {
    "eigen": run_eigen,
    "spectrum": run_spectrum,
    "converge": run_converge,
    "coil": run_coil,
    "design": run_design,
}


def _error(code, kind, message, field=None, stream=None):
    payload = {"error": kind, "code": code, "message": message}
    if field is not None:
        payload["field"] = field
    print(json.dumps(payload, sort_keys=True), file=stream or sys.stderr)
    return code


def run(cfg, out=None, stdout=None, stderr=None):
    """Execute a validated :class:`RunConfig`; returns the exit status."""
    stdout = stdout or sys.stdout
    path = out or cfg.output or f"{cfg.command}.csv"
    try:
        text, summary = RUNNERS[cfg.command](cfg)
    except ConvergenceError as exc:
        return _error(EXIT_COMPUTE, "computation", str(exc), stream=stderr)
    except (ValueError, ArithmeticError) as exc:
        return _error(EXIT_COMPUTE, "computation", str(exc), stream=stderr)
    try:
        write_atomic(path, text)
    except OSError as exc:
        return _error(EXIT_IO, "io", str(exc), stream=stderr)
    for name, value, unit in summary:
        shown = value if isinstance(value, str) else (
            str(value) if isinstance(value, (int, np.integer)) else fmt(value))
        print(f"{name} = {shown}{' ' + unit if unit else ''}", file=stdout)
    print(f"wrote {path}", file=stdout)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="abspec",
        description="Vibrational line shifts of a diatomic molecule in a vector potential.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("config", help="JSON run configuration")
    parser.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override a configuration field (dotted keys for nested fields)")
    parser.add_argument("--out", help="output CSV path")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        return _error(EXIT_IO, "io", str(exc))
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        return _error(EXIT_CONFIG, "config", f"invalid JSON: {exc}", field="document")
    if isinstance(doc, dict):
        if doc.get("command", args.command) != args.command:
            return _error(EXIT_CONFIG, "config",
                          f"config is for {doc['command']!r}, not {args.command!r}",
                          field="command")
        doc["command"] = args.command
    try:
        cfg = parse_config(json.dumps(doc), args.set)
    except ConfigError as exc:
        return _error(EXIT_CONFIG, "config", exc.message, field=exc.field)
    return run(cfg, out=args.out)


if __name__ == "__main__":
    sys.exit(main())
