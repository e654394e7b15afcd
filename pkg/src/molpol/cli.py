"""Command-line interface.

Subcommands: validate, levels, fcf, alpha, magic, dress, plan, windows.
Exit codes: 0 success, 2 usage, 3 bad data, 4 numerical failure.

All numeric output is formatted to 12 significant digits with fixed field and
row order, so identical inputs produce byte-identical files regardless of
--jobs. Frequency ranges are lo:hi:step in cm^-1 (inclusive endpoints when
the step divides evenly); pass --nm to give the same range in nanometers.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .control import (
    dd_interaction,
    find_magic,
    find_windows,
    induced_dipole,
    lattice_plan,
    microwave_plan,
)
from .coupling import Polarization, franck_condon, vibronic_dipole
from .dataset import load_dataset
from .errors import DataError, NumericalError
from .polarizability import (
    LevelId,
    LineListOptions,
    alpha_at,
    build_line_list,
    default_grid,
    scan_spectrum,
    solve_initial,
)
from .rovib import RadialGrid, convergence_check, solve_radial


def _fmt(x) -> str:
    """Fixed 12-significant-digit rendering, deterministic for inf/nan too."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.12g}"


def _jclean(obj):
    """Round floats to the CSV precision and keep JSON strictly valid."""
    if isinstance(obj, dict):
        return {k: _jclean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jclean(v) for v in obj]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return _fmt(x)
        return float(_fmt(x))
    if isinstance(obj, complex):
        return {"re": _jclean(obj.real), "im": _jclean(obj.imag)}
    return obj


def _write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(x) if not isinstance(x, str) else x for x in row))
    path.write_text("\n".join(lines) + "\n")


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(_jclean(obj), indent=2) + "\n")


def _write_plot(path: Path, axis_names: list[str], columns) -> None:
    """Plot-ready whitespace table; header names the axes and units."""
    lines = ["# " + "  ".join(axis_names)]
    for row in zip(*columns):
        lines.append(" ".join(_fmt(x) for x in row))
    path.write_text("\n".join(lines) + "\n")


def _parse_range(text: str, in_nm: bool) -> np.ndarray:
    try:
        lo, hi, step = (float(p) for p in text.split(":"))
    except ValueError:
        raise DataError(f"range must be lo:hi:step, got {text!r}")
    if step <= 0 or hi < lo:
        raise DataError(f"range needs hi >= lo and step > 0, got {text!r}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    grid = lo + step * np.arange(count)
    if in_nm:
        grid = np.sort(1.0e7 / grid)
    return grid


def _parse_radial_grid(text: str) -> RadialGrid:
    try:
        rmin, rmax, n = text.split(":")
        return RadialGrid(float(rmin), float(rmax), int(n))
    except ValueError as exc:
        raise DataError(f"grid must be rmin:rmax:n (Bohr), got {text!r}: {exc}")


def _parse_gamma(text: str):
    if text in ("computed", "default"):
        return text
    try:
        return float(text)
    except ValueError:
        raise DataError(f"--gamma must be 'computed', 'default', or a value in MHz, got {text!r}")


def _dataset(args):
    if args.dataset is None:
        raise DataError("no dataset given and MOLPOL_DATASET is not set")
    return load_dataset(args.dataset)


def _options(args, ds) -> LineListOptions:
    return LineListOptions(
        grid=_parse_radial_grid(args.grid) if args.grid else default_grid(ds),
        max_levels=args.max_levels,
        gamma=_parse_gamma(args.gamma),
        d_floor=args.d_floor,
        j_max_branch=args.j_max_branch,
        v_max=args.v_max,
    )


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    ds = _dataset(args)
    report = {
        "name": ds.name,
        "reduced_mass_amu": ds.reduced_mass,
        "ground": ds.ground_label,
        "default_gamma_mhz": ds.default_gamma,
        "rotor": None if ds.rotor is None else {"r_e_bohr": ds.rotor.r_e, "j_max": ds.rotor.j_max},
        "states": [
            {
                "label": s.label,
                "omega": s.omega,
                "asymptote_cm1": s.asymptote_energy if math.isfinite(s.asymptote_energy) else "inf",
                "potential_points": len(ds.potentials[s.label].r),
                "has_interior_minimum": ds.potentials[s.label].has_interior_minimum,
            }
            for s in ds.states
        ],
        "dipole_curves": [f"{d.bra}->{d.ket}" for d in ds.dipoles],
    }
    sys.stdout.write(json.dumps(_jclean(report), indent=2) + "\n")
    return 0


def cmd_levels(args) -> int:
    ds = _dataset(args)
    state = args.state or ds.ground_label
    grid = _parse_radial_grid(args.grid) if args.grid else default_grid(ds)
    levels = solve_radial(ds, state, args.J, grid, args.max_levels)
    out = _outdir(args)
    _write_csv(
        out / "levels.csv",
        ["state", "v", "J", "E_cm1"],
        [(l.state, l.v, l.J, l.energy) for l in levels],
    )
    if args.check:
        rep = convergence_check(ds, state, args.J, grid, args.max_levels)
        if not rep.converged:
            sys.stderr.write(
                f"molpol: numerical: levels not converged "
                f"(refine {_fmt(rep.shift_refine)}, extend {_fmt(rep.shift_extend)} cm-1)\n"
            )
            return 4
    sys.stdout.write(f"{len(levels)} bound levels for {state} J={args.J} -> {out / 'levels.csv'}\n")
    return 0


def cmd_fcf(args) -> int:
    ds = _dataset(args)
    lower = args.initial_state or ds.ground_label
    upper = args.final_state
    grid = _parse_radial_grid(args.grid) if args.grid else default_grid(ds)
    lev_i = solve_radial(ds, lower, args.J, grid, args.max_v + 1)
    lev_f = solve_radial(ds, upper, args.Jp, grid, args.max_v + 1)
    dip = ds.dipole_between(lower, upper)
    rows = []
    for li in lev_i:
        for lf in lev_f:
            d = vibronic_dipole(li, lf, dip) if dip is not None else math.nan
            rows.append((li.v, li.J, lf.v, lf.J, franck_condon(li, lf), d))
    out = _outdir(args)
    _write_csv(out / "fcf.csv", ["v", "J", "vp", "Jp", "FCF", "d_vib"], rows)
    sys.stdout.write(f"{len(rows)} rows -> {out / 'fcf.csv'}\n")
    return 0


def cmd_alpha(args) -> int:
    ds = _dataset(args)
    opts = _options(args, ds)
    initial = LevelId(args.state or ds.ground_label, args.v, args.J, args.M)
    pol = Polarization.parse(args.pol)
    nus = _parse_range(args.nu, args.nm)
    spec = scan_spectrum(ds, initial, pol, nus, opts, jobs=args.jobs)
    out = _outdir(args)
    _write_csv(
        out / "alpha.csv",
        ["nu_cm1", "re_alpha_Hz_per_Wcm2", "im_alpha_Hz_per_Wcm2"],
        [(p.nu, p.value.real, p.value.imag) for p in spec.points],
    )
    _write_csv(
        out / "resonances.csv",
        ["nu_res", "state", "v", "J", "peak"],
        [(r.nu, r.state, r.v, r.J, r.peak) for r in spec.resonances],
    )
    _write_json(
        out / "alpha_report.json",
        {
            "initial": initial._asdict(),
            "polarization": pol.name,
            "points": len(spec.points),
            "poles": sum(1 for p in spec.points if p.pole),
            "resonances_in_range": len(spec.resonances),
            "strength_capture": spec.capture,
            "options": spec.options,
        },
    )
    if args.plot:
        _write_plot(
            out / "alpha_plot.dat",
            ["nu [cm^-1]", "Re alpha/h [Hz/(W/cm^2)]", "Im alpha/h [Hz/(W/cm^2)]"],
            (nus, np.real(spec.values()), np.imag(spec.values())),
        )
    sys.stdout.write(f"{len(spec.points)} points, {len(spec.resonances)} resonances -> {out / 'alpha.csv'}\n")
    return 0


def cmd_magic(args) -> int:
    ds = _dataset(args)
    opts = _options(args, ds)
    state = args.state or ds.ground_label
    nus = _parse_range(args.nu, args.nm)
    pol_a = Polarization.parse(args.pol_a)
    pol_b = Polarization.parse(args.pol_b)
    ida = LevelId(state, args.va, args.Ja, args.Ma)
    idb = LevelId(state, args.vb, args.Jb, args.Mb)
    spec_a = scan_spectrum(ds, ida, pol_a, nus, opts)
    spec_b = scan_spectrum(ds, idb, pol_b, nus, opts)
    roots = find_magic(spec_a, spec_b, tol=args.tol)
    out = _outdir(args)
    _write_json(
        out / "magic.json",
        {
            "level_a": ida._asdict() | {"polarization": pol_a.name},
            "level_b": idb._asdict() | {"polarization": pol_b.name},
            "scan": {"lo_cm1": float(nus[0]), "hi_cm1": float(nus[-1]), "points": len(nus)},
            "tol_cm1": args.tol,
            "roots": [{"nu_cm1": r.nu, "alpha_hz_per_wcm2": r.alpha} for r in roots],
            "options": spec_a.options,
        },
    )
    if args.plot:
        _write_plot(
            out / "magic_a.dat",
            ["nu [cm^-1]", "Re alpha/h (a) [Hz/(W/cm^2)]"],
            (nus, np.real(spec_a.values())),
        )
        _write_plot(
            out / "magic_b.dat",
            ["nu [cm^-1]", "Re alpha/h (b) [Hz/(W/cm^2)]"],
            (nus, np.real(spec_b.values())),
        )
        _write_plot(
            out / "magic_roots.dat",
            ["nu [cm^-1]", "Re alpha/h [Hz/(W/cm^2)]"],
            ([r.nu for r in roots], [r.alpha.real for r in roots]),
        )
    sys.stdout.write(f"{len(roots)} magic crossings -> {out / 'magic.json'}\n")
    return 0


def cmd_dress(args) -> int:
    ds = _dataset(args)
    opts = _options(args, ds)
    nu = 1.0e7 / args.nm if args.nm else args.nu
    if nu is None:
        raise DataError("dress needs --nu (cm^-1) or --nm (nanometers)")
    plan = microwave_plan(ds, nu, args.intensity, v=args.v, options=opts)
    out = _outdir(args)
    _write_json(
        out / "dress.json",
        {
            "nu_cm1": plan.nu,
            "intensity_wcm2": plan.intensity,
            "delta_e_cm1": plan.delta_e,
            "detuning_cm1": plan.detuning,
            "rabi_cm1": plan.rabi,
            "d_permanent_debye": plan.d_permanent,
            "d_induced_debye": plan.d_induced,
            "saturation": plan.d_induced / (0.5 * plan.d_permanent) if plan.d_permanent else 0.0,
        },
    )
    sys.stdout.write(
        f"induced dipole {_fmt(plan.d_induced)} D "
        f"({_fmt(plan.d_induced / plan.d_permanent if plan.d_permanent else 0.0)} of permanent) "
        f"-> {out / 'dress.json'}\n"
    )
    return 0


def cmd_plan(args) -> int:
    ds = _dataset(args)
    opts = _options(args, ds)
    if args.nm:
        wavelength = args.nm
    elif args.nu:
        wavelength = 1.0e7 / args.nu
    else:
        raise DataError("plan needs a positive --nm or --nu")
    nu = 1.0e7 / wavelength
    initial = LevelId(args.state or ds.ground_label, args.v, args.J, args.M)
    pol = Polarization.parse(args.pol)
    lines = build_line_list(ds, initial, pol, opts)
    alpha = alpha_at(lines, nu)
    trap = lattice_plan(alpha, args.intensity, wavelength)
    d_ind = args.d_ind
    if d_ind is None:
        lev0 = solve_initial(ds, initial, opts)
        dip = ds.permanent_dipole(initial.state)
        d_ind = 0.5 * abs(vibronic_dipole(lev0, lev0, dip)) if dip is not None else 0.0
    inter = dd_interaction(d_ind, trap.r_l)
    out = _outdir(args)
    _write_json(
        out / "plan.json",
        {
            "initial": initial._asdict() | {"polarization": pol.name},
            "wavelength_nm": trap.wavelength_nm,
            "nu_cm1": trap.nu,
            "intensity_wcm2": trap.intensity,
            "alpha_hz_per_wcm2": alpha,
            "v0_over_h_hz": trap.v0_over_h,
            "decoherence_rate_per_s": trap.decoherence_rate,
            "coherent_ratio": trap.coherent_ratio,
            "site_spacing_nm": trap.r_l,
            "interaction": {
                "d_induced_debye": inter.d_induced,
                "v_dd_over_h_hz": inter.v_dd_over_h,
                "delta_t_s": inter.delta_t,
            },
        },
    )
    sys.stdout.write(
        f"V0/h {_fmt(trap.v0_over_h)} Hz, interaction time {_fmt(inter.delta_t)} s -> {out / 'plan.json'}\n"
    )
    return 0


def cmd_windows(args) -> int:
    ds = _dataset(args)
    opts = _options(args, ds)
    initial = LevelId(args.state or ds.ground_label, args.v, args.J, args.M)
    pol = Polarization.parse(args.pol)
    nus = _parse_range(args.nu, args.nm)
    spec = scan_spectrum(ds, initial, pol, nus, opts, jobs=args.jobs)
    wins = find_windows(spec, args.min_width, args.flatness_cap, args.ratio_floor)
    out = _outdir(args)
    _write_csv(
        out / "windows.csv",
        ["nu_lo_cm1", "nu_hi_cm1", "lambda_lo_nm", "lambda_hi_nm", "min_ratio", "max_flatness"],
        [
            (w.nu_lo, w.nu_hi, 1.0e7 / w.nu_hi, 1.0e7 / w.nu_lo, w.min_ratio, w.max_flatness)
            for w in wins
        ],
    )
    _write_json(
        out / "windows.json",
        {
            "initial": initial._asdict() | {"polarization": pol.name},
            "criteria": {
                "min_width_cm1": args.min_width,
                "flatness_cap_per_cm1": args.flatness_cap,
                "ratio_floor": args.ratio_floor,
            },
            "windows": [
                {
                    "nu_lo_cm1": w.nu_lo,
                    "nu_hi_cm1": w.nu_hi,
                    "lambda_lo_nm": 1.0e7 / w.nu_hi,
                    "lambda_hi_nm": 1.0e7 / w.nu_lo,
                    "min_ratio": w.min_ratio,
                    "max_flatness_per_cm1": w.max_flatness,
                    "resonances_excluded_cm1": list(w.resonances_excluded),
                }
                for w in wins
            ],
            "resonances_in_range": len(spec.resonances),
            "strength_capture": spec.capture,
            "options": spec.options,
        },
    )
    if args.plot:
        _write_plot(
            out / "windows_plot.dat",
            ["nu_lo [cm^-1]", "nu_hi [cm^-1]", "min |Re/Im|"],
            ([w.nu_lo for w in wins], [w.nu_hi for w in wins], [w.min_ratio for w in wins]),
        )
    sys.stdout.write(f"{len(wins)} windows -> {out / 'windows.csv'}\n")
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_dataset_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "dataset",
        nargs="?",
        default=os.environ.get("MOLPOL_DATASET"),
        help="dataset directory (default: $MOLPOL_DATASET)",
    )


def _add_level_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--state", default=None, help="electronic state label (default: ground state)")
    p.add_argument("--v", type=int, default=0, help="vibrational index (default: 0)")
    p.add_argument("--J", type=int, default=0, help="rotational quantum number (default: 0)")
    p.add_argument("--M", type=int, default=0, help="magnetic quantum number (default: 0)")
    p.add_argument(
        "--pol",
        default="sigma_z",
        choices=["sigma_x", "sigma_y", "sigma_z", "q+1", "q0", "q-1"],
        help="lab polarization (default: sigma_z)",
    )


def _add_engine_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid", default=None, help="radial grid rmin:rmax:n in Bohr (default: auto)")
    p.add_argument("--max-levels", type=int, default=64, help="bound levels kept per state and J (default: 64)")
    p.add_argument(
        "--gamma",
        default="computed",
        help="linewidths: 'computed', 'default', or a value in MHz (default: computed)",
    )
    p.add_argument("--d-floor", type=float, default=1e-8, help="drop lines below this |d_vib| in Debye (default: 1e-8)")
    p.add_argument("--j-max-branch", type=int, default=None, help="cap on final J (default: J+1)")
    p.add_argument("--v-max", type=int, default=None, help="cap on final v per state (default: all bound)")


def _add_out_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=".", help="output directory (default: current directory)")
    p.add_argument("--plot", action="store_true", help="also write plot-ready .dat files")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="molpol",
        description="Rovibrational structure, dynamic polarizability, and trap planning for polar diatomics.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="load a dataset and report its contents")
    _add_dataset_arg(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("levels", help="bound rovibrational levels at fixed J")
    _add_dataset_arg(p)
    p.add_argument("--state", default=None, help="electronic state label (default: ground state)")
    p.add_argument("--J", type=int, default=0, help="rotational quantum number (default: 0)")
    p.add_argument("--grid", default=None, help="radial grid rmin:rmax:n in Bohr (default: auto)")
    p.add_argument("--max-levels", type=int, default=64, help="maximum levels returned (default: 64)")
    p.add_argument("--check", action="store_true", help="fail (exit 4) unless grid-converged to 1e-3 cm^-1")
    p.add_argument("--out", default=".", help="output directory (default: current directory)")
    p.set_defaults(func=cmd_levels)

    p = sub.add_parser("fcf", help="Franck-Condon factors and vibronic dipoles between two states")
    _add_dataset_arg(p)
    p.add_argument("--initial-state", default=None, help="lower state label (default: ground state)")
    p.add_argument("--final-state", required=True, help="upper state label")
    p.add_argument("--J", type=int, default=0, help="lower rotational quantum number (default: 0)")
    p.add_argument("--Jp", type=int, default=1, help="upper rotational quantum number (default: 1)")
    p.add_argument("--max-v", type=int, default=10, help="highest v and v' listed (default: 10)")
    p.add_argument("--grid", default=None, help="radial grid rmin:rmax:n in Bohr (default: auto)")
    p.add_argument("--out", default=".", help="output directory (default: current directory)")
    p.set_defaults(func=cmd_fcf)

    p = sub.add_parser("alpha", help="scan the complex polarizability over a frequency range")
    _add_dataset_arg(p)
    _add_level_args(p)
    _add_engine_args(p)
    p.add_argument("--nu", required=True, help="scan range lo:hi:step in cm^-1 (or nm with --nm)")
    p.add_argument("--nm", action="store_true", help="interpret --nu as wavelengths in nm")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for the scan (default: 1)")
    _add_out_args(p)
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("magic", help="frequencies where two levels' Re alpha cross")
    _add_dataset_arg(p)
    p.add_argument("--state", default=None, help="electronic state label (default: ground state)")
    p.add_argument("--va", type=int, default=0, help="level a: vibrational index (default: 0)")
    p.add_argument("--Ja", type=int, default=0, help="level a: J (default: 0)")
    p.add_argument("--Ma", type=int, default=0, help="level a: M (default: 0)")
    p.add_argument("--pol-a", default="sigma_z", choices=["sigma_x", "sigma_y", "sigma_z", "q+1", "q0", "q-1"], help="level a polarization (default: sigma_z)")
    p.add_argument("--vb", type=int, default=0, help="level b: vibrational index (default: 0)")
    p.add_argument("--Jb", type=int, default=1, help="level b: J (default: 1)")
    p.add_argument("--Mb", type=int, default=0, help="level b: M (default: 0)")
    p.add_argument("--pol-b", default="sigma_z", choices=["sigma_x", "sigma_y", "sigma_z", "q+1", "q0", "q-1"], help="level b polarization (default: sigma_z)")
    p.add_argument("--nu", required=True, help="scan range lo:hi:step in cm^-1 (or nm with --nm)")
    p.add_argument("--nm", action="store_true", help="interpret --nu as wavelengths in nm")
    p.add_argument("--tol", type=float, default=1e-6, help="bisection tolerance in cm^-1 (default: 1e-6)")
    _add_engine_args(p)
    _add_out_args(p)
    p.set_defaults(func=cmd_magic)

    p = sub.add_parser("dress", help="microwave dressing plan on the J=0 -> 1 line")
    _add_dataset_arg(p)
    p.add_argument("--nu", type=float, default=None, help="drive frequency in cm^-1")
    p.add_argument("--nm", type=float, default=None, help="drive wavelength in nm (alternative to --nu)")
    p.add_argument("--intensity", type=float, required=True, help="drive intensity in W/cm^2")
    p.add_argument("--v", type=int, default=0, help="vibrational index to dress (default: 0)")
    _add_engine_args(p)
    p.add_argument("--out", default=".", help="output directory (default: current directory)")
    p.set_defaults(func=cmd_dress)

    p = sub.add_parser("plan", help="optical-lattice trap plan at one wavelength")
    _add_dataset_arg(p)
    _add_level_args(p)
    _add_engine_args(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--nm", type=float, default=None, help="trap wavelength in nm")
    group.add_argument("--nu", type=float, default=None, help="trap frequency in cm^-1")
    p.add_argument("--intensity", type=float, required=True, help="peak intensity in W/cm^2")
    p.add_argument("--d-ind", type=float, default=None, help="induced dipole in Debye (default: d_perm/2)")
    p.add_argument("--out", default=".", help="output directory (default: current directory)")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("windows", help="clean trapping windows inside a frequency scan")
    _add_dataset_arg(p)
    _add_level_args(p)
    _add_engine_args(p)
    p.add_argument("--nu", required=True, help="scan range lo:hi:step in cm^-1 (or nm with --nm)")
    p.add_argument("--nm", action="store_true", help="interpret --nu as wavelengths in nm")
    p.add_argument("--min-width", type=float, default=10.0, help="minimum window width in cm^-1 (default: 10)")
    p.add_argument("--flatness-cap", type=float, default=0.1, help="max |d ln|alpha||/d nu in 1/cm^-1 (default: 0.1)")
    p.add_argument("--ratio-floor", type=float, default=1e6, help="min |Re alpha|/|Im alpha| (default: 1e6)")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for the scan (default: 1)")
    _add_out_args(p)
    p.set_defaults(func=cmd_windows)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DataError as exc:
        sys.stderr.write(f"molpol: data: {exc}\n")
        return 3
    except NumericalError as exc:
        sys.stderr.write(f"molpol: numerical: {exc}\n")
        return 4


if __name__ == "__main__":
    sys.exit(main())
