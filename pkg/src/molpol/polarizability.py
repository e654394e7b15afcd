"""Complex dynamic polarizability from dipole line lists.

Each bound final level f reachable from the initial level contributes

    alpha(nu) += K * w_f * d_f^2 * z_f / (z_f^2 - nu^2),
    z_f = Delta_f - i h gamma_f / 2        (all energies in cm^-1)

summed over every dipole-allowed line, excluding the initial level itself.
K folds the 1/(eps0 c) prefactor and unit changes so the result is alpha/h
in Hz/(W/cm^2): a lattice depth is V0/h = -Re(alpha) * I with I in W/cm^2.
The counter-rotating term is kept (no rotating-wave approximation), and
Im(alpha) >= 0 on nu >= 0 whenever all gamma_f >= 0.

An exact hit on an undamped pole (gamma = 0, nu = |Delta|) yields a NaN
value tagged pole=True; scans keep the point and annotate it.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .constants import ALPHA_HZ_PER_WCM2, MHZ_CM1
from .coupling import LineStrength, Polarization, angular_weight, natural_linewidth, vibronic_dipole
from .dataset import MoleculeDataset
from .errors import DataError
from .rovib import RadialGrid, RovibLevel, solve_radial

__all__ = [
    "LevelId",
    "LineListOptions",
    "AlphaValue",
    "Resonance",
    "PolarizabilitySpectrum",
    "default_grid",
    "build_line_list",
    "alpha_at",
    "scan_spectrum",
]


class LevelId(NamedTuple):
    """Initial-level key: electronic state label, v, J, M."""

    state: str
    v: int
    J: int
    M: int


@dataclass(frozen=True)
class LineListOptions:
    """Controls for line-list construction.

    gamma: "computed" (Einstein-A sums where a radiative route exists, else
    the dataset default), "default" (always the dataset default), or a float
    override in MHz (0.0 turns damping off).
    """

    grid: RadialGrid | None = None
    max_levels: int = 64
    gamma: str | float = "computed"
    d_floor: float = 1e-8        # Debye; weaker lines are dropped
    j_max_branch: int | None = None   # default: J+1
    v_max: int | None = None     # per final state; default: all bound


@dataclass(frozen=True)
class AlphaValue:
    """alpha/h at one frequency, in Hz/(W/cm^2)."""

    nu: float
    value: complex
    pole: bool = False


@dataclass(frozen=True)
class Resonance:
    """One transition frequency inside a scan range."""

    nu: float
    state: str
    v: int
    J: int
    peak: float     # |alpha| at the resonance center; inf for gamma = 0


@dataclass
class PolarizabilitySpectrum:
    """A frequency scan plus the bookkeeping needed to interpret it."""

    initial: LevelId
    polarization: str
    nu: np.ndarray
    points: list[AlphaValue]
    resonances: list[Resonance]
    lines: list[LineStrength]
    capture: dict[str, float] = field(default_factory=dict)
    options: dict = field(default_factory=dict)

    def values(self) -> np.ndarray:
        return np.array([p.value for p in self.points], dtype=complex)


def default_grid(ds: MoleculeDataset) -> RadialGrid:
    """Radial grid to use when the caller does not provide one.

    Rotor datasets get an odd-count grid centered on the rotor radius so the
    delta wavefunction lands exactly at r_e; everything else spans its ground
    potential table.
    """
    if ds.rotor is not None:
        r_e = ds.rotor.r_e
        return RadialGrid(r_e - 1.0, r_e + 1.0, 101)
    pot = ds.potentials[ds.ground_label]
    return RadialGrid(float(pot.r[0]), float(pot.r[-1]), 801)


def solve_initial(ds: MoleculeDataset, initial: LevelId, options: LineListOptions | None = None) -> RovibLevel:
    """Resolve the initial LevelId to a solved bound level."""
    opts = options or LineListOptions()
    grid = opts.grid or default_grid(ds)
    levels = solve_radial(ds, initial.state, initial.J, grid, opts.max_levels)
    if initial.v >= len(levels):
        raise DataError(
            f"initial level v={initial.v} not bound for state {initial.state!r} at J={initial.J}"
        )
    if abs(initial.M) > initial.J:
        raise DataError(f"initial |M|={abs(initial.M)} exceeds J={initial.J}")
    return levels[initial.v]


def _gamma_for(
    ds: MoleculeDataset,
    level: RovibLevel,
    mode: str | float,
    solves: dict,
    grid: RadialGrid,
    max_levels: int,
) -> float:
    if isinstance(mode, (int, float)):
        return float(mode)
    if mode == "default":
        return ds.default_gamma
    if mode != "computed":
        raise ValueError(f"unknown gamma mode {mode!r}")
    lowers: list[RovibLevel] = []
    for st in sorted(ds.states, key=lambda s: s.label):
        if ds.dipole_between(level.state, st.label) is None:
            continue
        for J2 in (level.J - 1, level.J, level.J + 1):
            if J2 < st.omega or J2 < 0:
                continue
            key = (st.label, J2)
            if key not in solves:
                solves[key] = solve_radial(ds, st.label, J2, grid, max_levels)
            lowers.extend(l for l in solves[key] if l.energy < level.energy)
    return natural_linewidth(level, ds, lowers)


def build_line_list(
    ds: MoleculeDataset,
    initial: LevelId,
    polarization: Polarization,
    options: LineListOptions | None = None,
) -> list[LineStrength]:
    """Every dipole-allowed line out of the initial level, deterministic order."""
    opts = options or LineListOptions()
    grid = opts.grid or default_grid(ds)
    lev_i = solve_initial(ds, initial, opts)
    om_i = ds.state(initial.state).omega
    j_hi = initial.J + 1 if opts.j_max_branch is None else min(initial.J + 1, opts.j_max_branch)

    solves: dict = {}
    gammas: dict = {}
    lines: list[LineStrength] = []
    for st in sorted(ds.states, key=lambda s: s.label):
        dip = ds.dipole_between(initial.state, st.label)
        if dip is None:
            continue
        if st.omega == 0 and om_i == 0:
            tag_i = ds.state(initial.state).parity_tag or "+"
            if (st.parity_tag or "+") != tag_i:
                continue   # 0+ <-> 0- is dipole-forbidden
        for Jp in range(max(st.omega, initial.J - 1, 0), j_hi + 1):
            key = (st.label, Jp)
            if key not in solves:
                solves[key] = solve_radial(ds, st.label, Jp, grid, opts.max_levels)
            finals = solves[key]
            if opts.v_max is not None:
                finals = finals[: opts.v_max + 1]
            for lev_f in finals:
                if (
                    st.label == initial.state
                    and lev_f.v == lev_i.v
                    and lev_f.J == lev_i.J
                ):
                    continue   # the sum excludes the initial level
                d = vibronic_dipole(lev_i, lev_f, dip)
                if abs(d) < opts.d_floor:
                    continue
                gkey = (st.label, lev_f.v, Jp)
                for q, amp in polarization.components:
                    Mp = initial.M + q
                    w = abs(amp) ** 2 * angular_weight(
                        initial.J, initial.M, Jp, Mp, q, om_i, st.omega
                    )
                    if w <= 0.0:
                        continue
                    if gkey not in gammas:
                        gammas[gkey] = _gamma_for(ds, lev_f, opts.gamma, solves, grid, opts.max_levels)
                    lines.append(
                        LineStrength(
                            state=st.label,
                            v=lev_f.v,
                            J=Jp,
                            M=Mp,
                            q=q,
                            d_vib=d,
                            weight=w,
                            delta_e=lev_f.energy - lev_i.energy,
                            gamma=gammas[gkey],
                        )
                    )
    # |M| before signed M: mirror initial levels then sum identical addends in
    # the same order, keeping the M <-> -M degeneracy exact in floats
    lines.sort(key=lambda ln: (ln.state, ln.J, ln.v, abs(ln.M), ln.M))
    return lines


def alpha_at(lines: list[LineStrength], nu: float) -> complex:
    """alpha/h at one frequency in Hz/(W/cm^2); NaN on an exact undamped pole.

    Delegates to the array evaluator so single-point calls and grid scans
    agree bit for bit.
    """
    return complex(_alpha_array(lines, np.asarray([float(nu)]))[0])


def _alpha_array(lines: list[LineStrength], nus: np.ndarray) -> np.ndarray:
    out = np.zeros(len(nus), dtype=complex)
    nu2 = nus.astype(float) ** 2
    for ln in lines:
        z = complex(ln.delta_e, -0.5 * ln.gamma * MHZ_CM1)
        den = z * z - nu2
        term = np.where(den == 0, complex(math.nan, math.nan), z / np.where(den == 0, 1.0, den))
        out = out + (ln.weight * ln.d_vib**2) * term
    return ALPHA_HZ_PER_WCM2 * out


def _capture(ds: MoleculeDataset, lev_i: RovibLevel, lines: list[LineStrength]) -> dict[str, float]:
    """Fraction of the closure sum <psi|d^2|psi> captured by bound lines, per state.

    For each final state the bound-level sum of d_vib^2 on one J' branch is
    compared to the full vibrational closure of that branch; the minimum over
    branches is reported. Diagnostic only.
    """
    pts = lev_i.grid.points
    wi = lev_i.wavefunction**2 * lev_i.grid.h
    uniq: dict[tuple[str, int, int], float] = {}
    for ln in lines:
        uniq[(ln.state, ln.J, ln.v)] = ln.d_vib**2
    by_branch: dict[tuple[str, int], float] = {}
    for (stt, Jp, _v), d2 in uniq.items():
        by_branch[(stt, Jp)] = by_branch.get((stt, Jp), 0.0) + d2
    out: dict[str, float] = {}
    for (stt, _Jp), num in sorted(by_branch.items()):
        dip = ds.dipole_between(lev_i.state, stt)
        tot = float(np.sum(dip(pts) ** 2 * wi))
        frac = num / tot if tot > 0 else 0.0
        out[stt] = min(out.get(stt, 1.0), frac)
    return out


def scan_spectrum(
    ds: MoleculeDataset,
    initial: LevelId,
    polarization: Polarization,
    nu_grid: np.ndarray,
    options: LineListOptions | None = None,
    jobs: int = 1,
) -> PolarizabilitySpectrum:
    """Evaluate alpha over a frequency grid with resonance bookkeeping.

    jobs > 1 splits the grid into chunks handled by a thread pool; the
    per-point arithmetic is identical for any jobs, so results are too.
    """
    opts = options or LineListOptions()
    nus = np.asarray(nu_grid, dtype=float)
    lines = build_line_list(ds, initial, polarization, opts)
    lev_i = solve_initial(ds, initial, opts)

    if jobs <= 1 or len(nus) < 2 * jobs:
        values = _alpha_array(lines, nus)
    else:
        chunks = np.array_split(np.arange(len(nus)), jobs)
        values = np.zeros(len(nus), dtype=complex)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futs = [(idx, pool.submit(_alpha_array, lines, nus[idx])) for idx in chunks]
            for idx, fut in futs:
                values[idx] = fut.result()

    points = [
        AlphaValue(nu=float(nus[i]), value=complex(values[i]), pole=bool(np.isnan(values[i].real)))
        for i in range(len(nus))
    ]

    lo, hi = (float(nus[0]), float(nus[-1])) if len(nus) else (0.0, 0.0)
    res_seen: dict[tuple[str, int, int], float] = {}
    for ln in lines:
        if lo <= ln.nu_res <= hi:
            res_seen.setdefault((ln.state, ln.v, ln.J), ln.nu_res)
    resonances = []
    for (stt, v, J), nu_res in sorted(res_seen.items(), key=lambda kv: (kv[1], kv[0])):
        a = alpha_at(lines, nu_res)
        peak = math.inf if math.isnan(a.real) else abs(a)
        resonances.append(Resonance(nu=nu_res, state=stt, v=v, J=J, peak=peak))

    return PolarizabilitySpectrum(
        initial=initial,
        polarization=polarization.name,
        nu=nus,
        points=points,
        resonances=resonances,
        lines=lines,
        capture=_capture(ds, lev_i, lines),
        options={
            "gamma": opts.gamma,
            "d_floor": opts.d_floor,
            "max_levels": opts.max_levels,
            "j_max_branch": opts.j_max_branch,
            "v_max": opts.v_max,
        },
    )
