"""Control planning: microwave dressing, trap plans, magic frequencies, windows.

The microwave-induced dipole uses the exact two-level dressed-state result

    d_ind = (d_perm / 2) * Omega / sqrt(Omega^2 + delta^2),
    hbar Omega = d_perm * E * sqrt(w_ang),   delta = h nu - Delta E,

which saturates at d_perm/2 on resonance and reduces to the perturbative
first-order mixing form for |delta| >> Omega.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import DEBYE_CM, EPS0_SI, H_SI, J_PER_CM1, field_from_intensity
from .dataset import MoleculeDataset
from .errors import DataError, DegenerateSpectraError
from .polarizability import (
    AlphaValue,
    LevelId,
    LineListOptions,
    PolarizabilitySpectrum,
    alpha_at,
    default_grid,
    solve_initial,
)
from .coupling import vibronic_dipole

__all__ = [
    "MicrowavePlan",
    "InteractionEstimate",
    "LatticePlan",
    "MagicPoint",
    "FrequencyWindow",
    "rabi_energy",
    "induced_dipole",
    "induced_dipole_perturbative",
    "microwave_plan",
    "dd_interaction",
    "lattice_plan",
    "find_magic",
    "find_windows",
]

DEFAULT_ANGULAR_WEIGHT = 1.0 / 3.0    # J=0 -> J=1 line under linear polarization


def rabi_energy(d_perm: float, intensity: float, angular_weight: float = DEFAULT_ANGULAR_WEIGHT) -> float:
    """hbar * Rabi frequency in cm^-1 for a dipole [Debye] in a wave of I [W/cm^2]."""
    e_field = field_from_intensity(intensity)
    return abs(d_perm) * DEBYE_CM * e_field * math.sqrt(angular_weight) / J_PER_CM1


def induced_dipole(
    d_perm: float,
    delta_e: float,
    nu: float,
    intensity: float,
    angular_weight: float = DEFAULT_ANGULAR_WEIGHT,
) -> float:
    """Lab-frame dipole [Debye] induced by a microwave near the delta_e transition.

    Exactly d_perm/2 on resonance (nu = delta_e); 0 for zero drive.
    """
    if intensity == 0.0 or d_perm == 0.0:
        return 0.0
    om = rabi_energy(d_perm, intensity, angular_weight)
    det = nu - delta_e
    return 0.5 * abs(d_perm) * om / math.hypot(om, det)


def induced_dipole_perturbative(
    d_perm: float,
    delta_e: float,
    nu: float,
    intensity: float,
    angular_weight: float = DEFAULT_ANGULAR_WEIGHT,
) -> float:
    """First-order mixing limit of induced_dipole, valid for |detuning| >> Rabi."""
    if intensity == 0.0 or d_perm == 0.0:
        return 0.0
    det = nu - delta_e
    if det == 0.0:
        return math.inf
    return 0.5 * abs(d_perm) * rabi_energy(d_perm, intensity, angular_weight) / abs(det)


@dataclass(frozen=True)
class MicrowavePlan:
    """A microwave dressing configuration and its induced dipole."""

    nu: float              # drive frequency, cm^-1
    intensity: float       # W/cm^2
    delta_e: float         # rotational transition energy, cm^-1
    detuning: float        # nu - delta_e, cm^-1
    rabi: float            # hbar*Omega, cm^-1
    d_permanent: float     # Debye
    d_induced: float       # Debye


def microwave_plan(
    ds: MoleculeDataset,
    nu: float,
    intensity: float,
    v: int = 0,
    options: LineListOptions | None = None,
    angular_weight: float = DEFAULT_ANGULAR_WEIGHT,
) -> MicrowavePlan:
    """Dress the v-th ground level on its J=0 -> 1 rotational line."""
    opts = options or LineListOptions()
    g = ds.ground_label
    lev0 = solve_initial(ds, LevelId(g, v, 0, 0), opts)
    lev1 = solve_initial(ds, LevelId(g, v, 1, 0), opts)
    dip = ds.permanent_dipole(g)
    if dip is None:
        raise DataError(f"dataset {ds.name!r} has no permanent dipole for {g!r}")
    d_perm = abs(vibronic_dipole(lev0, lev1, dip))
    delta_e = lev1.energy - lev0.energy
    return MicrowavePlan(
        nu=nu,
        intensity=intensity,
        delta_e=delta_e,
        detuning=nu - delta_e,
        rabi=rabi_energy(d_perm, intensity, angular_weight),
        d_permanent=d_perm,
        d_induced=induced_dipole(d_perm, delta_e, nu, intensity, angular_weight),
    )


@dataclass(frozen=True)
class InteractionEstimate:
    """Dipole-dipole interaction of two molecules one lattice site apart."""

    d_induced: float       # Debye
    r_l: float             # site spacing, nm
    v_dd_over_h: float     # Hz
    delta_t: float         # shortest entanglement/exchange time 1/(V/h), s; inf for d=0


def dd_interaction(d_induced: float, r_l_nm: float) -> InteractionEstimate:
    """V_dd = d^2/(4 pi eps0 R^3) at spacing R [nm], and the implied gate time."""
    if r_l_nm <= 0.0:
        raise ValueError("site spacing must be positive")
    d_si = abs(d_induced) * DEBYE_CM
    v_over_h = d_si**2 / (4.0 * math.pi * EPS0_SI * (r_l_nm * 1e-9) ** 3) / H_SI
    delta_t = math.inf if v_over_h == 0.0 else 1.0 / v_over_h
    return InteractionEstimate(d_induced=abs(d_induced), r_l=r_l_nm, v_dd_over_h=v_over_h, delta_t=delta_t)


@dataclass(frozen=True)
class LatticePlan:
    """Optical trap figures at one frequency and intensity."""

    wavelength_nm: float
    nu: float                  # cm^-1
    intensity: float           # W/cm^2
    v0_over_h: float           # trap depth, Hz (positive = trapping for Re alpha < 0 convention below)
    decoherence_rate: float    # photon-scattering decoherence, 1/s
    coherent_ratio: float      # |Re alpha| / |Im alpha|
    r_l: float                 # site spacing lambda/2, nm


def lattice_plan(alpha, intensity: float, wavelength_nm: float) -> LatticePlan:
    """Build a LatticePlan from alpha/h [Hz/(W/cm^2)] at the trap frequency.

    V0/h = -Re(alpha) * I; the decoherence rate is 2 Im(alpha) I / hbar with
    alpha = h * (alpha/h), i.e. 4 pi Im(alpha/h) I in 1/s (declared convention).
    """
    value = alpha.value if isinstance(alpha, AlphaValue) else complex(alpha)
    re, im = value.real, value.imag
    ratio = math.inf if im == 0.0 else abs(re) / abs(im)
    return LatticePlan(
        wavelength_nm=wavelength_nm,
        nu=1.0e7 / wavelength_nm,
        intensity=intensity,
        v0_over_h=-re * intensity,
        decoherence_rate=4.0 * math.pi * im * intensity,
        coherent_ratio=ratio,
        r_l=wavelength_nm / 2.0,
    )


@dataclass(frozen=True)
class MagicPoint:
    """A frequency where two levels' Re(alpha) cross."""

    nu: float
    alpha: complex     # alpha/h of spectrum a at the root


def _bisect(f, a: float, b: float, fa: float, fb: float) -> float:
    # polish far past the reporting tolerance: a root must still satisfy the
    # crossing when re-evaluated off-grid, so run down to float resolution
    limit = max(1e-15, 1e-14 * max(abs(a), abs(b)))
    while (b - a) > limit:
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = f(m)
        if fm == 0.0:
            return m
        if (fa < 0.0) != (fm < 0.0):
            b, fb = m, fm
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


def find_magic(
    spec_a: PolarizabilitySpectrum,
    spec_b: PolarizabilitySpectrum,
    tol: float = 1e-6,
) -> list[MagicPoint]:
    """All crossings of Re alpha_a and Re alpha_b on the scan grid.

    Sign changes are bracketed on the shared grid and polished by bisection of
    the off-grid difference; `tol` (cm^-1) sets the radius within which nearby
    roots are merged. Brackets containing a listed resonance of either spectrum
    are skipped (those sign flips are poles, not crossings). Raises
    DegenerateSpectraError when the spectra agree to 1e-12 (relative)
    everywhere.
    """
    if not np.array_equal(spec_a.nu, spec_b.nu):
        raise ValueError("spectra must share a frequency grid")
    nus = spec_a.nu
    ra = np.real(spec_a.values())
    rb = np.real(spec_b.values())
    diff = ra - rb
    finite = np.isfinite(ra) & np.isfinite(rb)
    scale = max(
        float(np.max(np.abs(ra[finite]), initial=0.0)),
        float(np.max(np.abs(rb[finite]), initial=0.0)),
    )
    if scale == 0.0 or float(np.max(np.abs(diff[finite]), initial=0.0)) <= 1e-12 * scale:
        raise DegenerateSpectraError("the two spectra are identical; no magic crossing is defined")

    res_nus = sorted({r.nu for r in spec_a.resonances} | {r.nu for r in spec_b.resonances})

    def g(nu: float) -> float:
        return alpha_at(spec_a.lines, nu).real - alpha_at(spec_b.lines, nu).real

    roots: list[MagicPoint] = []
    for i in range(len(nus) - 1):
        if not (finite[i] and finite[i + 1]):
            continue
        lo, hi = float(nus[i]), float(nus[i + 1])
        if any(lo <= r <= hi for r in res_nus):
            continue
        d1, d2 = float(diff[i]), float(diff[i + 1])
        if d1 == 0.0:
            root = lo
        elif d1 * d2 < 0.0:
            root = _bisect(g, lo, hi, d1, d2)
        else:
            continue
        if roots and abs(root - roots[-1].nu) <= tol:
            continue
        roots.append(MagicPoint(nu=root, alpha=alpha_at(spec_a.lines, root)))
    return roots


@dataclass(frozen=True)
class FrequencyWindow:
    """A clean trapping interval inside a scan.

    resonances_excluded holds the flanking resonance frequencies that bound
    the window (at most one on each side, cm^-1).
    """

    nu_lo: float
    nu_hi: float
    min_ratio: float        # worst |Re/Im| inside
    max_flatness: float     # worst |d ln|alpha| / d nu| inside, 1/cm^-1
    resonances_excluded: tuple[float, ...]


def find_windows(
    spectrum: PolarizabilitySpectrum,
    min_width: float,
    flatness_cap: float,
    ratio_floor: float,
) -> list[FrequencyWindow]:
    """Maximal resonance-free intervals that stay flat and coherent.

    A window is a maximal grid run of width >= min_width whose points all have
    |Re alpha|/|Im alpha| >= ratio_floor, whose consecutive-point flatness
    |Delta ln|alpha|| / Delta nu stays <= flatness_cap, and which contains no
    listed resonance.
    """
    nus = spectrum.nu
    vals = spectrum.values()
    n = len(nus)
    if n < 2:
        return []
    mag = np.abs(vals)
    re = np.abs(np.real(vals))
    im = np.abs(np.imag(vals))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(im == 0.0, math.inf, re / np.where(im == 0.0, 1.0, im))
        logmag = np.where(mag > 0.0, np.log(np.where(mag > 0.0, mag, 1.0)), -math.inf)
    point_ok = np.isfinite(mag) & (mag > 0.0) & (ratio >= ratio_floor)

    dnu = np.diff(nus)
    slope = np.abs(np.diff(logmag)) / dnu
    pair_ok = np.isfinite(slope) & (slope <= flatness_cap)
    for r in spectrum.resonances:
        cut = (nus[:-1] <= r.nu) & (r.nu <= nus[1:])
        pair_ok &= ~cut
        point_ok &= nus != r.nu

    res_nus = sorted(r.nu for r in spectrum.resonances)
    windows: list[FrequencyWindow] = []
    start = None
    for i in range(n):
        if point_ok[i] and start is None:
            start = i
        end_run = (not point_ok[i]) or i == n - 1 or (i < n - 1 and not pair_ok[i])
        if start is not None and end_run:
            last = i if point_ok[i] else i - 1
            if last > start and (nus[last] - nus[start]) >= min_width:
                lo, hi = float(nus[start]), float(nus[last])
                flank = []
                below = [r for r in res_nus if r < lo]
                above = [r for r in res_nus if r > hi]
                if below:
                    flank.append(below[-1])
                if above:
                    flank.append(above[0])
                windows.append(
                    FrequencyWindow(
                        nu_lo=lo,
                        nu_hi=hi,
                        min_ratio=float(np.min(ratio[start : last + 1])),
                        max_flatness=float(np.max(slope[start:last], initial=0.0)),
                        resonances_excluded=tuple(flank),
                    )
                )
            start = None
    return windows
