"""Angular coupling, vibrational overlaps, and natural linewidths.

Wigner 3-j symbols are evaluated from the Racah factorial sum in exact
integer/rational arithmetic (Python ints), with a single float rounding at
the end, for j up to 50 (half-integers included).

Angular line strengths for Hund's case (c) states use the standard squared
matrix element of the q-th spherical dipole component,

    w = (2J+1)(2J'+1) [3j(J',1,J; -M',q,M)]^2 [3j(J',1,J; -Om',dOm,Om)]^2

with dOm = Om' - Om and M' = M + q. Linear lab polarizations enter as
incoherent sums over their spherical components: each component feeds a
distinct final M', so cross terms vanish identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .constants import EINSTEIN_A_FACTOR, MHZ_CM1
from .dataset import DipoleCurve, MoleculeDataset
from .rovib import RovibLevel

__all__ = [
    "Polarization",
    "LineStrength",
    "wigner3j",
    "angular_weight",
    "branch_strength",
    "vibronic_dipole",
    "franck_condon",
    "natural_linewidth",
]

J_MAX_SUPPORTED = 50


def _half(x: float) -> int:
    """Angular momentum as a doubled integer; rejects non-half-integers."""
    d = round(2.0 * x)
    if abs(2.0 * x - d) > 1e-9:
        raise ValueError(f"{x} is not a half-integer")
    return int(d)


def _fact(doubled: int) -> int:
    # factorial of doubled/2; caller guarantees doubled is even and >= 0
    return math.factorial(doubled // 2)


def _sqrt_big(num: int, den: int) -> float:
    """sqrt(num/den) for huge positive ints without float overflow."""
    s = max(0, (den.bit_length() - num.bit_length() + 130) // 2 + 1) + 30
    val = math.isqrt((num << (2 * s)) // den)
    return math.ldexp(float(val), -s)


@lru_cache(maxsize=None)
def _w3j(dj1: int, dj2: int, dj3: int, dm1: int, dm2: int, dm3: int) -> float:
    if dm1 + dm2 + dm3 != 0:
        return 0.0
    if abs(dm1) > dj1 or abs(dm2) > dj2 or abs(dm3) > dj3:
        return 0.0
    if dj3 < abs(dj1 - dj2) or dj3 > dj1 + dj2:
        return 0.0
    if (dj1 + dj2 + dj3) % 2 != 0:
        return 0.0
    if (dj1 + dm1) % 2 or (dj2 + dm2) % 2 or (dj3 + dm3) % 2:
        return 0.0

    # triangle coefficient times the six (j +- m)! factors, as one exact ratio
    num = (
        _fact(dj1 + dj2 - dj3)
        * _fact(dj1 - dj2 + dj3)
        * _fact(-dj1 + dj2 + dj3)
        * _fact(dj1 + dm1)
        * _fact(dj1 - dm1)
        * _fact(dj2 + dm2)
        * _fact(dj2 - dm2)
        * _fact(dj3 + dm3)
        * _fact(dj3 - dm3)
    )
    den = _fact(dj1 + dj2 + dj3 + 2)

    k_lo = max(0, (dj2 - dj3 - dm1) // 2, (dj1 - dj3 + dm2) // 2)
    k_hi = min((dj1 + dj2 - dj3) // 2, (dj1 - dm1) // 2, (dj2 + dm2) // 2)
    total = Fraction(0)
    for k in range(k_lo, k_hi + 1):
        dk = 2 * k
        term = Fraction(
            1,
            _fact(dk)
            * _fact(dj1 + dj2 - dj3 - dk)
            * _fact(dj1 - dm1 - dk)
            * _fact(dj2 + dm2 - dk)
            * _fact(dj3 - dj2 + dm1 + dk)
            * _fact(dj3 - dj1 - dm2 + dk),
        )
        total += -term if k % 2 else term
    if total == 0:
        return 0.0
    sign = -1.0 if ((dj1 - dj2 - dm3) // 2) % 2 else 1.0
    mag = _sqrt_big(num, den) * abs(float(total))
    return math.copysign(mag, sign * total)


def wigner3j(j1: float, j2: float, j3: float, m1: float, m2: float, m3: float) -> float:
    """Wigner 3-j symbol; selection-rule violations return 0, j > 50 raises."""
    if max(j1, j2, j3) > J_MAX_SUPPORTED:
        raise ValueError(f"j above supported range ({J_MAX_SUPPORTED})")
    if min(j1, j2, j3) < 0:
        raise ValueError("negative j")
    return _w3j(_half(j1), _half(j2), _half(j3), _half(m1), _half(m2), _half(m3))


@dataclass(frozen=True)
class Polarization:
    """Lab polarization as spherical components ((q, amplitude), ...)."""

    name: str
    components: tuple[tuple[int, complex], ...]

    @classmethod
    def sigma_z(cls) -> "Polarization":
        return cls("sigma_z", ((0, 1.0 + 0j),))

    @classmethod
    def sigma_x(cls) -> "Polarization":
        s = 1.0 / math.sqrt(2.0)
        return cls("sigma_x", ((-1, s + 0j), (1, -s + 0j)))

    @classmethod
    def sigma_y(cls) -> "Polarization":
        s = 1.0 / math.sqrt(2.0)
        return cls("sigma_y", ((-1, s * 1j), (1, s * 1j)))

    @classmethod
    def spherical(cls, q: int) -> "Polarization":
        if q not in (-1, 0, 1):
            raise ValueError("q must be -1, 0, or +1")
        name = "q0" if q == 0 else f"q{q:+d}"
        return cls(name, ((q, 1.0 + 0j),))

    @classmethod
    def parse(cls, name: str) -> "Polarization":
        table = {
            "sigma_x": cls.sigma_x,
            "sigma_y": cls.sigma_y,
            "sigma_z": cls.sigma_z,
            "q+1": lambda: cls.spherical(1),
            "q0": lambda: cls.spherical(0),
            "q-1": lambda: cls.spherical(-1),
        }
        if name not in table:
            raise ValueError(f"unknown polarization {name!r}")
        return table[name]()

    def weight_on(self, q: int) -> float:
        return sum(abs(a) ** 2 for qq, a in self.components if qq == q)


def angular_weight(
    J: int, M: int, Jp: int, Mp: int, q: int, omega: int = 0, omega_p: int = 0
) -> float:
    """Squared angular dipole matrix element for one spherical component q.

    Zero whenever a selection rule fails (M' != M + q, |dJ| > 1, J = J' for
    omega 0-0, J below omega, ...). All rules emerge from the 3-j symbols.
    """
    if Mp != M + q:
        return 0.0
    if abs(M) > J or abs(Mp) > Jp or J < omega or Jp < omega_p:
        return 0.0
    if M < 0 or (M == 0 and q < 0):
        # mirror to a canonical sign so M <-> -M degeneracy is exact in floats
        M, Mp, q = -M, -Mp, -q
    a = wigner3j(Jp, 1, J, -Mp, q, M)
    b = wigner3j(Jp, 1, J, -(omega_p), omega_p - omega, omega)
    return (2 * J + 1) * (2 * Jp + 1) * a * a * b * b


def branch_strength(J_up: int, omega_up: int, J_lo: int, omega_lo: int) -> float:
    """M-summed emission branch factor; sums to 1 over the allowed J_lo."""
    b = wigner3j(J_lo, 1, J_up, -(omega_lo), omega_lo - omega_up, omega_up)
    return (2 * J_lo + 1) * b * b


@dataclass(frozen=True)
class LineStrength:
    """One dipole line feeding the polarizability sum."""

    state: str          # final electronic state label
    v: int              # final vibrational index
    J: int              # final rotational quantum number
    M: int              # final magnetic quantum number
    q: int              # spherical component that drives the line
    d_vib: float        # radial dipole matrix element, Debye
    weight: float       # |a_q|^2 * angular_weight, dimensionless
    delta_e: float      # E_final - E_initial, cm^-1 (signed)
    gamma: float        # natural linewidth of the final level, MHz

    @property
    def nu_res(self) -> float:
        return abs(self.delta_e)


def _same_grid(a: RovibLevel, b: RovibLevel) -> None:
    if a.grid != b.grid:
        raise ValueError("levels live on different radial grids")


def vibronic_dipole(level_i: RovibLevel, level_f: RovibLevel, dip: DipoleCurve) -> float:
    """Radial matrix element <psi_f| d(R) |psi_i> by grid quadrature, Debye."""
    _same_grid(level_i, level_f)
    pts = level_i.grid.points
    return float(
        np.sum(level_f.wavefunction * dip(pts) * level_i.wavefunction) * level_i.grid.h
    )


def franck_condon(level_i: RovibLevel, level_f: RovibLevel) -> float:
    """Franck-Condon factor |<psi_f|psi_i>|^2."""
    _same_grid(level_i, level_f)
    ov = float(np.sum(level_f.wavefunction * level_i.wavefunction) * level_i.grid.h)
    return ov * ov


def natural_linewidth(
    level: RovibLevel,
    ds: MoleculeDataset,
    lower_levels: list[RovibLevel],
    default_gamma: float | None = None,
) -> float:
    """Natural linewidth of a level in MHz (total decay rate over 2 pi).

    Sums Einstein A coefficients over the given lower levels reachable through
    the dataset's dipole curves,

        A = nu^3 d_vib^2 * (2J_lo+1) [3j]^2 * EINSTEIN_A_FACTOR   [1/s],

    returns sum(A)/(2 pi) in MHz, and falls back to the dataset default (or
    the explicit default_gamma) when no radiative route exists. The h*gamma/2
    half-width of the polarizability denominators uses exactly this gamma.
    """
    omega_up = ds.state(level.state).omega
    total = 0.0
    any_route = False
    for lo in lower_levels:
        if lo.energy >= level.energy:
            continue
        dip = ds.dipole_between(level.state, lo.state)
        if dip is None:
            continue
        if lo.state == level.state and lo.J == level.J and lo.v == level.v:
            continue
        br = branch_strength(level.J, omega_up, lo.J, ds.state(lo.state).omega)
        if br == 0.0:
            continue
        any_route = True
        d = vibronic_dipole(level, lo, dip)
        nu = level.energy - lo.energy
        total += EINSTEIN_A_FACTOR * nu**3 * d * d * br
    if not any_route:
        return ds.default_gamma if default_gamma is None else default_gamma
    return total / (2.0 * math.pi * 1.0e6)


def gamma_cm1(gamma_mhz: float) -> float:
    """Linewidth in MHz -> the h*gamma energy in cm^-1."""
    return gamma_mhz * MHZ_CM1
