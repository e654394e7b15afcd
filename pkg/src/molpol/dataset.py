"""Molecule datasets: electronic states, potential and dipole curves, file IO.

A dataset is a directory::

    molecule.json           metadata (name, reduced mass, states, ...)
    pot__<label>.dat        one potential curve per electronic state
    dip__<bra>__<ket>.dat   dipole curves (bra == ket: permanent dipole)

Curve files are two-column text with ``#`` comments and a mandatory
``units: <length> <value>`` header line. Accepted units: bohr/angstrom for
length, cm-1/hartree for potentials, debye/au for dipoles. Everything is
converted to the canonical units (Bohr, cm^-1, Debye) on load.

Curves interpolate with a natural cubic spline between the tabulated nodes.
Outside the table a potential follows physical tails: A + B/R^12 fitted to the
two innermost points on the short-range side, and an exponential decay of
V - asymptote fitted to the two outermost points on the long-range side.
Dipole curves clamp to their endpoint values outside the table.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.interpolate import CubicSpline

from .constants import DIPOLE_UNITS, HBAR2_OVER_TWO, LENGTH_UNITS, POTENTIAL_UNITS
from .errors import DataError

__all__ = [
    "ElectronicState",
    "PotentialCurve",
    "DipoleCurve",
    "RotorInfo",
    "MoleculeDataset",
    "MorseModel",
    "HarmonicModel",
    "RigidRotorModel",
    "load_dataset",
    "write_dataset",
    "evaluate_potential",
    "evaluate_dipole",
    "synthesize",
]


@dataclass(frozen=True)
class ElectronicState:
    """One electronic state of the molecule.

    omega is the magnitude of the electronic angular momentum projection on
    the internuclear axis (0 or 1 supported; omega = 0 is taken as 0+).
    asymptote_energy is the dissociation limit in cm^-1, math.inf for model
    wells that never dissociate.
    """

    label: str
    omega: int
    asymptote_energy: float
    parity_tag: str | None = None

    def __post_init__(self):
        if self.omega not in (0, 1):
            raise DataError(f"state {self.label!r}: omega must be 0 or 1, got {self.omega}")


def _check_samples(r: np.ndarray, y: np.ndarray, what: str) -> None:
    if r.ndim != 1 or y.shape != r.shape:
        raise DataError(f"{what}: samples must be two equal-length columns")
    if len(r) < 2:
        raise DataError(f"{what}: need at least 2 sample points, got {len(r)}")
    if not np.all(np.isfinite(r)) or not np.all(np.isfinite(y)):
        raise DataError(f"{what}: non-finite sample values")
    if r[0] <= 0.0:
        raise DataError(f"{what}: R values must be positive")
    dr = np.diff(r)
    if not np.all(dr > 0.0):
        bad = int(np.argmin(dr > 0.0)) + 2
        raise DataError(f"{what}: R not strictly increasing at sample {bad}")


class PotentialCurve:
    """Tabulated potential of one electronic state, in Bohr / cm^-1."""

    def __init__(self, state: ElectronicState, r, v):
        self.state = state
        self.r = np.asarray(r, dtype=float)
        self.v = np.asarray(v, dtype=float)
        _check_samples(self.r, self.v, f"potential curve for {state.label!r}")
        self._spline = CubicSpline(self.r, self.v, bc_type="natural", extrapolate=False)
        self._fit_tails()

    def _fit_tails(self) -> None:
        r, v = self.r, self.v
        # inner wall: A + B/R^12 through the two innermost samples
        w1, w2 = r[0] ** -12, r[1] ** -12
        self._sr_b = (v[0] - v[1]) / (w1 - w2)
        self._sr_a = v[0] - self._sr_b * w1
        self.short_range_rule = "A + B/R^12"
        # outer tail: exponential approach of V - asymptote, through the two
        # outermost samples; degenerate data falls back as documented
        asym = self.state.asymptote_energy
        if not math.isfinite(asym):
            self._lr = None
            self.long_range_rule = "constant"
            return
        ra, rb = r[-2], r[-1]
        pa, pb = v[-2] - asym, v[-1] - asym
        if pb == 0.0:
            self._lr = (0.0, 1.0)
        elif pa * pb > 0.0 and abs(pb) < abs(pa):
            k = math.log(pa / pb) / (rb - ra)
            self._lr = (pb * math.exp(k * rb), k)
        else:
            k = 1.0 / (rb - ra)
            self._lr = (pb * math.exp(k * rb), k)
        self.long_range_rule = "asymptote + C*exp(-k*R)"

    @property
    def has_interior_minimum(self) -> bool:
        """True when the well bottom sits strictly inside the table."""
        i = int(np.argmin(self.v))
        if i == 0 or i == len(self.v) - 1:
            return False
        return self.v[i] < min(self.v[0], self.v[-1]) - 1e-12 * max(1.0, float(np.ptp(self.v)))

    def __call__(self, r_eval):
        r_eval = np.asarray(r_eval, dtype=float)
        scalar = r_eval.ndim == 0
        rr = np.atleast_1d(r_eval)
        if np.any(rr <= 0.0):
            raise DataError(f"potential for {self.state.label!r}: R must be positive")
        out = np.empty_like(rr)
        inner = rr < self.r[0]
        outer = rr > self.r[-1]
        mid = ~(inner | outer)
        out[mid] = self._spline(rr[mid])
        out[inner] = self._sr_a + self._sr_b * rr[inner] ** -12
        if np.any(outer):
            if self._lr is None:
                out[outer] = self.v[-1]
            else:
                c, k = self._lr
                out[outer] = self.state.asymptote_energy + c * np.exp(-k * rr[outer])
        return float(out[0]) if scalar else out


class DipoleCurve:
    """Tabulated dipole moment function in Bohr / Debye.

    bra == ket labels a permanent dipole, otherwise a transition dipole.
    Clamps to the endpoint values outside the tabulated range.
    """

    def __init__(self, bra: str, ket: str, r, d):
        self.bra = bra
        self.ket = ket
        self.r = np.asarray(r, dtype=float)
        self.d = np.asarray(d, dtype=float)
        _check_samples(self.r, self.d, f"dipole curve {bra!r} -> {ket!r}")
        self._spline = CubicSpline(self.r, self.d, bc_type="natural", extrapolate=False)

    @property
    def is_permanent(self) -> bool:
        return self.bra == self.ket

    def connects(self, a: str, b: str) -> bool:
        return {self.bra, self.ket} == {a, b}

    def __call__(self, r_eval):
        rr = np.clip(np.asarray(r_eval, dtype=float), self.r[0], self.r[-1])
        out = self._spline(rr)
        return float(out) if np.ndim(r_eval) == 0 else out


@dataclass(frozen=True)
class RotorInfo:
    """Marks a rigid-rotor dataset: radial position of the point rotor."""

    r_e: float
    j_max: int = 10


@dataclass
class MoleculeDataset:
    """All inputs describing one molecule."""

    name: str
    reduced_mass: float              # amu
    states: list[ElectronicState]
    potentials: dict[str, PotentialCurve]
    dipoles: list[DipoleCurve]
    ground_label: str
    default_gamma: float = 6.0       # MHz, fallback natural linewidth
    rotor: RotorInfo | None = None

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if not (self.reduced_mass > 0.0 and math.isfinite(self.reduced_mass)):
            raise DataError(f"dataset {self.name!r}: reduced_mass must be positive")
        labels = [s.label for s in self.states]
        if len(set(labels)) != len(labels):
            raise DataError(f"dataset {self.name!r}: duplicate state labels")
        if self.ground_label not in labels:
            raise DataError(f"dataset {self.name!r}: ground_label {self.ground_label!r} not among states")
        for s in self.states:
            if s.label not in self.potentials:
                raise DataError(f"dataset {self.name!r}: state {s.label!r} has no potential curve")
        for lab in self.potentials:
            if lab not in labels:
                raise DataError(f"dataset {self.name!r}: potential for undeclared state {lab!r}")
        perm_seen = set()
        for dip in self.dipoles:
            for end in (dip.bra, dip.ket):
                if end not in labels:
                    raise DataError(f"dataset {self.name!r}: dipole curve references undeclared state {end!r}")
            if dip.is_permanent:
                if dip.bra in perm_seen:
                    raise DataError(f"dataset {self.name!r}: more than one permanent dipole for {dip.bra!r}")
                perm_seen.add(dip.bra)

    def state(self, label: str) -> ElectronicState:
        for s in self.states:
            if s.label == label:
                return s
        raise DataError(f"dataset {self.name!r}: no state {label!r}")

    def dipole_between(self, a: str, b: str) -> DipoleCurve | None:
        for dip in self.dipoles:
            if dip.connects(a, b):
                return dip
        return None

    def permanent_dipole(self, label: str) -> DipoleCurve | None:
        return self.dipole_between(label, label)


# ---------------------------------------------------------------------------
# analytic model specs for synthesized datasets


@dataclass(frozen=True)
class MorseModel:
    """V(R) = D_e (1 - exp(-a (R - r_e)))^2 - D_e, dissociating to 0."""

    d_e: float     # cm^-1
    a: float       # 1/Bohr
    r_e: float     # Bohr

    def value(self, r):
        x = 1.0 - np.exp(-self.a * (np.asarray(r, dtype=float) - self.r_e))
        return self.d_e * x * x - self.d_e


@dataclass(frozen=True)
class HarmonicModel:
    """V(R) = (1/2) k (R - r_e)^2; never dissociates."""

    k: float       # cm^-1 / Bohr^2
    r_e: float     # Bohr

    def value(self, r):
        x = np.asarray(r, dtype=float) - self.r_e
        return 0.5 * self.k * x * x


@dataclass(frozen=True)
class RigidRotorModel:
    """Point rotor: flat potential, constant permanent dipole d, levels B J(J+1)."""

    b: float       # cm^-1
    d: float       # Debye
    j_max: int = 10

    def r_e(self, reduced_mass: float) -> float:
        return math.sqrt(HBAR2_OVER_TWO / (reduced_mass * self.b))


def _grid_points(grid) -> np.ndarray:
    return np.asarray(getattr(grid, "points", grid), dtype=float)


def synthesize(model, grid=None, *, reduced_mass: float, name: str = "synthetic") -> MoleculeDataset:
    """Build a single-state dataset by sampling an analytic model on a grid.

    grid may be a RadialGrid or a plain array of radii in Bohr. A rigid rotor
    picks its own grid (r_e +- 1 Bohr) when none is given; the well models
    have no natural span, so they require one.
    """
    if isinstance(model, MorseModel):
        if grid is None:
            raise DataError("synthesize needs an explicit grid for a Morse model")
        r = _grid_points(grid)
        state = ElectronicState("X0", 0, 0.0)
        pot = PotentialCurve(state, r, model.value(r))
        return MoleculeDataset(name, reduced_mass, [state], {"X0": pot}, [], "X0")
    if isinstance(model, HarmonicModel):
        if grid is None:
            raise DataError("synthesize needs an explicit grid for a harmonic model")
        r = _grid_points(grid)
        state = ElectronicState("X0", 0, math.inf)
        pot = PotentialCurve(state, r, model.value(r))
        return MoleculeDataset(name, reduced_mass, [state], {"X0": pot}, [], "X0")
    if isinstance(model, RigidRotorModel):
        r_e = model.r_e(reduced_mass)
        if grid is None:
            grid = np.linspace(max(r_e - 1.0, 0.1 * r_e), r_e + 1.0, 101)
        r = _grid_points(grid)
        state = ElectronicState("X0", 0, math.inf)
        pot = PotentialCurve(state, r, np.zeros_like(r))
        dip = DipoleCurve("X0", "X0", r, np.full_like(r, model.d))
        rotor = RotorInfo(r_e=r_e, j_max=model.j_max)
        return MoleculeDataset(name, reduced_mass, [state], {"X0": pot}, [dip], "X0", rotor=rotor)
    raise TypeError(f"unknown model kind {model!r}")


def evaluate_potential(curve: PotentialCurve, r):
    """Potential value(s) at R > 0 in cm^-1 (spline inside, physical tails outside)."""
    return curve(r)


def evaluate_dipole(curve: DipoleCurve, r):
    """Dipole value(s) in Debye, clamped to the endpoints outside the table."""
    return curve(r)


# ---------------------------------------------------------------------------
# directory IO


def _read_curve(path: Path, value_units: dict[str, float]):
    r_vals: list[float] = []
    y_vals: list[float] = []
    scale_r = None
    scale_y = None
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise DataError(f"{path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("units:"):
            parts = line.split()
            if len(parts) != 3:
                raise DataError(f"{path}:{lineno}: units header must be 'units: <length> <value>'")
            lu, vu = parts[1].lower(), parts[2].lower()
            if lu not in LENGTH_UNITS:
                raise DataError(f"{path}:{lineno}: unknown length unit {lu!r}")
            if vu not in value_units:
                raise DataError(f"{path}:{lineno}: unknown value unit {vu!r}")
            scale_r, scale_y = LENGTH_UNITS[lu], value_units[vu]
            continue
        parts = line.split()
        if len(parts) != 2:
            raise DataError(f"{path}:{lineno}: expected two columns, got {len(parts)}")
        try:
            r_vals.append(float(parts[0]))
            y_vals.append(float(parts[1]))
        except ValueError as exc:
            raise DataError(f"{path}:{lineno}: {exc}") from exc
    if scale_r is None:
        raise DataError(f"{path}: missing 'units: <length> <value>' header")
    r = np.asarray(r_vals) * scale_r
    y = np.asarray(y_vals) * scale_y
    if len(r) >= 2 and not np.all(np.diff(r) > 0):
        bad = int(np.argmin(np.diff(r) > 0)) + 2
        raise DataError(f"{path}: R not strictly increasing at sample {bad}")
    return r, y


def load_dataset(path) -> MoleculeDataset:
    """Read a dataset directory; raises DataError naming file (and line) on problems."""
    root = Path(path)
    meta_path = root / "molecule.json"
    if not meta_path.is_file():
        raise DataError(f"{meta_path}: not found")
    try:
        meta = json.loads(meta_path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"{meta_path}: {exc}") from exc
    for key in ("name", "reduced_mass", "ground_label", "states"):
        if key not in meta:
            raise DataError(f"{meta_path}: missing field {key!r}")
    states = []
    for entry in meta["states"]:
        if "label" not in entry or "omega" not in entry:
            raise DataError(f"{meta_path}: every state needs 'label' and 'omega'")
        asym = entry.get("asymptote_energy")
        states.append(
            ElectronicState(
                label=str(entry["label"]),
                omega=int(entry["omega"]),
                asymptote_energy=math.inf if asym is None else float(asym),
                parity_tag=entry.get("parity_tag"),
            )
        )
    potentials = {}
    for s in states:
        pfile = root / f"pot__{s.label}.dat"
        if not pfile.is_file():
            raise DataError(f"{pfile}: not found (potential for state {s.label!r})")
        r, v = _read_curve(pfile, POTENTIAL_UNITS)
        try:
            potentials[s.label] = PotentialCurve(s, r, v)
        except DataError as exc:
            raise DataError(f"{pfile}: {exc}") from exc
    dipoles = []
    for dfile in sorted(root.glob("dip__*__*.dat")):
        stem = dfile.stem
        parts = stem.split("__")
        if len(parts) != 3:
            raise DataError(f"{dfile}: dipole filename must be dip__<bra>__<ket>.dat")
        _, bra, ket = parts
        r, d = _read_curve(dfile, DIPOLE_UNITS)
        try:
            dipoles.append(DipoleCurve(bra, ket, r, d))
        except DataError as exc:
            raise DataError(f"{dfile}: {exc}") from exc
    rotor = None
    if "rotor" in meta and meta["rotor"] is not None:
        rb = meta["rotor"]
        if "r_e" not in rb:
            raise DataError(f"{meta_path}: rotor block needs 'r_e'")
        rotor = RotorInfo(r_e=float(rb["r_e"]), j_max=int(rb.get("j_max", 10)))
    try:
        return MoleculeDataset(
            name=str(meta["name"]),
            reduced_mass=float(meta["reduced_mass"]),
            states=states,
            potentials=potentials,
            dipoles=dipoles,
            ground_label=str(meta["ground_label"]),
            default_gamma=float(meta.get("default_gamma", 6.0)),
            rotor=rotor,
        )
    except (TypeError, ValueError) as exc:
        raise DataError(f"{meta_path}: {exc}") from exc


def _write_curve(path: Path, r: np.ndarray, y: np.ndarray, value_unit: str, comment: str) -> None:
    lines = [f"# {comment}", f"units: bohr {value_unit}"]
    for ri, yi in zip(r, y):
        lines.append(f"{float(ri)!r} {float(yi)!r}")
    path.write_text("\n".join(lines) + "\n")


def write_dataset(ds: MoleculeDataset, path) -> None:
    """Write a dataset directory in the canonical units; round-trips with load_dataset."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    meta = {
        "name": ds.name,
        "reduced_mass": ds.reduced_mass,
        "ground_label": ds.ground_label,
        "default_gamma": ds.default_gamma,
        "states": [
            {
                "label": s.label,
                "omega": s.omega,
                "asymptote_energy": None if not math.isfinite(s.asymptote_energy) else s.asymptote_energy,
                "parity_tag": s.parity_tag,
            }
            for s in ds.states
        ],
    }
    if ds.rotor is not None:
        meta["rotor"] = {"r_e": ds.rotor.r_e, "j_max": ds.rotor.j_max}
    (root / "molecule.json").write_text(json.dumps(meta, indent=2) + "\n")
    for lab, pot in ds.potentials.items():
        _write_curve(root / f"pot__{lab}.dat", pot.r, pot.v, "cm-1", f"{ds.name} potential, state {lab}")
    for dip in ds.dipoles:
        _write_curve(
            root / f"dip__{dip.bra}__{dip.ket}.dat",
            dip.r,
            dip.d,
            "debye",
            f"{ds.name} dipole, {dip.bra} -> {dip.ket}",
        )
