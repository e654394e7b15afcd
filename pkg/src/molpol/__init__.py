"""Rovibrational structure, complex polarizability, and trap planning for polar diatomics."""

from .constants import (
    ALPHA_HZ_PER_WCM2,
    EINSTEIN_A_FACTOR,
    HBAR2_OVER_TWO,
    MHZ_CM1,
    cm1_to_nm,
    field_from_intensity,
    nm_to_cm1,
)
from .control import (
    FrequencyWindow,
    InteractionEstimate,
    LatticePlan,
    MagicPoint,
    MicrowavePlan,
    dd_interaction,
    find_magic,
    find_windows,
    induced_dipole,
    induced_dipole_perturbative,
    lattice_plan,
    microwave_plan,
    rabi_energy,
)
from .coupling import (
    LineStrength,
    Polarization,
    angular_weight,
    branch_strength,
    franck_condon,
    gamma_cm1,
    natural_linewidth,
    vibronic_dipole,
    wigner3j,
)
from .dataset import (
    DipoleCurve,
    ElectronicState,
    HarmonicModel,
    MoleculeDataset,
    MorseModel,
    PotentialCurve,
    RigidRotorModel,
    RotorInfo,
    load_dataset,
    synthesize,
    write_dataset,
)
from .errors import DataError, DegenerateSpectraError, NumericalError
from .polarizability import (
    AlphaValue,
    LevelId,
    LineListOptions,
    PolarizabilitySpectrum,
    Resonance,
    alpha_at,
    build_line_list,
    default_grid,
    scan_spectrum,
    solve_initial,
)
from .rovib import (
    ConvergenceReport,
    RadialGrid,
    RovibLevel,
    convergence_check,
    rotational_constant,
    solve_radial,
)

__all__ = [
    "ALPHA_HZ_PER_WCM2",
    "EINSTEIN_A_FACTOR",
    "HBAR2_OVER_TWO",
    "MHZ_CM1",
    "AlphaValue",
    "ConvergenceReport",
    "DataError",
    "DegenerateSpectraError",
    "DipoleCurve",
    "ElectronicState",
    "FrequencyWindow",
    "HarmonicModel",
    "InteractionEstimate",
    "LatticePlan",
    "LevelId",
    "LineListOptions",
    "LineStrength",
    "MagicPoint",
    "MicrowavePlan",
    "MoleculeDataset",
    "MorseModel",
    "NumericalError",
    "PolarizabilitySpectrum",
    "Polarization",
    "PotentialCurve",
    "RadialGrid",
    "Resonance",
    "RigidRotorModel",
    "RotorInfo",
    "RovibLevel",
    "alpha_at",
    "angular_weight",
    "branch_strength",
    "build_line_list",
    "cm1_to_nm",
    "convergence_check",
    "dd_interaction",
    "default_grid",
    "field_from_intensity",
    "find_magic",
    "find_windows",
    "franck_condon",
    "gamma_cm1",
    "induced_dipole",
    "induced_dipole_perturbative",
    "lattice_plan",
    "load_dataset",
    "microwave_plan",
    "natural_linewidth",
    "nm_to_cm1",
    "rabi_energy",
    "rotational_constant",
    "scan_spectrum",
    "solve_initial",
    "solve_radial",
    "synthesize",
    "vibronic_dipole",
    "wigner3j",
    "write_dataset",
]

__version__ = "0.1.0"
