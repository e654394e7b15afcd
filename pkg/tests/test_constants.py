import math

from hypothesis import given, strategies as st
from scipy import constants as sc

from molpol import constants as C


def test_key_constants_recomputed_from_codata():
    # independent reassembly from scipy.constants, not from the module's own chain
    j_per_cm1 = sc.h * sc.c * 100.0
    hbar2_over_two = sc.hbar**2 / (2.0 * sc.atomic_mass * sc.physical_constants["Bohr radius"][0] ** 2) / j_per_cm1
    assert math.isclose(C.HBAR2_OVER_TWO, hbar2_over_two, rel_tol=1e-12)

    debye = 1e-21 / sc.c
    alpha_unit = debye**2 / (sc.epsilon_0 * sc.c) / j_per_cm1 / sc.h * 1e4
    assert math.isclose(C.ALPHA_HZ_PER_WCM2, alpha_unit, rel_tol=1e-12)

    a_factor = (2.0 * math.pi * sc.c * 100.0) ** 3 * debye**2 / (3.0 * math.pi * sc.epsilon_0 * sc.hbar * sc.c**3)
    assert math.isclose(C.EINSTEIN_A_FACTOR, a_factor, rel_tol=1e-12)

    assert math.isclose(C.MHZ_CM1, 1e6 / (sc.c * 100.0), rel_tol=1e-12)


def test_wavelength_frequency_inverse_pair():
    assert math.isclose(C.nm_to_cm1(1064.0), 1e7 / 1064.0, rel_tol=1e-15)
    assert math.isclose(C.cm1_to_nm(C.nm_to_cm1(810.0)), 810.0, rel_tol=1e-12)


@given(st.floats(min_value=1e-3, max_value=1e8))
def test_nm_cm1_round_trip(x):
    assert math.isclose(C.cm1_to_nm(C.nm_to_cm1(x)), x, rel_tol=1e-12)


@given(st.floats(min_value=1e-12, max_value=1e12))
def test_unit_tables_round_trip(x):
    for table in (C.LENGTH_UNITS, C.POTENTIAL_UNITS, C.DIPOLE_UNITS):
        for factor in table.values():
            assert math.isclose((x * factor) / factor, x, rel_tol=1e-12)


def test_canonical_units_are_identity():
    assert C.LENGTH_UNITS["bohr"] == 1.0
    assert C.POTENTIAL_UNITS["cm-1"] == 1.0
    assert C.DIPOLE_UNITS["debye"] == 1.0
    # hartree in cm^-1, textbook value
    assert math.isclose(C.POTENTIAL_UNITS["hartree"], 219474.63, rel_tol=1e-6)


def test_field_from_intensity():
    # I = 1/2 eps0 c E^2, with I in W/cm^2
    e = C.field_from_intensity(100.0)
    back = 0.5 * sc.epsilon_0 * sc.c * e**2 / 1e4
    assert math.isclose(back, 100.0, rel_tol=1e-12)
    assert C.field_from_intensity(0.0) == 0.0
