import math

import numpy as np
import pytest
import scipy.constants as si
from hypothesis import given, settings, strategies as st

from molpol import (
    AlphaValue,
    DegenerateSpectraError,
    LevelId,
    LineListOptions,
    Polarization,
    PolarizabilitySpectrum,
    alpha_at,
    dd_interaction,
    find_magic,
    find_windows,
    induced_dipole,
    induced_dipole_perturbative,
    lattice_plan,
    microwave_plan,
    rabi_energy,
    scan_spectrum,
)
from molpol.errors import DataError

from conftest import RBCS, make_optical, make_rotor, rotor_b

SZ = Polarization.sigma_z()
G0 = LineListOptions(gamma=0.0)


@pytest.fixture(scope="module")
def rotor():
    return make_rotor(RBCS["mu"], RBCS["r_e"], RBCS["d"], "rbcs_rotor")


# ------------------------------------------------------------------ dressing


def test_rabi_energy_hand_computed():
    d, inten = 1.27, 100.0
    e_field = math.sqrt(2.0 * inten * 1e4 / (si.epsilon_0 * si.c))
    expect = d * 1e-21 / si.c * e_field * math.sqrt(1.0 / 3.0) / (si.h * si.c * 100.0)
    assert rabi_energy(d, inten) == pytest.approx(expect, rel=1e-12)


def test_rabi_energy_scalings():
    base = rabi_energy(1.0, 50.0)
    assert rabi_energy(1.0, 200.0) == pytest.approx(2.0 * base, rel=1e-12)
    assert rabi_energy(2.0, 50.0) == pytest.approx(2.0 * base, rel=1e-12)
    assert rabi_energy(1.0, 0.0) == 0.0
    assert rabi_energy(1.0, 50.0, angular_weight=1.0 / 12.0) == pytest.approx(
        0.5 * base, rel=1e-12
    )


def test_induced_dipole_limits():
    d, de = 1.27, 0.03
    assert induced_dipole(d, de, de, 100.0) == 0.5 * d
    assert induced_dipole(d, de, de + 0.5, 0.0) == 0.0
    assert induced_dipole(0.0, de, de, 100.0) == 0.0
    by_i = [induced_dipole(d, de, de + 0.01, i) for i in (1.0, 10.0, 100.0, 1000.0)]
    assert all(b > a for a, b in zip(by_i, by_i[1:]))
    by_det = [induced_dipole(d, de, de + det, 100.0) for det in (1e-4, 1e-3, 1e-2, 1e-1)]
    assert all(b < a for a, b in zip(by_det, by_det[1:]))
    # detuning enters through its magnitude only (power-of-two offsets keep
    # the two detunings exactly equal in floats)
    assert induced_dipole(d, 0.03125, 0.03125 + 0.015625, 7.0) == induced_dipole(
        d, 0.03125, 0.03125 - 0.015625, 7.0
    )


@settings(max_examples=80, deadline=None)
@given(
    det=st.floats(min_value=-10.0, max_value=10.0, allow_nan=False),
    inten=st.floats(min_value=0.0, max_value=1e7, allow_nan=False),
)
def test_induced_dipole_bounded(det, inten):
    d = 1.27
    got = induced_dipole(d, 0.03, 0.03 + det, inten)
    assert 0.0 <= got <= 0.5 * d + 1e-12


def test_perturbative_limit():
    d, de, inten = 1.27, 0.03, 100.0
    om = rabi_energy(d, inten)
    for mult in (10.0, 20.0, 100.0):
        nu = de + mult * om
        exact = induced_dipole(d, de, nu, inten)
        approx = induced_dipole_perturbative(d, de, nu, inten)
        assert approx == pytest.approx(exact, rel=1e-2)
        assert approx >= exact  # dropping the Rabi term in the norm only raises it
    assert induced_dipole_perturbative(d, de, de, inten) == math.inf
    assert induced_dipole_perturbative(d, de, de + 1.0, 0.0) == 0.0


def test_microwave_plan_on_and_off_resonance(rotor):
    b = rotor_b(RBCS["mu"], RBCS["r_e"])
    probe = microwave_plan(rotor, 0.05, 100.0)
    assert probe.delta_e == pytest.approx(2.0 * b, rel=1e-9)
    assert probe.d_permanent == pytest.approx(RBCS["d"], rel=1e-9)
    assert probe.detuning == probe.nu - probe.delta_e
    on = microwave_plan(rotor, probe.delta_e, 100.0)
    assert on.d_induced == 0.5 * on.d_permanent
    assert on.rabi > 0.0


@settings(max_examples=25, deadline=None)
@given(
    nu=st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
    inten=st.floats(min_value=0.0, max_value=1e6, allow_nan=False),
)
def test_microwave_plan_invariant(rotor, nu, inten):
    plan = microwave_plan(rotor, nu, inten)
    assert 0.0 <= plan.d_induced <= 0.5 * plan.d_permanent + 1e-12


def test_microwave_plan_needs_permanent_dipole():
    with pytest.raises(DataError, match="permanent dipole"):
        microwave_plan(make_optical(), 0.05, 100.0)


# --------------------------------------------------------------- interaction


def test_dd_interaction_hand_computed():
    d, r_nm = 0.6, 500.0
    d_si = d * 1e-21 / si.c
    expect = d_si**2 / (4.0 * math.pi * si.epsilon_0 * (r_nm * 1e-9) ** 3) / si.h
    got = dd_interaction(d, r_nm)
    assert got.v_dd_over_h == pytest.approx(expect, rel=1e-12)
    assert got.delta_t * got.v_dd_over_h == pytest.approx(1.0, rel=1e-15)


def test_dd_interaction_cubic_scaling_exact():
    for r_nm in (266.0, 405.0, 532.0):
        near = dd_interaction(0.45, r_nm)
        far = dd_interaction(0.45, 2.0 * r_nm)
        assert far.delta_t == 8.0 * near.delta_t
        assert far.v_dd_over_h == near.v_dd_over_h / 8.0


def test_dd_interaction_edge_cases():
    off = dd_interaction(0.0, 500.0)
    assert off.v_dd_over_h == 0.0
    assert off.delta_t == math.inf
    assert dd_interaction(-0.5, 500.0).d_induced == 0.5
    with pytest.raises(ValueError):
        dd_interaction(0.5, 0.0)
    with pytest.raises(ValueError):
        dd_interaction(0.5, -1.0)


def test_lattice_plan_exact_arithmetic():
    plan = lattice_plan(complex(-100.0, 0.001), 1.0e4, 1064.0)
    assert plan.v0_over_h == 1.0e6
    assert plan.decoherence_rate == pytest.approx(4.0 * math.pi * 0.001 * 1.0e4, rel=1e-15)
    assert plan.coherent_ratio == pytest.approx(1.0e5, rel=1e-15)
    assert plan.r_l == 532.0
    assert plan.nu == pytest.approx(1.0e7 / 1064.0, rel=1e-15)
    assert plan.wavelength_nm == 1064.0
    assert plan.intensity == 1.0e4


def test_lattice_plan_degenerate_inputs():
    assert lattice_plan(complex(-100.0, 0.001), 0.0, 1064.0).v0_over_h == 0.0
    assert lattice_plan(complex(-100.0, 0.001), 0.0, 1064.0).decoherence_rate == 0.0
    assert lattice_plan(complex(-100.0, 0.0), 1.0e4, 1064.0).coherent_ratio == math.inf
    wrapped = lattice_plan(AlphaValue(nu=9398.5, value=complex(-100.0, 0.001)), 1.0e4, 1064.0)
    assert wrapped.v0_over_h == 1.0e6


# -------------------------------------------------------------- magic points


def _rotor_specs(rotor, grid=None):
    nus = grid if grid is not None else np.arange(0.005, 0.30, 0.005)
    a = scan_spectrum(rotor, LevelId("X0", 0, 0, 0), SZ, nus, G0)
    b = scan_spectrum(rotor, LevelId("X0", 0, 1, 0), SZ, nus, G0)
    return a, b


def test_find_magic_rotor_crossing(rotor):
    a, b = _rotor_specs(rotor)
    roots = find_magic(a, b)
    assert len(roots) == 1
    b_rot = rotor_b(RBCS["mu"], RBCS["r_e"])
    assert roots[0].nu == pytest.approx(8.0 * b_rot, rel=1e-9)
    assert roots[0].alpha == alpha_at(a.lines, roots[0].nu)
    # the crossing must hold off the scan grid as well
    ga = alpha_at(a.lines, roots[0].nu).real
    gb = alpha_at(b.lines, roots[0].nu).real
    scale = max(abs(float(np.max(np.abs(a.values().real)))), abs(ga))
    assert abs(ga - gb) < 1e-6 * scale


def test_find_magic_symmetric_in_arguments(rotor):
    a, b = _rotor_specs(rotor)
    fwd = find_magic(a, b)
    rev = find_magic(b, a)
    assert len(fwd) == len(rev) == 1
    assert fwd[0].nu == pytest.approx(rev[0].nu, rel=1e-9)


def test_find_magic_degenerate_rejected(rotor):
    a, _ = _rotor_specs(rotor)
    with pytest.raises(DegenerateSpectraError):
        find_magic(a, a)


def test_find_magic_requires_shared_grid(rotor):
    a, _ = _rotor_specs(rotor)
    _, b = _rotor_specs(rotor, grid=np.arange(0.005, 0.30, 0.004))
    with pytest.raises(ValueError, match="grid"):
        find_magic(a, b)


def test_find_magic_skips_pole_brackets(rotor):
    # sign flips across the undamped resonances must not be reported as roots
    a, b = _rotor_specs(rotor)
    b_rot = rotor_b(RBCS["mu"], RBCS["r_e"])
    for res in (2.0 * b_rot, 4.0 * b_rot):
        for root in find_magic(a, b):
            assert abs(root.nu - res) > 1e-3


# ------------------------------------------------------------------- windows


def test_single_resonance_yields_two_flanking_windows(rotor):
    nus = np.arange(0.005, 0.061, 0.001)
    spec = scan_spectrum(
        rotor, LevelId("X0", 0, 0, 0), SZ, nus, LineListOptions(gamma=2.0)
    )
    assert len(spec.resonances) == 1
    nu_res = spec.resonances[0].nu
    wins = find_windows(spec, min_width=0.004, flatness_cap=1e3, ratio_floor=1e2)
    assert len(wins) == 2
    below, above = wins
    assert below.nu_hi < nu_res < above.nu_lo
    assert below.resonances_excluded == (nu_res,)
    assert above.resonances_excluded == (nu_res,)
    assert below.min_ratio >= 1e2
    assert above.min_ratio >= 1e2


def test_flatness_cap_zero_blocks_varying_spectra(rotor):
    nus = np.arange(0.005, 0.061, 0.001)
    spec = scan_spectrum(
        rotor, LevelId("X0", 0, 0, 0), SZ, nus, LineListOptions(gamma=2.0)
    )
    assert find_windows(spec, min_width=0.004, flatness_cap=0.0, ratio_floor=1.0) == []


def test_flatness_cap_zero_allows_constant_spectrum():
    nus = np.arange(100.0, 121.0, 1.0)
    points = [AlphaValue(nu=float(v), value=complex(-50.0, 1e-5)) for v in nus]
    spec = PolarizabilitySpectrum(
        initial=LevelId("X", 0, 0, 0),
        polarization="sigma_z",
        nu=nus,
        points=points,
        resonances=[],
        lines=[],
    )
    wins = find_windows(spec, min_width=5.0, flatness_cap=0.0, ratio_floor=1e3)
    assert len(wins) == 1
    assert wins[0].nu_lo == 100.0
    assert wins[0].nu_hi == 120.0
    assert wins[0].max_flatness == 0.0
    assert wins[0].resonances_excluded == ()


def test_min_width_filters_short_runs(rotor):
    nus = np.arange(0.005, 0.061, 0.001)
    spec = scan_spectrum(
        rotor, LevelId("X0", 0, 0, 0), SZ, nus, LineListOptions(gamma=2.0)
    )
    assert find_windows(spec, min_width=1.0, flatness_cap=1e3, ratio_floor=1e3) == []


def test_windows_satisfy_their_own_predicates():
    spec = scan_spectrum(
        make_optical(),
        LevelId("X", 0, 0, 0),
        SZ,
        np.arange(8550.0, 9550.0, 0.5),
    )
    floor, cap, width = 1e4, 0.5, 5.0
    wins = find_windows(spec, min_width=width, flatness_cap=cap, ratio_floor=floor)
    assert wins
    res = [r.nu for r in spec.resonances]
    for w in wins:
        assert w.nu_hi - w.nu_lo >= width
        assert not any(w.nu_lo <= r <= w.nu_hi for r in res)
        idx = np.where((spec.nu >= w.nu_lo) & (spec.nu <= w.nu_hi))[0]
        vals = spec.values()[idx]
        assert np.all(np.isfinite(vals))
        ratio = np.abs(vals.real) / np.abs(vals.imag)
        assert np.all(ratio >= floor)
        assert w.min_ratio >= floor
        logmag = np.log(np.abs(vals))
        slopes = np.abs(np.diff(logmag)) / np.diff(spec.nu[idx])
        assert np.all(slopes <= cap + 1e-12)
        assert w.max_flatness <= cap + 1e-12


def test_short_scan_has_no_windows(rotor):
    spec = scan_spectrum(rotor, LevelId("X0", 0, 0, 0), SZ, np.array([0.01]), G0)
    assert find_windows(spec, min_width=0.001, flatness_cap=1.0, ratio_floor=1.0) == []
