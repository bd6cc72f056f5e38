import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qdint import operators as ops

PERP = (0.0, 0.0, 1.0)  # dipole direction perpendicular to an x-axis separation


def tr(theta, gamma, upper="1"):
    return ops.Transition(upper, "2", (np.cos(theta), np.sin(theta), 0.0), gamma)


# ---------------------------------------------------------------------------
# vacuum couplings

def test_cross_damping_parallel_and_perpendicular():
    assert ops.cross_damping_single_atom(tr(0, 1.0), tr(0, 1.0, "3")) == pytest.approx(1.0)
    assert ops.cross_damping_single_atom(tr(0, 1.0), tr(np.pi / 2, 1.0, "3")) == pytest.approx(0.0, abs=1e-15)


def test_cross_damping_unequal_rates():
    assert ops.cross_damping_single_atom(tr(0, 1.0), tr(np.pi / 3, 4.0, "3")) == pytest.approx(1.0)


def test_cross_damping_zero_dipole():
    with pytest.raises(ValueError):
        ops.cross_damping_single_atom(ops.Transition("1", "2", (0, 0, 0)), tr(0, 1.0, "3"))


def test_cross_damping_preselected():
    t1, t2 = tr(0, 1.0), tr(np.pi / 2, 4.0, "3")
    axis = (1.0, 1.0, 0.0)
    assert ops.cross_damping_preselected(t1, t2, axis) == pytest.approx(np.sqrt(4.0) / 2)
    assert ops.cross_damping_preselected(t1, t2, (1, 0, 0)) == pytest.approx(0.0, abs=1e-15)
    assert ops.cross_damping_preselected(tr(0, 1.0), tr(0, 1.0, "3"), (1, 0, 0)) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        ops.cross_damping_preselected(t1, t2, (0, 0, 0))


def test_collective_damping_values():
    g = ops.TwoAtomGeometry((np.pi, 0, 0), 1.0, PERP)
    assert ops.collective_damping(g, 1.0, 1.0) == pytest.approx(-3 / (4 * np.pi**2))
    far = ops.TwoAtomGeometry((1e7, 0, 0), 1.0, PERP)
    assert abs(ops.collective_damping(far, 1.0, 1.0)) < 1e-6
    near = ops.TwoAtomGeometry((1e-6, 0, 0), 1.0, PERP)
    assert ops.collective_damping(near, 1.0, 1.0) == pytest.approx(0.5, rel=1e-9)


def test_collective_damping_standard_prefactor_superradiant():
    near = ops.TwoAtomGeometry((1e-6, 0, 0), 1.0, PERP)
    assert ops.collective_damping(near, 1.0, 1.0, prefactor=1.5) == pytest.approx(1.0, rel=1e-9)


def test_collective_damping_series_continuity():
    # the small-separation series joins the closed form smoothly
    lo = ops.TwoAtomGeometry((1e-2 * (1 - 1e-9), 0, 0), 1.0, PERP)
    hi = ops.TwoAtomGeometry((1e-2 * (1 + 1e-9), 0, 0), 1.0, PERP)
    assert ops.collective_damping(lo, 1, 1) == pytest.approx(ops.collective_damping(hi, 1, 1), rel=1e-9)


def test_dipole_dipole_shift_values():
    g = ops.TwoAtomGeometry((np.pi / 2, 0, 0), 1.0, PERP)
    assert ops.dipole_dipole_shift(g, 1.0, 1.0) == pytest.approx(3 / np.pi**2)
    far = ops.TwoAtomGeometry((1e7, 0, 0), 1.0, PERP)
    assert abs(ops.dipole_dipole_shift(far, 1.0, 1.0)) < 1e-6


def test_parallel_alignment_has_no_far_zone_term():
    for x in (0.5, 3.0, 40.0):
        g = ops.TwoAtomGeometry((x, 0, 0), 1.0, (1.0, 0, 0))
        near = np.cos(x) / x**2 - np.sin(x) / x**3
        assert ops.collective_damping(g, 1, 1) == pytest.approx(0.75 * (-2) * near)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 30), st.floats(0, np.pi))
def test_two_atom_couplings_even_in_separation(x, phi):
    d = (np.cos(phi), 0.0, np.sin(phi))
    a = ops.TwoAtomGeometry((x, 0, 0), 1.0, d)
    b = ops.TwoAtomGeometry((-x, 0, 0), 1.0, d)
    assert ops.collective_damping(a, 1, 1) == pytest.approx(ops.collective_damping(b, 1, 1))
    assert ops.dipole_dipole_shift(a, 1, 1) == pytest.approx(ops.dipole_dipole_shift(b, 1, 1))
    assert abs(ops.collective_damping(a, 1, 1, prefactor=1.5)) <= 1 + 1e-12


def test_dipole_dipole_shift_diverges_at_contact():
    with pytest.raises(ValueError):
        ops.dipole_dipole_shift(ops.TwoAtomGeometry((1.0, 0, 0), 0.0, PERP), 1, 1)


def test_geometry_validation():
    with pytest.raises(ValueError):
        ops.TwoAtomGeometry((1, 0, 0), 1.0, (2, 0, 0))
    with pytest.raises(ValueError):
        ops.TwoAtomGeometry((0, 0, 0), 1.0, PERP)


def test_superposition_rates_examples():
    g12 = 0.3
    ss, aa, sa = ops.superposition_rates(1.0, 1.0, g12)
    assert (ss, aa, sa) == pytest.approx(((1 + g12) / 2, (1 - g12) / 2, 0.0))
    ss, aa, sa = ops.superposition_rates(2.0, 0.5, 1.0)
    assert aa == pytest.approx(0.0) and sa == pytest.approx(0.0)
    assert ops.superposition_rates(1.0, 4.0, 0.0) == pytest.approx((1.7, 0.8, -0.6))
    with pytest.raises(ValueError):
        ops.superposition_rates(0.0, 0.0, 0.0)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.01, 10), st.floats(0.01, 10))
def test_superposition_rates_sum_without_cross_damping(g1, g2):
    ss, aa, _ = ops.superposition_rates(g1, g2, 0.0)
    assert ss + aa == pytest.approx((g1 + g2) / 2)


def test_coupling_invariants():
    with pytest.raises(ValueError):
        ops.CouplingCoefficients(np.array([[1.0, 1.2], [1.2, 1.0]]))
    with pytest.raises(ValueError):
        ops.CouplingCoefficients(np.array([[1.0, 0.2], [0.1, 1.0]]))
    c = ops.CouplingCoefficients(np.array([[1.0, 1.0], [1.0, 4.0]]))
    assert c.gamma12 == 1.0 and c.p == pytest.approx(0.5)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.01, 5), st.floats(0.01, 5), st.floats(0, np.pi))
def test_all_cross_damping_constructors_bounded(g1, g2, theta):
    a, b = tr(0, g1), tr(theta, g2, "3")
    bound = np.sqrt(g1 * g2) * (1 + 1e-12)
    assert abs(ops.cross_damping_single_atom(a, b)) <= bound
    assert abs(ops.cross_damping_preselected(a, b, (1, 1, 0))) <= bound
    s = ops.v_scheme(1.0, g1, g2, theta)
    assert abs(ops.couplings_for(s).gamma12) <= bound


def test_anisotropic_probability():
    x, y = (1.0, 0, 0), (0, 1.0, 0)
    assert ops.anisotropic_transition_probability((x, y), (1, 1), (2, 3), np.eye(3), cross_only=True) == 0.0
    full = ops.anisotropic_transition_probability((x, y), (1, 1), (2, 3), np.diag([1, 0, 0]))
    assert full == pytest.approx(1 / 4)
    only_j = ops.anisotropic_transition_probability((x, x), (0, 2), (2, 4), np.eye(3))
    assert only_j == pytest.approx(4 / 16)
    # non-orthogonal vacuum: perpendicular moments can interfere
    c = np.array([[1, 0.5, 0], [0.5, 1, 0], [0, 0, 1]])
    assert ops.anisotropic_transition_probability((x, y), (1, 1), (1, 1), c, cross_only=True) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        ops.anisotropic_transition_probability((x, y), (1, 1), (0, 1), np.eye(3))


# ---------------------------------------------------------------------------
# schemes and Hamiltonians

def test_level_scheme_validation():
    with pytest.raises(ValueError):
        ops.LevelScheme((("a", 0), ("a", 1)), (), ops.SchemeKind.V)
    with pytest.raises(ValueError):
        ops.LevelScheme((("a", 1), ("b", 0)), (ops.Transition("b", "a"),), ops.SchemeKind.TWO_LEVEL)
    with pytest.raises(ValueError):
        ops.Transition("1", "2", gamma=-1)


def test_v_scheme_frequencies():
    s = ops.v_scheme(0.4, omega0=100)
    assert s.frequency(0) - s.frequency(1) == pytest.approx(0.4)
    assert s.reference_frequency() == pytest.approx(100)


def test_undriven_v_hamiltonian_is_diagonal():
    s = ops.v_scheme(0.4)
    h = ops.build_hamiltonian(s, None, ops.couplings_for(s))
    assert np.allclose(h, np.diag([0.2, 0.0, -0.2]))
    c = ops.couplings_for(s, delta12_minus=0.05)
    h = ops.build_hamiltonian(s, None, c)
    assert h[0, 2] == pytest.approx(0.05) and h[2, 0] == pytest.approx(0.05)


def test_lab_frame_drive_rejected():
    s = ops.v_scheme(0.4)
    with pytest.raises(ValueError):
        ops.build_hamiltonian(s, ops.laser(s, (1.0,)), None, ops.Frame.LAB)


def test_inconsistent_targets_rejected():
    v = ops.v_scheme(0.4)
    with pytest.raises(ValueError):
        ops.build_hamiltonian(v, ops.laser(v, (1.0,), target=ops.DriveTarget.AUXILIARY))
    aux = ops.aux_level_scheme(0.4)
    with pytest.raises(ValueError):
        ops.build_hamiltonian(aux, ops.laser(aux, (1.0,), target=ops.DriveTarget.BOTH))
    two = ops.two_atom_scheme()
    with pytest.raises(ValueError):
        ops.build_hamiltonian(two, ops.laser(two, (1.0,), target=ops.DriveTarget.TRANSITION2))


def test_drive_rejects_negative_rabi():
    with pytest.raises(ValueError):
        ops.DriveField((-1.0,), 1.0)


SCHEMES = [
    lambda d: ops.v_scheme(d, 1.0, 0.7, 0.3),
    lambda d: ops.aux_level_scheme(d),
    lambda d: ops.lambda_scheme(d, 1.0, 0.3),
    lambda d: ops.two_atom_scheme(),
    lambda d: ops.two_level_scheme(),
]
TARGET = [ops.DriveTarget.BOTH, ops.DriveTarget.AUXILIARY, ops.DriveTarget.BOTH,
          ops.DriveTarget.BOTH, ops.DriveTarget.TRANSITION1]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 4), st.floats(-5, 5), st.floats(0, 20), st.floats(0, 20),
       st.floats(-3, 3), st.floats(0, 2 * np.pi), st.floats(-1, 1))
def test_every_hamiltonian_is_hermitian(k, delta, o1, o2, det, phase, shift):
    s = SCHEMES[k](delta)
    c = ops.couplings_for(s, delta12_minus=shift, delta12_plus=shift, omega12=shift)
    h = ops.build_hamiltonian(s, ops.laser(s, (o1, o2), det, TARGET[k], phase), c)
    assert np.max(np.abs(h - h.conj().T)) <= 1e-14


def test_lambda_in_superposition_basis():
    g1, g2, delta, d12, om = 1.0, 0.25, 0.6, 0.1, 2.0
    s = ops.lambda_scheme(delta, g1, g2)
    c = ops.couplings_for(s, gamma12=0.0, delta12_plus=d12)
    drive = ops.laser(s, tuple(om * np.sqrt(2 * s.gammas / s.gammas.sum())), 0.0, ops.DriveTarget.BOTH)
    h = ops.build_hamiltonian(s, drive, c)
    u, v = np.sqrt(g1 / (g1 + g2)), np.sqrt(g2 / (g1 + g2))
    basis = np.array([[u, v, 0], [v, -u, 0], [0, 0, 1]])  # columns s, a, 3
    hs = basis.T @ h @ basis
    root = np.sqrt(g1 * g2)
    dprime = ((g1 - g2) * delta + 4 * d12 * root) / (g1 + g2)
    dc = (d12 * (g1 - g2) - delta * root) / (g1 + g2)
    assert hs[0, 0] - hs[1, 1] == pytest.approx(dprime)
    assert hs[0, 1] == pytest.approx(-dc)
    assert abs(hs[1, 2]) < 1e-14
    assert hs[0, 2] == pytest.approx(-om / np.sqrt(2))


def test_dissipator_independent_channels():
    s = ops.v_scheme(0.3)
    terms = ops.build_dissipator_coefficients(s, ops.couplings_for(s, gamma12=0.0))
    assert sorted((t.i, t.j) for t in terms) == [(0, 0), (1, 1)]


def test_dissipator_validation():
    s = ops.v_scheme(0.3)
    with pytest.raises(ValueError):
        ops.build_dissipator_coefficients(s, ops.CouplingCoefficients(np.eye(3)))
    with pytest.raises(ValueError):
        ops.build_dissipator_coefficients(s, ops.CouplingCoefficients(np.diag([1.0, 2.0])))


def test_two_atom_dissipator_carries_collective_rate():
    g = ops.TwoAtomGeometry((0.8, 0, 0), 1.0, PERP)
    g12 = ops.collective_damping(g, 1.0, 1.0)
    s = ops.two_atom_scheme()
    terms = ops.build_dissipator_coefficients(s, ops.couplings_for(s, gamma12=g12))
    cross = [t.rate for t in terms if t.i != t.j]
    assert cross == pytest.approx([g12, g12])
