import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import solve_ivp

from qdint import dynamics as dy
from qdint import operators as ops
from qdint import response as rs


def aux_block(omega, delta, gamma12, gamma=1.0):
    s = ops.aux_level_scheme(delta, gamma, gamma)
    c = ops.couplings_for(s, gamma12=gamma12)
    d = ops.laser(s, (omega, omega), 0.0, ops.DriveTarget.AUXILIARY)
    return rs.coherence_block(s, d, c)


def hand_block(g1, g2, g12, o1, o2, d1, d2):
    return np.array([
        [-(0.5 * g1 + 1j * d1), -0.5 * g12, 0.5j * o1],
        [-0.5 * g12, -(0.5 * g2 + 1j * d2), 0.5j * o2],
        [0.5j * o1, 0.5j * o2, 0],
    ])


# ---------- coherence block ----------

def test_block_undriven_eigenvalues():
    lam = aux_block(0.0, 0.0, 1.0).eigenvalues()
    assert np.allclose(sorted(lam.real), [-1, 0, 0], atol=1e-12)
    lam = aux_block(0.0, 0.0, 0.0).eigenvalues()
    assert np.allclose(sorted(lam.real), [-0.5, -0.5, 0], atol=1e-12)


@pytest.mark.parametrize("omega,delta,g12", [(2.0, 0.8, 0.3), (5.0, 0.0, 1.0), (1.0, 3.0, 0.0)])
def test_block_matches_hand_matrix(omega, delta, g12):
    m = aux_block(omega, delta, g12).matrix
    ref = hand_block(1, 1, g12, omega, omega, -0.5 * delta, 0.5 * delta)
    assert np.allclose(m, ref, atol=1e-12)


def test_block_strong_drive_limits():
    wp = np.sqrt(2 * 50.0**2) / 2
    lam = aux_block(50.0, 0.0, 1.0).eigenvalues()
    assert np.allclose(np.sort(lam.real), [-0.5, -0.5, 0], atol=0.02)
    assert np.allclose(np.sort(np.abs(lam.imag)), [0, wp, wp], atol=0.02)
    lam = aux_block(50.0, 0.0, 0.0).eigenvalues()
    assert np.allclose(np.sort(lam.real), [-0.5, -0.25, -0.25], atol=0.02)
    assert np.allclose(np.sort(np.abs(lam.imag)), [0, wp, wp], atol=0.02)


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 60), st.floats(-10, 10), st.floats(0, 1))
def test_block_eigenvalues_solve_cubic(omega, delta, g12):
    lam = aux_block(omega, delta, g12).eigenvalues()
    c = rs.aux_cubic_coefficients(omega, delta, 1.0, g12)
    for l in lam:
        scale = max(1.0, abs(l)) ** 3
        assert abs(np.polyval(c, l)) <= 1e-9 * scale


def test_block_requires_aux_scheme():
    s = ops.v_scheme(1.0)
    d = ops.laser(s, (1.0, 1.0), 0.0, ops.DriveTarget.BOTH)
    with pytest.raises(ValueError):
        rs.coherence_block(s, d, ops.couplings_for(s))


# ---------- line structure ----------

def test_line_structure_coherent_and_sidebands():
    wp = 10.0
    lines = rs.spectral_line_structure([0, -0.5 - 1j * wp, -0.5 + 1j * wp])
    assert [l.is_coherent for l in lines] == [True, False, False]
    assert sorted(l.position for l in lines[1:]) == [-wp, wp]
    assert all(l.halfwidth == 0.5 for l in lines[1:])


def test_line_structure_three_incoherent_lines():
    lines = rs.spectral_line_structure([-0.5, -0.25 - 3j, -0.25 + 3j])
    assert not any(l.is_coherent for l in lines)
    assert [l.halfwidth for l in lines] == [0.5, 0.25, 0.25]
    assert lines[0].position == 0


def test_line_structure_real_eigenvalues_at_origin():
    lines = rs.spectral_line_structure([-1.0, -2.0, -0.3])
    assert all(l.position == 0 for l in lines)


# ---------- correlations ----------

def two_level():
    scheme, c, l = rs.single_drive_v(10.0, 5.0)
    return scheme, l, dy.steady_state(l)


def test_correlation_zero_delay():
    scheme, l, rho = two_level()
    s = ops.lowering_operators(scheme)[0]
    c = rs.two_time_correlation(l, rho, s, s.conj().T, [0.0])
    assert c[0] == pytest.approx(np.trace(s @ s.conj().T @ rho.matrix), abs=1e-12)


def test_correlation_identity_is_one():
    scheme, l, rho = two_level()
    e = np.eye(scheme.dim)
    c = rs.two_time_correlation(l, rho, e, e, np.linspace(0, 5, 11))
    assert np.allclose(c, 1, atol=1e-10)


def bloch_rhs(omega, gamma):
    # resonant two-level system, e = 0, g = 1, H = -(omega/2)(|e><g| + h.c.)
    def f(t, y):
        ee, eg, ge, gg = y
        return [
            -gamma * ee + 0.5j * omega * (ge - eg),
            -0.5 * gamma * eg + 0.5j * omega * (gg - ee),
            -0.5 * gamma * ge + 0.5j * omega * (ee - gg),
            gamma * ee - 0.5j * omega * (ge - eg),
        ]
    return f


def test_correlation_strong_drive_matches_direct_integration():
    omega = 10.0
    scheme, l, rho = two_level()
    e, g = scheme.index("1"), scheme.index("2")
    sp = np.zeros((scheme.dim, scheme.dim), complex)
    sp[e, g] = 1
    sm = sp.T
    taus = np.linspace(0, 4, 81)
    c = rs.two_time_correlation(l, rho, sm, sp, taus, side="right")
    seed = rho.matrix @ sp
    y0 = [seed[e, e], seed[e, g], seed[g, e], seed[g, g]]
    sol = solve_ivp(bloch_rhs(omega, 1.0), (0, 4), np.array(y0, complex), t_eval=taus,
                    rtol=1e-10, atol=1e-12, method="DOP853")
    ref = sol.y[1]  # tr[sm X] = X_eg
    assert np.allclose(c, ref, atol=1e-8)
    # the oscillating part of C(tau) has a sideband at the Rabi frequency
    taus = np.linspace(0, 40, 8001)
    c = rs.two_time_correlation(l, rho, sm, sp, taus, side="right")
    w = 2 * np.pi * np.fft.fftfreq(len(taus), taus[1])
    amp = np.abs(np.fft.fft(c - c[-1]))
    band = (np.abs(w) > 0.5 * omega) & (np.abs(w) < 1.5 * omega)
    assert abs(abs(w[band][np.argmax(amp[band])]) - omega) < 0.3


def test_correlation_rejects_non_stationary():
    scheme, l, _ = two_level()
    bad = dy.DensityMatrix(np.diag([1.0, 0, 0]).astype(complex), scheme.basis_labels)
    e = np.eye(scheme.dim)
    with pytest.raises(ValueError):
        rs.two_time_correlation(l, bad, e, e, [0.0])


# ---------- fluorescence ----------

GRID = np.linspace(-15, 15, 3001)


def test_three_peaks_small_splitting():
    tr = rs.v_fluorescence(5.0, 1.0, 0.0, GRID)
    assert rs.count_peaks(tr) == 3


def test_five_peaks_large_splitting():
    tr = rs.v_fluorescence(5.0, 5.0, 0.0, GRID)
    assert rs.count_peaks(tr) == 5


def test_quenching_at_maximal_cross_damping():
    on = rs.v_fluorescence(5.0, 5.0, 0.0, GRID).integrated()
    off = rs.v_fluorescence(5.0, 5.0, 1.0, GRID).integrated()
    assert abs(off) <= 1e-6 * on
    assert rs.count_peaks(rs.v_fluorescence(5.0, 5.0, 1.0, GRID)) == 0


@pytest.mark.parametrize("delta", [1.0, 5.0])
def test_spectrum_symmetric(delta):
    tr = rs.v_fluorescence(5.0, delta, 0.0, GRID)
    assert np.allclose(tr.values, tr.values[::-1], atol=1e-10 * tr.values.max())


def test_spectrum_nonnegative_and_coherent_weight():
    tr = rs.v_fluorescence(3.0, 2.0, 0.3, GRID)
    assert tr.values.min() >= -1e-10 * tr.values.max()
    assert tr.coherent_weight > 0


def test_resolvent_matches_quadrature():
    scheme, c, l = rs.both_driven_v(2.0, 1.0, 0.3)
    rho = dy.steady_state(l)
    s_ops = ops.lowering_operators(scheme)
    deltas = np.array([-3.0, -1.2, 0.0, 0.7, 2.5])
    tr = rs.fluorescence_spectrum(l, rho, s_ops, c, deltas)
    taus = np.arange(0, 50 + 1e-9, 0.01)
    r = rho.matrix
    ref = np.zeros(len(deltas))
    for i, si in enumerate(s_ops):
        sp = si.conj().T
        for j, sj in enumerate(s_ops):
            if c.gamma[i, j] == 0:
                continue
            corr = rs.two_time_correlation(l, rho, sj, sp, taus, side="right")
            corr = corr - np.trace(r @ sp) * np.trace(r @ sj)
            for k, d in enumerate(deltas):
                ref[k] += (c.gamma[i, j] * np.trapezoid(np.exp(1j * d * taus) * corr, taus)).real
    assert np.allclose(tr.values, ref, rtol=1e-4, atol=1e-4 * np.abs(ref).max())


def test_trace_validation():
    with pytest.raises(ValueError):
        rs.SpectrumTrace(np.zeros(3), np.zeros(4))
    with pytest.raises(ValueError):
        rs.SpectrumTrace(np.zeros(2), np.array([0, np.nan]))


# ---------- probe absorption ----------

PGRID = np.linspace(-45, 45, 2001)


def test_w12_mirror_peaks_and_transparency():
    tr = rs.probe_w12(30.0, 15.0, PGRID, p=0.95)
    wm, wp, w0 = tr.at(-30), tr.at(30), tr.at(0)
    assert wm > 0 > wp
    assert abs(abs(wp) - abs(wm)) <= 0.02 * abs(wm)
    assert abs(w0) <= 1e-3 * np.abs(tr.values).max()


def test_w23_threshold_and_emission():
    w0 = {}
    for r in (1.0, 2.0, 5.0):
        tr = rs.probe_w23(30.0, 15.0, PGRID, p=0.99, r=r)
        w0[r] = tr.at(0)
        assert tr.at(30) < 0
    assert w0[1.0] > 0 > w0[5.0]


def test_w23_exact_threshold_at_p_one_is_r_two():
    # with p = 1 the sign change of W23(0) is at r = 2
    vals = [rs.probe_w23(30.0, 15.0, [0.0], p=1.0 - 1e-9, r=r).values[0] for r in (1.9, 2.1)]
    assert vals[0] > 0 > vals[1]


def test_probe_response_scales_with_amplitude():
    # the first-order coherence is linear in the probe amplitude, so W ~ Omega_p^2
    a = rs.probe_w12(6.0, 3.0, PGRID[::20], p=0.5, omega_p=1.0).values
    b = rs.probe_w12(6.0, 3.0, PGRID[::20], p=0.5, omega_p=2.0).values
    assert np.allclose(b / 2, 2 * a, rtol=1e-10, atol=1e-14)


def test_probe_unknown_transition():
    _, _, l = rs.single_drive_v(1.0, 1.0)
    with pytest.raises(ValueError):
        rs.probe_absorption(l, ("1", "x"), 1.0, [0.0])


def test_count_peaks_floor():
    tr = rs.SpectrumTrace(np.linspace(-1, 1, 11), np.zeros(11))
    assert rs.count_peaks(tr) == 0
    tr = rs.SpectrumTrace(np.linspace(-1, 1, 11), 1e-13 * np.cos(np.linspace(-9, 9, 11)))
    assert rs.count_peaks(tr) == 0
