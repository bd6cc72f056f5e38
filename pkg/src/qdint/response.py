"""
Correlation functions, fluorescence spectra and probe absorption.

Spectra are evaluated from the resolvent of the Liouvillian instead of a
Fourier transform of sampled correlations. The stationary pole at zero
frequency is removed by adding the kernel projector ``P0`` to the
resolvent; this leaves the solution unchanged because every right-hand
side is traceless (orthogonal to the left kernel).
"""
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import find_peaks

from . import dynamics as dy
from . import numerics as nx
from . import operators as ops

__all__ = [
    "SpectrumTrace", "CoherenceBlock", "SpectralLine",
    "coherence_block", "aux_cubic_coefficients", "spectral_line_structure",
    "two_time_correlation", "fluorescence_spectrum", "probe_absorption",
    "count_peaks", "find_spectrum_peaks", "single_drive_v",
    "probe_w12", "probe_w23", "both_driven_v", "v_fluorescence",
]


@dataclass(frozen=True)
class SpectrumTrace:
    """Spectrum sampled on a detuning grid (units of the first decay rate).

    ``coherent_weight`` holds the elastic (delta-function) part that is not
    rendered into ``values``.
    """
    detunings: np.ndarray
    values: np.ndarray
    coherent_weight: float = 0.0

    def __post_init__(self):
        d = np.asarray(self.detunings, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if d.shape != v.shape:
            raise ValueError("detunings and values must have the same shape")
        if not np.all(np.isfinite(v)):
            raise ValueError("spectrum has non-finite values")
        object.__setattr__(self, "detunings", d)
        object.__setattr__(self, "values", v)

    def integrated(self):
        return float(np.trapezoid(self.values, self.detunings))

    def at(self, delta):
        """Linear interpolation of the trace at ``delta``."""
        return float(np.interp(delta, self.detunings, self.values))


@dataclass(frozen=True)
class CoherenceBlock:
    matrix: np.ndarray
    labels: tuple = ("rho12", "rho32", "rhob2")

    def eigenvalues(self):
        return nx.eig_general(self.matrix).eigenvalues


@dataclass(frozen=True)
class SpectralLine:
    position: float
    halfwidth: float
    is_coherent: bool
    eigenvalue: complex = field(default=0j, repr=False)


def coherence_block(scheme, drive, couplings):
    """Closed 3x3 generator of ``(rho_12, rho_32, rho_b2)`` for the auxiliary-level scheme.

    Read off the full Liouvillian, so it holds for any rates and Rabi
    frequencies of that scheme.
    """
    if scheme.kind is not ops.SchemeKind.V or not scheme.has_auxiliary:
        raise ValueError("coherence block is defined for the auxiliary-level V scheme")
    l = dy.liouvillian_for(scheme, drive, couplings)
    d = scheme.dim
    g = scheme.index("2")
    idx = [scheme.index(k) + g * d for k in ("1", "3", "b")]
    m = l.generator[np.ix_(idx, idx)]
    # the block must be closed: no leakage from the other elements
    others = np.setdiff1d(np.arange(d * d), idx)
    if np.max(np.abs(l.generator[np.ix_(idx, others)]), initial=0) > 1e-12:
        raise ValueError("coherences do not form a closed block for this drive")
    return CoherenceBlock(m)


def aux_cubic_coefficients(omega, delta, gamma, gamma12):
    """Monic characteristic cubic of the symmetric auxiliary-level block.

    Equal rates and Rabi frequencies, laser tuned midway between the upper
    levels. Returns coefficients for ``numpy.roots``.
    """
    return np.array([
        1.0,
        gamma,
        0.25 * delta**2 + 0.25 * (gamma**2 - gamma12**2) + 0.5 * omega**2,
        0.25 * omega**2 * (gamma - gamma12),
    ])


def spectral_line_structure(block, tol=1e-9):
    """Lines at ``Im(lambda)`` with halfwidth ``-Re(lambda)``.

    A zero eigenvalue marks coherent (elastic) scattering.
    """
    lam = block.eigenvalues() if isinstance(block, CoherenceBlock) else np.asarray(block)
    scale = max(1.0, np.max(np.abs(lam)))
    return [SpectralLine(float(l.imag), float(-l.real), bool(abs(l) < tol * scale), complex(l))
            for l in lam]


def _check_stationary(l, rho_ss, tol=1e-8):
    v = nx.vectorize(rho_ss.matrix)
    resid = np.linalg.norm(l.generator @ v)
    if resid > tol * max(1.0, np.linalg.norm(l.generator, 2)):
        raise ValueError(f"state is not stationary under the Liouvillian (residual {resid:.3g})")


def two_time_correlation(l, rho_ss, op_a, op_b, taus, side="left"):
    """``C(tau) = tr[A exp(L tau)(B rho)]`` by the regression theorem.

    With ``side="right"`` the seed is ``rho B`` instead, which gives
    ``<B(t) A(t + tau)>``.
    """
    _check_stationary(l, rho_ss)
    r = rho_ss.matrix
    seed = op_b @ r if side == "left" else r @ op_b
    v = nx.vectorize(seed)
    out = []
    t_prev = 0.0
    cache = {}
    for tau in np.asarray(taus, dtype=float):
        if tau < 0:
            raise ValueError("delays must be non-negative")
        dt = tau - t_prev
        if dt < 0:
            v, dt = nx.vectorize(seed), tau
        key = round(dt, 12)
        if dt:
            if key not in cache:
                cache[key] = nx.expm_action(l.generator, np.eye(len(v)), dt)
            v = cache[key] @ v
        t_prev = tau
        out.append(np.trace(op_a @ nx.devectorize(v)))
    return np.array(out)


def _resolvent_solves(l, p0, rhs, grid):
    n = l.generator.shape[0]
    eye = np.eye(n)
    base = l.generator + p0
    return [nx.solve_linear(base + 1j * delta * eye, rhs) for delta in grid]


def fluorescence_spectrum(l, rho_ss, dipole_ops, couplings, grid):
    """Incoherent fluorescence spectrum weighted by the damping matrix.

    ``S(delta) = Re sum_ij G_ij int_0^inf dtau e^{i delta tau}
    [<S_i^+(0) S_j(tau)> - <S_i^+><S_j>]`` with ``delta`` measured from
    the frame frequency.

    Parameters
    ----------
    dipole_ops : list of ndarray
        Lowering operators ``S_j``.
    couplings : CouplingCoefficients or array_like
        Damping matrix used as the weight.
    """
    _check_stationary(l, rho_ss)
    gam = couplings.gamma if isinstance(couplings, ops.CouplingCoefficients) else np.asarray(couplings)
    r = rho_ss.matrix
    p0 = dy.kernel_projector(l)
    eye = np.eye(p0.shape[0])
    cols = []
    for s in dipole_ops:
        sp = s.conj().T
        x = nx.vectorize(r @ sp) - nx.vectorize(r) * np.trace(r @ sp)
        cols.append(-(eye - p0) @ x)
    rhs = np.array(cols).T
    grid = np.asarray(grid, dtype=float)
    values = []
    for y in _resolvent_solves(l, p0, rhs, grid):
        total = 0.0
        for i in range(len(dipole_ops)):
            yi = nx.devectorize(y[:, i])
            for j, sj in enumerate(dipole_ops):
                total += gam[i, j] * np.trace(sj @ yi)
        values.append(total.real)
    mean = [np.trace(r @ s) for s in dipole_ops]
    coherent = sum(gam[i, j] * np.conj(mean[i]) * mean[j]
                   for i in range(len(mean)) for j in range(len(mean)))
    return SpectrumTrace(grid, np.array(values), float(np.real(coherent)))


def probe_absorption(l0, probe_op, omega_p_rabi, grid, factor=1.0, rho0=None):
    """Weak-probe absorption rate from first-order harmonic response.

    The probe couples ``probe_op = (upper, lower)`` through
    ``V = (i/2) Omega_p |upper><lower| + h.c.``; the positive-frequency
    response solves ``(L0 + i delta) rho1 = i[V, rho0]`` and the rate is
    ``factor * Re[Omega_p rho1_(upper, lower)]``. ``delta`` is the probe
    detuning from the frame frequency; positive values mean absorption.
    """
    labels = list(l0.basis_labels)
    upper, lower = probe_op
    if upper not in labels or lower not in labels:
        raise ValueError(f"probe transition {upper}-{lower} is not in the basis {labels}")
    if rho0 is None:
        rho0 = dy.steady_state(l0)
    else:
        _check_stationary(l0, rho0)
    d = len(labels)
    k, g = labels.index(upper), labels.index(lower)
    v = np.zeros((d, d), dtype=complex)
    v[k, g] = 0.5j * omega_p_rabi
    r = rho0.matrix
    rhs = nx.vectorize(1j * (v @ r - r @ v))
    p0 = dy.kernel_projector(l0)
    grid = np.asarray(grid, dtype=float)
    vals = [factor * (omega_p_rabi * nx.devectorize(x)[k, g]).real
            for x in _resolvent_solves(l0, p0, rhs, grid)]
    return SpectrumTrace(grid, np.array(vals))


def find_spectrum_peaks(trace, rel_prominence=0.02, floor=1e-12):
    """Detunings of local maxima with prominence above a fraction of the maximum.

    A trace whose maximum is below ``floor`` has no peaks.
    """
    vals = trace.values
    top = vals.max() if vals.size else 0.0
    if top <= floor:
        return np.array([])
    idx, _ = find_peaks(vals, prominence=rel_prominence * top)
    return trace.detunings[idx]


def count_peaks(trace, rel_prominence=0.02, floor=1e-12):
    return len(find_spectrum_peaks(trace, rel_prominence, floor))


def single_drive_v(omega, splitting, gamma1=1.0, gamma2=1.0, p=0.0):
    """V scheme pumped on ``1-2`` only, with the laser resonant.

    Level ``3`` sits ``splitting`` above level ``1``. Returns the scheme,
    couplings and Liouvillian in the frame of the laser.
    """
    scheme = ops.v_scheme(-splitting, gamma1, gamma2)
    c = ops.couplings_for(scheme, p=p)
    drive = ops.DriveField((omega,), scheme.frequency(0), 0.0, ops.DriveTarget.TRANSITION1)
    return scheme, c, dy.liouvillian_for(scheme, drive, c)


def probe_w12(omega, splitting, grid, p=0.0, gamma1=1.0, gamma2=1.0, omega_p=1.0):
    """Probe absorption on the driven ``1-2`` transition."""
    _, _, l = single_drive_v(omega, splitting, gamma1, gamma2, p)
    return probe_absorption(l, ("1", "2"), omega_p, grid, factor=1.0)


def probe_w23(omega, splitting, grid, p=0.0, r=1.0, omega_p=1.0):
    """Probe absorption on the undriven ``3-2`` transition.

    ``r = G1/G2`` with ``G1 = 1``; the rate carries the factor 2 of the
    undriven-transition normalisation.
    """
    _, _, l = single_drive_v(omega, splitting, 1.0, 1.0 / r, p)
    return probe_absorption(l, ("3", "2"), omega_p, grid, factor=2.0)


def both_driven_v(omega, delta, gamma12=0.0, gamma=1.0, delta_l=0.0):
    """V scheme with both transitions driven by one laser of Rabi frequency ``omega``.

    ``delta`` is the upper-level splitting and ``delta_l`` the laser detuning
    from the mid frequency.
    """
    scheme = ops.v_scheme(delta, gamma, gamma)
    c = ops.couplings_for(scheme, gamma12=gamma12)
    drive = ops.laser(scheme, (omega, omega), delta_l, ops.DriveTarget.BOTH)
    return scheme, c, dy.liouvillian_for(scheme, drive, c)


def v_fluorescence(omega, delta, gamma12, grid, gamma=1.0, delta_l=0.0):
    """Incoherent spectrum of the both-driven V scheme about the laser frequency."""
    scheme, c, l = both_driven_v(omega, delta, gamma12, gamma, delta_l)
    rho = dy.steady_state(l)
    return fluorescence_spectrum(l, rho, ops.lowering_operators(scheme), c, grid)
