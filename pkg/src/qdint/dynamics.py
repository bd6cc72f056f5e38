"""
Liouvillian construction, time evolution and steady states.

The master equation

    drho/dt = -i[H, rho] + sum_ij G_ij (S_j rho S_i^+ - 1/2 {S_i^+ S_j, rho})

is written as ``d vec(rho)/dt = L vec(rho)`` with column-stacking ``vec``.
"""
from dataclasses import dataclass

import numpy as np

from . import numerics as nx
from . import operators as ops

__all__ = [
    "DegenerateSteadyStateError", "Liouvillian", "DensityMatrix", "Trajectory",
    "build_liouvillian", "liouvillian_for", "evolve", "steady_state",
    "kernel_projector", "constant_of_motion_alpha", "superposition_populations",
    "cpt_upper_population", "cpt_zero_splitting", "matched_lambda_drive",
    "two_atom_closed_form",
]

KERNEL_TOL = 1e-9


class DegenerateSteadyStateError(nx.NumericsError):
    """The Liouvillian has several stationary states and no initial state was given."""


@dataclass(frozen=True)
class Liouvillian:
    generator: np.ndarray
    basis_labels: tuple

    @property
    def dim(self):
        return len(self.basis_labels)

    def apply(self, rho):
        """``L[rho]`` as a matrix."""
        m = rho.matrix if isinstance(rho, DensityMatrix) else rho
        return nx.devectorize(self.generator @ nx.vectorize(m))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite state."""
    matrix: np.ndarray
    basis_labels: tuple

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))
        if m.shape != (len(self.basis_labels),) * 2:
            raise ValueError(f"matrix shape {m.shape} does not match {len(self.basis_labels)} labels")
        if np.max(np.abs(m - m.conj().T)) > 1e-12:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1) > 1e-12:
            raise ValueError(f"density matrix trace is {np.trace(m).real}, not 1")
        if np.min(np.linalg.eigvalsh(0.5 * (m + m.conj().T))) < -1e-10:
            raise ValueError("density matrix has negative eigenvalues")

    @classmethod
    def pure(cls, labels, amplitudes):
        """Projector on the normalised state with the given amplitudes."""
        psi = np.asarray(amplitudes, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()), labels)

    @classmethod
    def basis_state(cls, labels, label):
        labels = list(labels)
        psi = np.zeros(len(labels))
        psi[labels.index(label)] = 1.0
        return cls.pure(labels, psi)

    def element(self, row, col):
        return self.matrix[self.basis_labels.index(row), self.basis_labels.index(col)]

    def population(self, label):
        return float(self.element(label, label).real)


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: tuple

    def series(self, row, col):
        return np.array([s.element(row, col) for s in self.states])


def _clean(m, labels):
    # remove roundoff before validation
    m = 0.5 * (m + m.conj().T)
    return DensityMatrix(m / np.trace(m).real, labels)


def build_liouvillian(h, dissipator, basis_labels=None):
    """Vectorised generator of the master equation.

    Parameters
    ----------
    h : (d, d) array_like
        Hermitian Hamiltonian.
    dissipator : list of DissipatorTerm
        Output of :func:`operators.build_dissipator_coefficients`.
    basis_labels : sequence of str, optional
    """
    h = np.asarray(h, dtype=complex)
    d = h.shape[0]
    if h.shape != (d, d):
        raise ValueError("Hamiltonian must be square")
    if np.max(np.abs(h - h.conj().T), initial=0) > 1e-12:
        raise ValueError("Hamiltonian must be Hermitian")
    labels = tuple(basis_labels) if basis_labels is not None else tuple(str(k) for k in range(d))
    if len(labels) != d:
        raise ValueError("basis labels do not match the Hamiltonian dimension")
    eye = np.eye(d)
    gen = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for term in dissipator:
        si, sj = term.lowering_i, term.lowering_j
        if si.shape != (d, d) or sj.shape != (d, d):
            raise ValueError(f"lowering operators have shape {si.shape}, expected {(d, d)}")
        sip = si.conj().T
        prod = sip @ sj
        gen += term.rate * (np.kron(sip.T, sj) - 0.5 * np.kron(eye, prod) - 0.5 * np.kron(prod.T, eye))
    return Liouvillian(gen, labels)


def liouvillian_for(scheme, drive=None, couplings=None, frame=ops.Frame.ROTATING):
    """Build H and the dissipator of a scheme and return its Liouvillian."""
    if couplings is None:
        couplings = ops.couplings_for(scheme)
    h = ops.build_hamiltonian(scheme, drive, couplings, frame)
    terms = ops.build_dissipator_coefficients(scheme, couplings)
    return build_liouvillian(h, terms, scheme.basis_labels)


def evolve(l, rho0, times):
    """Propagate ``rho0`` to each time in ``times``.

    Consecutive samples are reached by stepping from the previous sample;
    propagators for repeated step sizes are cached, so uniform grids cost a
    single matrix exponential.
    """
    times = np.asarray(times, dtype=float)
    if np.any(times < 0):
        raise ValueError("times must be non-negative")
    cache = {}
    v = nx.vectorize(rho0.matrix)
    t_prev = 0.0
    states = []
    for t in times:
        dt = t - t_prev
        if dt < 0:
            v = nx.vectorize(rho0.matrix)
            dt = t
        key = round(dt, 12)
        if key not in cache:
            cache[key] = nx.expm_action(l.generator, np.eye(len(v)), dt) if dt else None
        if cache[key] is not None:
            v = cache[key] @ v
        t_prev = t
        states.append(_clean(nx.devectorize(v), l.basis_labels))
    return Trajectory(times, tuple(states))


def _kernel_bases(l, tol):
    gen = l.generator
    right = nx.null_space(gen, tol)
    left = nx.null_space(gen.conj().T, tol)
    if not right or len(right) != len(left):
        raise nx.NumericsError(
            f"inconsistent kernel: {len(right)} right and {len(left)} left null vectors")
    return np.array(right).T, np.array(left).T


def kernel_projector(l, tol=KERNEL_TOL):
    """Spectral projector onto the zero-eigenvalue subspace of ``l``.

    ``P = R (Y^H R)^{-1} Y^H`` with right (``R``) and left (``Y``) kernel
    bases; ``P vec(rho0)`` is the time average of ``exp(L t) rho0``, which
    is also its long-time limit unless other eigenvalues lie on the
    imaginary axis (undamped optical coherences of a dark state).
    """
    r, y = _kernel_bases(l, tol)
    return r @ np.linalg.solve(y.conj().T @ r, y.conj().T)


def steady_state(l, rho0=None, tol=KERNEL_TOL):
    """Stationary state of ``l``.

    Raises
    ------
    DegenerateSteadyStateError
        If the kernel is degenerate and ``rho0`` is not given.
    """
    r, _ = _kernel_bases(l, tol)
    if r.shape[1] == 1:
        m = nx.devectorize(r[:, 0])
        return _clean(m, l.basis_labels)
    if rho0 is None:
        raise DegenerateSteadyStateError(
            f"degenerate steady state ({r.shape[1]}-dimensional kernel), initial condition required")
    p = kernel_projector(l, tol)
    return _clean(nx.devectorize(p @ nx.vectorize(rho0.matrix)), l.basis_labels)


def _require(labels, needed, what):
    missing = [k for k in needed if k not in labels]
    if missing:
        raise ValueError(f"{what} needs basis levels {needed}, missing {missing}")


def constant_of_motion_alpha(traj):
    """``rho_11 + rho_33 - rho_13 - rho_31`` of a V-scheme trajectory."""
    _require(traj.states[0].basis_labels if traj.states else (), ("1", "2", "3"), "alpha")
    return np.array([
        (s.element("1", "1") + s.element("3", "3") - s.element("1", "3") - s.element("3", "1")).real
        for s in traj.states])


def superposition_populations(traj):
    """Populations and coherence of ``|s>, |a> = (|1> +- |3>)/sqrt(2)``.

    Returns
    -------
    ndarray, shape (n_times, 4)
        Columns ``rho_ss, rho_aa, Re rho_sa, Im rho_sa``.
    """
    if not traj.states:
        return np.zeros((0, 4))
    labels = traj.states[0].basis_labels
    _require(labels, ("1", "2", "3"), "superposition populations")
    s = np.zeros(len(labels))
    a = np.zeros(len(labels))
    s[labels.index("1")] = a[labels.index("1")] = 1 / np.sqrt(2)
    s[labels.index("3")] = 1 / np.sqrt(2)
    a[labels.index("3")] = -1 / np.sqrt(2)
    out = []
    for st in traj.states:
        m = st.matrix
        sa = s @ m @ a
        out.append(((s @ m @ s).real, (a @ m @ a).real, sa.real, sa.imag))
    return np.array(out)


def matched_lambda_drive(scheme, omega, detuning=0.0, phase=0.0):
    """Two-field Lambda drive with ``Omega_j = Omega sqrt(2 G_j/(G1 + G2))``.

    The weights make the laser couple level ``3`` only to the symmetric
    ground superposition; for equal rates both Rabi frequencies are ``Omega``.
    """
    g = scheme.gammas
    rabi = omega * np.sqrt(2 * g / g.sum())
    return ops.laser(scheme, tuple(rabi), detuning, ops.DriveTarget.BOTH, phase)


def cpt_zero_splitting(gamma1, gamma2, delta12):
    """Ground-level splitting at which the coupling of ``|s>`` and ``|a>`` vanishes."""
    return (gamma1 - gamma2) * delta12 / np.sqrt(gamma1 * gamma2)


def cpt_upper_population(scheme, drive, couplings, rho0=None):
    """Stationary population of the upper Lambda level ``3``.

    Raises
    ------
    DegenerateSteadyStateError
        When the antisymmetric ground state is fully decoupled (``p = 1`` with
        no ``s``-``a`` coupling) and ``rho0`` is not given.
    """
    if scheme.kind is not ops.SchemeKind.LAMBDA:
        raise ValueError("upper-level population is defined for Lambda schemes")
    l = liouvillian_for(scheme, drive, couplings)
    return steady_state(l, rho0).population("3")


def two_atom_closed_form(omega, delta_l, gamma, gamma12, omega12):
    """Analytic driven two-atom populations ``(rho_ee, rho_ss, rho_aa)``.

    Valid for equal decay rates and a drive perpendicular to the interatomic
    axis. The formula uses amplitude decay rates and half Rabi frequencies:
    with master-equation rates ``G``, ``G12``, Rabi frequency ``O`` and the
    exchange coupling ``W`` of ``W (S1+ S2- + h.c.)`` pass ``gamma = G/2``,
    ``gamma12 = G12/2``, ``omega = O/2`` and ``omega12 = 2 W``. ``delta_l`` is
    ``omega_L - omega_0``.
    """
    d = omega**4 + (gamma**2 + delta_l**2) * (
        omega**2 + 0.25 * ((gamma + gamma12)**2 + (delta_l - omega12)**2))
    ee = omega**4 / (4 * d)
    ss = (2 * omega**2 * (gamma**2 + delta_l**2) + omega**4) / (4 * d)
    return ee, ss, ee
