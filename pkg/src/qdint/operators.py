"""
Level schemes, vacuum-induced couplings and Hamiltonians.

Rates and frequencies are plain floats in units of the first decay rate
(Gamma_1 = 1 unless stated otherwise); hbar = 1.

Supported topologies
--------------------
* ``V``: upper levels ``1`` and ``3`` decaying to the ground level ``2``,
  optionally with an auxiliary level ``b`` that is driven but does not decay.
* ``LAMBDA``: upper level ``3`` decaying to ground levels ``1`` and ``2``.
* ``TWO_ATOM``: two two-level atoms in the product basis ``gg, ge, eg, ee``
  (atom 1 written first).
* ``TWO_LEVEL``: a single two-level atom with basis ``g, e``.
"""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

__all__ = [
    "SchemeKind", "DriveTarget", "Frame", "Transition", "LevelScheme",
    "CouplingCoefficients", "DriveField", "TwoAtomGeometry", "DissipatorTerm",
    "DEFAULT_OMEGA0",
    "v_scheme", "aux_level_scheme", "lambda_scheme", "two_atom_scheme",
    "two_level_scheme", "couplings_for", "laser",
    "cross_damping_single_atom", "cross_damping_preselected",
    "collective_damping", "dipole_dipole_shift", "superposition_rates",
    "interference_parameter", "lowering_operators", "build_hamiltonian",
    "build_dissipator_coefficients", "anisotropic_transition_probability",
]

# optical carrier used when a scheme is built from splittings only; any value
# much larger than the rates works because rotating-frame quantities only
# involve differences
DEFAULT_OMEGA0 = 1000.0


class SchemeKind(Enum):
    V = "V"
    LAMBDA = "Lambda"
    TWO_ATOM = "TwoAtom"
    TWO_LEVEL = "TwoLevel"


class DriveTarget(Enum):
    TRANSITION1 = "Transition1"
    TRANSITION2 = "Transition2"
    BOTH = "Both"
    AUXILIARY = "AuxiliaryLevel"


class Frame(Enum):
    LAB = "Lab"
    ROTATING = "RotatingAtLaser"


@dataclass(frozen=True)
class Transition:
    """A dipole-allowed decay channel ``upper -> lower``."""
    upper: str
    lower: str
    dipole: tuple = (1.0, 0.0, 0.0)
    gamma: float = 1.0

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError(f"decay rate must be >= 0, got {self.gamma}")
        if not np.all(np.isfinite(self.dipole)):
            raise ValueError("dipole vector must be finite")


@dataclass(frozen=True)
class LevelScheme:
    """Bare atomic levels and their decay channels.

    For ``TWO_ATOM`` schemes the levels are the single-atom states
    ``g1, e1, g2, e2`` and the Hilbert space is their product.
    """
    levels: tuple
    transitions: tuple
    kind: SchemeKind

    def __post_init__(self):
        names = [name for name, _ in self.levels]
        if len(set(names)) != len(names):
            raise ValueError(f"level names must be unique: {names}")
        energy = dict(self.levels)
        for t in self.transitions:
            if t.upper not in energy or t.lower not in energy:
                raise ValueError(f"transition {t.upper}->{t.lower} references unknown level")
            if energy[t.upper] - energy[t.lower] <= 0:
                raise ValueError(f"transition {t.upper}->{t.lower} has non-positive frequency")

    @property
    def names(self):
        return [name for name, _ in self.levels]

    def energy(self, name):
        return dict(self.levels)[name]

    def frequency(self, k):
        t = self.transitions[k]
        return self.energy(t.upper) - self.energy(t.lower)

    @property
    def basis_labels(self):
        if self.kind is SchemeKind.TWO_ATOM:
            return ["gg", "ge", "eg", "ee"]
        return self.names

    @property
    def dim(self):
        return len(self.basis_labels)

    def index(self, label):
        return self.basis_labels.index(label)

    @property
    def gammas(self):
        return np.array([t.gamma for t in self.transitions], dtype=float)

    @property
    def has_auxiliary(self):
        return "b" in self.names

    def reference_frequency(self):
        """Mean transition frequency, the origin of laser detunings."""
        if self.has_auxiliary:
            eb = self.energy("b")
            return 0.5 * (self.energy("1") + self.energy("3")) - eb
        return float(np.mean([self.frequency(k) for k in range(len(self.transitions))]))


@dataclass(frozen=True)
class CouplingCoefficients:
    """Vacuum couplings entering the master equation.

    Parameters
    ----------
    gamma : array_like
        Symmetric matrix of damping rates; the diagonal holds the
        single-channel decay rates and the off-diagonal the cross-damping.
    delta12_minus, delta12_plus : float
        Vacuum-induced level shifts coupling the two channels.
    omega12 : float
        Dipole-dipole interaction between two atoms.
    """
    gamma: np.ndarray
    delta12_minus: float = 0.0
    delta12_plus: float = 0.0
    omega12: float = 0.0

    def __post_init__(self):
        g = np.atleast_2d(np.asarray(self.gamma, dtype=float))
        object.__setattr__(self, "gamma", g)
        if g.shape[0] != g.shape[1]:
            raise ValueError("damping matrix must be square")
        if not np.allclose(g, g.T, rtol=0, atol=1e-14):
            raise ValueError("damping matrix must be symmetric")
        if np.any(np.diag(g) < 0):
            raise ValueError("decay rates must be >= 0")
        for i in range(g.shape[0]):
            for j in range(i + 1, g.shape[0]):
                bound = np.sqrt(g[i, i] * g[j, j])
                if abs(g[i, j]) > bound * (1 + 1e-12) + 1e-15:
                    raise ValueError(
                        f"|Gamma_{i+1}{j+1}| = {abs(g[i, j])} exceeds sqrt(Gamma_i Gamma_j) = {bound}")

    @property
    def gamma12(self):
        return float(self.gamma[0, 1]) if self.gamma.shape[0] > 1 else 0.0

    @property
    def p(self):
        """Interference parameter ``Gamma_12 / sqrt(Gamma_1 Gamma_2)``."""
        return interference_parameter(self.gamma[0, 0], self.gamma[1, 1], self.gamma[0, 1])


@dataclass(frozen=True)
class DriveField:
    """Coherent laser drive.

    ``rabi`` holds one Rabi frequency per driven transition; a single value
    is reused for both transitions when ``target`` is ``BOTH`` or
    ``AUXILIARY``.
    """
    rabi: tuple
    frequency: float
    phase: float = 0.0
    target: DriveTarget = DriveTarget.BOTH

    def __post_init__(self):
        rabi = tuple(float(r) for r in np.atleast_1d(self.rabi))
        if any(r < 0 for r in rabi):
            raise ValueError("Rabi frequencies must be real and >= 0; carry phases separately")
        object.__setattr__(self, "rabi", rabi)

    def rabi_for(self, k):
        return self.rabi[k] if k < len(self.rabi) else self.rabi[-1]


@dataclass(frozen=True)
class TwoAtomGeometry:
    """Separation vector, carrier wavenumber and common dipole direction."""
    separation: tuple
    wavenumber: float
    dipole_direction: tuple = (1.0, 0.0, 0.0)

    def __post_init__(self):
        if abs(np.linalg.norm(self.dipole_direction) - 1) > 1e-12:
            raise ValueError("dipole_direction must be a unit vector")
        if np.linalg.norm(self.separation) <= 0:
            raise ValueError("atoms must be separated")

    @property
    def kr(self):
        return self.wavenumber * float(np.linalg.norm(self.separation))

    @property
    def alignment(self):
        """Cosine between the dipole direction and the interatomic axis."""
        r = np.asarray(self.separation, dtype=float)
        return float(np.dot(self.dipole_direction, r) / np.linalg.norm(r))


@dataclass(frozen=True)
class DissipatorTerm:
    """One ``Gamma_ij`` entry of the damping double sum."""
    i: int
    j: int
    rate: float
    lowering_i: np.ndarray = field(repr=False)
    lowering_j: np.ndarray = field(repr=False)


# ---------------------------------------------------------------------------
# scheme factories

def _unit_dipoles(theta):
    return (1.0, 0.0, 0.0), (np.cos(theta), np.sin(theta), 0.0)


def v_scheme(delta, gamma1=1.0, gamma2=1.0, theta=0.0, omega0=DEFAULT_OMEGA0, dipoles=None):
    """V scheme with ``omega_1 = omega_0 + delta/2`` and ``omega_2 = omega_0 - delta/2``.

    ``delta = omega_1 - omega_2`` is the splitting of the upper levels with
    level ``1`` above level ``3`` for positive ``delta``. Dipoles default to
    unit vectors at angle ``theta``.
    """
    mu1, mu2 = dipoles if dipoles is not None else _unit_dipoles(theta)
    levels = (("1", omega0 + delta / 2), ("2", 0.0), ("3", omega0 - delta / 2))
    transitions = (Transition("1", "2", tuple(mu1), gamma1), Transition("3", "2", tuple(mu2), gamma2))
    return LevelScheme(levels, transitions, SchemeKind.V)


def aux_level_scheme(delta, gamma1=1.0, gamma2=1.0, theta=0.0, omega0=DEFAULT_OMEGA0, omega_b=None):
    """V scheme pumped from a non-decaying auxiliary level ``b``.

    Here ``delta`` is the height of level ``3`` above level ``1``, so a laser
    tuned midway has detunings ``Delta_1 = -delta/2`` and ``Delta_2 = +delta/2``.
    """
    mu1, mu2 = _unit_dipoles(theta)
    eb = omega0 / 2 if omega_b is None else omega_b
    levels = (("1", omega0 - delta / 2), ("2", 0.0), ("3", omega0 + delta / 2), ("b", eb))
    transitions = (Transition("1", "2", mu1, gamma1), Transition("3", "2", mu2, gamma2))
    return LevelScheme(levels, transitions, SchemeKind.V)


def lambda_scheme(delta, gamma1=1.0, gamma2=1.0, theta=0.0, omega0=DEFAULT_OMEGA0, dipoles=None):
    """Lambda scheme with upper level ``3`` and ground levels ``1``, ``2``.

    Transition frequencies are ``omega_0 +- delta/2`` for the channels
    ``3 -> 1`` and ``3 -> 2``.
    """
    mu1, mu2 = dipoles if dipoles is not None else _unit_dipoles(theta)
    levels = (("1", -delta / 2), ("2", delta / 2), ("3", omega0))
    transitions = (Transition("3", "1", tuple(mu1), gamma1), Transition("3", "2", tuple(mu2), gamma2))
    return LevelScheme(levels, transitions, SchemeKind.LAMBDA)


def two_atom_scheme(gamma=1.0, omega0=DEFAULT_OMEGA0, gamma_second=None, omega0_second=None):
    """Two two-level atoms; the second atom copies the first unless overridden."""
    g2 = gamma if gamma_second is None else gamma_second
    w2 = omega0 if omega0_second is None else omega0_second
    levels = (("g1", 0.0), ("e1", omega0), ("g2", 0.0), ("e2", w2))
    transitions = (Transition("e1", "g1", (1.0, 0.0, 0.0), gamma),
                   Transition("e2", "g2", (1.0, 0.0, 0.0), g2))
    return LevelScheme(levels, transitions, SchemeKind.TWO_ATOM)


def two_level_scheme(gamma=1.0, omega0=DEFAULT_OMEGA0):
    levels = (("g", 0.0), ("e", omega0))
    return LevelScheme(levels, (Transition("e", "g", (1.0, 0.0, 0.0), gamma),), SchemeKind.TWO_LEVEL)


def couplings_for(scheme, gamma12=None, p=None, delta12_minus=0.0, delta12_plus=0.0, omega12=0.0):
    """Coupling coefficients using the scheme's decay rates.

    ``gamma12`` defaults to the dipole-overlap value ``sqrt(G1 G2) cos(theta)``;
    alternatively give the interference parameter ``p``.
    """
    g = scheme.gammas
    n = len(g)
    mat = np.diag(g).astype(float)
    if n == 2:
        if p is not None:
            g12 = p * np.sqrt(g[0] * g[1])
        elif gamma12 is not None:
            g12 = gamma12
        else:
            g12 = cross_damping_single_atom(*scheme.transitions)
        mat[0, 1] = mat[1, 0] = g12
    return CouplingCoefficients(mat, delta12_minus, delta12_plus, omega12)


def laser(scheme, rabi, detuning=0.0, target=DriveTarget.BOTH, phase=0.0):
    """Drive detuned by ``detuning`` from the scheme's mean transition frequency."""
    return DriveField(rabi, scheme.reference_frequency() + detuning, phase, target)


# ---------------------------------------------------------------------------
# vacuum couplings

def _norm(v, what):
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError(f"{what} has zero length")
    return v / n


def cross_damping_single_atom(t1, t2):
    """``sqrt(G1 G2) cos(theta)`` for two channels of one atom."""
    c = float(np.dot(_norm(t1.dipole, "dipole 1"), _norm(t2.dipole, "dipole 2")))
    return np.sqrt(t1.gamma * t2.gamma) * np.clip(c, -1.0, 1.0)


def cross_damping_preselected(t1, t2, polarization_axis):
    """Cross-damping when emission is restricted to one polarization.

    Returns ``sqrt(G1 G2) cos(theta_1) cos(theta_2)`` with ``theta_j`` the
    angle between dipole ``j`` and ``polarization_axis``.
    """
    e = _norm(polarization_axis, "polarization axis")
    c1 = np.dot(_norm(t1.dipole, "dipole 1"), e)
    c2 = np.dot(_norm(t2.dipole, "dipole 2"), e)
    return np.sqrt(t1.gamma * t2.gamma) * c1 * c2


def _near_zone(x):
    # cos x / x^2 - sin x / x^3, with a series below x = 1e-2
    if x < 1e-2:
        return -1 / 3 + x**2 / 30 - x**4 / 840
    return np.cos(x) / x**2 - np.sin(x) / x**3


def collective_damping(g, gamma1, gamma2, prefactor=0.75):
    """Collective damping rate of two atoms at separation ``g.separation``.

    Parameters
    ----------
    prefactor : float
        Overall prefactor. The default 3/4 gives ``sqrt(G1 G2)/2`` as the
        separation goes to zero; the common 3/2 normalisation gives full
        superradiance ``sqrt(G1 G2)`` instead.
    """
    x = g.kr
    a2 = g.alignment**2
    far = 1.0 if x == 0 else np.sin(x) / x
    return prefactor * np.sqrt(gamma1 * gamma2) * ((1 - a2) * far + (1 - 3 * a2) * _near_zone(x))


def dipole_dipole_shift(g, gamma1, gamma2, prefactor=0.75):
    """Retarded dipole-dipole interaction ``Omega_12`` of two atoms.

    Raises
    ------
    ValueError
        At zero separation, where the near-zone terms diverge.
    """
    x = g.kr
    if x == 0:
        raise ValueError("dipole-dipole shift diverges at zero separation")
    a2 = g.alignment**2
    far = -np.cos(x) / x
    near = np.sin(x) / x**2 + np.cos(x) / x**3
    return prefactor * np.sqrt(gamma1 * gamma2) * ((1 - a2) * far + (1 - 3 * a2) * near)


def superposition_rates(gamma1, gamma2, gamma12):
    """Damping rates of the symmetric and antisymmetric channel combinations.

    Returns
    -------
    (gamma_ss, gamma_aa, gamma_sa)
    """
    total = gamma1 + gamma2
    if total == 0:
        raise ValueError("Gamma_1 + Gamma_2 must be non-zero")
    root = np.sqrt(gamma1 * gamma2)
    if abs(gamma12) > root * (1 + 1e-12) + 1e-15:
        raise ValueError("|Gamma_12| exceeds sqrt(Gamma_1 Gamma_2)")
    gss = 0.5 * (gamma1**2 + gamma2**2 + 2 * gamma12 * root) / total
    gaa = (root - gamma12) * root / total
    gsa = 0.5 * (gamma1 - gamma2) * (root - gamma12) / total
    return gss, gaa, gsa


def interference_parameter(gamma1, gamma2, gamma12):
    root = np.sqrt(gamma1 * gamma2)
    if root == 0:
        return 0.0
    return float(gamma12 / root)


def anisotropic_transition_probability(dipoles, rabis, detunings, c_tensor, cross_only=False):
    """Two-path transition probability through an anisotropic vacuum.

    Evaluates ``sum_ij O_i O_j (mu_j^* . C . mu_i) / (d_i d_j)`` over the
    two intermediate states.

    Parameters
    ----------
    dipoles : (mu_fi, mu_fj)
    rabis : (Omega_i, Omega_j)
    detunings : (omega_ig - omega_L, omega_jg - omega_L)
    c_tensor : (3, 3) array_like
        Vacuum correlation tensor.
    cross_only : bool
        Return only the interference (i != j) part.
    """
    d = np.asarray(detunings, dtype=float)
    if np.any(d == 0):
        raise ValueError("intermediate-state detunings must be non-zero")
    mus = [np.asarray(m, dtype=complex) for m in dipoles]
    c = np.asarray(c_tensor, dtype=complex)
    total = 0.0
    for i in range(2):
        for j in range(2):
            if cross_only and i == j:
                continue
            total += rabis[i] * rabis[j] * (mus[j].conj() @ c @ mus[i]) / (d[i] * d[j])
    return float(np.real(total))


# ---------------------------------------------------------------------------
# operators and Hamiltonians

def _ket_bra(dim, i, j):
    m = np.zeros((dim, dim), dtype=complex)
    m[i, j] = 1.0
    return m


def lowering_operators(scheme):
    """Lowering operator ``S_k^-`` of each transition, in transition order."""
    d = scheme.dim
    if scheme.kind is SchemeKind.TWO_ATOM:
        sm = np.array([[0, 1], [0, 0]], dtype=complex)  # |g><e| in (g, e)
        eye = np.eye(2)
        return [np.kron(sm, eye), np.kron(eye, sm)]
    return [_ket_bra(d, scheme.index(t.lower), scheme.index(t.upper)) for t in scheme.transitions]


def _check_target(scheme, target):
    if scheme.kind is SchemeKind.TWO_LEVEL or scheme.kind is SchemeKind.TWO_ATOM:
        if target not in (DriveTarget.BOTH, DriveTarget.TRANSITION1):
            raise ValueError(f"{target.value} drive is not available for {scheme.kind.value} schemes")
    if target is DriveTarget.AUXILIARY and not scheme.has_auxiliary:
        raise ValueError("auxiliary-level drive needs a scheme with level 'b'")
    if scheme.has_auxiliary and target is not DriveTarget.AUXILIARY:
        raise ValueError("the auxiliary-level scheme is driven only through level 'b'")


def build_hamiltonian(scheme, drive=None, couplings=None, frame=Frame.ROTATING):
    """Hamiltonian of a level scheme with drive and vacuum shifts.

    In the rotating frame the diagonal holds laser detunings:

    * V: ``-(Delta_L -+ Delta/2)`` on levels ``1``/``3``, ground at zero,
      with ``Delta_L = omega_L - omega_0``; driven couplings ``-Omega/2``.
    * auxiliary-level V: ``omega_1b - omega_L`` and ``omega_3b - omega_L`` on
      levels ``1``/``3``, zero on ``b`` and ``2``; couplings ``-Omega/2`` to ``b``.
    * Lambda: ``-(Delta_L -+ Delta/2)`` on ground levels ``1``/``2``, upper
      level at zero, the ground-state shift ``delta12_plus`` between ``1`` and ``2``.
    * two atoms: ``-Delta_L`` per excitation, ``Omega_12`` exchange coupling.

    The shift ``delta12_minus`` couples the V upper levels.
    """
    d = scheme.dim
    h = np.zeros((d, d), dtype=complex)
    c = couplings
    target = drive.target if drive is not None else None
    if drive is not None:
        _check_target(scheme, target)
    rotating = frame is Frame.ROTATING
    if frame is Frame.LAB and drive is not None:
        raise ValueError("driven schemes are only supported in the rotating frame")
    wl = drive.frequency if drive is not None else scheme.reference_frequency()
    phase = np.exp(-1j * drive.phase) if drive is not None else 1.0

    if scheme.kind is SchemeKind.V:
        i1, i2, i3 = scheme.index("1"), scheme.index("2"), scheme.index("3")
        if scheme.has_auxiliary:
            ib = scheme.index("b")
            eb = scheme.energy("b")
            if rotating:
                h[i1, i1] = scheme.energy("1") - eb - wl
                h[i3, i3] = scheme.energy("3") - eb - wl
            else:
                for name, e in scheme.levels:
                    h[scheme.index(name), scheme.index(name)] = e
            if drive is not None:
                h[i1, ib] = -0.5 * drive.rabi_for(0) * phase
                h[i3, ib] = -0.5 * drive.rabi_for(1) * phase
        else:
            w1, w2 = scheme.frequency(0), scheme.frequency(1)
            if rotating:
                h[i1, i1] = w1 - wl
                h[i3, i3] = w2 - wl
            else:
                h[i1, i1], h[i3, i3] = w1, w2
            if drive is not None:
                if target in (DriveTarget.TRANSITION1, DriveTarget.BOTH):
                    h[i1, i2] = -0.5 * drive.rabi_for(0) * phase
                if target is DriveTarget.TRANSITION2:
                    h[i3, i2] = -0.5 * drive.rabi_for(0) * phase
                if target is DriveTarget.BOTH:
                    h[i3, i2] = -0.5 * drive.rabi_for(1) * phase
        if c is not None:
            h[i1, i3] += c.delta12_minus

    elif scheme.kind is SchemeKind.LAMBDA:
        i1, i2, i3 = scheme.index("1"), scheme.index("2"), scheme.index("3")
        w1, w2 = scheme.frequency(0), scheme.frequency(1)
        if rotating:
            dl = wl - 0.5 * (w1 + w2)
            split = w1 - w2
            h[i1, i1] = -(dl - split / 2)
            h[i2, i2] = -(dl + split / 2)
        else:
            for name, e in scheme.levels:
                h[scheme.index(name), scheme.index(name)] = e
        if drive is not None:
            if target in (DriveTarget.TRANSITION1, DriveTarget.BOTH):
                h[i3, i1] = -0.5 * drive.rabi_for(0) * phase
            if target is DriveTarget.TRANSITION2:
                h[i3, i2] = -0.5 * drive.rabi_for(0) * phase
            if target is DriveTarget.BOTH:
                h[i3, i2] = -0.5 * drive.rabi_for(1) * phase
        if c is not None:
            h[i1, i2] += c.delta12_plus

    elif scheme.kind is SchemeKind.TWO_ATOM:
        s1, s2 = lowering_operators(scheme)
        n1, n2 = s1.conj().T @ s1, s2.conj().T @ s2
        w1, w2 = scheme.frequency(0), scheme.frequency(1)
        if rotating:
            h += (w1 - wl) * n1 + (w2 - wl) * n2
        else:
            h += w1 * n1 + w2 * n2
        if c is not None:
            x = s1.conj().T @ s2
            h += c.omega12 * (x + x.conj().T)
        if drive is not None:
            for k, s in enumerate((s1, s2)):
                h += -0.5 * drive.rabi_for(k) * phase * s.conj().T
    elif scheme.kind is SchemeKind.TWO_LEVEL:
        ig, ie = scheme.index("g"), scheme.index("e")
        h[ie, ie] = scheme.frequency(0) - wl if rotating else scheme.frequency(0)
        if drive is not None:
            h[ie, ig] = -0.5 * drive.rabi_for(0) * phase
    else:  # pragma: no cover - enum is closed
        raise ValueError(f"unsupported scheme kind {scheme.kind}")

    # fill the lower triangle of the couplings, keep the diagonal real
    upper = np.triu(h, 1)
    lower = np.tril(h, -1)
    off = upper + lower + upper.conj().T + lower.conj().T
    return off + np.diag(np.real(np.diag(h)))


def build_dissipator_coefficients(scheme, couplings):
    """Non-zero terms of the damping double sum ``sum_ij Gamma_ij``.

    Raises
    ------
    ValueError
        If the damping matrix does not match the scheme's channels.
    """
    g = couplings.gamma
    ops = lowering_operators(scheme)
    if g.shape != (len(ops), len(ops)):
        raise ValueError(f"damping matrix shape {g.shape} does not match {len(ops)} channels")
    if not np.allclose(g, g.T, rtol=0, atol=1e-14):
        raise ValueError("damping matrix must be symmetric")
    if not np.allclose(np.diag(g), scheme.gammas, rtol=1e-12, atol=1e-14):
        raise ValueError("diagonal of the damping matrix must equal the channel decay rates")
    terms = []
    for i in range(len(ops)):
        for j in range(len(ops)):
            if g[i, j] != 0:
                terms.append(DissipatorTerm(i, j, float(g[i, j]), ops[i], ops[j]))
    return terms
