"""
Dressed-state manifolds and transition dipole moments between them.

A manifold is one period of the dressed ladder. Its bare basis states are
``(level, n)`` pairs meaning "atom in ``level`` with ``N - n`` laser photons".
Spontaneous emission connects a state of manifold ``N`` to one of manifold
``N - 1``; the moment is

    <i,N| mu |j,N-1> = sum c^i_(x,n) c^j_(y,n-1) mu_xy

over bare pairs with equal photon number, where ``x -> y`` is a dipole
transition. The manifold index ``N`` never enters the coefficients.
"""
from dataclasses import dataclass

import numpy as np

from . import operators as ops

__all__ = [
    "DressedManifold", "TransitionEntry", "TransitionTable",
    "microwave_superposition", "lambda_to_v_dressing", "bichromatic_dressed",
    "aux_level_manifold", "aux_level_transition_moments",
    "single_drive_manifold", "single_drive_transition_moments",
    "both_drive_manifold", "both_drive_transition_moments",
    "lambda_manifold", "lambda_transition_moments", "ladder_moments",
    "classify_states", "oracle_block", "diagonalize_block", "fix_phase",
]


@dataclass(frozen=True)
class DressedManifold:
    """Dressed states of one manifold.

    Attributes
    ----------
    labels : tuple of str
        State names, ordered by descending energy.
    bare : tuple of (str, int)
        Bare basis ``(level, photon offset)``.
    coefficients : ndarray, shape (n_states, n_bare)
        Row ``k`` holds the expansion of state ``labels[k]``.
    energies : ndarray
        Offsets from ``N omega_L``.
    alpha, beta : float
        Mixing parameters of the scheme.
    level_map : ndarray or None
        Optional ``(n_level_bare, n_bare)`` matrix expressing superposition
        bare states in atomic levels; ``level_bare`` names its rows.
    """
    labels: tuple
    bare: tuple
    coefficients: np.ndarray
    energies: np.ndarray
    alpha: float
    beta: float
    level_map: np.ndarray = None
    level_bare: tuple = None

    def state(self, label):
        return self.coefficients[self.labels.index(label)]

    def energy(self, label):
        return float(self.energies[self.labels.index(label)])

    def in_levels(self):
        """Bare labels and coefficients expressed in atomic levels."""
        if self.level_map is None:
            return self.bare, self.coefficients
        return self.level_bare, self.coefficients @ self.level_map.T


@dataclass(frozen=True)
class TransitionEntry:
    from_state: str
    to_state: str
    dipole: np.ndarray
    rate: float


@dataclass(frozen=True)
class TransitionTable:
    """Moments from states of manifold ``N`` to states of manifold ``N - 1``."""
    entries: tuple

    def moment(self, from_state, to_state):
        for e in self.entries:
            if e.from_state == from_state and e.to_state == to_state:
                return e.dipole
        raise KeyError(f"no entry {from_state} -> {to_state}")

    def rate(self, from_state, to_state):
        for e in self.entries:
            if e.from_state == from_state and e.to_state == to_state:
                return e.rate
        raise KeyError(f"no entry {from_state} -> {to_state}")

    def projected(self, from_state, to_state, axis):
        """Component of a moment along ``axis``."""
        a = np.asarray(axis, dtype=float)
        return float(np.real(np.dot(self.moment(from_state, to_state), a / np.linalg.norm(a))))

    def total_rate(self, from_state):
        return sum(e.rate for e in self.entries if e.from_state == from_state)

    def scaled(self, factor):
        """Table with every dipole multiplied by ``factor`` and rates kept."""
        return TransitionTable(tuple(
            TransitionEntry(e.from_state, e.to_state, e.dipole * factor, e.rate) for e in self.entries))


# ---------------------------------------------------------------------------
# static superpositions

def microwave_superposition(mu12, mu32):
    """Moments of ``(|1> +- |3>)/sqrt(2)`` to the ground state."""
    mu12 = np.asarray(mu12, dtype=float)
    mu32 = np.asarray(mu32, dtype=float)
    return (mu12 + mu32) / np.sqrt(2), (mu12 - mu32) / np.sqrt(2)


def lambda_to_v_dressing(omega0, delta_l, mu13):
    """Dressing of one Lambda arm by a laser of Rabi frequency ``omega0``.

    Returns
    -------
    (mu_a1, mu_b1, splitting)
        Parallel moments ``mu13 sin(phi)``, ``mu13 cos(phi)`` and the dressed
        splitting ``sqrt(omega0^2 + delta_l^2)``.
    """
    if omega0 <= 0:
        raise ValueError("Rabi frequency must be positive")
    split = np.hypot(omega0, delta_l)
    cos2 = 0.5 + delta_l / (2 * split)
    mu13 = np.asarray(mu13, dtype=float)
    return mu13 * np.sqrt(max(1 - cos2, 0.0)), mu13 * np.sqrt(cos2), split


def bichromatic_dressed(mu=1.0):
    """Strong-field dressed two-level atom and its doubly-dressed states.

    Returns a dict with

    * ``singly``: moments ``mu_ij = <N,i|mu|j,N-1>`` for ``i, j in {1, 2}``
    * ``doubly_central``: moments at the atomic frequency between
      doubly-dressed states of equal symmetry, ``(+,+)`` and ``(-,-)``
    * ``cross_correlation``: ``<sigma_11^+ sigma_22^->`` in a random state,
      zero because the two central transitions share no state
    """
    # |1,N> = (|g,N> - |e,N-1>)/sqrt2, |2,N> = (|g,N> + |e,N-1>)/sqrt2
    ce = {1: -1 / np.sqrt(2), 2: 1 / np.sqrt(2)}
    cg = {1: 1 / np.sqrt(2), 2: 1 / np.sqrt(2)}
    singly = {(i, j): ce[i] * cg[j] * mu for i in (1, 2) for j in (1, 2)}
    # doubly-dressed states mix |2,K-1,M+1> and |1,K,M>; central transitions
    # keep the dressed label, so the moment is (mu_22 +- mu_11)/2
    central = {("+", "+"): 0.5 * (singly[2, 2] + singly[1, 1]),
               ("-", "-"): 0.5 * (singly[2, 2] + singly[1, 1])}
    # ladder of two manifolds: basis |1,N>, |2,N>, |1,N-1>, |2,N-1>
    def sigma(i, j):
        m = np.zeros((4, 4))
        m[i - 1, 2 + j - 1] = 1.0
        return m
    rng = np.random.default_rng(0)
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    psi /= np.linalg.norm(psi)
    corr = psi.conj() @ sigma(1, 1) @ sigma(2, 2).T @ psi
    return {"singly": singly, "doubly_central": central, "cross_correlation": corr}


# ---------------------------------------------------------------------------
# numerical oracle

def fix_phase(v):
    """Rotate ``v`` so its largest-magnitude entry is real and positive.

    Ties within ``1e-9`` of the maximum go to the first such entry.
    """
    v = np.asarray(v, dtype=complex)
    a = np.abs(v)
    k = int(np.argmax(a >= a.max() - 1e-9))
    return v * np.exp(-1j * np.angle(v[k]))


def diagonalize_block(h):
    """Eigenpairs of a Hermitian block, energies descending, phases fixed."""
    w, v = np.linalg.eigh(np.asarray(h, dtype=complex))
    order = np.argsort(-w, kind="stable")
    return w[order], np.array([fix_phase(v[:, k]) for k in order])


def _reorder(h, scheme, levels):
    idx = [scheme.index(k) for k in levels]
    return h[np.ix_(idx, idx)]


def oracle_block(kind, omega, delta, gamma1=1.0, gamma2=1.0, delta12=0.0):
    """Rotating-frame Hamiltonian of one manifold built from the level scheme.

    ``kind`` is ``"aux"``, ``"single"``, ``"both"`` or ``"lambda"``. The
    returned block uses the bare order of the matching analytic manifold.
    """
    if kind == "aux":
        s = ops.aux_level_scheme(delta)
        h = ops.build_hamiltonian(s, ops.laser(s, (omega, omega), 0.0, ops.DriveTarget.AUXILIARY))
        return _reorder(h, s, ("1", "3", "b", "2"))
    if kind == "both":
        s = ops.v_scheme(-delta)
        h = ops.build_hamiltonian(s, ops.laser(s, (omega, omega), 0.0, ops.DriveTarget.BOTH))
        return _reorder(h, s, ("1", "3", "2"))
    if kind == "single":
        s = ops.v_scheme(-delta, gamma1, gamma2)
        d = ops.DriveField((omega,), s.frequency(0), np.pi, ops.DriveTarget.TRANSITION1)
        return _reorder(ops.build_hamiltonian(s, d), s, ("2", "1", "3"))
    if kind == "lambda":
        s = ops.lambda_scheme(delta, gamma1, gamma2)
        g = s.gammas
        drive = ops.laser(s, tuple(omega * np.sqrt(2 * g / g.sum())), 0.0, ops.DriveTarget.BOTH)
        c = ops.couplings_for(s, gamma12=0.0, delta12_plus=delta12)
        h = _reorder(ops.build_hamiltonian(s, drive, c), s, ("1", "2", "3"))
        u = _lambda_basis(gamma1, gamma2)
        return u.T @ h @ u
    raise ValueError(f"unknown manifold kind {kind!r}")


def _lambda_basis(gamma1, gamma2):
    # columns: |s>, |a>, |3> in the level order (1, 2, 3)
    u, v = np.sqrt(gamma1 / (gamma1 + gamma2)), np.sqrt(gamma2 / (gamma1 + gamma2))
    return np.array([[u, v, 0.0], [v, -u, 0.0], [0.0, 0.0, 1.0]])


def _sorted_manifold(labels, bare, coeffs, energies, alpha, beta, **kw):
    order = np.argsort(-np.asarray(energies), kind="stable")
    return DressedManifold(tuple(labels[k] for k in order), tuple(bare),
                           np.asarray(coeffs, dtype=float)[order],
                           np.asarray(energies, dtype=float)[order], float(alpha), float(beta), **kw)


def _triplet(omega, delta):
    # shared form of the two-upper-level triplet with a common ground coupling
    if omega == 0 and delta == 0:
        raise ValueError("mixing is undefined for zero Rabi frequency and splitting")
    w = 0.5 * np.sqrt(delta**2 + 2 * omega**2)
    a, b = delta / (2 * w), omega / (2 * w)
    plus = 0.5 * np.array([1 - a, 1 + a, -2 * b])
    zero = np.array([-b, b, a])
    minus = -0.5 * np.array([1 + a, 1 - a, 2 * b])
    return w, a, b, plus, zero, minus


# ---------------------------------------------------------------------------
# scheme manifolds

def aux_level_manifold(omega, delta):
    """Dressed states of the V scheme pumped through the auxiliary level.

    ``delta`` is the height of level ``3`` above level ``1`` and the laser is
    tuned midway. Energies are ``+-W`` and ``0`` (twice) with
    ``W = sqrt(delta^2 + 2 omega^2)/2``, ``alpha = delta/2W``, ``beta = omega/2W``.
    """
    w, a, b, plus, zero, minus = _triplet(omega, delta)
    bare = (("1", 1), ("3", 1), ("b", 0), ("2", 0))
    coeffs = [np.append(plus, 0), np.append(zero, 0), np.append(minus, 0), [0, 0, 0, 1]]
    return _sorted_manifold(("+", "0", "-", "2"), bare, coeffs, [w, 0.0, -w, 0.0], a, b)


def both_drive_manifold(omega, delta):
    """Dressed triplet of the V scheme with both transitions driven on resonance.

    ``delta`` is the height of level ``3`` above level ``1``; the laser is
    tuned midway. Energies ``+-W, 0`` with ``W = sqrt(delta^2 + 2 omega^2)/2``.
    """
    w, a, b, plus, zero, minus = _triplet(omega, delta)
    bare = (("1", 1), ("3", 1), ("2", 0))
    return _sorted_manifold(("+", "0", "-"), bare, [plus, zero, minus], [w, 0.0, -w], a, b)


def single_drive_manifold(omega, delta, gamma1=1.0, gamma2=1.0, degeneracy_tol=1e-12):
    """Dressed states of the V scheme driven on ``1-2`` only.

    Level ``3`` sits ``delta`` above level ``1``. The states ``|+-> =
    (|2,N> +- |1,N-1>)/sqrt(2)`` have energies ``+-omega/2`` and the
    undriven ``|3~> = |3,N-1>`` has energy ``delta``. When ``delta =
    omega/2`` the degenerate pair is replaced by ``|s> = alpha|+> +
    beta|3~>`` and ``|a> = beta|+> - alpha|3~>`` with
    ``alpha = 1/sqrt(1 + 2r)``, ``beta = sqrt(2r/(1 + 2r))`` and
    ``r = gamma2/gamma1``.
    """
    if gamma1 <= 0 or gamma2 < 0:
        raise ValueError("need gamma1 > 0 and gamma2 >= 0")
    bare = (("2", 0), ("1", 1), ("3", 1))
    plus = np.array([1, 1, 0]) / np.sqrt(2)
    minus = np.array([1, -1, 0]) / np.sqrt(2)
    tilde = np.array([0.0, 0.0, 1.0])
    r = gamma2 / gamma1
    a, b = 1 / np.sqrt(1 + 2 * r), np.sqrt(2 * r / (1 + 2 * r))
    if abs(delta - omega / 2) <= degeneracy_tol * max(1.0, abs(omega)):
        s, an = a * plus + b * tilde, b * plus - a * tilde
        return _sorted_manifold(("s", "a", "-"), bare, [s, an, minus],
                                [omega / 2, omega / 2, -omega / 2], a, b)
    return _sorted_manifold(("+", "3~", "-"), bare, [plus, tilde, minus],
                            [omega / 2, delta, -omega / 2], a, b)


def lambda_manifold(omega, delta, gamma1=1.0, gamma2=1.0, delta12=0.0, dipoles=None):
    """Dressed triplet of the Lambda scheme in the ``(s, a, 3)`` basis.

    The laser is tuned to the mean transition frequency with Rabi
    frequencies ``omega sqrt(2 G_j/(G1 + G2))``, so only ``|s>`` couples to
    level ``3``. Requires the two superposition levels to be degenerate.
    The mixing ``alpha = D_c/W`` is set by the ``s``-``a`` coupling
    ``D_c = [delta12 (G1 - G2) - delta sqrt(G1 G2)]/(G1 + G2)`` with
    ``W = sqrt(4 D_c^2 + 2 omega^2)/2`` and ``beta = omega/2W``.

    Returns
    -------
    (DressedManifold, TransitionTable)
    """
    total = gamma1 + gamma2
    root = np.sqrt(gamma1 * gamma2)
    dprime = ((gamma1 - gamma2) * delta + 4 * delta12 * root) / total
    if abs(dprime) > 1e-12 * max(1.0, abs(delta), abs(omega)):
        raise ValueError(f"superposition levels are split by {dprime:.3g}; the triplet form needs zero splitting")
    dc = (delta12 * (gamma1 - gamma2) - delta * root) / total
    w, a, b, plus, zero, minus = _triplet(omega, 2 * dc)
    # rotate the V-type triplet (x, y, g) into (s, a, 3)
    rot = np.array([[1, 1, 0], [1, -1, 0], [0, 0, np.sqrt(2)]]) / np.sqrt(2)
    coeffs = [rot @ plus, rot @ zero, rot @ minus]
    m = _sorted_manifold(("+", "0", "-"), (("s", 0), ("a", 0), ("3", 1)), coeffs, [w, 0.0, -w], a, b,
                         level_map=_lambda_basis(gamma1, gamma2), level_bare=(("1", 0), ("2", 0), ("3", 1)))
    if dipoles is None:
        dipoles = (np.sqrt(gamma1) * np.array([1.0, 0, 0]), np.sqrt(gamma2) * np.array([1.0, 0, 0]))
    return m, lambda_transition_moments(m, *dipoles, gamma1=gamma1)


# ---------------------------------------------------------------------------
# moments

def ladder_moments(manifold, dipoles, rate_scale=1.0):
    """All moments from manifold ``N`` to manifold ``N - 1``.

    Parameters
    ----------
    dipoles : dict
        ``{(upper, lower): vector}`` of atomic transition moments.
    rate_scale : float
        Proportionality constant between rate and squared moment.
    """
    bare, c = manifold.in_levels()
    index = {b: k for k, b in enumerate(bare)}
    vecs = {k: np.asarray(v, dtype=float) for k, v in dipoles.items()}
    dim = len(next(iter(vecs.values())))
    entries = []
    for i, li in enumerate(manifold.labels):
        for j, lj in enumerate(manifold.labels):
            mom = np.zeros(dim)
            for (x, n), kx in index.items():
                for (upper, lower), mu in vecs.items():
                    if upper != x:
                        continue
                    ky = index.get((lower, n - 1))
                    if ky is not None:
                        mom = mom + np.conj(c[i, kx]) * c[j, ky] * mu
            mom = np.real_if_close(mom)
            entries.append(TransitionEntry(li, lj, mom, float(rate_scale * np.dot(mom, mom))))
    return TransitionTable(tuple(entries))


def _kappa(gamma, mu):
    n = float(np.dot(mu, mu))
    if n == 0:
        raise ValueError("reference dipole has zero length")
    return gamma / n


def aux_level_transition_moments(m, mu12, mu32, gamma1=1.0):
    """Moments of the auxiliary-level manifold; rates use ``gamma1/|mu12|^2``."""
    return ladder_moments(m, {("1", "2"): mu12, ("3", "2"): mu32}, _kappa(gamma1, np.asarray(mu12, float)))


def single_drive_transition_moments(m, mu12, mu32, gamma1=1.0):
    """Moments between single-drive manifolds; rates use ``gamma1/|mu12|^2``.

    Dipoles with ``|mu32|^2/|mu12|^2 = gamma2/gamma1`` make the same constant
    valid for both channels.
    """
    return ladder_moments(m, {("1", "2"): mu12, ("3", "2"): mu32}, _kappa(gamma1, np.asarray(mu12, float)))


def both_drive_transition_moments(m, mu=1.0, theta=0.0, gamma=1.0):
    """Moments of the both-driven triplet for equal moments at angle ``theta``.

    ``mu12`` lies along x; projecting a moment on x gives the scalar
    ``(1 - cos theta)`` forms.
    """
    mu12 = mu * np.array([1.0, 0.0, 0.0])
    mu32 = mu * np.array([np.cos(theta), np.sin(theta), 0.0])
    return ladder_moments(m, {("1", "2"): mu12, ("3", "2"): mu32}, _kappa(gamma, mu12))


def lambda_transition_moments(m, mu31, mu32, gamma1=1.0):
    """Moments of the Lambda triplet; rates use ``gamma1/|mu31|^2``."""
    return ladder_moments(m, {("3", "1"): mu31, ("3", "2"): mu32}, _kappa(gamma1, np.asarray(mu31, float)))


def classify_states(table, rel_tol=1e-10):
    """Classify the source states of a transition table.

    * ``decoupled``: no nonzero moment in or out
    * ``trapping``: nonzero inbound moments, all outbound zero
    * ``dark``: all outbound zero and no inbound entries in the table
    * ``ordinary``: otherwise

    Moments below ``rel_tol`` times the largest moment count as zero.
    """
    norms = [float(np.linalg.norm(e.dipole)) for e in table.entries]
    scale = max(norms, default=0.0)
    thr = rel_tol * scale
    sources = []
    for e in table.entries:
        if e.from_state not in sources:
            sources.append(e.from_state)
    out = []
    for s in sources:
        outbound = [n for e, n in zip(table.entries, norms) if e.from_state == s]
        inbound = [n for e, n in zip(table.entries, norms) if e.to_state == s]
        has_out = any(n > thr for n in outbound)
        has_in = any(n > thr for n in inbound)
        if has_out:
            kind = "ordinary"
        elif has_in:
            kind = "trapping"
        elif inbound:
            kind = "decoupled"
        else:
            kind = "dark"
        out.append((s, kind))
    return out
