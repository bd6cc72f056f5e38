"""
Interference of optical fields and of light from two atoms.

Field prefactors (mode-volume constants, the geometric factor of atomic
emission) are set to one unless given explicitly; the quantities of interest
are fringe shapes and visibilities.
"""
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SlitGeometry", "FieldPair", "CollectiveState", "SWEEP_POINTS",
    "visibility_first_order", "distinguishability", "duality_check",
    "young_intensity", "young_pattern", "fringe_visibility", "phase_sweep",
    "classical_g2", "classical_g2_phase", "fock_g2", "fock_g2_phase",
    "dicke_observables", "two_atom_g1", "two_atom_g1_phase",
    "two_atom_g2", "two_atom_g2_phase",
]

SWEEP_POINTS = 1024


@dataclass(frozen=True)
class SlitGeometry:
    """Two point sources at ``r1``, ``r2`` and the mean wavenumber ``k0``."""
    r1: tuple
    r2: tuple
    k0: float
    u1: complex = 1.0
    u2: complex = 1.0

    def __post_init__(self):
        if np.allclose(self.r1, self.r2):
            raise ValueError("source positions must differ")

    @property
    def r21(self):
        return np.asarray(self.r2, dtype=float) - np.asarray(self.r1, dtype=float)

    def phase(self, direction):
        """``k0 R . r21`` for a unit direction ``R``."""
        return self.k0 * float(np.dot(_unit(direction), self.r21))

    def pair_phase(self, directions):
        """``k0 (R1 - R2) . r21`` for two detector directions."""
        d1, d2 = directions
        return self.k0 * float(np.dot(_unit(d1) - _unit(d2), self.r21))


@dataclass(frozen=True)
class FieldPair:
    """Two quasi-monochromatic fields with mutual degree of coherence ``g1``."""
    i1: float
    i2: float
    omega1: float = 1.0
    omega2: float = 1.0
    phi1: float = 0.0
    phi2: float = 0.0
    g1: complex = 1.0

    def __post_init__(self):
        if self.i1 < 0 or self.i2 < 0:
            raise ValueError("intensities must be non-negative")
        if abs(self.g1) > 1 + 1e-12:
            raise ValueError(f"|g1| = {abs(self.g1)} exceeds 1")

    @property
    def omega0(self):
        return 0.5 * (self.omega1 + self.omega2)

    @property
    def delta(self):
        return self.omega1 - self.omega2


@dataclass(frozen=True)
class CollectiveState:
    """Populations of ``|g>, |s>, |a>, |e>`` and the ``s``-``a`` coherence."""
    gg: float
    ss: float
    aa: float
    ee: float
    sa: complex = 0.0

    def __post_init__(self):
        pops = np.array([self.gg, self.ss, self.aa, self.ee])
        if np.any(pops < -1e-12):
            raise ValueError("populations must be non-negative")
        if abs(pops.sum() - 1) > 1e-10:
            raise ValueError(f"populations sum to {pops.sum()}, not 1")
        if abs(self.sa)**2 > max(self.ss, 0) * max(self.aa, 0) + 1e-12:
            raise ValueError("|rho_sa|^2 exceeds rho_ss rho_aa")


def _unit(v):
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("direction has zero length")
    return v / n


def fringe_visibility(values):
    """``(max - min)/(max + min)`` of a sampled pattern; zero for a null pattern."""
    v = np.asarray(values, dtype=float)
    top, bottom = v.max(), v.min()
    if top + bottom <= 0:
        return 0.0
    return float((top - bottom) / (top + bottom))


def phase_sweep(n=SWEEP_POINTS):
    """Uniform samples of a fringe phase over one period."""
    return np.linspace(0.0, 2 * np.pi, n, endpoint=False)


# ---------------------------------------------------------------------------
# first order

def visibility_first_order(f):
    total = f.i1 + f.i2
    if total <= 0:
        raise ValueError("total intensity must be positive")
    return 2 * np.sqrt(f.i1 * f.i2) / total * abs(f.g1)


def distinguishability(i1, i2):
    """Which-way predictability ``|I1 - I2|/(I1 + I2)``."""
    if i1 + i2 <= 0:
        raise ValueError("total intensity must be positive")
    return abs(i1 - i2) / (i1 + i2)


def duality_check(d, v):
    """True when ``D^2 + V^2 <= 1`` (with 1e-12 slack)."""
    for name, x in (("D", d), ("V", v)):
        if not 0 <= x <= 1:
            raise ValueError(f"{name} = {x} outside [0, 1]")
    return d * d + v * v <= 1 + 1e-12


def young_intensity(geom, f, direction, distance):
    """Far-field intensity of two partially coherent sources.

    ``I1 + I2 + 2 sqrt(I1 I2) |g1| cos(k0 R.r21 + k0 R~ Delta/omega0 + dphi)``
    with ``R~ = R + R.(r1 + r2)/2``; for equal intensities this is
    ``2 I0 [1 + cos(...)]``.
    """
    u = _unit(direction)
    r_tilde = distance + 0.5 * float(np.dot(u, np.add(geom.r1, geom.r2)))
    beat = geom.k0 * r_tilde * f.delta / f.omega0 + (f.phi1 - f.phi2) + np.angle(f.g1)
    return f.i1 + f.i2 + 2 * np.sqrt(f.i1 * f.i2) * abs(f.g1) * np.cos(geom.phase(u) + beat)


def young_pattern(geom, f, directions, distance, depth=0.0, samples=256):
    """Intensity along a list of directions, averaged over detector depth.

    A detector of radial extent ``depth`` centred at ``distance`` averages
    the frequency-beat term; for large ``Delta/omega0`` the fringes wash out.
    """
    radii = np.array([distance]) if depth == 0 else distance + depth * (np.arange(samples) / samples - 0.5)
    return np.array([np.mean(young_intensity(geom, f, d, radii)) for d in directions])


# ---------------------------------------------------------------------------
# second order

def classical_g2_phase(i1, i2, psi, moments=None):
    """Intensity correlation of two independent classical fields.

    ``moments = (<I1^2>, <I2^2>, <I1 I2>)``; defaults to ``(I1^2, I2^2, I1 I2)``.
    """
    m11, m22, m12 = moments if moments is not None else (i1 * i1, i2 * i2, i1 * i2)
    return m11 + m22 + 2 * m12 * (1 + np.cos(psi))


def classical_g2(f, geom, directions, moments=None):
    return classical_g2_phase(f.i1, f.i2, geom.pair_phase(directions), moments)


def fock_g2_phase(n, m, psi, scale=1.0):
    """Intensity correlation of two Fock-state modes with ``n`` and ``m`` photons."""
    if n < 0 or m < 0:
        raise ValueError("photon numbers must be non-negative")
    return scale * (n * (n - 1) + m * (m - 1) + 2 * n * m * (1 + np.cos(psi)))


def fock_g2(n, m, geom, directions, scale=1.0):
    return fock_g2_phase(n, m, geom.pair_phase(directions), scale)


# ---------------------------------------------------------------------------
# two atoms

def dicke_observables(rho):
    """Collective-state populations of a two-atom density matrix.

    The basis is ``gg, ge, eg, ee`` with atom 1 first;
    ``|s>, |a> = (|g1 e2> +- |e1 g2>)/sqrt(2)``.
    """
    labels = tuple(getattr(rho, "basis_labels", ()))
    m = rho.matrix if hasattr(rho, "matrix") else np.asarray(rho)
    if m.shape != (4, 4) or (labels and labels != ("gg", "ge", "eg", "ee")):
        raise ValueError("expected a two-atom state in the basis gg, ge, eg, ee")
    s = np.array([0, 1, 1, 0]) / np.sqrt(2)
    a = np.array([0, 1, -1, 0]) / np.sqrt(2)
    return CollectiveState(float(m[0, 0].real), float((s @ m @ s).real), float((a @ m @ a).real),
                           float(m[3, 3].real), complex(s @ m @ a))


def two_atom_g1_phase(c, x, scale=1.0):
    """First-order correlation at fringe phase ``x = k R.r21``.

    ``2 rho_ee + rho_ss (1 + cos x) + rho_aa (1 - cos x) - 2 Im(rho_sa) sin x``.
    """
    return scale * (2 * c.ee + c.ss * (1 + np.cos(x)) + c.aa * (1 - np.cos(x))
                    - 2 * np.imag(c.sa) * np.sin(x))


def two_atom_g1(c, geom, direction, scale=1.0):
    return two_atom_g1_phase(c, geom.phase(direction), scale)


def two_atom_g2_phase(c, psi, scale=1.0):
    """Second-order correlation at ``psi = k (R1 - R2).r21``."""
    return scale * 4 * c.ee * (1 + np.cos(psi))


def two_atom_g2(c, geom, directions, scale=1.0):
    return two_atom_g2_phase(c, geom.pair_phase(directions), scale)
