"""Young fringes, intensity correlations and two-atom interference.

First-order fringes need mutual coherence; intensity correlations of
independent classical sources reach visibility 1/2, single photons reach 1.
Two atoms give first-order fringes when the symmetric and antisymmetric
populations differ and second-order fringes whenever both are excited.
"""
import numpy as np

from qdint import dynamics as dy
from qdint import interference as itf

geom = itf.SlitGeometry((0, 0, 0), (1, 0, 0), k0=2 * np.pi)
dirs = [(x / (2 * np.pi), 0, np.sqrt(1 - (x / (2 * np.pi)) ** 2)) for x in itf.phase_sweep(256) - np.pi]
for label, f, depth in (("coherent, equal frequencies", itf.FieldPair(1, 1), 0.0),
                        ("unbalanced 4:1", itf.FieldPair(4, 1), 0.0),
                        ("frequency offset 100, deep detector", itf.FieldPair(1, 1, 101.0, 1.0), 10.0)):
    v = itf.fringe_visibility(itf.young_pattern(geom, f, dirs, 1e3, depth=depth))
    print(f"Young fringes, {label}: visibility {v:.3f}")

xs = itf.phase_sweep()
print(f"\nclassical intensity correlation visibility {itf.fringe_visibility(itf.classical_g2_phase(1, 1, xs)):.4f}")
for n in (1, 2, 10, 100):
    print(f"Fock n = m = {n}: visibility {itf.fringe_visibility(itf.fock_g2_phase(n, n, xs)):.4f}")

ee, ss, aa = dy.two_atom_closed_form(0.5, 0.0, 0.5, 0.0, 0.0)
c = itf.CollectiveState(1 - ee - ss - aa, ss, aa, ee)
print(f"\nindependent driven atoms: rho_ss {ss:.3f}, rho_aa {aa:.3f}")
print(f"  G1 visibility {itf.fringe_visibility(itf.two_atom_g1_phase(c, xs)):.3f}, "
      f"G2 visibility {itf.fringe_visibility(itf.two_atom_g2_phase(c, xs)):.3f}")
