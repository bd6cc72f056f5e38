"""Spontaneous emission of two coupled atoms and of a V-type atom.

Two atoms that share the radiation field decay through collective states:
the symmetric one radiates at G + G12, the antisymmetric one at G - G12.
A V-type atom with parallel dipoles and degenerate upper levels keeps part
of its excitation forever.
"""
import numpy as np

from qdint import dynamics as dy
from qdint import interference as itf
from qdint import operators as ops

times = np.linspace(0, 4, 9)

print("Two atoms, one excited initially")
for g12 in (0.0, 0.5, 0.9):
    s = ops.two_atom_scheme()
    l = dy.liouvillian_for(s, None, ops.couplings_for(s, gamma12=g12), ops.Frame.LAB)
    traj = dy.evolve(l, dy.DensityMatrix.basis_state(s.basis_labels, "eg"), times)
    ss = [itf.dicke_observables(x).ss for x in traj.states]
    aa = [itf.dicke_observables(x).aa for x in traj.states]
    r_ss = -np.polyfit(times, np.log(ss), 1)[0]
    r_aa = -np.polyfit(times, np.log(aa), 1)[0]
    print(f"  G12 = {g12:.1f}: symmetric rate {r_ss:.6f}, antisymmetric rate {r_aa:.6f}")

print("\nV atom starting in level 1, parallel dipoles (G12 = G)")
for delta in (0.0, 0.1):
    s = ops.v_scheme(delta)
    l = dy.liouvillian_for(s, None, ops.couplings_for(s, gamma12=1.0), ops.Frame.LAB)
    rho0 = dy.DensityMatrix.basis_state(s.basis_labels, "1")
    final = dy.steady_state(l, rho0)
    pops = ", ".join(f"{k}: {final.population(k):.4f}" for k in s.basis_labels)
    print(f"  splitting {delta}: final populations {pops}")
    traj = dy.evolve(l, rho0, np.linspace(0, 20, 5))
    print(f"    alpha(t) = {np.round(dy.constant_of_motion_alpha(traj).real, 6)}")
print("With degenerate levels half the population stays in the upper doublet;")
print("a small splitting releases it and the atom ends in its ground state.")
