"""Coherent population trapping in a Lambda atom.

With perpendicular dipoles the upper level empties at one two-photon
detuning. Unequal decay rates move that point away from zero. Parallel
dipoles destroy the trap.
"""
import numpy as np

from qdint import dynamics as dy
from qdint import operators as ops


def upper(delta, gamma2, delta12, p, rho0=None):
    s = ops.lambda_scheme(delta, 1.0, gamma2)
    c = ops.couplings_for(s, p=p, delta12_plus=delta12)
    return dy.cpt_upper_population(s, dy.matched_lambda_drive(s, 5.0), c, rho0)


for gamma2 in (1.0, 0.02):
    zero = dy.cpt_zero_splitting(1.0, gamma2, 0.1)
    print(f"G2 = {gamma2}: predicted dark point at splitting {zero:.4f}")
    for d in zero + np.array([-2.0, -0.5, 0.0, 0.5, 2.0]):
        print(f"  splitting {d:+.4f}: rho33 = {upper(d, gamma2, 0.1, 0.5):.3e}")

mixed = dy.DensityMatrix(np.diag([0.5, 0.5, 0.0]), ops.lambda_scheme(0.0).basis_labels)
print(f"\nParallel dipoles (p = 1): rho33 = {upper(0.0, 1.0, 0.0, 1.0, mixed):.3f}")
