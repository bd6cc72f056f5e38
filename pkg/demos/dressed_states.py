"""Dressed states of the driven schemes and the transitions between them.

For each scheme the analytic triplet is compared with direct
diagonalization, and states that can be entered but never left are
reported as trapping states.
"""
import numpy as np

from qdint import dressed as dr

omega, delta = 5.0, 2.0
cases = [
    ("aux", dr.aux_level_manifold(omega, delta),
     lambda m: dr.aux_level_transition_moments(m, [1, 0, 0], [0, 1, 0])),
    ("both", dr.both_drive_manifold(omega, delta),
     lambda m: dr.both_drive_transition_moments(m, theta=0.0)),
    ("single", dr.single_drive_manifold(omega, omega / 2),
     lambda m: dr.single_drive_transition_moments(m, [1, 0, 0], [1, 0, 0])),
]
for kind, m, table in cases:
    d = delta if kind != "single" else omega / 2
    w = np.sort(np.linalg.eigvalsh(dr.oracle_block(kind, omega, d)))[::-1]
    print(f"{kind:6s} energies {np.round(m.energies, 4)}  max error {np.max(np.abs(m.energies - w)):.1e}")
    print(f"       classification {dr.classify_states(table(m))}")

m, t = dr.lambda_manifold(omega, delta)
print(f"lambda energies {np.round(m.energies, 4)}")
print(f"       classification {dr.classify_states(t)}")
print("The Lambda central state emits but cannot be fed, so it never traps population.")
