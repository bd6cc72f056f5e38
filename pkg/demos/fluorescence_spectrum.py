"""Fluorescence of a V atom with both transitions driven by one laser.

Without cross damping the spectrum shows three lines (small splitting) or
five lines (large splitting). With maximal cross damping the atom is pumped
into a non-radiating superposition and the emission disappears.
"""
import numpy as np

from qdint import operators as ops
from qdint import response as rs

grid = np.linspace(-15, 15, 3001)
for delta, g12 in ((1.0, 0.0), (5.0, 0.0), (5.0, 0.999), (5.0, 1.0)):
    tr = rs.v_fluorescence(5.0, delta, g12, grid)
    peaks = rs.find_spectrum_peaks(tr)
    print(f"Omega = 5, splitting = {delta}, G12 = {g12}: "
          f"integrated {tr.integrated():.4g}, peaks at {np.round(peaks, 2)}")

print("\nLine structure of the auxiliary-level scheme at Omega = 50")
for g12 in (1.0, 0.0):
    s = ops.aux_level_scheme(0.0)
    d = ops.laser(s, (50.0, 50.0), 0.0, ops.DriveTarget.AUXILIARY)
    block = rs.coherence_block(s, d, ops.couplings_for(s, gamma12=g12))
    for line in rs.spectral_line_structure(block):
        kind = "coherent" if line.is_coherent else "incoherent"
        print(f"  G12 = {g12}: line at {line.position:+8.3f}, halfwidth {line.halfwidth:.3f} ({kind})")
