"""Weak-probe absorption of a V atom driven on one transition.

The driven transition shows mirror-image absorption and gain at +-Omega and
is transparent at line centre. On the undriven transition the sign at line
centre depends on the ratio of decay rates r = G1/G2.
"""
import numpy as np

from qdint import response as rs

grid = np.linspace(-45, 45, 2001)
tr = rs.probe_w12(30.0, 15.0, grid, p=0.95)
print("Driven transition, Omega = 30, splitting 15, p = 0.95")
for d in (-30.0, 0.0, 30.0):
    print(f"  W12({d:+.0f}) = {tr.at(d):+.5f}")

print("\nUndriven transition, p = 0.99")
for r in (1.0, 2.0, 5.0):
    tr = rs.probe_w23(30.0, 15.0, grid, p=0.99, r=r)
    print(f"  r = {r:g}: W23(0) = {tr.at(0):+.4f}, W23(+Omega) = {tr.at(30):+.4f}")
print("Positive values absorb the probe and negative values amplify it.")
