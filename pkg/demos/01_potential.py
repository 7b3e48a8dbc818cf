"""
Potential and orbital frequencies
=================================

The equatorial potential of a triaxial ellipsoid, and the mean motion and
epicyclic frequency of circular orbits, for the two preset bodies.
"""

import numpy as np

from ringres.body import preset, shape_parameters
from ringres.potential import PotentialModel, frequencies, u_axisymmetric, u_nonaxisymmetric

for name in ("AS", "HA"):
    body = preset(name)
    sc = shape_parameters(body, round_R=True)
    print(f"{name}: R = {sc.R:.0f} km, Ob = {sc.Ob:.6f}, El = {sc.El:.6f}")

# The non-axisymmetric part is pi-periodic and deepest along the long axis.
m = PotentialModel(preset("HA"))
theta = np.linspace(0, np.pi, 7)
print("U_ns(1500 km, theta):", np.round(u_nonaxisymmetric(m, 1500.0, theta), 5))
print("U_s(1500 km):", u_axisymmetric(m, 1500.0))

# n exceeds kappa, so apsides regress and the two frequencies split.
r = np.array([1000.0, 1500.0, 2500.0])
n, k = frequencies(m, r)
for ri, ni, ki in zip(r, n, k):
    print(f"r = {ri:6.0f} km  n = {ni:.4e}  kappa = {ki:.4e}  (n - kappa)/n = {(ni - ki) / ni:.3e}")
