"""
Resonant radii
==============

Solve ``(p - q) kappa = p (n - Omega_P)`` near the Keplerian estimate.
"""

from ringres.body import preset
from ringres.potential import PotentialModel
from ringres.resonance import resonant_radius

print("body  p:q   r_kep      r_res      rel diff")
for name in ("AS", "HA"):
    m = PotentialModel(preset(name))
    for p, q in ((1, 1), (1, 2), (1, 3)):
        s = resonant_radius(m, p, q)
        print(f"{name:4}  {p}:{q}  {s.r_kep:9.2f}  {s.r_res:9.2f}  {abs(s.r_kep - s.r_res) / s.r_kep:.2e}")
