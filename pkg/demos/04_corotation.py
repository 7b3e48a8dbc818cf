"""
Corotation libration
====================

Reduce the series to the pendulum-like ``H(I, theta)`` and compare the
libration amplitude from the pendulum formula with the separatrix width.
"""

import numpy as np

from ringres.body import preset
from ringres.dynamics import find_equilibria, libration
from ringres.potential import PotentialModel
from ringres.resonance import ResonantSystem

for name in ("AS", "HA"):
    sys_ = ResonantSystem(PotentialModel(preset(name)), "1:1")
    print(name)
    for e in (1e-3, 0.1, 0.3):
        h = sys_.reduce(e)
        eq = find_equilibria(h)
        lib = libration(h, eq)
        kinds = ", ".join(f"{p.kind}@{p.angle:.2f}" for p in eq)
        print(f"  e = {e:<5}  pendulum {lib.pendulum_semi_amplitude:8.3f}  "
              f"separatrix {lib.separatrix_amplitude:8.3f} km^2/s   [{kinds}]")

h = ResonantSystem(PotentialModel(preset("AS")), "1:1").reduce(1e-3)
print("alpha_1, alpha_2:", h.alphas[:2])
print("cos(2 theta) coefficient:", np.atleast_1d(h.harmonics[0][1])[0])
