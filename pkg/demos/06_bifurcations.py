"""
Bifurcations
============

Follow the equilibria of the HA 1:2 reduction in eccentricity. Each change
of the equilibrium structure is located by bisection and classified.
"""

from ringres.body import preset
from ringres.dynamics import bifurcation_scan
from ringres.potential import PotentialModel
from ringres.resonance import ResonantSystem

system = ResonantSystem(PotentialModel(preset("HA")), "1:2")
events = bifurcation_scan(system.reduce, (1e-3, 0.5), n_steps=60)
for ev in events:
    print(f"e = {ev.e_crit:.4f}  {ev.kind:11}  angle {ev.angle_branch:.4f}  {ev.direction}")
