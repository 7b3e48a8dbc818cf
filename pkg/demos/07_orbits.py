"""
Orbits of the reduced Hamiltonian
=================================

Integrate a librating and a circulating corotation orbit for a few
libration periods and check energy conservation.
"""

from ringres.body import preset
from ringres.dynamics import find_equilibria, integrate, libration, libration_period
from ringres.potential import PotentialModel
from ringres.resonance import ResonantSystem

h = ResonantSystem(PotentialModel(preset("AS")), "1:1").reduce(1e-3)
lib = libration(h, find_equilibria(h))
T = libration_period(h, lib.centre)
print(f"small-oscillation period {T / 86400:.2f} days")

for label, dI in (("librating", 0.5), ("circulating", 1.5)):
    I0 = lib.centre.action + dI * lib.separatrix_amplitude
    tr = integrate(h, (I0, lib.centre.angle), (0.0, 5 * T), T / 40, n_out=200)
    span = tr.angle.max() - tr.angle.min()
    print(f"{label:12} angle span {span:7.3f} rad, relative energy drift {tr.drift:.1e}")
