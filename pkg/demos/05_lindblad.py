"""
Lindblad resonances
===================

The 1:2 and 1:3 reductions ``H(G, psi)``: equilibria and island widths.
"""

from ringres.body import preset
from ringres.dynamics import CENTRE, find_equilibria, separatrix_amplitude
from ringres.errors import UnboundedError
from ringres.potential import PotentialModel
from ringres.resonance import ResonantSystem

for name in ("AS", "HA"):
    m = PotentialModel(preset(name))
    for label in ("1:2", "1:3"):
        h = ResonantSystem(m, label).reduce(0.1)
        eq = find_equilibria(h)
        print(f"{name} {label}  L0 = {h.levels['L0']:.5f}")
        for p in eq:
            line = f"    {p.kind:6}  psi = {p.angle:.4f}  G = {p.action:.6f}"
            if p.kind == CENTRE:
                try:
                    line += f"  width {separatrix_amplitude(h, p, eq):.5f}"
                except UnboundedError:
                    line += "  (unbounded)"
            print(line)
