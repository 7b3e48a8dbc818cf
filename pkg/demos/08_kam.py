"""
KAM non-degeneracy
==================

Hessian determinant of the averaged integrable part at each resonance.
"""

from ringres.body import preset
from ringres.normalform import nondegeneracy_report
from ringres.potential import PotentialModel

for name in ("AS", "HA"):
    for row in nondegeneracy_report(PotentialModel(preset(name))):
        print(f"{row['body']} {row['resonance']} order {row['order']}: "
              f"det = {row['determinant']: .3e}  {row['verdict']}")
