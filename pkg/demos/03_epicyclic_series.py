"""
Epicyclic series
================

Expand the rotating-frame Hamiltonian about the corotation radius, check
the low-order part against hand-derived expressions, and watch the error
against the complete Hamiltonian fall as more powers of rho are kept.
"""

from ringres import closed_forms
from ringres.body import preset
from ringres.epicyclic import ExpansionCenter, assemble, truncation_remainder
from ringres.potential import PotentialModel
from ringres.resonance import resonant_radius

body = preset("AS")
m = PotentialModel(body)
r_c = resonant_radius(m, 1, 1).r_res

epi = assemble(ExpansionCenter.at(m, r_c), m)
print(f"{len(epi.series)} terms about r = {r_c:.2f} km")
print("omega1 = |kappa| =", epi.omega1, " omega2 = n - Omega_P =", epi.omega2)

# low orders: hand expansion vs engine
m3 = PotentialModel(body, ell_max=closed_forms.ELL_MAX)
c4 = ExpansionCenter.at(m3, r_c, rho_order=closed_forms.RHO_ORDER)
rows = closed_forms.compare(c4, m3, assemble(c4, m3).series)
print(f"{len(rows)} closed-form coefficients, max rel err {closed_forms.max_relative_error(rows):.1e}")

# truncation error at e = 0.3
for order in (4, 8, 12, 16):
    c = ExpansionCenter.at(m, r_c, rho_order=order)
    print(f"rho^{order:<2d}: max |H_series - H| = {truncation_remainder(c, m, 0.3, n_grid=12):.2e} km^2/s^2")
