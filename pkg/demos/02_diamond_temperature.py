"""A finite-lifetime observer sees a thermal diamond: conformal
coordinates, Kummer-form Bogoliubov coefficients cross-checked against
their integral representation and the Klein-Gordon inner product, and
the brute-force rapidity double integral recovering the Planck law at
T = a / 2 pi.

Run:  python3 demos/02_diamond_temperature.py   (~30 s: the double
integral is the expensive oracle, not the closed forms)
"""

import math

import numpy as np

from wedgeworks.diamond import (DiamondSpec, diamond_alpha_beta, diamond_mode,
                                diamond_planck_number, minkowski_to_diamond)
from wedgeworks.oscint import (RegulatorParams, Wavepacket,
                               diamond_double_integral, kg_inner_product)
from wedgeworks.rindler import QUADRATURE, minkowski_mode

# ---------------------------------------------------------------------
# 1. Kinematics: the diamond covers |t| + |x| < 2/a, its center maps to
#    the coordinate origin
# ---------------------------------------------------------------------
a = 1.0
for (t, x) in [(0.0, 0.0), (0.5, 0.3), (-1.2, 0.6)]:
    c = minkowski_to_diamond(t, x, 0.0, 0.0, a)
    print("(t, x) = (%5.2f, %5.2f)  ->  (eta, xi) = (%8.4f, %8.4f)"
          % (t, x, c.eta, c.xi))

# ---------------------------------------------------------------------
# 2. Coefficients: closed Kummer form vs the (-1, 1) integral
#    representation vs the KG inner product with a plane wave
# ---------------------------------------------------------------------
print("\nclosed form vs oracles:")
spec = DiamondSpec(a)
for (om, k) in [(1.0, 0.7), (0.4, 1.3), (2.0, 0.3)]:
    pc = diamond_alpha_beta(om, k, spec)
    pq = diamond_alpha_beta(om, k, spec, method=QUADRATURE)
    g = diamond_mode(om, spec)
    u = minkowski_mode(k)
    akg = kg_inner_product(g, u)
    print("  (omega, k) = (%.1f, %.1f): |closed - integral| = %.1e, "
          "|closed - KG| = %.1e"
          % (om, k, abs(pc.alpha - pq.alpha), abs(pc.alpha - akg)))

# ---------------------------------------------------------------------
# 3. The occupation spectrum is Planckian at T = a/2pi even though the
#    diamond observer only lives for a proper time 4/a.  The double
#    integral knows nothing about the closed form: it integrates
#    1/sinh^2 against the packet transforms directly.
# ---------------------------------------------------------------------
pack = Wavepacket(1.0, 0.1)
val = diamond_double_integral(pack, pack, a, RegulatorParams())
om, c = pack.gh_nodes()
smeared = float(np.sum(c * pack.amplitude(om) / np.expm1(2.0 * np.pi * om / a)))
print("\nrapidity double integral:  N = %.8e" % val.real)
print("packet-smeared Planck law: N = %.8e  (rel dev %.1e)"
      % (smeared, abs(val.real / smeared - 1.0)))
print("sharp Planck at carrier:   N = %.8e"
      % diamond_planck_number(1.0, a))
