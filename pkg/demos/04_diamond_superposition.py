"""Superposed diamonds: translated diamonds pick up the exact phase
e^{-+ 4 i kappa n}, adjacent diamonds share a boundary and their cross
term collapses to a Gamma product, and distant diamonds decouple.

Run:  python3 demos/04_diamond_superposition.py
"""

import math

import numpy as np

from wedgeworks.diamond import (DiamondSpec, cross_term_diamond,
                                diamond_alpha_beta, diamond_planck_number)
from wedgeworks.specfun import cgamma
from wedgeworks.superpose import BranchPair, conditional_spectrum
from wedgeworks.oscint import Wavepacket

# ---------------------------------------------------------------------
# 1. Translation phases are exact phase algebra, not quadrature
# ---------------------------------------------------------------------
om, k, a = 1.0, 0.9, 1.0
p0 = diamond_alpha_beta(om, k, DiamondSpec(a, 0))
for n in (1, 2, 3):
    pn = diamond_alpha_beta(om, k, DiamondSpec(a, n))
    ph = np.exp(4j * (k / a) * n)
    print("n = %d: |alpha_n - alpha_0 e^{-4ik n/a}| = %.1e, "
          "|beta_n - beta_0 e^{+4ik n/a}| = %.1e"
          % (n, abs(pn.alpha - p0.alpha / ph), abs(pn.beta - p0.beta * ph)))

# ---------------------------------------------------------------------
# 2. Adjacent diamonds (n = 1): the packet-free cross term has an exact
#    Gamma-product closed form
# ---------------------------------------------------------------------
omp = 1.4
big, bigp = om / a, omp / a
mu = big + bigp
closed = -(1.0 / (8.0 * math.pi ** 2 * a * math.sqrt(big * bigp))) \
    * 2.0 ** (1 - 1j * mu) * cgamma(1j * mu) \
    * cgamma(1 - 1j * big) * cgamma(1 - 1j * bigp)
v = cross_term_diamond(om, omp, a, 1)
print("\nadjacent cross term:  rapidity integral %s" % v)
print("                      Gamma product     %s  (rel dev %.1e)"
      % (closed, abs(v - closed) / abs(closed)))

# ---------------------------------------------------------------------
# 3. The cross term decays with diamond separation n
# ---------------------------------------------------------------------
print("\ncross-term magnitude vs separation:")
for n in (1, 2, 4, 8, 16):
    print("  n = %2d:  |N_AB| = %.4e" % (n, abs(cross_term_diamond(om, omp, a, n))))

# ---------------------------------------------------------------------
# 4. Conditional spectrum for a superposition of diamond 0 and diamond 1
# ---------------------------------------------------------------------
grid = np.geomspace(0.6, 2.4, 5)
pts = conditional_spectrum(BranchPair(DiamondSpec(a, 0), DiamondSpec(a, 1)),
                           grid, Wavepacket(1.5, 0.15))
print("\nsuperposed diamonds (0, 1):")
print("%10s %14s %14s" % ("omega", "total", "planck"))
for pt in pts:
    if pt.branch == "total":
        print("%10.4f %14.6e %14.6e"
              % (pt.omega, pt.value.real, diamond_planck_number(pt.omega, a)))
