"""Gaussian-switched detector responses: the de Sitter superposition
closed form satisfies a KMS loop, the BTZ image-sum Wightman function is
integrated across its lightlike image crossings and matched (up to the
kernel normalization sqrt(pi)) against the Legendre closed form, and the
superposed-black-hole response obeys detailed balance at the local
temperature.

Run:  python3 demos/06_detector_responses.py   (~10 s: the quadrature
response crosses several image singularities)
"""

import math

import numpy as np

from wedgeworks.detectors import (CANONICAL, PRINTED, BTZParams,
                                  DetectorConfig, ResponseCurve,
                                  btz_lightcone_crossings,
                                  btz_local_response, btz_superposed_response,
                                  btz_wightman, desitter_superposed_response,
                                  kms_fit, response_from_wightman)
from wedgeworks.oscint import RegulatorParams

# ---------------------------------------------------------------------
# 1. de Sitter superposition: detailed balance at T = kappa / 2 pi for
#    every branch separation s
# ---------------------------------------------------------------------
kappa = 1.0
t_ds = kappa / (2.0 * math.pi)
print("de Sitter superposed response, kappa = 1:")
for s in (0.0, 1.0, 3.0):
    r = (desitter_superposed_response(1.2, kappa, s)
         / desitter_superposed_response(-1.2, kappa, s))
    print("  s = %.1f:  F(+W)/F(-W) = %.12f   e^{-W/T} = %.12f"
          % (s, r, math.exp(-1.2 / t_ds)))

gaps = np.linspace(0.4, 2.0, 9)
vals = [desitter_superposed_response(g, kappa, 2.0) for g in gaps]
t_eff, resid = kms_fit(ResponseCurve(
    tuple(np.concatenate([gaps, -gaps])),
    tuple(vals + [desitter_superposed_response(-g, kappa, 2.0) for g in gaps]),
    {}))
print("  KMS fit over the curve: T_eff = %.10f (kappa/2pi = %.10f), resid %.1e"
      % (t_eff, t_ds, resid))

# ---------------------------------------------------------------------
# 2. BTZ exterior: the image-sum Wightman function, its lightlike image
#    crossings, and the quadrature response against the Legendre closed
#    form.  The Gaussian window pair smears with kernel sigma sqrt(pi)
#    e^{-s^2/4 sigma^2}, so closed = sqrt(pi) * quadrature.
# ---------------------------------------------------------------------
p = BTZParams(mass=1.0, ads_length=1.0, radius=1.5, n_max=10)
print("\nBTZ exterior (M = 1, l = 1, r = 1.5):  T_loc = %.8f" % p.temperature())

cuts = [c for c in btz_lightcone_crossings(p, 60.0) if c > 0.0]
print("lightlike image crossings in (0, 60):  %s"
      % ", ".join("%.4f" % c for c in cuts[:5]))

cfg = DetectorConfig(gap=0.5, switching_width=48.0)
reg = RegulatorParams(0.1, 6)
quad = response_from_wightman(lambda s: btz_wightman(s, p), cfg, reg,
                              singularities=btz_lightcone_crossings(p, 8.0 * 48.0))
closed = btz_local_response(cfg, p)
print("response at gap 0.5, sigma = 48:")
print("  sqrt(pi) * quadrature = %.8e" % (math.sqrt(math.pi) * quad))
print("  Legendre closed form  = %.8e  (rel dev %.1e)"
      % (closed, abs(math.sqrt(math.pi) * quad / closed - 1.0)))

# ---------------------------------------------------------------------
# 3. Superposed BTZ black holes (angular separation delta_phi): the
#    canonical response obeys detailed balance at T_loc; the printed
#    variant instead satisfies F(+W)/F(-W) = e^{-2 W / T}
# ---------------------------------------------------------------------
ps = BTZParams(mass=1.0, ads_length=1.0, radius=1.5, n_max=10,
               delta_phi=0.5 * math.pi)
t = ps.temperature()
print("\nsuperposed BTZ, delta_phi = pi/2:")
for name, variant in (("canonical", CANONICAL), ("printed", PRINTED)):
    up = btz_superposed_response(DetectorConfig(0.7, 48.0), ps, variant)
    dn = btz_superposed_response(DetectorConfig(-0.7, 48.0), ps, variant)
    print("  %-9s F(+W)/F(-W) = %.10f   e^{-W/T} = %.10f   e^{-2W/T} = %.10f"
          % (name, up / dn, math.exp(-0.7 / t), math.exp(-1.4 / t)))
