"""Why the Unruh bath survives a superposition of translated wedges:
tracing the left tower of a two-mode-squeezed vacuum gives an exactly
thermal state, conditioning on a superposed ancilla interpolates between
a pure-ish coherent mixture and that thermal state as the branch
separation grows, and the separation scale is set by the single-particle
purification overlap.

Run:  python3 demos/05_conditional_state.py
"""

import math

import numpy as np

from wedgeworks.oscint import RegulatorParams, Wavepacket
from wedgeworks.rindler import LEFT, WedgeSpec
from wedgeworks.superpose import (OverlapKernel, TruncatedSqueezedState,
                                  conditional_reduced_state,
                                  purification_overlap,
                                  squeezed_vacuum_check)

REG = RegulatorParams(epsilon=0.5, extrapolation_levels=8)

# ---------------------------------------------------------------------
# 1. Trace out the left wedge: the reduced state is thermal at a/2pi
# ---------------------------------------------------------------------
state = TruncatedSqueezedState((0.9,), n_max=6)
rep = squeezed_vacuum_check(state)
print("single-mode squeezed vacuum, w = 0.9, n_max = 6:")
for key in ("boltzmann_ratio_deviation", "off_diagonal_residue",
            "mean_occupation_deviation", "mean_tail_bound", "thermal"):
    print("  %-28s %s" % (key, rep[key]))

# ---------------------------------------------------------------------
# 2. Condition on the ancilla overlap kernel: Pi = 1 (identical
#    branches) and Pi = 0 (infinitely separated branches) both leave the
#    thermal diagonal; intermediate Pi suppresses the excited-sector
#    coherences and raises the purity toward neither extreme
# ---------------------------------------------------------------------
boltz = math.exp(-2.0 * math.pi * 0.9)
print("\nconditional state vs ancilla overlap Pi:")
print("%8s %12s %18s" % ("Pi", "purity", "max |ratio/q - 1|"))
for p in (1.0, 0.8, 0.5, 0.2, 0.0):
    red = conditional_reduced_state(state, OverlapKernel(p))
    diag = np.real(np.diag(red.matrix))
    ratios = diag[1:] / diag[:-1]
    dev = float(np.max(np.abs(ratios / boltz - 1.0)))
    print("%8.2f %12.6f %18.2e" % (p, red.purity(), dev))

# ---------------------------------------------------------------------
# 3. The physical input for Pi: the single-particle overlap of the
#    translated purifying modes, which decays with the null shift s
# ---------------------------------------------------------------------
pack = Wavepacket(1.0, 0.1)
wl = WedgeSpec(1.0, side=LEFT)
print("\npurification overlap |<1, L | 1, L_s>|^2:")
for s in (0.0, 0.5, 1.0, 2.0, 5.0, 10.0):
    ov = purification_overlap(wl, WedgeSpec(1.0, side=LEFT, null_shift=s),
                              1.0, 1.0, pack, REG)
    print("  s = %5.1f:  Pi_1 = %.6e" % (s, ov))
