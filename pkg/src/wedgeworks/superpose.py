"""Assembly layer for quantum-controlled superpositions of frames.

The controlled annihilation operator b = b_A |A><A| + b_B |B><B|,
conditioned on a measurement of the control in a superposition basis,
yields a particle number that splits into two local terms and two
interference terms.  This module assembles that four-term spectrum from
the wedge/diamond modules (closed forms where they are trusted, the
packet-smeared quadrature oracle otherwise), builds the truncated-Fock
conditional reduced state with its purification-overlap coherence
blocks, and provides the detailed-balance fit used as the thermality
diagnostic.

Conventions for the reduced state: both branch Fock towers are
represented in the same truncated basis, so the coherence blocks are
Pi-weighted operators on that basis.  The n-particle left-wedge overlap
is modeled as (single-particle overlap)^n -- the permanent of a
rank-one overlap matrix -- which makes the blocks diagonal in particle
number; the single-particle sector is computed exactly from the mode
calculus.  All four blocks carry the same 1/4 weight: that is the
unique choice for which an overlap kernel of 1 (coincident branches)
collapses the state back to the single-wedge thermal state.
"""

import math
from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np

from .diamond import DiamondSpec, _cross_rapidity, diamond_planck_number
from .errors import DomainError, ValidationError
from .oscint import RegulatorParams, Wavepacket, beta_overlap_integral
from .rindler import (
    CROSS_AB,
    CROSS_BA,
    LEFT,
    LOCAL_A,
    LOCAL_B,
    TOTAL,
    SpectrumPoint,
    WedgeSpec,
    alpha_map,
    beta_map,
    planck_number,
)

# residual below this (on the detailed-balance fit) counts as thermal:
# three orders above quadrature noise, two-plus below the residuals
# observed for genuinely nonthermal shifted-branch spectra
THERMAL_RESIDUAL = 1.0e-3

_NORM_EPS = 1.0e-10
_HALF = 1.0 / math.sqrt(2.0)


# ----------------------------------------------------------------------
# Domain types
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class BranchPair:
    """Two controlled branches plus control preparation and readout.

    branch_a / branch_b are WedgeSpec or DiamondSpec values sharing the
    same temperature parameter a.  control_amplitudes prepares the
    control, measurement_state is the basis element it is projected
    onto; both default to the balanced superposition.
    """

    branch_a: object
    branch_b: object
    control_amplitudes: Tuple[complex, complex] = (_HALF, _HALF)
    measurement_state: Tuple[complex, complex] = (_HALF, _HALF)

    def __post_init__(self):
        ba, bb = self.branch_a, self.branch_b
        if type(ba) is not type(bb):
            raise ValidationError("branches must be the same kind of region")
        if not isinstance(ba, (WedgeSpec, DiamondSpec)):
            raise ValidationError("branches must be WedgeSpec or DiamondSpec")
        if abs(ba.a - bb.a) > _NORM_EPS * abs(ba.a):
            raise ValidationError("branches must share the same a")
        for name in ("control_amplitudes", "measurement_state"):
            v = getattr(self, name)
            if len(v) != 2:
                raise ValidationError("%s needs two components" % name)
            norm = abs(v[0]) ** 2 + abs(v[1]) ** 2
            if abs(norm - 1.0) > _NORM_EPS:
                raise ValidationError("%s must be normalized" % name)

    def weights(self):
        """Effective branch weights (w_a, w_b) of the conditioned operator.

        Projecting b = b_A |A><A| + b_B |B><B| applied to (c_A|A> +
        c_B|B>)|0_M> onto the measurement state m gives (m_A* c_A) b_A +
        (m_B* c_B) b_B acting on the vacuum.
        """
        ca, cb = self.control_amplitudes
        ma, mb = self.measurement_state
        return complex(ma).conjugate() * ca, complex(mb).conjugate() * cb


@dataclass(frozen=True)
class TruncatedSqueezedState:
    """Two-mode-squeezed Minkowski vacuum, truncated per mode at n_max.

    Per mode i the pure state is C_i sum_n e^{-pi n w_i / a} |n>|n>
    with C_i chosen so the TRUNCATED state has unit norm; the weights
    e^{-pi n w_i / a} all lie in (0, 1].
    """

    mode_freqs: Tuple[float, ...]
    n_max: int
    accel: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "mode_freqs", tuple(float(w) for w in self.mode_freqs))
        if not self.mode_freqs:
            raise ValidationError("need at least one mode frequency")
        if any(w <= 0.0 for w in self.mode_freqs):
            raise DomainError("mode frequencies must be positive")
        if self.accel <= 0.0:
            raise DomainError("a > 0 required")
        if self.n_max < 1:
            raise ValidationError("n_max >= 1 required")
        if self.n_max > 6 or len(self.mode_freqs) > 3:
            raise ValidationError(
                "desk scale is n_max <= 6 with <= 3 modes "
                "(got n_max=%d, %d modes)" % (self.n_max, len(self.mode_freqs))
            )

    @property
    def squeeze_weights(self):
        """Per-mode arrays e^{-pi n w_i / a}, n = 0 .. n_max."""
        n = np.arange(self.n_max + 1)
        return tuple(np.exp(-math.pi * n * w / self.accel) for w in self.mode_freqs)

    @property
    def normalizers(self):
        """C_i = 1/sqrt(sum_n e^{-2 pi n w_i / a}) over the truncation."""
        return tuple(1.0 / math.sqrt(float(np.sum(w * w))) for w in self.squeeze_weights)

    def amplitudes(self):
        """Normalized per-mode Schmidt coefficients C_i e^{-pi n w_i/a}."""
        return tuple(c * w for c, w in zip(self.normalizers, self.squeeze_weights))


@dataclass(frozen=True)
class OverlapKernel:
    """Fock-sector overlaps Pi(n_i, n_j) of the translated ancilla states.

    single_particle is |<1, L | 1, L'>|^2 on the one-particle sector;
    the n-particle overlap is modeled as single_particle**n (rank-one
    overlap matrix), which vanishes between different particle numbers.
    The mode-level model keeps the vacuum-sector overlap at 1; the
    kernel with single_particle = 0 represents the infinite-separation
    limit in which the ancilla vacua decohere too, so it vanishes
    identically (including on the vacuum sector), leaving the exact
    thermal state.
    """

    single_particle: float

    def __post_init__(self):
        p = self.single_particle
        if not (0.0 <= p <= 1.0 + 1.0e-12):
            raise ValidationError("single-particle overlap must lie in [0, 1]")

    def pi(self, n_i, n_j):
        if n_i != n_j or self.single_particle == 0.0:
            return 0.0
        return min(self.single_particle, 1.0) ** n_i


@dataclass(frozen=True)
class ReducedState:
    """Unit-trace conditional state plus its unnormalized blocks."""

    matrix: np.ndarray
    blocks: dict

    def purity(self):
        return float(np.real(np.trace(self.matrix @ self.matrix)))


# ----------------------------------------------------------------------
# Four-term conditional spectrum
# ----------------------------------------------------------------------

def _wedge_cross_diagonal(pair, omega, pack_width, reg, tol):
    """Smeared diagonal <b_A^dag b_B> for two right-side-or-left wedges."""
    ba, bb = pair.branch_a, pair.branch_b
    a = ba.a
    if ba.side != bb.side:
        # antiparallel wedges: the overlap carries delta(W + W'), which
        # never fires for positive frequencies
        return 0.0 + 0.0j
    rel = bb.null_shift - ba.null_shift
    if rel == 0.0 and ba.transverse_shift == bb.transverse_shift:
        return complex(planck_number(omega, a))
    base = replace(ba, null_shift=0.0)
    pk = Wavepacket(omega, pack_width)
    bm = beta_map(base)
    return complex(
        beta_overlap_integral(bm, bm, pk, pk, reg, shift_s=rel, accel=a, tol=tol)
    )


def _diamond_cross_diagonal(pair, omega, tol):
    """Diagonal <b_A^dag b_B> for two diamonds of the same ladder."""
    ba, bb = pair.branch_a, pair.branch_b
    a = ba.a
    dn = bb.n - ba.n
    if dn == 0:
        return complex(diamond_planck_number(omega, a))
    big = omega / a
    val = _cross_rapidity(big, big, a, float(abs(dn)), tol=max(tol, 1.0e-10))
    return complex(val) if dn > 0 else complex(val).conjugate()


def conditional_spectrum(pair, grid, pack, reg=None, tol=1.0e-8):
    """Per-frequency branch decomposition of the conditioned number.

    Returns SpectrumPoint entries (local-a, local-b, cross-ab,
    cross-ba, total) for each grid frequency; each entry already
    carries its interferometric weight, so total is the plain sum of
    the other four.  Local terms use the closed-form occupation; the
    cross terms use the packet-smeared quadrature diagonal with the
    packet's relative width transported along the grid.  For balanced
    control and measurement the weights are all 1/4.
    """
    if reg is None:
        reg = RegulatorParams()
    wa, wb = pair.weights()
    a = pair.branch_a.a
    sigma_rel = pack.width / pack.center
    is_wedge = isinstance(pair.branch_a, WedgeSpec)
    out = []
    for omega in np.asarray(grid, dtype=float):
        omega = float(omega)
        if omega <= 0.0:
            raise DomainError("grid frequencies must be positive")
        n_local = (planck_number if is_wedge else diamond_planck_number)(omega, a)
        if is_wedge:
            n_ab = _wedge_cross_diagonal(pair, omega, sigma_rel * omega, reg, tol)
        else:
            n_ab = _diamond_cross_diagonal(pair, omega, tol)
        loc_a = abs(wa) ** 2 * n_local
        loc_b = abs(wb) ** 2 * n_local
        c_ab = wa.conjugate() * wb * n_ab
        c_ba = c_ab.conjugate()
        total = loc_a + loc_b + 2.0 * c_ab.real
        out.append(SpectrumPoint(omega, omega, loc_a, LOCAL_A))
        out.append(SpectrumPoint(omega, omega, loc_b, LOCAL_B))
        out.append(SpectrumPoint(omega, omega, c_ab, CROSS_AB))
        out.append(SpectrumPoint(omega, omega, c_ba, CROSS_BA))
        out.append(SpectrumPoint(omega, omega, total, TOTAL))
    return out


# ----------------------------------------------------------------------
# Conditional reduced state (truncated Fock)
# ----------------------------------------------------------------------

def conditional_reduced_state(state, kernel):
    """Four-block conditional state of the kept wedge, unit trace.

    Two thermal diagonal blocks and two Pi-weighted coherence blocks,
    each with weight 1/4 (see the module docstring); renormalized to
    unit trace after truncation.
    """
    amps = state.amplitudes()
    dims = [state.n_max + 1] * len(amps)
    diag = amps[0] ** 2
    for w in amps[1:]:
        diag = np.kron(diag, w ** 2)
    dim = int(np.prod(dims))
    if dim > 512:
        raise ValidationError("truncated state dimension %d too large" % dim)

    # rank-one overlap model: coherence support only on equal particle
    # numbers, weighted by single_particle**(total occupation)
    occ = np.zeros(dim)
    for i, d in enumerate(dims):
        n = np.arange(d, dtype=float)
        left = np.ones(int(np.prod(dims[:i])))
        right = np.ones(int(np.prod(dims[i + 1:])))
        occ += np.kron(np.kron(left, n), right)
    pi_diag = np.array([kernel.pi(int(n), int(n)) for n in occ])

    local = 0.25 * np.diag(diag.astype(complex))
    coh = 0.25 * np.diag((diag * pi_diag).astype(complex))
    blocks = {LOCAL_A: local, LOCAL_B: local.copy(),
              CROSS_AB: coh, CROSS_BA: coh.conj().T}
    total = blocks[LOCAL_A] + blocks[LOCAL_B] + blocks[CROSS_AB] + blocks[CROSS_BA]
    tr = float(np.real(np.trace(total)))
    if tr <= 0.0:
        raise ValidationError("vanishing trace in the truncated state")
    return ReducedState(total / tr, blocks)


# ----------------------------------------------------------------------
# Purification overlap (single-particle sector)
# ----------------------------------------------------------------------

def purification_overlap(wedge_l, wedge_l_shifted, omega, omega_prime, pack,
                         reg=None, tol=1.0e-8):
    """|<1_w, L | 1_w', L'>|^2 from the packet-smeared mode overlap.

    Both specs must be left wedges with the same a.  The overlap of the
    packet modes is their KG product expressed through plane-wave
    coefficients, int dk (Aa* Aa' - Ab* Ab'), normalized by the
    self-overlaps of each packet mode.  pack sets the packet width;
    the centers are omega and omega_prime.
    """
    if wedge_l.side != LEFT or wedge_l_shifted.side != LEFT:
        raise ValidationError("purification overlap takes two left wedges")
    if abs(wedge_l.a - wedge_l_shifted.a) > _NORM_EPS * abs(wedge_l.a):
        raise ValidationError("wedges must share the same a")
    if reg is None:
        reg = RegulatorParams()
    a = wedge_l.a
    rel = wedge_l_shifted.null_shift - wedge_l.null_shift
    base = replace(wedge_l, null_shift=0.0)
    am, bm = alpha_map(base), beta_map(base)
    p1 = Wavepacket(omega, pack.width)
    p2 = Wavepacket(omega_prime, pack.width)

    def kg(pa, pb, s):
        return (
            beta_overlap_integral(am, am, pa, pb, reg, shift_s=s, accel=a, tol=tol)
            - beta_overlap_integral(bm, bm, pa, pb, reg, shift_s=s, accel=a, tol=tol)
        )

    if rel == 0.0 and omega == omega_prime:
        return 1.0
    o12 = kg(p1, p2, rel)
    n1 = kg(p1, p1, 0.0).real
    n2 = n1 if omega == omega_prime else kg(p2, p2, 0.0).real
    if n1 <= 0.0 or n2 <= 0.0:
        raise ValidationError("packet mode norms came out non-positive")
    return float(abs(o12) ** 2 / (n1 * n2))


# ----------------------------------------------------------------------
# Thermality diagnostics
# ----------------------------------------------------------------------

def _total_points(spectrum):
    pts = [(p.omega, float(np.real(p.value)))
           for p in spectrum if p.branch == TOTAL]
    if not pts:
        pts = [(p.omega, float(np.real(p.value))) for p in spectrum]
    return pts


def nonthermality_metric(spectrum, mode="strict"):
    """Detailed-balance fit: best-fit temperature and max residual.

    mode "strict" fits log(1 + 1/N) = w / T through the origin
    (detailed balance with unit amplitude; exact Planck at acceleration
    a reports T = a / 2 pi); the residual is the max relative
    deviation.  mode "shape" allows a free overall amplitude,
    fitting log N = log A + log n_pl(w, T), so a uniformly rescaled
    Planck curve still counts as thermal in shape; the residual is the
    max |log| deviation.  Residual below THERMAL_RESIDUAL declares the
    spectrum thermal.
    """
    pts = _total_points(spectrum)
    if len(pts) < 8:
        raise ValidationError("fit needs at least 8 grid points")
    omega = np.array([p[0] for p in pts])
    occ = np.array([p[1] for p in pts])
    if np.any(occ <= 0.0):
        raise ValidationError("fit needs positive occupations")

    if mode == "strict":
        y = np.log1p(1.0 / occ)
        slope = float(np.dot(omega, y) / np.dot(omega, omega))
        resid = float(np.max(np.abs(y - slope * omega) / np.abs(y)))
        return 1.0 / slope, resid

    if mode == "shape":
        y = np.log(occ)

        def sq_resid(b):
            model = -np.log(np.expm1(b * omega))
            c = float(np.mean(y - model))
            return float(np.sum((y - c - model) ** 2)), c

        # golden-section in log b around the strict-fit slope
        b0 = float(np.dot(omega, np.log1p(1.0 / occ)) / np.dot(omega, omega))
        lo, hi = math.log(b0 / 10.0), math.log(b0 * 10.0)
        gr = (math.sqrt(5.0) - 1.0) / 2.0
        x1 = hi - gr * (hi - lo)
        x2 = lo + gr * (hi - lo)
        f1, f2 = sq_resid(math.exp(x1))[0], sq_resid(math.exp(x2))[0]
        for _ in range(120):
            if f1 < f2:
                hi, x2, f2 = x2, x1, f1
                x1 = hi - gr * (hi - lo)
                f1 = sq_resid(math.exp(x1))[0]
            else:
                lo, x1, f1 = x1, x2, f2
                x2 = lo + gr * (hi - lo)
                f2 = sq_resid(math.exp(x2))[0]
        b = math.exp(0.5 * (lo + hi))
        _, c = sq_resid(b)
        model = c - np.log(np.expm1(b * omega))
        resid = float(np.max(np.abs(y - model)))
        return 1.0 / b, resid

    raise ValidationError("unknown fit mode %r" % mode)


def squeezed_vacuum_check(state):
    """Trace out the ancilla tower; verify the thermal reduced state.

    Builds the truncated two-sided pure state explicitly, traces out
    the left factors, and reports: the maximum deviation of successive
    Boltzmann ratios from e^{-2 pi w_i / a}, the off-diagonal residue,
    the per-mode truncation tail bound, and the mean occupation against
    the Planck value (which must agree within the tail bound).
    """
    amps = state.amplitudes()
    # psi as a matrix M[right multi-index, left multi-index]: the state
    # is diagonal in the Schmidt basis, so M = diag(prod_i c_{i, n_i})
    coeff = amps[0]
    for w in amps[1:]:
        coeff = np.kron(coeff, w)
    m = np.diag(coeff.astype(complex))
    rho = m @ m.conj().T
    off = rho - np.diag(np.diag(rho))
    off_diag_residue = float(np.max(np.abs(off))) if off.size else 0.0

    ratio_dev = 0.0
    tail_bounds = []
    for w_i, c in zip(state.mode_freqs, amps):
        boltz = math.exp(-2.0 * math.pi * w_i / state.accel)
        p = c * c
        ratios = p[1:] / p[:-1]
        ratio_dev = max(ratio_dev, float(np.max(np.abs(ratios / boltz - 1.0))))
        # geometric tail of the untruncated tower, relative to its norm
        tail_bounds.append(boltz ** (state.n_max + 1))

    # mean occupations vs Planck, mode by mode (the reduced state is a
    # product, so marginals factor); the truncation moves the mean by at
    # most the geometric tail sum_{n>M} (n + N_pl) q^n / norm
    mean_dev = 0.0
    mean_tail = 0.0
    m1 = state.n_max + 1
    for w_i, c in zip(state.mode_freqs, amps):
        q = math.exp(-2.0 * math.pi * w_i / state.accel)
        p = c * c
        mean = float(np.dot(np.arange(state.n_max + 1), p))
        n_pl = planck_number(w_i, state.accel)
        mean_dev = max(mean_dev, abs(mean - n_pl))
        # truncation tail plus double-precision rounding allowance
        mean_tail = max(
            mean_tail,
            q ** m1 * (m1 + q / (1.0 - q) + n_pl) / (1.0 - q ** m1)
            + 64.0 * np.finfo(float).eps * (1.0 + n_pl),
        )
    tail = max(tail_bounds)
    return {
        "boltzmann_ratio_deviation": ratio_dev,
        "off_diagonal_residue": off_diag_residue,
        "tail_bound": tail,
        "mean_occupation_deviation": mean_dev,
        "mean_tail_bound": mean_tail,
        "thermal": bool(
            ratio_dev < 1.0e-12
            and off_diag_residue < 1.0e-14
            and mean_dev <= mean_tail
        ),
    }
