"""Unruh-deWitt detector responses and KMS thermality diagnostics.

Gaussian-switched response integral, the closed-form response of a
detector in a superposition of angular positions in static de Sitter
coordinates, BTZ image-sum Wightman functions with local and superposed
responses, and the detailed-balance fit that extracts an effective
temperature from a response curve.

The superposed BTZ response is implemented in two variants.  The
printed prefactor (e^{2 Omega / T} + 1)^{-1} would give the KMS ratio
e^{-2 Omega / T}, contradicting the stated detailed-balance behavior
and failing to reduce to the local response at zero angular
separation; the canonical variant uses (e^{Omega / T} + 1)^{-1}, which
satisfies both.  Similarly, the cross-correlator image sum is
implemented with the same 1/sqrt(f) prefactor as the local one
(required for termwise equality at zero separation).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import BranchCutError, DomainError, ValidationError
from .oscint import _neville_to_zero
from .quadrature import tanhsinh
from .specfun import conical_p

CANONICAL = "canonical"
PRINTED = "printed"

# the square-root argument of an image term passing this close to zero
# (relative to its scale) means a lightlike image separation
_BRANCH_EPS = 1.0e-12


# ----------------------------------------------------------------------
# Domain types
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class DetectorConfig:
    """Energy gap, Gaussian switching width, and normalization flag.

    With coupling_absorbed (the default) the response absorbs the
    lambda^2 sigma factor of the perturbative transition probability;
    with it unset the value is multiplied by sigma sqrt(pi), giving the
    full probability per coupling squared.
    """

    gap: float
    switching_width: float
    coupling_absorbed: bool = True

    def __post_init__(self):
        if self.switching_width <= 0.0:
            raise DomainError("switching width must be positive")


@dataclass(frozen=True)
class BTZParams:
    """Static BTZ exterior: mass, AdS length, detector radius, images."""

    mass: float
    ads_length: float
    radius: float
    n_max: int = 20
    delta_phi: float = 0.0

    def __post_init__(self):
        if self.mass <= 0.0 or self.ads_length <= 0.0:
            raise DomainError("mass and AdS length must be positive")
        if self.n_max < 1:
            raise ValidationError("n_max >= 1 required")
        if not (0.0 <= self.delta_phi < 2.0 * math.pi):
            raise DomainError("delta_phi must lie in [0, 2 pi)")
        if self.metric_f() <= 0.0:
            raise DomainError(
                "detector must sit outside the horizon r_H = sqrt(M) l"
            )

    def metric_f(self):
        """f(r) = r^2 / l^2 - M."""
        return (self.radius / self.ads_length) ** 2 - self.mass

    def horizon(self):
        return math.sqrt(self.mass) * self.ads_length

    def temperature(self):
        """Local temperature sqrt(M) / (2 pi l sqrt(f))."""
        return math.sqrt(self.mass) / (
            2.0 * math.pi * self.ads_length * math.sqrt(self.metric_f())
        )

    def x_factor(self):
        """X = 4 pi^2 l^2 T^2 = M / f."""
        return self.mass / self.metric_f()


@dataclass(frozen=True)
class ResponseCurve:
    """Sampled response F(gap) with truncation metadata."""

    gaps: tuple
    values: tuple
    meta: dict

    def __post_init__(self):
        object.__setattr__(self, "gaps", tuple(float(g) for g in self.gaps))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.gaps) != len(self.values):
            raise ValidationError("gaps and values must have equal length")
        if any(not math.isfinite(v) for v in self.values):
            raise ValidationError("response values must be finite")


# ----------------------------------------------------------------------
# Gaussian-switched response integral
# ----------------------------------------------------------------------

def response_from_wightman(wightman, cfg, reg=None, tol=1.0e-8,
                           singularities=()):
    """F = int ds e^{-s^2 / 4 sigma^2} e^{-i Omega s} W(s).

    The window is truncated at |s| = 8 sigma.  With reg given, W is
    evaluated on the shifted contour s - i eps over the regulator
    ladder and extrapolated to eps -> 0; that is how distributional
    short-distance behavior (the Wightman i-epsilon prescription) is
    resolved -- W must then accept complex arguments.  singularities
    lists real times where W has integrable (lightlike-separation)
    singularities beyond the coincidence point; the quadrature breaks
    the window there so the endpoint clustering absorbs them.  The real
    part is returned; a non-negligible imaginary residual signals a
    Wightman function without the required conjugate symmetry.
    """
    sigma = cfg.switching_width
    omega = cfg.gap
    hi = 8.0 * sigma
    cuts = sorted({0.0} | {float(s) for s in singularities if -hi < s < hi})
    edges = [-hi] + cuts + [hi]

    def integral(eps):
        def f(s):
            s = np.asarray(s, dtype=float)
            arg = s - 1j * eps if eps else s
            w = wightman(arg)
            return np.exp(-s * s / (4.0 * sigma * sigma) - 1j * omega * s) * w

        return sum(
            tanhsinh(f, a, b, tol=0.01 * tol, max_level=13)
            for a, b in zip(edges[:-1], edges[1:])
        )

    if reg is None:
        val = integral(0.0)
    else:
        eps_list = reg.ladder()
        vals = [integral(e) for e in eps_list]
        val, resid = _neville_to_zero(eps_list, vals)
    scale = max(abs(val), 1.0e-300)
    if abs(val.imag) > 1.0e-6 * scale:
        raise ValidationError(
            "response has imaginary residual %.2e (bad Wightman symmetry)"
            % abs(val.imag)
        )
    out = float(val.real)
    if not cfg.coupling_absorbed:
        out *= sigma * math.sqrt(math.pi)
    return out


# ----------------------------------------------------------------------
# de Sitter superposed response (closed form)
# ----------------------------------------------------------------------

def desitter_superposed_response(omega, kappa, s):
    """Response of a detector superposed across two rotated worldlines.

    (Omega / 4 pi) (e^{2 pi Omega / kappa} - 1)^{-1} [1 + interference]
    with the interference term sin((2 Omega / kappa) arcsinh(s kappa /
    2)) / (s Omega sqrt(1 + (s kappa / 2)^2)); the s = 0 and Omega = 0
    limits are taken analytically (bracket -> 2 at s = 0).
    """
    if kappa <= 0.0:
        raise DomainError("kappa > 0 required")
    if s < 0.0:
        raise DomainError("separation s must be >= 0")
    x = 2.0 * math.pi * omega / kappa
    # Omega / (e^x - 1) -> kappa / 2 pi as Omega -> 0
    if abs(x) < 1.0e-8:
        pref = (kappa / (2.0 * math.pi)) * (1.0 - 0.5 * x) / (4.0 * math.pi)
    else:
        pref = omega / (4.0 * math.pi * math.expm1(x))
    half = 0.5 * s * kappa
    if s == 0.0:
        bracket = 2.0
    else:
        phase = (2.0 * omega / kappa) * math.asinh(half)
        root = math.sqrt(1.0 + half * half)
        if abs(phase) < 1.0e-8:
            # sin(phase)/(s Omega ...) with phase ~ Omega -> sinc limit
            bracket = 1.0 + (2.0 / kappa) * math.asinh(half) / (s * root) \
                * (1.0 - phase * phase / 6.0)
        else:
            bracket = 1.0 + math.sin(phase) / (s * omega * root)
    return pref * bracket


# ----------------------------------------------------------------------
# BTZ image sums
# ----------------------------------------------------------------------

def btz_wightman(s, p, delta_phi=None):
    """Truncated image sum for the BTZ Wightman function W(s).

    With delta_phi None the local correlator (angular images 2 pi n) is
    returned; otherwise the cross correlator with angular separation
    delta_phi.  Real s uses the boundary value of the s - i0
    prescription; complex s (lower half-plane) is evaluated directly,
    which is what the regulated response integral passes in.  A
    lightlike image separation (square-root argument at zero) raises
    BranchCutError.
    """
    f = p.metric_f()
    rl = p.radius / p.ads_length
    sm = math.sqrt(p.mass)
    pref = sm / (4.0 * math.pi * p.ads_length * math.sqrt(2.0) * math.sqrt(f))
    s_arr = np.asarray(s)
    complex_input = np.iscomplexobj(s_arr)
    st = np.asarray(s_arr, dtype=complex) * sm / (p.ads_length * math.sqrt(f))
    total = np.zeros_like(st)
    for n in range(-p.n_max, p.n_max + 1):
        ang = 2.0 * math.pi * n if delta_phi is None else delta_phi - 2.0 * math.pi * n
        a_n = (rl * rl * math.cosh(sm * ang) - p.mass) / f
        arg = a_n - np.cosh(st)
        if complex_input:
            total = total + 1.0 / np.sqrt(arg)
            continue
        arg = np.real(arg)
        scale = max(abs(a_n), 1.0)
        if np.any(np.abs(arg) < _BRANCH_EPS * scale):
            raise BranchCutError(
                "lightlike image separation at n = %d (argument %.3e)"
                % (n, float(np.min(np.abs(arg))))
            )
        pos = arg > 0.0
        term = np.where(
            pos,
            1.0 / np.sqrt(np.where(pos, arg, 1.0)),
            -1j * np.sign(np.real(st))
            / np.sqrt(np.where(pos, 1.0, -arg)),
        )
        total = total + term
    out = pref * total
    return out if out.shape else complex(out)


def btz_lightcone_crossings(p, window, delta_phi=None):
    """Real |s| < window where an image separation turns lightlike.

    The n-th image term of the Wightman sum has a square-root branch
    point where cosh(sqrt(M) s / l sqrt(f)) equals its offset; these
    are integrable singularities of W along the worldline and must be
    quadrature breakpoints.
    """
    f = p.metric_f()
    rl = p.radius / p.ads_length
    sm = math.sqrt(p.mass)
    scale = p.ads_length * math.sqrt(f) / sm
    if delta_phi is None:
        angles = [2.0 * math.pi * n for n in range(1, p.n_max + 1)]
    else:
        angles = [delta_phi - 2.0 * math.pi * n
                  for n in range(-p.n_max, p.n_max + 1)]
    out = set()
    for ang in angles:
        a_n = (rl * rl * math.cosh(sm * ang) - p.mass) / f
        if a_n <= 1.0:
            continue
        s_n = scale * math.acosh(a_n)
        if 0.0 < s_n < window:
            out.update((s_n, -s_n))
    return sorted(out)


def btz_image_tail_bound(p, delta_phi=None):
    """Bound on the dropped |n| > n_max images of the Wightman sum.

    Terms fall off like e^{-pi sqrt(M) n}; the bound is the first
    dropped pair resummed geometrically, evaluated at coincidence
    (where the terms are largest along real s).
    """
    f = p.metric_f()
    rl = p.radius / p.ads_length
    sm = math.sqrt(p.mass)
    pref = sm / (4.0 * math.pi * p.ads_length * math.sqrt(2.0) * math.sqrt(f))
    n1 = p.n_max + 1
    shift = 0.0 if delta_phi is None else delta_phi
    a_n = (rl * rl * math.cosh(sm * (2.0 * math.pi * n1 - shift)) - p.mass) / f
    first = 1.0 / math.sqrt(a_n - 1.0)
    decay = math.exp(-math.pi * sm)
    return pref * 2.0 * first / (1.0 - decay)


def _legendre_sum(lam, p, delta_phi=None):
    total = 0.0
    x_fac = p.x_factor()
    sm = math.sqrt(p.mass)
    for n in range(-p.n_max, p.n_max + 1):
        ang = 2.0 * math.pi * n if delta_phi is None else delta_phi - 2.0 * math.pi * n
        ch = (1.0 + x_fac) * math.cosh(sm * ang) - x_fac
        total += conical_p(lam, ch)
    return total


def _response_tail_bound(p):
    """Dropped-image bound for the Legendre response sums.

    P_{-1/2 + i lam}(cosh a) decays like e^{-a/2}; the first dropped
    image has a ~ 2 pi sqrt(M) (n_max + 1), resummed geometrically.
    """
    sm = math.sqrt(p.mass)
    x_fac = p.x_factor()
    a1 = 2.0 * math.pi * sm * (p.n_max + 1)
    ch = (1.0 + x_fac) * math.cosh(a1) - x_fac
    alpha = math.acosh(min(ch, 1.0e300))
    decay = math.exp(-math.pi * sm)
    return 2.0 * math.exp(-0.5 * alpha) / (1.0 - decay)


def btz_local_response(cfg, p):
    """Closed-form local response: Legendre image sum with Fermi factor."""
    temp = p.temperature()
    lam = cfg.gap / (2.0 * math.pi * temp)
    pref = 0.5 * math.sqrt(math.pi) / (math.exp(cfg.gap / temp) + 1.0)
    return pref * _legendre_sum(lam, p)


def btz_superposed_response(cfg, p, variant=CANONICAL):
    """Response of a detector superposed over two angular positions.

    Half the local-image sum plus half the delta_phi-shifted sum.  The
    canonical prefactor (e^{Omega/T} + 1)^{-1} satisfies the KMS ratio
    e^{-Omega/T} and reduces to the local response at delta_phi = 0;
    the printed variant (e^{2 Omega/T} + 1)^{-1} is kept for
    comparison.
    """
    temp = p.temperature()
    lam = cfg.gap / (2.0 * math.pi * temp)
    if variant == CANONICAL:
        fermi = 1.0 / (math.exp(cfg.gap / temp) + 1.0)
    elif variant == PRINTED:
        fermi = 1.0 / (math.exp(2.0 * cfg.gap / temp) + 1.0)
    else:
        raise ValidationError("unknown variant %r" % variant)
    pref = 0.25 * math.sqrt(math.pi) * fermi
    return pref * (_legendre_sum(lam, p)
                   + _legendre_sum(lam, p, delta_phi=p.delta_phi))


# ----------------------------------------------------------------------
# KMS detailed-balance fit
# ----------------------------------------------------------------------

def kms_fit(curve):
    """Fit log[F(W)/F(-W)] = -W / T_eff over the +-W pairs of the curve.

    Returns (T_eff, max relative residual of the log-ratio).  The curve
    must sample gaps symmetrically about zero with positive values.
    """
    pos = {}
    neg = {}
    for g, v in zip(curve.gaps, curve.values):
        if g > 0.0:
            pos[g] = v
        elif g < 0.0:
            neg[-g] = v
    gaps = sorted(set(pos) & set(neg))
    if len(pos) != len(neg) or len(gaps) != len(pos):
        raise ValidationError("curve must be sampled symmetrically in +-gap")
    if not gaps:
        raise ValidationError("no +-gap pairs in the curve")
    if any(pos[g] <= 0.0 or neg[g] <= 0.0 for g in gaps):
        raise ValidationError("KMS fit needs positive response values")
    x = np.array(gaps)
    y = np.array([math.log(pos[g] / neg[g]) for g in gaps])
    slope = float(np.dot(x, y) / np.dot(x, x))
    if slope >= 0.0:
        raise ValidationError("log-ratio slope is non-negative; not thermal")
    resid = float(np.max(np.abs(y - slope * x) / np.maximum(np.abs(y), 1e-300)))
    return -1.0 / slope, resid
