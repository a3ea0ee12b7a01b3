"""Brute-force oracle layer: numerical mode overlaps and smeared spectra.

Everything downstream of this module has a closed form; everything in this
module deliberately does not.  Klein-Gordon inner products, smeared
beta-overlap integrals and the double-integral occupation number are
evaluated by direct quadrature so the closed forms can be validated
against an independent computation.

Conventions:
  * Left-mover sector throughout; modes are functions of the Minkowski
    null coordinate V.
  * KG inner product <f, g> = 2i int dV f*(V) d_V g(V).
  * Distributional overlaps are made finite by Gaussian wavepackets
    P(w) = (2 pi sigma^2)^{-1/4} exp(-(w - w0)^2 / 4 sigma^2), so that
    int |P|^2 dw = 1 and occupation numbers are packet-normalised.
  * Oscillatory tails carry damping e^{-eps V}; results are polynomial
    (Neville) extrapolated over a geometric ladder eps, eps/2, eps/4, ...
    The k-integral of smeared overlaps runs innermost in z = ln k.

Numerical notes kept honest:
  * The quadrature cost of a damped half-line tail scales like 1/eps
    (it must resolve every oscillation the damping leaves alive).  The
    dataclass default eps = 1e-3 follows the module contract; for
    oscillatory Rindler tails choose eps ~ 0.25 x (tail frequency) with
    5-6 ladder levels instead, which reaches ~1e-9 after extrapolation
    at a few hundred thousand integrand evaluations.
  * Shifted overlaps e^{i k s / a} are passed via shift_s, not baked into
    the beta callables: beyond phase ~ 2 the z-integral is pushed onto a
    rotated contour, which requires evaluating the (analytic) beta maps
    at complex k.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import ConvergenceError, DomainError
from .quadrature import exp_sinh, real_line, real_line_nodes, tanhsinh

GH_POINTS = 64

_GH_X, _GH_W = np.polynomial.hermite.hermgauss(GH_POINTS)


# ----------------------------------------------------------------------
# Domain types
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ModeFunction:
    """A mode as a function of the null coordinate V.

    evaluator must be vectorised over numpy arrays (complex output);
    d_evaluator, when given, is the analytic d/dV.  Without it a
    Richardson central difference is used (good to ~1e-9 on smooth
    modes, worse near support edges).

    Modes with a finite support edge and edge-singular behaviour (boost
    modes go like distance^{+-i w/a}) may supply edge_evaluator /
    edge_d_evaluator as functions of the DISTANCE into the support from
    that edge.  Quadratures anchored at the edge then keep full phase
    accuracy where V - edge would round away (e.g. a wedge horizon at
    V = -s/a evaluated 1e-20 inside).
    """

    evaluator: Callable
    support: Tuple[float, float]
    label: str = ""
    d_evaluator: Optional[Callable] = None
    edge_evaluator: Optional[Callable] = None
    edge_d_evaluator: Optional[Callable] = None

    def derivative(self, v):
        if self.d_evaluator is not None:
            return self.d_evaluator(v)
        h = 1.0e-4 * (1.0 + np.abs(v))
        d1 = (self.evaluator(v + h) - self.evaluator(v - h)) / (2.0 * h)
        d2 = (self.evaluator(v + 0.5 * h) - self.evaluator(v - 0.5 * h)) / h
        return (4.0 * d2 - d1) / 3.0

    def finite_edge(self):
        lo, hi = self.support
        if np.isfinite(lo) and not np.isfinite(hi):
            return lo
        if np.isfinite(hi) and not np.isfinite(lo):
            return hi
        return None

    def value_from(self, anchor, dist):
        """Value at V = anchor + dist (dist keeps the sign of direction).

        Uses the edge-distance form when anchor is this mode's finite
        edge, avoiding V - edge cancellation.
        """
        if self.edge_evaluator is not None and anchor == self.finite_edge():
            return self.edge_evaluator(np.abs(dist))
        return self.evaluator(anchor + dist)

    def derivative_from(self, anchor, dist):
        if self.edge_d_evaluator is not None and anchor == self.finite_edge():
            return self.edge_d_evaluator(np.abs(dist))
        return self.derivative(anchor + dist)


@dataclass(frozen=True)
class Wavepacket:
    """Gaussian frequency profile, quasi-monochromatic by construction."""

    center: float
    width: float

    def __post_init__(self):
        if self.center <= 0.0 or self.width <= 0.0:
            raise DomainError("wavepacket needs center > 0 and width > 0")
        if self.width >= self.center / 5.0:
            raise DomainError(
                "packet width must be < center/5 (got sigma=%g, w0=%g)"
                % (self.width, self.center)
            )

    def amplitude(self, omega):
        omega = np.asarray(omega, dtype=float)
        amp = (2.0 * math.pi * self.width ** 2) ** (-0.25) * np.exp(
            -((omega - self.center) ** 2) / (4.0 * self.width ** 2)
        )
        return np.where(omega > 0.0, amp, 0.0)

    def norm_sq(self):
        """int |P|^2 dw; the omega > 0 truncation loss is < e^{-12.5}."""
        return 1.0

    def gh_nodes(self):
        """(omega_i, c_i) with int P(w) f(w) dw ~= sum c_i f(omega_i).

        Tanh-sinh nodes on (0, w0 + 12 sigma).  The profile is cut off at
        omega = 0 and the Bogoliubov coefficients it multiplies go like
        omega^{-1/2} there; double-exponential clustering keeps that edge
        at full accuracy, where a Hermite rule (blind to the truncation)
        stalls near 1e-3 relative and pollutes slow large-argument tails
        of every downstream packet sum.
        """
        level, t_max = 7, 4.0
        h = 2.0 ** (-level)
        t = np.arange(-t_max, t_max + 0.5 * h, h)
        w = 0.5 * math.pi * np.sinh(t)
        hi = self.center + 12.0 * self.width
        half = 0.5 * hi
        lo_side = half * 2.0 / (np.exp(-2.0 * w) + 1.0)
        hi_side = hi - half * 2.0 / (np.exp(2.0 * w) + 1.0)
        omega = np.where(w < 0.0, lo_side, hi_side)
        dxdt = half * 0.5 * math.pi * np.cosh(t) / np.cosh(w) ** 2
        coeff = h * dxdt * self.amplitude(omega)
        # trim doubly-exponentially negligible nodes (weights allow an
        # omega^{-1/2} factor in the integrand they will multiply)
        keep = coeff / np.sqrt(omega) > 1.0e-20 * np.max(coeff)
        return omega[keep], coeff[keep]


@dataclass(frozen=True)
class RegulatorParams:
    """iepsilon damping and extrapolation controls.

    epsilon is the largest rung of the ladder; evaluation runs at
    epsilon / 2^i for i < extrapolation_levels and extrapolates to 0.
    """

    epsilon: float = 1.0e-3
    k_max: float = 1.0e3
    extrapolation_levels: int = 3

    def __post_init__(self):
        if self.epsilon <= 0.0 or self.k_max <= 0.0:
            raise DomainError("regulator needs epsilon > 0 and k_max > 0")
        if self.extrapolation_levels < 2:
            raise DomainError("need at least 2 extrapolation levels")

    def ladder(self):
        return [self.epsilon / 2.0 ** i for i in range(self.extrapolation_levels)]


def _neville_to_zero(eps, vals):
    """Polynomial extrapolation of vals(eps) to eps = 0.

    Returns (limit, residual estimate = last-column correction).
    """
    v = list(vals)
    e = list(eps)
    n = len(v)
    prev = v[0]
    for m in range(1, n):
        for i in range(n - m):
            v[i] = v[i + 1] + (v[i] - v[i + 1]) * e[i + m] / (e[i + m] - e[i])
        prev, last = v[0], prev
    return v[0], abs(v[0] - last)


# ----------------------------------------------------------------------
# Klein-Gordon inner product
# ----------------------------------------------------------------------

def kg_inner_product(f, g, reg=None, tol=1.0e-6):
    """<f, g> = 2i int dV f*(V) d_V g(V) over the support intersection.

    Disjoint supports short-circuit to exactly 0.  Unbounded tails are
    damped by e^{-eps |V - edge|} and extrapolated over reg's ladder.
    """
    if reg is None:
        reg = RegulatorParams()
    lo = max(f.support[0], g.support[0])
    hi = min(f.support[1], g.support[1])
    if hi <= lo:
        return 0.0 + 0.0j

    def integrand(v):
        return 2.0j * np.conj(f.evaluator(v)) * g.derivative(v)

    if np.isfinite(lo) and np.isfinite(hi):
        return tanhsinh(integrand, lo, hi, tol=0.01 * tol, max_level=13)

    def anchored(anchor, sign):
        # integrand at V = anchor + sign * x, edge-aware for both modes
        def h(x):
            d = sign * x
            return 2.0j * np.conj(f.value_from(anchor, d)) \
                * g.derivative_from(anchor, d)

        return h

    eps_list = reg.ladder()
    vals = []
    for eps in eps_list:
        total = 0.0 + 0.0j
        if np.isfinite(lo):
            h = anchored(lo, +1.0)
            total += exp_sinh(
                lambda x: h(x) * np.exp(-eps * x),
                tol=0.01 * tol, max_level=15,
            )
        elif np.isfinite(hi):
            h = anchored(hi, -1.0)
            total += exp_sinh(
                lambda x: h(x) * np.exp(-eps * x),
                tol=0.01 * tol, max_level=15,
            )
        else:
            for sgn in (+1.0, -1.0):
                h = anchored(0.0, sgn)
                total += exp_sinh(
                    lambda x: h(x) * np.exp(-eps * x),
                    tol=0.01 * tol, max_level=15,
                )
        vals.append(total)
    limit, resid = _neville_to_zero(eps_list, vals)
    if resid > tol * max(abs(limit), 1.0e-300):
        raise ConvergenceError(
            "KG inner product extrapolation residual %.2e exceeds tol" % resid,
            estimate=limit,
            residual=resid,
        )
    return limit


# ----------------------------------------------------------------------
# Smeared beta-overlap integral
# ----------------------------------------------------------------------

_PHASE_CORNER = 2.0  # rotate the z-contour once |k s / a| exceeds this


def _packet_average(beta, pack, conjugate):
    """Return B(k) = int dw P(w) beta(w, k) (conjugated variant on demand).

    The conjugated-and-continued map is conj(beta(w, conj k)), which is
    the analytic continuation of conj(beta(w, k)) off the real k axis.
    """
    omega, coeff = pack.gh_nodes()

    if conjugate:
        def B(k):
            k = np.asarray(k, dtype=complex)
            acc = np.zeros(k.shape, dtype=complex)
            kc = np.conj(k)
            for w_i, c_i in zip(omega, coeff):
                acc += c_i * np.conj(beta(w_i, kc))
            return acc
    else:
        def B(k):
            k = np.asarray(k, dtype=complex)
            acc = np.zeros(k.shape, dtype=complex)
            for w_i, c_i in zip(omega, coeff):
                acc += c_i * beta(w_i, k)
            return acc
    return B


def beta_overlap_integral(beta1, beta2, pack1, pack2, reg=None,
                          shift_s=0.0, accel=1.0, tol=1.0e-8):
    """N = int dk [int dw P1 beta1]* [int dw' P2 beta2] e^{i k s / a}.

    beta callables take (omega, k) with k a (possibly complex) array and
    must be analytic in k off the negative axis; the relative-shift
    phase e^{i k shift_s / accel} is applied here, not inside beta2.
    Innermost integration is over z = ln k.
    """
    if reg is None:
        reg = RegulatorParams()
    B1c = _packet_average(beta1, pack1, conjugate=True)
    B2 = _packet_average(beta2, pack2, conjugate=False)

    def E(z):
        z = np.asarray(z, dtype=complex)
        k = np.exp(z)
        return k * B1c(k) * B2(k)

    # envelope width of E in z, set by the narrower packet; the window
    # edge sits where the Gaussian envelope is below e^{-32}
    w_env = accel / (2.0 * min(pack1.width, pack2.width))
    z_hi = 8.0 * w_env + 3.0
    z_lo = -8.0 * w_env - 3.0
    s = float(shift_s)

    # reference magnitude so near-cancelling overlaps (opposite wedges,
    # disjoint packets) do not chase unattainable relative accuracy
    z_probe = np.linspace(z_lo, z_hi, 64)
    ref = float(np.max(np.abs(E(z_probe)))) * (z_hi - z_lo)

    if abs(s) * math.exp(z_hi) / accel <= _PHASE_CORNER:
        # phase stays slow over the whole envelope: fold it in directly
        return tanhsinh(lambda z: E(z) * np.exp(1j * s * np.exp(z) / accel),
                        z_lo, z_hi, tol=tol, max_level=12, ref=ref)

    z_c = math.log(_PHASE_CORNER * accel / abs(s))
    total = 0.0 + 0.0j
    if z_c > z_lo:
        total += tanhsinh(
            lambda z: E(z) * np.exp(1j * s * np.exp(z) / accel),
            z_lo, z_c, tol=tol, max_level=12, ref=ref,
        )
    # remaining tail: u = |s| e^z / accel, rotated u -> corner +- i v
    sgn = 1.0 if s > 0 else -1.0
    c0 = _PHASE_CORNER

    def tail(v):
        u = c0 + sgn * 1j * v
        z = np.log(u * accel / abs(s))
        return E(z) * np.exp(-v) / u

    total += sgn * 1j * np.exp(sgn * 1j * c0) * exp_sinh(
        tail, tol=tol, max_level=11, ref=ref
    )
    return complex(total)


# ----------------------------------------------------------------------
# The iepsilon self-test integral
# ----------------------------------------------------------------------

def iepsilon_integral(z_values, reg=None):
    """int_0^inf dk k e^{-i k z} against -1/(z - i eps)^2, per z.

    Diagnostic: returns {z: (numeric, analytic)}; the numeric side is the
    damped quadrature at eps = reg.epsilon, the analytic side the
    closed-form right-hand side at the same eps.
    """
    if reg is None:
        reg = RegulatorParams()
    eps = reg.epsilon
    out = {}
    for z in np.atleast_1d(np.asarray(z_values, dtype=float)):
        z = float(z)
        numeric = exp_sinh(
            lambda k: k * np.exp(-(eps + 1j * z) * k),
            tol=1.0e-8, max_level=15, x0=1.0 / max(abs(z), eps),
        )
        analytic = -1.0 / (z - 1j * eps) ** 2
        out[z] = (complex(numeric), complex(analytic))
    return out


# ----------------------------------------------------------------------
# Diamond occupation via the double integral
# ----------------------------------------------------------------------

def diamond_double_integral(pack1, pack2, accel=1.0, reg=None,
                            p_level=8, tol=1.0e-7):
    """Packet-smeared N through the rapidity double integral.

    Evaluates
        N = -(1 / 8 pi^2 a) iint dp dq S1(p + q) S2(p - q) / sinh^2(q - i0)
    where S1/S2 are the packet transforms of Omega^{-1/2} e^{-+ i Omega x}
    (sum-difference variables p = t + t', q = t - t' of the rapidity
    form).  The i0 prescription is taken in the exact distributional
    limit: 1/(q - i0)^2 contributes PV int G'/q + i pi G'(0).
    """
    omega1, c1 = pack1.gh_nodes()
    omega2, c2 = pack2.gh_nodes()
    O1 = omega1 / accel
    O2 = omega2 / accel
    a1 = c1 / np.sqrt(O1)
    a2 = c2 / np.sqrt(O2)

    def S1(x):
        return np.exp(-1j * np.multiply.outer(x, O1)) @ a1

    def dS1(x):
        return np.exp(-1j * np.multiply.outer(x, O1)) @ (-1j * O1 * a1)

    def S2(x):
        return np.exp(1j * np.multiply.outer(x, O2)) @ a2

    def dS2(x):
        return np.exp(1j * np.multiply.outer(x, O2)) @ (1j * O2 * a2)

    # All windows stay inside |x| <= 8 w_env: beyond that the discrete
    # packet sums alias instead of reproducing the Gaussian decay of the
    # true packet transforms.
    w_env = accel / (2.0 * min(pack1.width, pack2.width))
    L = 8.0 * w_env + 3.0
    n_p = 2 ** p_level
    p_nodes = np.linspace(-L, L, n_p)
    p_wts = np.full(n_p, p_nodes[1] - p_nodes[0])
    p_wts[0] *= 0.5
    p_wts[-1] *= 0.5

    def G(q):
        q = np.atleast_1d(np.asarray(q, dtype=float))
        out = np.empty(q.shape, dtype=complex)
        for i in range(0, q.size, 64):
            qq = q[i:i + 64]
            x = p_nodes[None, :] + qq[:, None]
            y = p_nodes[None, :] - qq[:, None]
            out[i:i + 64] = (S1(x) * S2(y)) @ p_wts
        return out

    def Gp(q):
        q = np.atleast_1d(np.asarray(q, dtype=float))
        out = np.empty(q.shape, dtype=complex)
        for i in range(0, q.size, 64):
            qq = q[i:i + 64]
            x = p_nodes[None, :] + qq[:, None]
            y = p_nodes[None, :] - qq[:, None]
            out[i:i + 64] = (dS1(x) * S2(y) - S1(x) * dS2(y)) @ p_wts
        return out

    # regular part: 1/sinh^2 q - 1/q^2 is smooth (-1/3 at the origin);
    # for |q| > 20 the sinh term has decayed below the 1/q^2 one
    def regular(q):
        q = np.asarray(q, dtype=float)
        small = np.abs(q) < 1.0e-4
        big = np.abs(q) > 20.0
        qs = np.where(small | big, 1.0, q)
        r = 1.0 / np.sinh(qs) ** 2 - 1.0 / qs ** 2
        r = np.where(small, -1.0 / 3.0 + q ** 2 / 15.0, r)
        r = np.where(big, 4.0 * np.exp(-2.0 * np.abs(q)) - 1.0 / np.where(big, q, 1.0) ** 2, r)
        return G(q) * r

    # reference scale: Cauchy-Schwarz bound on |G|, so that the q-integral
    # convergence test stays meaningful when the packets barely overlap
    # and the answer nearly vanishes
    i1 = float(np.abs(S1(p_nodes)) ** 2 @ p_wts)
    i2 = float(np.abs(S2(p_nodes)) ** 2 @ p_wts)
    ref_g = math.sqrt(i1 * i2)
    g0 = complex(Gp(np.array([0.0]))[0])

    t_reg = tanhsinh(regular, -L, L, tol=tol, max_level=10, ref=ref_g)

    # PV int G'(q)/q dq via the odd part, plus the delta term i pi G'(0)
    def odd_part(q):
        return (Gp(q) - Gp(-q)) / q

    t_pv = tanhsinh(odd_part, 0.0, L, tol=tol, max_level=10,
                    ref=abs(g0) + ref_g)
    total = t_reg + t_pv + 1j * math.pi * g0
    return complex(-total / (8.0 * math.pi ** 2 * accel))
