"""Spacetime-diamond kinematics and mode calculus.

Conformal/diamond coordinate maps, closed-form (Kummer) and integral-form
Bogoliubov coefficients against the Minkowski modes, the diamond
temperature, shifted-diamond phases and the cross term between spatially
translated diamonds.

Conventions:
  * The zeroth diamond covers |V| < 2/a in the left-mover sector; the
    nth diamond is shifted by 4n/a in V and shares a boundary with its
    neighbours.  The observer lifetime is T = 4/a.
  * Bogoliubov coefficients follow the same KG convention as the wedge
    module: alpha = (g, u_k), beta = (g*, u_k) with (f, g) =
    2i int dV f* d_V g.  With that convention the closed forms read
        alpha^(0) =  (2/a) sqrt(Omega kappa)/sinh(pi Omega)
                     e^{2i kappa} M(1 + i Omega, 2, -4i kappa),
        beta^(0)  = +(2/a) sqrt(Omega kappa)/sinh(pi Omega)
                     e^{-2i kappa} M(1 + i Omega, 2, 4i kappa),
    (Omega = omega/a, kappa = k/a); the overall beta sign is fixed by
    the KG quadrature, which is the arbiter here.  Occupation numbers
    and overlap kernels are insensitive to it.
  * Shifts act as alpha^(n) = e^{-4i kappa n} alpha^(0) and
    beta^(n) = e^{+4i kappa n} beta^(0).
  * The cross term between the zeroth and nth diamond is evaluated in
    rapidity variables: with t = arctanh(s), sum/difference variables
    p = t + t', q = t - t', delta = Omega - Omega', mu = Omega + Omega',
        N_n = -(1 / 8 pi^2 a sqrt(Omega Omega'))
              iint dp dq e^{-i delta p} e^{-i mu q} / D^2,
        D = n (cosh p + cosh q) - sinh q,
    which is smooth and exponentially decaying for n >= 2.  For n = 1
    the inner integral is an exact Beta function,
        int dq e^{-i mu q} / (cosh p + e^{-q})^2
            = Gamma(i mu) Gamma(2 - i mu) (cosh p)^{i mu - 2},
    (Abel-regularised boundary value, the same -i0 prescription as the
    occupation-number derivation).  The hypergeometric closed form
    printed for this overlap is kept behind a variant flag; its argument
    is dimensionally suspect and it does not match the quadrature.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFrequencyError, DomainError
from .oscint import ModeFunction
from .quadrature import tanhsinh
from .rindler import (
    CLOSED_FORM,
    QUADRATURE,
    BogoliubovPair,
    planck_number,
)
from .specfun import cgamma, gauss_2f1, kummer_m, kummer_m_fast

_EDGE_TINY = 1.0e-300  # clamp for support-edge factors that round to 0
DEGENERACY_EPS = 1.0e-10


# ----------------------------------------------------------------------
# Domain types
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class DiamondSpec:
    """A spacetime diamond: localisation scale a, integer shift index n.

    The observer lifetime is 4/a; the nth diamond is shifted by 4n/a
    along V.
    """

    a: float
    n: int = 0

    def __post_init__(self):
        if self.a <= 0.0:
            raise DomainError("diamond needs localisation scale a > 0")
        if self.n != int(self.n):
            raise DomainError("diamond index n must be an integer")

    def support(self):
        c = 4.0 * self.n / self.a
        return (c - 2.0 / self.a, c + 2.0 / self.a)


@dataclass(frozen=True)
class DiamondCoords:
    """Diamond coordinates (eta, xi, zeta, rho) of an interior event."""

    eta: float
    xi: float
    zeta: float
    rho: float


# ----------------------------------------------------------------------
# Coordinate maps
# ----------------------------------------------------------------------

def _f_plus(t, x, y, z, a):
    r2 = x * x + y * y + z * z
    return 1.0 - (0.5 * a * t) ** 2 + 0.25 * a * a * r2 + a * x


def _f_minus(t, x, y, z, a):
    r2 = x * x + y * y + z * z
    return 1.0 - (0.5 * a * t) ** 2 + 0.25 * a * a * r2 - a * x


def minkowski_to_diamond(t, x, y, z, a):
    """Diamond coordinates of a Minkowski event inside the zeroth diamond."""
    if a <= 0.0:
        raise DomainError("localisation scale a must be positive")
    r = math.sqrt(x * x + y * y + z * z)
    if abs(t) + r >= 2.0 / a:
        raise DomainError(
            "event (|t| + r = %g) outside the zeroth diamond (< %g)"
            % (abs(t) + r, 2.0 / a)
        )
    fp = _f_plus(t, x, y, z, a)
    core = 1.0 + (0.5 * a * t) ** 2 - (0.5 * a * r) ** 2
    eta = math.atanh(a * t / core) / a
    xi = math.log(math.sqrt(core * core - (a * t) ** 2) / fp) / a
    zeta = 2.0 * y / fp
    rho = 2.0 * z / fp
    return DiamondCoords(eta, xi, zeta, rho)


def diamond_to_minkowski(coords, a):
    """Minkowski event of the given diamond coordinates.

    Closed-form inverse: with S = sech(a eta) e^{-a xi}, T = tanh(a eta),
    the combination A = 1 + (at/2)^2 - (ar/2)^2 satisfies a quadratic
    whose nontrivial root is
        A = 4 S / ((1 + S)^2 + (a^2/4)(zeta^2 + rho^2) S^2 - T^2),
    after which t = A T / a, x = (A (1 + S) - 2)/a, y = zeta A S / 2,
    z = rho A S / 2.
    """
    if a <= 0.0:
        raise DomainError("localisation scale a must be positive")
    s = math.exp(-a * coords.xi) / math.cosh(a * coords.eta)
    t_ = math.tanh(a * coords.eta)
    denom = (1.0 + s) ** 2 \
        + 0.25 * a * a * (coords.zeta ** 2 + coords.rho ** 2) * s * s \
        - t_ * t_
    if denom <= 0.0:
        raise DomainError("diamond coordinates outside the map image")
    big_a = 4.0 * s / denom
    t = big_a * t_ / a
    x = (big_a * (1.0 + s) - 2.0) / a
    y = 0.5 * coords.zeta * big_a * s
    z = 0.5 * coords.rho * big_a * s
    return (t, x, y, z)


def conformal_map(t, x, y, z, a):
    """The special conformal image mapping the diamond to a wedge.

    Returns primed Minkowski coordinates; the pulled-back metric is
    4 / f_+(primed)^2 times the flat one.
    """
    if a <= 0.0:
        raise DomainError("localisation scale a must be positive")
    fm = _f_minus(t, x, y, z, a)
    if abs(fm) < 1.0e-14:
        raise DomainError("conformal map singular locus: f_- = 0")
    r2 = x * x + y * y + z * z
    tp = 2.0 * t / fm
    xp = (2.0 / a) * (1.0 + (0.5 * a * t) ** 2 - 0.25 * a * a * r2) / fm
    yp = 2.0 * y / fm
    zp = 2.0 * z / fm
    return (tp, xp, yp, zp)


# ----------------------------------------------------------------------
# Diamond modes
# ----------------------------------------------------------------------

def diamond_mode(omega, spec):
    """Interior mode g^(n) of the nth diamond as a ModeFunction of V."""
    if omega <= 0.0:
        raise DomainError("mode frequency must be positive")
    a = spec.a
    big = omega / a
    shift = 4.0 * spec.n / a
    pref = 1.0 / math.sqrt(4.0 * math.pi * omega)

    def factors(V):
        w = np.asarray(V, dtype=float) - shift
        num = np.maximum(1.0 + 0.5 * a * w, _EDGE_TINY)
        den = np.maximum(1.0 - 0.5 * a * w, _EDGE_TINY)
        return num, den

    def ev(V):
        num, den = factors(V)
        return pref * np.exp(-1j * big * (np.log(num) - np.log(den)))

    def dev(V):
        num, den = factors(V)
        val = pref * np.exp(-1j * big * (np.log(num) - np.log(den)))
        return val * (-1j * big) * 0.5 * a * (1.0 / num + 1.0 / den)

    return ModeFunction(ev, spec.support(), "g(%d)" % spec.n, dev)


def exterior_mode(omega, a, branch=+1):
    """Exterior mode piece on V > 2/a (branch +1) or V < -2/a (branch -1)."""
    if omega <= 0.0 or a <= 0.0:
        raise DomainError("exterior mode needs omega > 0 and a > 0")
    big = omega / a
    pref = 1.0 / math.sqrt(4.0 * math.pi * omega)

    def ev(V):
        V = np.asarray(V, dtype=float)
        num = 0.5 * a * V + 1.0
        den = 0.5 * a * V - 1.0
        ratio = np.abs(num / den)
        return pref * np.exp(1j * big * np.log(ratio))

    def dev(V):
        V = np.asarray(V, dtype=float)
        num = 0.5 * a * V + 1.0
        den = 0.5 * a * V - 1.0
        return ev(V) * 1j * big * 0.5 * a * (1.0 / num - 1.0 / den)

    support = (2.0 / a, np.inf) if branch > 0 else (-np.inf, -2.0 / a)
    return ModeFunction(ev, support, "g(ex)", dev)


# ----------------------------------------------------------------------
# Bogoliubov coefficients
# ----------------------------------------------------------------------

def _closed_pair(omega, k, a):
    big = omega / a
    kap = k / a
    pref = (2.0 / a) * math.sqrt(big * kap) / math.sinh(math.pi * big)
    alpha = pref * np.exp(2j * kap) * kummer_m(1.0 + 1j * big, 2.0, -4j * kap)
    beta = pref * np.exp(-2j * kap) * kummer_m(1.0 + 1j * big, 2.0, 4j * kap)
    return alpha, beta


def _integral_pair(omega, k, a):
    big = omega / a
    kap = k / a

    def rep(c):
        def f(s):
            num = np.maximum(1.0 + s, _EDGE_TINY)
            den = np.maximum(1.0 - s, _EDGE_TINY)
            return np.exp(1j * big * (np.log(num) - np.log(den)) + 1j * c * s)

        return tanhsinh(f, -1.0, 1.0, tol=1.0e-13, max_level=12)

    pref = math.sqrt(kap / big) / (math.pi * a)
    return pref * rep(-2.0 * kap), pref * rep(2.0 * kap)


def diamond_alpha_beta(omega, k, spec, method=CLOSED_FORM):
    """(alpha^(n), beta^(n)) between the nth diamond mode and u_k.

    method QUADRATURE evaluates the (-1, 1) integral representation
    instead of the Kummer closed form (agreement ~1e-13); both carry
    the shift phases e^{-+ 4 i kappa n}.
    """
    if omega <= 0.0 or k <= 0.0:
        raise DomainError("diamond_alpha_beta needs omega > 0 and k > 0")
    a = spec.a
    if method == CLOSED_FORM:
        alpha, beta = _closed_pair(omega, k, a)
    elif method == QUADRATURE:
        alpha, beta = _integral_pair(omega, k, a)
    else:
        raise DomainError("unknown evaluation method %r" % (method,))
    phase = np.exp(4j * (k / a) * spec.n)
    return BogoliubovPair(
        alpha=complex(alpha / phase),
        beta=complex(beta * phase),
        omega=omega,
        k=k,
        provenance=method,
    )


def alpha_map(spec):
    """Vectorised (omega, k) -> alpha^(n), analytic in k, for oracles."""
    a, n = spec.a, spec.n

    def alpha(omega, k):
        k = np.asarray(k, dtype=complex)
        big = omega / a
        kap = k / a
        pref = (2.0 / a) * np.sqrt(big * kap) / math.sinh(math.pi * big)
        val = pref * np.exp(2j * kap * (1.0 - 2.0 * n)) \
            * kummer_m_fast(1.0 + 1j * big, 2.0, -4j * kap)
        return np.where(np.isfinite(val), val, 0.0)

    return alpha


def beta_map(spec):
    """Vectorised (omega, k) -> beta^(n), analytic in k, for oracles."""
    a, n = spec.a, spec.n

    def beta(omega, k):
        k = np.asarray(k, dtype=complex)
        big = omega / a
        kap = k / a
        pref = (2.0 / a) * np.sqrt(big * kap) / math.sinh(math.pi * big)
        val = pref * np.exp(-2j * kap * (1.0 - 2.0 * n)) \
            * kummer_m_fast(1.0 + 1j * big, 2.0, 4j * kap)
        return np.where(np.isfinite(val), val, 0.0)

    return beta


def diamond_planck_number(omega, a):
    """Occupation 1/(e^{2 pi omega / a} - 1) at T_D = a / 2 pi."""
    return planck_number(omega, a)


# ----------------------------------------------------------------------
# Cross term between translated diamonds
# ----------------------------------------------------------------------

def cross_term_integrand(omega, omega_prime, a, n):
    """conj(beta^(0)_{omega k}) beta^(n)_{omega' k} as a callable of k.

    The raw k-integrand of the cross term; exposed so damped-ladder
    validations can integrate it independently of the rapidity route.
    n may be non-integer here (the translation phase e^{4 i kappa n} is
    defined for any shift), which validation uses to keep the integrand
    free of zero-frequency components.
    """
    b0 = beta_map(DiamondSpec(a, 0))
    a_ = float(a)

    def f(k):
        k = np.asarray(k, dtype=complex)
        shift = np.exp(4j * (k / a_) * n)
        return np.conj(b0(omega, np.conj(k))) * b0(omega_prime, k) * shift

    return f


def _inner_u_integral(mu, n, cosh_p, w_max=28.0, n_w=4097):
    """int_0^inf du u^{i mu - 1} / D(u)^2 for n >= 2, vectorised in p.

    D(u) = n cosh p + ((n - 1)/u + (n + 1) u)/2; trapezoid in w = ln u
    (the integrand decays like e^{-2|w|} at both ends).
    """
    w = np.linspace(-w_max, w_max, n_w)
    h = w[1] - w[0]
    u = np.exp(w)
    base = 0.5 * ((n - 1.0) / u + (n + 1.0) * u)
    phase = np.exp(1j * mu * w)
    out = np.empty(cosh_p.shape, dtype=complex)
    for i in range(0, cosh_p.size, 256):
        d = n * cosh_p[i:i + 256, None] + base[None, :]
        vals = phase[None, :] / d ** 2
        out[i:i + 256] = h * (np.sum(vals, axis=1)
                              - 0.5 * (vals[:, 0] + vals[:, -1]))
    return out


def _cross_rapidity(big, bigp, a, nu, tol=1.0e-10):
    """The rapidity-variable overlap at (possibly non-integer) shift 4 nu / a.

    Non-integer nu is used by validation only: the minimum oscillation
    frequency of the k-integrand is 4 nu - 4, so nu > 1 keeps the
    independent damped Kummer-product integral well conditioned while
    this routine is continuous through nu = 1.
    """
    delta = big - bigp
    mu = big + bigp
    if nu == 1.0:
        inner_const = cgamma(1j * mu) * cgamma(2.0 - 1j * mu)

        def outer(p):
            c = np.cosh(p)
            return np.exp(-1j * delta * p) * inner_const \
                * np.exp((1j * mu - 2.0) * np.log(c))
    else:
        def outer(p):
            p = np.atleast_1d(np.asarray(p, dtype=float))
            inner = _inner_u_integral(mu, nu, np.cosh(p))
            return np.exp(-1j * delta * p) * inner

    # cosh^{-2} decay: |p| > 20 contributes below e^{-40}
    total = tanhsinh(outer, -20.0, 20.0, tol=tol, max_level=11)
    pref = -1.0 / (8.0 * math.pi ** 2 * a * math.sqrt(big * bigp))
    return complex(pref * total)


def cross_term_diamond(omega, omega_prime, a, n, variant="canonical",
                       tol=1.0e-10):
    """<0_M| b^(0)+_omega b^(n)_omega' |0_M> for translated diamonds.

    canonical: rapidity-variable quadrature of the overlap (exact Beta
    inner integral at n = 1, smooth double-exponential quadrature for
    n >= 2).  "printed": the transcribed hypergeometric closed form,
    kept for the record; it does not reproduce the quadrature.
    """
    if omega <= 0.0 or omega_prime <= 0.0 or a <= 0.0:
        raise DomainError("cross term needs positive frequencies and a > 0")
    if n < 1 or n != int(n):
        raise DomainError("diamond shift index n must be a positive integer")
    big = omega / a
    bigp = omega_prime / a
    delta = big - bigp
    if abs(delta) < DEGENERACY_EPS:
        raise DegenerateFrequencyError(
            "cross term evaluated at degenerate frequencies "
            "Omega = Omega' = %g" % big
        )
    if variant == "canonical":
        return _cross_rapidity(big, bigp, a, float(n), tol=tol)

    if variant == "printed":
        alpha = -2j * (1.0 + 2.0 * n) / a
        lam = (4.0 / a ** 3) * math.sqrt(big * bigp) \
            * np.exp(-1j * (big - bigp) * np.log(alpha)) \
            / (math.sinh(math.pi * big) * math.sinh(math.pi * bigp))
        z = -1.0 / ((alpha - 1.0) * (-alpha + 1.0))
        f21 = gauss_2f1(1.0 - 1j * big, 1.0 + 1j * bigp, 2.0, z)
        val = lam * (alpha - 1.0) ** (1j * big - 1.0) \
            * (alpha + 1.0) ** (-1.0 - 1j * bigp) * f21
        return complex(val)

    raise DomainError("unknown cross-term variant %r" % (variant,))
