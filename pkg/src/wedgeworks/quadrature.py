"""Tanh-sinh (double-exponential) quadrature.

All oscillatory-integral oracles in this library run on the rules below.
The tanh-sinh map pushes quadrature nodes doubly-exponentially fast into
interval endpoints, so integrable endpoint singularities (inverse square
roots, k^{-1+imu} log-oscillations after substitution) are handled without
special-casing.  Levels halve the step; convergence is declared when two
successive refinements agree.

Rules provided:
  tanhsinh(f, a, b)     finite interval, endpoint-singularity tolerant
  exp_sinh(f)           (0, inf) for integrands decaying at both ends,
                        nodes geometric in x (the log substitution)
  real_line(f)          (-inf, inf) for integrands with fast two-sided decay

Integrands must be vectorised over numpy arrays and may be complex.
"""

import numpy as np

from .errors import ConvergenceError

_HALF_PI = np.pi / 2.0


def _levels(node_fn, weight_fn, f, tol, max_level, t_max, ref=0.0):
    """Shared trapezoid-with-halving driver.

    node_fn/weight_fn map abscissa t -> (x, dx/dt).  Returns (value, err).
    ref is an external magnitude scale: convergence is declared relative
    to max(|value|, ref), so near-cancelling integrals with a known
    problem scale do not chase unattainable relative accuracy.
    """
    h = 1.0
    t = np.arange(-t_max, t_max + 0.5 * h, h)
    x = node_fn(t)
    w = weight_fn(t)
    total = h * np.sum(f(x) * w)
    prev = total
    err = np.inf
    for level in range(1, max_level + 1):
        h *= 0.5
        t_new = np.arange(-t_max + h, t_max, 2.0 * h)
        x = node_fn(t_new)
        w = weight_fn(t_new)
        total = 0.5 * prev + h * np.sum(f(x) * w)
        err = abs(total - prev)
        scale = max(abs(total), ref, 1.0e-300)
        if err <= tol * scale and level >= 3:
            return total, err
        prev = total
    raise ConvergenceError(
        "tanh-sinh quadrature did not converge to tol=%.3g (last delta %.3g)"
        % (tol, err),
        estimate=total,
        residual=err,
    )


def tanhsinh(f, a, b, tol=1.0e-12, max_level=11, t_max=4.0, ref=0.0):
    """Integrate f over the finite interval (a, b).

    Nodes are built as offsets from the nearer endpoint (1 -+ tanh w
    rewritten as 2/(e^{+-2w} + 1)) so they never round onto a or b;
    integrable endpoint singularities evaluate at finite abscissae.
    """
    mid = 0.5 * (b + a)
    half = 0.5 * (b - a)

    def node(t):
        w = _HALF_PI * np.sinh(t)
        lo = a + half * 2.0 / (np.exp(-2.0 * w) + 1.0)
        hi = b - half * 2.0 / (np.exp(2.0 * w) + 1.0)
        return np.where(w < 0.0, lo, hi)

    def weight(t):
        # d x / d t; cosh in the denominator decays the weight
        # double-exponentially toward the endpoints.
        return half * _HALF_PI * np.cosh(t) / np.cosh(_HALF_PI * np.sinh(t)) ** 2

    val, err = _levels(node, weight, f, tol, max_level, t_max, ref=ref)
    return val


def tanhsinh_singular(f, a, b, tol=1.0e-12, max_level=11, t_max=4.0):
    """Like tanhsinh, but f receives (x, da, db) with da = x - a, db = b - x.

    The endpoint distances are computed as 2/(e^{2w} + 1) rather than
    1 - tanh(w), so integrands singular like da^{-1/2} or db^{-1/2} keep
    full relative accuracy all the way into the endpoint region.
    """
    mid = 0.5 * (b + a)
    half = 0.5 * (b - a)

    def g(t):
        w = _HALF_PI * np.sinh(t)
        da = half * 2.0 / (np.exp(-2.0 * w) + 1.0)  # x - a, small for t -> -inf
        db = half * 2.0 / (np.exp(2.0 * w) + 1.0)   # b - x, small for t -> +inf
        x = mid + half * np.tanh(w)
        return f(x, da, db)

    def weight(t):
        return half * _HALF_PI * np.cosh(t) / np.cosh(_HALF_PI * np.sinh(t)) ** 2

    val, err = _levels(lambda t: t, weight, g, tol, max_level, t_max)
    return val


def exp_sinh(f, tol=1.0e-12, max_level=11, t_max=4.5, x0=1.0, ref=0.0):
    """Integrate f over (0, inf); nodes are geometric about x0.

    Suitable when f decays (or is damped) for x -> inf and is integrable
    at x -> 0, possibly with power-law oscillation in log x.
    """

    def node(t):
        return x0 * np.exp(_HALF_PI * np.sinh(t))

    def weight(t):
        return node(t) * _HALF_PI * np.cosh(t)

    val, err = _levels(node, weight, f, tol, max_level, t_max, ref=ref)
    return val


def real_line(f, tol=1.0e-12, max_level=11, t_max=4.0, scale=1.0):
    """Integrate f over the whole real line; f must decay at both ends."""

    def node(t):
        return scale * np.sinh(_HALF_PI * np.sinh(t))

    def weight(t):
        return scale * _HALF_PI * np.cosh(t) * np.cosh(_HALF_PI * np.sinh(t))

    val, err = _levels(node, weight, f, tol, max_level, t_max)
    return val


def real_line_nodes(level=8, t_max=4.0, scale=1.0):
    """Fixed (nodes, weights) for the real-line rule at a given level.

    For vectorised inner integrals where the caller wants a deterministic
    grid instead of the adaptive driver.  sum(f(x) * w) approximates
    int_-inf^inf f.
    """
    h = 2.0 ** (-level)
    t = np.arange(-t_max, t_max + 0.5 * h, h)
    x = scale * np.sinh(_HALF_PI * np.sinh(t))
    w = h * scale * _HALF_PI * np.cosh(t) * np.cosh(_HALF_PI * np.sinh(t))
    return x, w


def trapz_uniform(f, a, b, n):
    """Plain uniform trapezoid; used where the caller controls resolution."""
    x = np.linspace(a, b, n)
    y = f(x)
    return np.trapezoid(y, x)
