"""Diamond kinematics, Kummer-form Bogoliubov coefficients, cross terms."""

import math

import numpy as np
import pytest

from wedgeworks.diamond import (
    DiamondCoords,
    DiamondSpec,
    beta_map,
    conformal_map,
    cross_term_diamond,
    cross_term_integrand,
    diamond_alpha_beta,
    diamond_mode,
    diamond_planck_number,
    diamond_to_minkowski,
    exterior_mode,
    minkowski_to_diamond,
)
from wedgeworks.errors import DegenerateFrequencyError, DomainError
from wedgeworks.oscint import (
    ModeFunction,
    Wavepacket,
    _neville_to_zero,
    _packet_average,
    diamond_double_integral,
    kg_inner_product,
)
from wedgeworks.quadrature import exp_sinh
from wedgeworks.rindler import QUADRATURE, minkowski_mode, planck_number
from wedgeworks.specfun import cgamma


def conj_mode(m):
    return ModeFunction(lambda V: np.conj(m.evaluator(V)), m.support, "c",
                        lambda V: np.conj(m.d_evaluator(V)))


# ---------------------------------------------------------- coordinates

def test_center_maps_to_zero():
    c = minkowski_to_diamond(0.0, 0.0, 0.0, 0.0, 1.0)
    assert (c.eta, c.xi, c.zeta, c.rho) == (0.0, 0.0, 0.0, 0.0)


def test_static_worldline_time():
    a, eta = 1.0, 0.7
    t = (2.0 / a) * math.tanh(0.5 * a * eta)
    c = minkowski_to_diamond(t, 0.0, 0.0, 0.0, a)
    assert abs(c.eta - eta) < 1e-12
    assert abs(c.xi) < 1e-12 and c.zeta == 0.0 and c.rho == 0.0


def test_round_trip_random_interior():
    rng = np.random.default_rng(7)
    a = 1.0
    worst = 0.0
    for _ in range(1000):
        # random point with |t| + r < 0.95 * 2/a
        u = rng.uniform(0.05, 0.95)
        t_frac = rng.uniform(-1.0, 1.0)
        t = u * t_frac * 2.0 / a
        r = u * (1.0 - abs(t_frac)) * 2.0 / a
        d = rng.normal(size=3)
        d *= r / np.linalg.norm(d)
        c = minkowski_to_diamond(t, d[0], d[1], d[2], a)
        back = diamond_to_minkowski(c, a)
        worst = max(worst, np.max(np.abs(np.array(back) - [t, *d])))
    assert worst < 1e-12


def test_outside_diamond_raises():
    with pytest.raises(DomainError):
        minkowski_to_diamond(1.5, 0.6, 0.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        minkowski_to_diamond(0.0, 0.0, 0.0, 0.0, -1.0)


def test_conformal_origin():
    assert conformal_map(0.0, 0.0, 0.0, 0.0, 1.0) == (0.0, 2.0, 0.0, 0.0)


def test_conformal_factor_positive_interior():
    rng = np.random.default_rng(3)
    a = 1.0
    for _ in range(100):
        u = rng.uniform(0.05, 0.9)
        t_frac = rng.uniform(-1.0, 1.0)
        t = u * t_frac * 2.0 / a
        r = u * (1.0 - abs(t_frac)) * 2.0 / a
        d = rng.normal(size=3)
        d *= r / np.linalg.norm(d)
        tp, xp, yp, zp = conformal_map(t, d[0], d[1], d[2], a)
        rp = math.sqrt(xp * xp + yp * yp + zp * zp)
        fp = 1.0 - (0.5 * a * tp) ** 2 + 0.25 * a * a * rp * rp + a * xp
        assert fp > 0.0


def test_conformal_singular_locus():
    # f_-(0, x) = 1 + (ax/2)^2 - ax vanishes at x = 2/a
    with pytest.raises(DomainError):
        conformal_map(0.0, 2.0, 0.0, 0.0, 1.0)


def test_metric_conformality_finite_difference():
    a = 1.0
    pt = np.array([0.3, 0.1, 0.05, -0.07])
    h = 1e-6
    jac = np.empty((4, 4))
    for j in range(4):
        dp = pt.copy(); dm = pt.copy()
        dp[j] += h; dm[j] -= h
        fp = np.array(conformal_map(*dp, a))
        fm = np.array(conformal_map(*dm, a))
        jac[:, j] = (fp - fm) / (2.0 * h)
    eta = np.diag([-1.0, 1.0, 1.0, 1.0])
    g = jac.T @ eta @ jac
    tp, xp, yp, zp = conformal_map(*pt, a)
    rp2 = xp * xp + yp * yp + zp * zp
    fplus = 1.0 - (0.5 * a * tp) ** 2 + 0.25 * a * a * rp2 + a * xp
    expected = (fplus ** 2 / 4.0) * eta
    assert np.max(np.abs(g - expected)) < 1e-6 * np.max(np.abs(expected))


# ----------------------------------------------------------- Bogoliubov

def test_closed_vs_integral_form():
    for (om, k) in [(1.0, 0.7), (0.4, 1.3), (2.0, 0.3)]:
        pc = diamond_alpha_beta(om, k, DiamondSpec(1.0))
        pq = diamond_alpha_beta(om, k, DiamondSpec(1.0), method=QUADRATURE)
        assert abs(pc.alpha - pq.alpha) < 1e-8 * abs(pc.alpha)
        assert abs(pc.beta - pq.beta) < 1e-8 * abs(pc.beta)


@pytest.mark.parametrize("om,k", [(1.0, 0.7), (0.4, 1.3)])
def test_closed_form_matches_kg_oracle(om, k):
    spec = DiamondSpec(1.0)
    g = diamond_mode(om, spec)
    u = minkowski_mode(k)
    pair = diamond_alpha_beta(om, k, spec)
    alpha = kg_inner_product(g, u)
    beta = kg_inner_product(conj_mode(g), u)
    assert abs(alpha - pair.alpha) / abs(pair.alpha) < 1e-8
    assert abs(beta - pair.beta) / abs(pair.beta) < 1e-8


def test_shift_phase_exact():
    om, k, a = 1.0, 0.9, 1.0
    p0 = diamond_alpha_beta(om, k, DiamondSpec(a, 0))
    p1 = diamond_alpha_beta(om, k, DiamondSpec(a, 1))
    ph = np.exp(4j * k / a)
    assert abs(p1.alpha - p0.alpha / ph) < 1e-12 * abs(p0.alpha)
    assert abs(p1.beta - p0.beta * ph) < 1e-12 * abs(p0.beta)


def test_beta_small_k_scaling():
    # beta ~ sqrt(kappa) from the prefactor as kappa -> 0
    b1 = diamond_alpha_beta(1.0, 1e-4, DiamondSpec(1.0)).beta
    b2 = diamond_alpha_beta(1.0, 1e-6, DiamondSpec(1.0)).beta
    # O(kappa) Kummer correction leaves a ~2e-3 residue at kappa = 1e-4
    assert abs(abs(b1) / abs(b2) - 10.0) < 5e-3


def test_occupation_shift_invariant():
    # |beta^(n)| equals |beta^(0)| pointwise: diagonal occupation is
    # n-independent
    k = np.linspace(0.1, 5.0, 40)
    b0 = beta_map(DiamondSpec(1.0, 0))(1.0, k)
    b3 = beta_map(DiamondSpec(1.0, 3))(1.0, k)
    assert np.max(np.abs(np.abs(b3) - np.abs(b0))) < 1e-14 * np.max(np.abs(b0))


def test_domain_errors():
    with pytest.raises(DomainError):
        diamond_alpha_beta(-1.0, 1.0, DiamondSpec(1.0))
    with pytest.raises(DomainError):
        diamond_alpha_beta(1.0, 0.0, DiamondSpec(1.0))
    with pytest.raises(DomainError):
        DiamondSpec(0.0)


# ------------------------------------------------------------- spectrum

def test_planck_number_matches_wedge():
    for om, a in [(0.5, 1.0), (1.0, 2.0), (2.0, 1.0)]:
        assert diamond_planck_number(om, a) == planck_number(om, a)
    assert abs(diamond_planck_number(2.0, 1.0)
               - 1.0 / math.expm1(4.0 * math.pi)) < 1e-20


def test_double_integral_oracle_reproduces_planck():
    # the single-diamond diagonal: also the n -> 0 limit of the shifted
    # overlap (overlapping diamonds reduce to one)
    pack = Wavepacket(1.0, 0.1)
    val = diamond_double_integral(pack, pack, accel=1.0)
    smeared = diamond_planck_number(1.0, 1.0) * math.exp(
        2.0 * math.pi ** 2 * 0.1 ** 2)
    assert abs(val.real / smeared - 1.0) < 0.02
    assert abs(val.imag) < 1e-8


def test_interior_exterior_orthogonal():
    g = diamond_mode(1.0, DiamondSpec(1.0))
    for branch in (+1, -1):
        ex = exterior_mode(1.3, 1.0, branch=branch)
        assert kg_inner_product(g, ex) == 0.0


# ----------------------------------------------------------- cross term

def damped_kummer(om, omp, a, n, eps0=1.0, levels=6):
    """Independent route: eps-damped Kummer-product k-integral + Neville."""
    f = cross_term_integrand(om, omp, a, n)
    eps_list = [eps0 / 2 ** i for i in range(levels)]
    vals = [exp_sinh(lambda k: f(k) * np.exp(-eps * k),
                     tol=1e-6, max_level=13, x0=1.0, ref=1e-3)
            for eps in eps_list]
    return _neville_to_zero(eps_list, vals)


@pytest.mark.parametrize("n", [2, 3])
def test_cross_term_matches_damped_kummer(n):
    v = cross_term_diamond(1.0, 1.4, 1.0, n)
    lim, resid = damped_kummer(1.0, 1.4, 1.0, n)
    assert abs(lim - v) / abs(v) < 1e-6


def test_cross_term_noninteger_shift_consistency():
    # the rapidity route holds for any translation 4 nu / a; at nu = 1.5
    # the k-integrand has no zero-frequency component, so the damped
    # ladder is a clean independent check between the integer points
    from wedgeworks.diamond import _cross_rapidity
    v = _cross_rapidity(1.0, 1.4, 1.0, 1.5)
    lim, resid = damped_kummer(1.0, 1.4, 1.0, 1.5)
    assert abs(lim - v) / abs(v) < 1e-5


def test_cross_term_n1_closed_form():
    # adjacent diamonds: the inner rapidity integral is an exact Beta
    # function and the whole overlap collapses to a Gamma product
    for (om, omp, a) in [(1.0, 1.4, 1.0), (0.7, 2.1, 1.0), (1.0, 1.4, 2.0)]:
        big, bigp = om / a, omp / a
        mu = big + bigp
        closed = -(1.0 / (8.0 * math.pi ** 2 * a * math.sqrt(big * bigp))) \
            * 2.0 ** (1 - 1j * mu) * cgamma(1j * mu) \
            * cgamma(1 - 1j * big) * cgamma(1 - 1j * bigp)
        v = cross_term_diamond(om, omp, a, 1)
        assert abs(closed - v) / abs(v) < 1e-12


@pytest.mark.slow
def test_cross_term_n1_matches_smeared_overlap():
    # boundary-sharing diamonds: the sharp-frequency overlap is only
    # defined through the -i0 (Abel) prescription; the packet-smeared
    # k-integral converges absolutely and must agree in the narrow limit
    om, omp, a, n = 1.0, 1.4, 1.0, 1
    b = beta_map(DiamondSpec(a, 0))
    p1 = Wavepacket(om, 0.05 * om)
    p2 = Wavepacket(omp, 0.05 * omp)
    B1c = _packet_average(b, p1, conjugate=True)
    B2 = _packet_average(b, p2, conjugate=False)
    norm = np.sum(p1.gh_nodes()[1]) * np.sum(p2.gh_nodes()[1])
    eps_list = [1.0 / 2 ** i for i in range(6)]
    vals = [exp_sinh(
        lambda k: B1c(k) * B2(k) * np.exp((4j * n / a - eps) * k),
        tol=2e-6, max_level=11, x0=1.0, ref=1e-2) for eps in eps_list]
    lim, resid = _neville_to_zero(eps_list, vals)
    v = cross_term_diamond(om, omp, a, n)
    assert abs(lim / norm - v) / abs(v) < 0.02


def test_cross_term_decay_in_n():
    vals = [abs(cross_term_diamond(0.5, 0.8, 1.0, n))
            for n in (1, 2, 5, 10, 50)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-3 * vals[0]


def test_cross_term_swap_symmetric():
    # the overlap is symmetric under frequency swap at fixed n (the
    # inner kernel is even in p); the hermitian partner lives at the
    # opposite shift, not at the same n
    v1 = cross_term_diamond(1.0, 1.4, 1.0, 2)
    v2 = cross_term_diamond(1.4, 1.0, 1.0, 2)
    assert abs(v1 - v2) < 1e-10 * abs(v1)


def test_cross_term_errors():
    with pytest.raises(DegenerateFrequencyError):
        cross_term_diamond(1.0, 1.0, 1.0, 1)
    with pytest.raises(DomainError):
        cross_term_diamond(1.0, 1.4, 1.0, 0)
    with pytest.raises(DomainError):
        cross_term_diamond(-1.0, 1.4, 1.0, 1)
    with pytest.raises(DomainError):
        cross_term_diamond(1.0, 1.4, 1.0, 1, variant="bogus")


def test_cross_term_printed_variant_mismatch():
    # transcription kept for the record: at (1, 1.4, a=1, n=1) it sits a
    # factor ~2.9 in modulus off the quadrature value
    v = cross_term_diamond(1.0, 1.4, 1.0, 1)
    p = cross_term_diamond(1.0, 1.4, 1.0, 1, variant="printed")
    ratio = abs(p) / abs(v)
    assert ratio > 2.0 or ratio < 0.5
