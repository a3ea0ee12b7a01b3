"""Oracle layer: KG inner products, smeared overlaps, the double integral.

The closed-form Bogoliubov coefficients used as cross-checks here are
written out inline so the oracle layer is exercised without importing the
higher-level modules it is meant to validate.
"""

import math

import numpy as np
import pytest

from wedgeworks.errors import ConvergenceError, DomainError
from wedgeworks.oscint import (
    ModeFunction,
    RegulatorParams,
    Wavepacket,
    beta_overlap_integral,
    diamond_double_integral,
    iepsilon_integral,
    kg_inner_product,
)
from wedgeworks.quadrature import tanhsinh
from wedgeworks.specfun import cgamma


# calibrated ladder: base eps of order the mode frequency, 8 halvings,
# polynomial extrapolation to eps = 0
REG = RegulatorParams(epsilon=0.5, extrapolation_levels=8)


def n_planck(omega, a=1.0):
    return 1.0 / math.expm1(2.0 * math.pi * omega / a)


def right_mode(omega, a=1.0):
    pre = 1.0 / math.sqrt(4.0 * math.pi * omega)

    def f(V):
        return pre * (a * V) ** (-1j * omega / a)

    def df(V):
        return pre * (-1j * omega / a) * a * (a * V) ** (-1j * omega / a - 1.0)

    return ModeFunction(f, (0.0, np.inf), "right", df)


def right_mode_conj(omega, a=1.0):
    base = right_mode(omega, a)
    return ModeFunction(
        lambda V: np.conj(base.evaluator(V)),
        (0.0, np.inf),
        "right*",
        lambda V: np.conj(base.d_evaluator(V)),
    )


def left_mode(omega, a=1.0):
    pre = 1.0 / math.sqrt(4.0 * math.pi * omega)

    def f(V):
        return pre * (-a * V) ** (1j * omega / a)

    def df(V):
        return pre * (1j * omega / a) * (-a) * (-a * V) ** (1j * omega / a - 1.0)

    return ModeFunction(f, (-np.inf, 0.0), "left", df)


def plane_wave(k):
    pre = 1.0 / math.sqrt(4.0 * math.pi * k)
    return ModeFunction(
        lambda V: pre * np.exp(-1j * k * V),
        (-np.inf, np.inf),
        "plane",
        lambda V: pre * (-1j * k) * np.exp(-1j * k * V),
    )


def beta_right(a=1.0):
    def beta(omega, k):
        k = np.asarray(k, dtype=complex)
        return (
            -1j * np.exp(-np.pi * omega / (2.0 * a))
            / (2.0 * np.pi * np.sqrt(k * omega))
            * cgamma(1.0 - 1j * omega / a) * (k / a) ** (1j * omega / a)
        )

    return beta


def beta_left(a=1.0):
    def beta(omega, k):
        k = np.asarray(k, dtype=complex)
        return (
            1j * np.exp(-np.pi * omega / (2.0 * a))
            / (2.0 * np.pi * np.sqrt(k * omega))
            * cgamma(1.0 + 1j * omega / a) * (k / a) ** (-1j * omega / a)
        )

    return beta


# ------------------------------------------------------------- packets

def test_wavepacket_width_guard():
    with pytest.raises(DomainError):
        Wavepacket(1.0, 0.3)
    with pytest.raises(DomainError):
        Wavepacket(-1.0, 0.1)


def test_wavepacket_positive_frequency_truncation():
    pk = Wavepacket(1.0, 0.1)
    assert pk.amplitude(-0.5) == 0.0
    assert pk.amplitude(0.5) > 0.0
    assert pk.norm_sq() == 1.0


def test_wavepacket_nodes_integrate_moments():
    # the node rule must reproduce smooth moments and the w^{-1/2}
    # edge-weighted moment of the truncated Gaussian profile
    pk = Wavepacket(2.0, 0.35)
    om, c = pk.gh_nodes()
    import mpmath as mp
    P = lambda w: (2 * mp.pi * mp.mpf("0.35") ** 2) ** mp.mpf("-0.25") * mp.e ** (
        -((w - 2) ** 2) / (4 * mp.mpf("0.35") ** 2))
    for f_np, f_mp in [
        (lambda w: w, lambda w: w),
        (lambda w: 1.0 / np.sqrt(w), lambda w: 1 / mp.sqrt(w)),
        (lambda w: np.exp(1j * 3.0 * w), lambda w: mp.e ** (1j * 3 * w)),
    ]:
        got = np.sum(c * f_np(om))
        want = complex(mp.quad(lambda w: P(w) * f_mp(w), [0, 1, 2, 2 + 12 * 0.35]))
        assert abs(got - want) / abs(want) < 1e-10


# ------------------------------------------------------- KG inner product

def test_kg_disjoint_supports_exact_zero():
    val = kg_inner_product(right_mode(1.0), left_mode(1.3), REG)
    assert val == 0.0


def test_kg_plane_wave_box_growth():
    # same-k product restricted to a box of half-width L grows as L/pi:
    # the delta-normalized continuum limit in finite-volume disguise
    k = 1.0
    for L in (10.0, 40.0):
        pre = 1.0 / math.sqrt(4.0 * math.pi * k)
        box = ModeFunction(
            lambda V: pre * np.exp(-1j * k * V), (-L, L), "box",
            lambda V: pre * (-1j * k) * np.exp(-1j * k * V),
        )
        val = kg_inner_product(box, box, REG)
        assert abs(val - L / math.pi) < 1e-9 * L


def test_kg_matches_closed_alpha():
    a, om, k = 1.0, 1.0, 1.0
    val = kg_inner_product(right_mode(om, a), plane_wave(k), REG)
    want = (
        -1j * math.exp(math.pi * om / (2.0 * a))
        * cgamma(1.0 + 1j * om / a) * (k / a) ** (-1j * om / a)
        / (2.0 * math.pi * math.sqrt(k * om))
    )
    assert abs(val - want) / abs(want) < 1e-8


def test_kg_matches_closed_beta():
    a, om, k = 1.0, 1.0, 1.0
    val = kg_inner_product(right_mode_conj(om, a), plane_wave(k), REG)
    want = (
        -1j * math.exp(-math.pi * om / (2.0 * a))
        * cgamma(1.0 - 1j * om / a) * (k / a) ** (1j * om / a)
        / (2.0 * math.pi * math.sqrt(k * om))
    )
    assert abs(val - want) / abs(want) < 1e-8


def test_kg_off_desk_point():
    # a second (omega, k, a) combination so the match is not a one-point fluke
    a, om, k = 2.0, 1.7, 0.6
    reg = RegulatorParams(epsilon=0.5 * k, extrapolation_levels=8)
    val = kg_inner_product(right_mode(om, a), plane_wave(k), reg)
    want = (
        -1j * math.exp(math.pi * om / (2.0 * a))
        * cgamma(1.0 + 1j * om / a) * (k / a) ** (-1j * om / a)
        / (2.0 * math.pi * math.sqrt(k * om))
    )
    assert abs(val - want) / abs(want) < 1e-8


def test_kg_antilinear_first_slot():
    rng = np.random.default_rng(7)
    f = right_mode(1.0)
    g = plane_wave(1.0)
    base = kg_inner_product(f, g, REG)
    for _ in range(3):
        c = complex(rng.normal(), rng.normal())
        cf = ModeFunction(
            lambda V, c=c: c * f.evaluator(V), f.support, "cf",
            lambda V, c=c: c * f.d_evaluator(V),
        )
        val = kg_inner_product(cf, g, REG)
        assert abs(val - np.conj(c) * base) < 1e-9 * abs(c * base)


def test_kg_regulator_invariance():
    # double the base eps and add a level (same deepest rung, different
    # ladder): the extrapolated answer moves < 1e-8 relative.  The
    # deepest rung is kept >~ 2e-3 because the damped-tail quadrature
    # cost grows like 1/eps.
    f, g = right_mode(1.0), plane_wave(1.0)
    v1 = kg_inner_product(f, g, RegulatorParams(epsilon=0.5, extrapolation_levels=8))
    v2 = kg_inner_product(f, g, RegulatorParams(epsilon=1.0, extrapolation_levels=9))
    assert abs(v1 - v2) / abs(v2) < 1e-8


def test_kg_nonconvergence_reports_estimate():
    f, g = right_mode(1.0), plane_wave(1.0)
    with pytest.raises(ConvergenceError) as err:
        kg_inner_product(
            f, g, RegulatorParams(epsilon=0.5, extrapolation_levels=3),
            tol=1e-12,
        )
    assert err.value.estimate is not None
    assert abs(err.value.estimate) > 0.0


def test_kg_derivative_fallback():
    # without an analytic derivative the Richardson difference is used
    pre = 1.0 / math.sqrt(4.0 * math.pi)
    g_fd = ModeFunction(lambda V: pre * np.exp(-1j * V), (-np.inf, np.inf), "fd")
    f = right_mode(1.0)
    v_fd = kg_inner_product(f, g_fd, REG)
    v_an = kg_inner_product(f, plane_wave(1.0), REG)
    assert abs(v_fd - v_an) / abs(v_an) < 1e-7


# --------------------------------------------------- smeared beta overlap

def test_overlap_diagonal_is_smeared_planck():
    pack = Wavepacket(1.0, 0.1)
    val = beta_overlap_integral(beta_right(), beta_right(), pack, pack, REG)
    # sharp comparison: the same packet rule applied to the Planck factor
    om, c = pack.gh_nodes()
    smeared = np.sum(c * pack.amplitude(om) / np.expm1(2.0 * np.pi * om))
    assert abs(val - smeared) / smeared < 1e-10
    # quasi-monochromatic statement: Planck at the carrier, corrected for
    # the convexity of the Boltzmann factor under Gaussian smearing
    # (E[e^{-2 pi w}] = e^{-2 pi w0} e^{2 pi^2 s^2}, a 22% effect at s=0.1)
    corrected = n_planck(1.0) * math.exp(2.0 * math.pi ** 2 * 0.1 ** 2)
    assert abs(val.real - corrected) / corrected < 1e-2
    assert abs(val.imag) < 1e-10 * val.real


def test_overlap_far_shift_suppressed():
    # stationary-phase decay of the shifted cross overlap; the packet is
    # wide enough for fast ln^2(s) decay yet keeps the omega = 0 edge of
    # the truncated profile negligible
    pack = Wavepacket(3.5, 0.35)
    b = beta_right()
    near = beta_overlap_integral(b, b, pack, pack, REG, shift_s=1.0)
    far = beta_overlap_integral(b, b, pack, pack, REG, shift_s=1.0e3)
    assert abs(far) < 1.0e-4 * abs(near)


def test_overlap_shift_matches_rotated_contour():
    # independent check of the oscillatory path: rotate k onto the
    # positive imaginary axis, where the phase becomes pure decay
    pack = Wavepacket(3.5, 0.35)
    b = beta_right()
    om, c = pack.gh_nodes()

    def B1c(k):
        kc = np.conj(np.asarray(k, dtype=complex))
        return sum(c_i * np.conj(b(w_i, kc)) for w_i, c_i in zip(om, c))

    def B2(k):
        k = np.asarray(k, dtype=complex)
        return sum(c_i * b(w_i, k) for w_i, c_i in zip(om, c))

    L = 8.0 * (1.0 / (2.0 * pack.width)) + 3.0
    for s in (5.0, 1.0e3):
        def g(z, s=s):
            v = np.exp(z)
            return v * B1c(1j * v) * B2(1j * v) * np.exp(-s * v)

        want = 1j * tanhsinh(g, -L, min(L, math.log(40.0 / s)),
                             tol=1e-10, max_level=13)
        got = beta_overlap_integral(b, b, pack, pack, REG, shift_s=s)
        assert abs(got - want) / abs(want) < 1e-7


def test_overlap_hermitian_under_swap():
    p1 = Wavepacket(1.0, 0.1)
    p2 = Wavepacket(1.3, 0.12)
    b = beta_right()
    ab = beta_overlap_integral(b, b, p1, p2, REG, shift_s=2.0)
    ba = beta_overlap_integral(b, b, p2, p1, REG, shift_s=-2.0)
    assert abs(ab - np.conj(ba)) < 1e-12 * max(abs(ab), 1.0)


def test_overlap_left_right_cross_vanishes():
    # opposite wedges sharing the origin: the integrand phase never goes
    # stationary, so the cross overlap collapses
    pack1 = Wavepacket(1.0, 0.1)
    pack2 = Wavepacket(1.3, 0.1)
    cross = beta_overlap_integral(beta_right(), beta_left(), pack1, pack2, REG)
    diag = beta_overlap_integral(beta_right(), beta_right(), pack1, pack1, REG)
    assert abs(cross) < 1e-6 * abs(diag)


def test_overlap_acceleration_scaling():
    # at a = 2 the diagonal reproduces the smeared Planck factor at T ~ a
    pack = Wavepacket(1.0, 0.1)
    val = beta_overlap_integral(beta_right(2.0), beta_right(2.0), pack, pack,
                                REG, accel=2.0)
    om, c = pack.gh_nodes()
    smeared = np.sum(c * pack.amplitude(om) / np.expm1(2.0 * np.pi * om / 2.0))
    assert abs(val - smeared) / smeared < 1e-10


# ------------------------------------------------------------- iepsilon

def test_iepsilon_agrees_with_closed_form():
    reg = RegulatorParams(epsilon=0.01)
    out = iepsilon_integral([1.0, 0.0, -2.0], reg)
    for z, (numeric, analytic) in out.items():
        assert abs(numeric - analytic) / abs(analytic) < 1e-6
    assert abs(out[0.0][1] - 1.0 / 0.01 ** 2) / (1.0 / 0.01 ** 2) < 1e-12


# ----------------------------------------------- diamond double integral

def test_diamond_double_integral_diagonal_planck():
    pack = Wavepacket(1.0, 0.1)
    val = diamond_double_integral(pack, pack, 1.0, RegulatorParams())
    om, c = pack.gh_nodes()
    smeared = np.sum(c * pack.amplitude(om) / np.expm1(2.0 * np.pi * om))
    assert abs(val - smeared) / smeared < 2e-2
    assert abs(val.imag) < 1e-6 * abs(val.real)


def test_diamond_double_integral_off_diagonal():
    p1 = Wavepacket(1.0, 0.1)
    p2 = Wavepacket(3.0, 0.1)
    off = diamond_double_integral(p1, p2, 1.0, RegulatorParams())
    diag = diamond_double_integral(p1, p1, 1.0, RegulatorParams())
    assert abs(off) < 1e-3 * abs(diag)


def test_diamond_double_integral_acceleration():
    pack = Wavepacket(0.5, 0.08)
    val = diamond_double_integral(pack, pack, 2.0, RegulatorParams())
    om, c = pack.gh_nodes()
    smeared = np.sum(c * pack.amplitude(om) / np.expm1(2.0 * np.pi * om / 2.0))
    assert abs(val - smeared) / smeared < 2e-2
