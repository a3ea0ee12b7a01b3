"""Special-function layer: identities plus independent mpmath oracles."""

import cmath
import math

import mpmath
import numpy as np
import pytest

from wedgeworks.errors import BranchCutError, DomainError, PoleError
from wedgeworks.specfun import (
    cgamma,
    cloggamma,
    conical_p,
    gauss_2f1,
    kummer_m,
    selftest,
)


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


# ---------------------------------------------------------------- gamma

def test_gamma_trivial_values():
    assert rel(cgamma(1.0), 1.0) < 1e-14
    assert rel(cgamma(0.5), math.sqrt(math.pi)) < 1e-14
    assert rel(cgamma(5.0), 24.0) < 1e-14


@pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
def test_gamma_imaginary_axis_identity(x):
    # |Gamma(1+ix)|^2 = pi x / sinh(pi x)
    val = abs(cgamma(1.0 + 1j * x)) ** 2
    assert rel(val, math.pi * x / math.sinh(math.pi * x)) < 1e-12


def test_gamma_identity_log_grid():
    for x in np.geomspace(1e-3, 10.0, 40):
        val = abs(cgamma(1.0 + 1j * x)) ** 2 * math.sinh(math.pi * x) / (math.pi * x)
        assert abs(val - 1.0) < 1e-12


def test_gamma_recurrence_random():
    rng = np.random.default_rng(42)
    checked = 0
    while checked < 200:
        z = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
        if z.real <= 0.5 and abs(z.imag) < 0.5:
            continue  # stay off the pole line
        assert rel(cgamma(z + 1.0), z * cgamma(z)) < 1e-12
        checked += 1


def test_gamma_against_mpmath():
    rng = np.random.default_rng(3)
    for _ in range(60):
        z = complex(rng.uniform(-30, 40), rng.uniform(-40, 40))
        if abs(z.imag) < 0.4 and z.real < 0.5:
            continue
        want = complex(mpmath.gamma(mpmath.mpc(z)))
        assert rel(cgamma(z), want) < 5e-13


def test_gamma_pole():
    with pytest.raises(PoleError):
        cgamma(0.0)
    with pytest.raises(PoleError):
        cgamma(-3.0)


def test_loggamma_large_imaginary():
    # |Im z| large enough that Gamma itself would underflow
    for z in (1.0 + 300j, 0.5 - 800j, -0.3 + 500j, 2.5 + 1j * 5000.0):
        want = complex(mpmath.loggamma(mpmath.mpc(z)))
        got = cloggamma(z)
        # compare modulus and phase mod 2pi (reflection may shift sheets)
        assert abs(got.real - want.real) < 1e-10 * max(1.0, abs(want.real))
        assert abs(cmath.exp(1j * (got.imag - want.imag)) - 1.0) < 1e-9


def test_loggamma_consistent_with_gamma():
    for z in (2.0 + 3j, 0.7 - 1.2j, 10.0 + 10j):
        assert rel(cmath.exp(cloggamma(z)), cgamma(z)) < 1e-12


# ---------------------------------------------------------------- Kummer

def test_kummer_at_zero():
    assert kummer_m(1.3 + 2j, 0.7, 0.0) == 1.0


def test_kummer_transformation():
    a, b, z = 1.0 + 2.0j, 2.0, 4.0j
    lhs = kummer_m(a, b, z)
    rhs = cmath.exp(z) * kummer_m(b - a, b, -z)
    assert rel(lhs, rhs) < 1e-10


@pytest.mark.parametrize("z", [4.0j, -11.0j, 20.0j, -33.0j, 60.0j, 100.0j])
def test_kummer_imaginary_axis_vs_mpmath(z):
    # the paper's use case: purely imaginary argument, all three bands
    a, b = 1.0 + 1.0j, 2.0
    want = complex(mpmath.hyp1f1(mpmath.mpc(a), b, mpmath.mpc(z)))
    assert rel(kummer_m(a, b, z), want) < 1e-10


def test_kummer_general_vs_mpmath():
    rng = np.random.default_rng(11)
    for _ in range(40):
        a = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        b = complex(rng.uniform(0.5, 4), rng.uniform(-2, 2))
        z = complex(rng.uniform(-50, 50), rng.uniform(-50, 50))
        want = complex(mpmath.hyp1f1(mpmath.mpc(a), mpmath.mpc(b), mpmath.mpc(z)))
        assert rel(kummer_m(a, b, z, tol=1e-11), want) < 1e-9


def test_kummer_contiguous_relation():
    rng = np.random.default_rng(5)
    for _ in range(20):
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        b = complex(rng.uniform(0.6, 3), 0.0)
        z = 1j * rng.uniform(-30, 30)
        m0 = kummer_m(a, b, z)
        mm = kummer_m(a - 1.0, b, z)
        mp_ = kummer_m(a + 1.0, b, z)
        resid = (b - a) * mm + (2.0 * a - b + z) * m0 - a * mp_
        scale = max(abs(m0), abs(mm), abs(mp_)) * max(abs(a), abs(b), abs(z))
        assert abs(resid) / scale < 1e-9


def test_kummer_polynomial_case():
    # a = -2: M = 1 - 2 z / b + z^2 (a)_2.../... terminating
    a, b, z = -2.0, 1.5, 3.0 + 1.0j
    want = complex(mpmath.hyp1f1(a, b, mpmath.mpc(z)))
    assert rel(kummer_m(a, b, z), want) < 1e-13


def test_kummer_parameter_pole():
    with pytest.raises(PoleError):
        kummer_m(1.0, 0.0, 1.0)
    with pytest.raises(PoleError):
        kummer_m(1.0, -2.0, 1.0)


# ---------------------------------------------------------------- 2F1

def test_2f1_at_zero():
    assert gauss_2f1(1.1 + 1j, 0.4, 2.0, 0.0) == 1.0


def test_2f1_binomial_identity():
    a, z = 1.0 + 0.5j, 0.3 + 0.2j
    b = 0.77
    lhs = gauss_2f1(a, b, b, z)
    rhs = (1.0 - z) ** (-a)
    assert rel(lhs, rhs) < 1e-10


def test_2f1_ab_symmetry():
    a, b, c, z = 0.3 + 0.4j, 1.2 - 0.1j, 2.0, 0.35 + 0.2j
    assert gauss_2f1(a, b, c, z) == gauss_2f1(b, a, c, z)


def test_2f1_vs_mpmath_inside_disk():
    rng = np.random.default_rng(17)
    for _ in range(40):
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        c = complex(rng.uniform(0.5, 3), rng.uniform(-1, 1))
        r, th = rng.uniform(0, 0.95), rng.uniform(0, 2 * np.pi)
        z = r * cmath.exp(1j * th)
        want = complex(mpmath.hyp2f1(mpmath.mpc(a), mpmath.mpc(b), mpmath.mpc(c), mpmath.mpc(z)))
        assert rel(gauss_2f1(a, b, c, z), want) < 1e-9


def test_2f1_vs_mpmath_outside_disk():
    rng = np.random.default_rng(23)
    for _ in range(30):
        a = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        b = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        c = complex(rng.uniform(0.6, 3), rng.uniform(-1, 1))
        z = complex(rng.uniform(-6, 6), rng.uniform(0.2, 6) * rng.choice([-1, 1]))
        if abs(z) < 1.2:
            continue
        want = complex(mpmath.hyp2f1(mpmath.mpc(a), mpmath.mpc(b), mpmath.mpc(c), mpmath.mpc(z)))
        assert rel(gauss_2f1(a, b, c, z), want) < 1e-8


def test_2f1_degenerate_parameter_difference():
    # c - a - b exactly integer: the two-term 1-z connection degenerates
    a, b, c = 0.5 + 0.3j, 1.5 - 0.3j, 3.0
    for z in (0.9 + 0.05j, -3.0 + 0.4j):
        want = complex(mpmath.hyp2f1(mpmath.mpc(a), mpmath.mpc(b), c, mpmath.mpc(z)))
        assert rel(gauss_2f1(a, b, c, z), want) < 1e-7


def test_2f1_equal_ab_degenerate():
    a = 0.8 + 0.2j
    z = 3.0 + 1.0j
    want = complex(mpmath.hyp2f1(mpmath.mpc(a), mpmath.mpc(a), 2.2, mpmath.mpc(z)))
    assert rel(gauss_2f1(a, a, 2.2, z), want) < 1e-7


def test_2f1_branch_cut_requires_side():
    with pytest.raises(BranchCutError):
        gauss_2f1(0.5, 0.7, 1.3, 2.0)
    up = gauss_2f1(0.5, 0.7, 1.3, 2.0, branch_side=+1)
    dn = gauss_2f1(0.5, 0.7, 1.3, 2.0, branch_side=-1)
    assert abs(up - dn) > 1e-6  # genuinely different lips
    assert rel(up, dn.conjugate()) < 1e-8  # Schwarz reflection for real params


def test_2f1_eq59_style_argument():
    # degree structure of the shifted-diamond cross term at n = 1
    om, omp = 1.0, 1.3
    a, b, c = 1.0 - 1j * om, 1.0 + 1j * omp, 2.0
    z = -1.0 / ((3.0) ** 2 - 1.0)  # -1/(s^2-1) with s = (1+2n)/2... desk value
    want = complex(mpmath.hyp2f1(mpmath.mpc(a), mpmath.mpc(b), c, z))
    assert rel(gauss_2f1(a, b, c, z), want) < 1e-9


def test_2f1_parameter_pole():
    with pytest.raises(PoleError):
        gauss_2f1(0.5, 0.5, -1.0, 0.3)


# ---------------------------------------------------------------- conical P

def test_conical_at_one():
    assert conical_p(0.7, 1.0) == 1.0
    assert conical_p(3.0, 1.0) == 1.0


def test_conical_degree_symmetry():
    p1 = conical_p(0.8, 2.5)
    p2 = conical_p(-0.8, 2.5)
    assert abs(p1 - p2) / abs(p1) < 1e-12


@pytest.mark.parametrize(
    "lam,x", [(1.0, 3.0), (0.3, 1.2), (2.5, 10.0), (0.05, 1.01), (4.0, 2.0)]
)
def test_conical_vs_mpmath(lam, x):
    want = complex(mpmath.legenp(mpmath.mpc(-0.5, lam), 0, x, type=3))
    assert abs(want.imag) < 1e-12 * max(1.0, abs(want.real))
    assert rel(conical_p(lam, x), want.real) < 1e-9


def test_conical_huge_argument():
    # arguments like cosh(2 pi n sqrt(M)) at n = 5 are astronomically large
    lam, x = 0.6, 1.0e12
    want = complex(mpmath.legenp(mpmath.mpc(-0.5, lam), 0, mpmath.mpf(x), type=3))
    assert rel(conical_p(lam, x), want.real) < 1e-8


def test_conical_monotone_lambda_zero():
    # P_{-1/2}(x) decays monotonically from P_{-1/2}(1) = 1 toward 0
    xs = np.linspace(1.0, 8.0, 20)
    vals = [conical_p(0.0, float(x)) for x in xs]
    assert vals[0] == 1.0
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[-1] > 0.0


def test_conical_domain_error():
    with pytest.raises(DomainError):
        conical_p(1.0, 0.5)


# ---------------------------------------------------------------- selftest

def test_selftest_all_pass():
    for name, ok, worst in selftest():
        assert ok, "%s failed (worst %.3e)" % (name, worst)
