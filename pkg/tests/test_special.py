import cmath
import math

import mpmath as mp
import numpy as np
import pytest

from weylbound.special import (
    ComplexEstimate,
    RangeError,
    bessel_j,
    bessel_j_many,
    bessel_kernel_ca,
    gamma_fn,
    gamma_modulus_asymptotic,
    gamma_ratio_phase,
    log_gamma,
    log_gamma_vec,
)

mp.mp.dps = 40


def ref_j(n, x):
    return float(mp.besselj(n, mp.mpf(x)))


def test_bessel_j0_at_zero():
    r = bessel_j(0, 0.0)
    assert r.value == 1.0 and r.abs_error == 0.0


def test_bessel_j11_4pi_reference():
    ref = ref_j(11, 4 * math.pi)
    got = bessel_j(11, 4 * math.pi)
    assert abs(got.value - ref) <= 1e-12 * abs(ref)


def test_bessel_three_term_recurrence():
    x = 7.3
    j4 = bessel_j(4, x).value
    j5 = bessel_j(5, x).value
    j6 = bessel_j(6, x).value
    resid = j4 + j6 - (10.0 / x) * j5
    assert abs(resid) < 1e-11 * max(abs(j5), 1.0)


def test_bessel_recurrence_residual_grid():
    # relative three-term residual across a log grid of orders and arguments
    for n in (1, 3, 10, 30, 100):
        for x in (0.5, 2.0, 8.0, 40.0, 300.0, 2500.0, 10000.0):
            jm = bessel_j(n - 1, x).value
            j0 = bessel_j(n, x).value
            jp = bessel_j(n + 1, x).value
            resid = jm + jp - (2.0 * n / x) * j0
            scale = max(abs(jm), abs(j0), abs(jp), 1e-280)
            assert abs(resid) <= 1e-10 * scale, (n, x)


def test_bessel_accuracy_claims_on_grid():
    # rel err <= 1e-12 when x <= 50*order, <= 1e-10 otherwise
    for n in (0, 1, 2, 5, 11, 25, 60, 100):
        for x in (0.1, 1.0, 4.0, 9.0, 25.0, 100.0, 1000.0, 20000.0):
            got = bessel_j(n, x)
            ref = ref_j(n, x)
            tol = 1e-12 if x <= 50 * max(n, 1) else 1e-10
            denom = max(abs(ref), 1e-300)
            if abs(ref) < 1e-280:
                continue
            assert abs(got.value - ref) <= tol * denom + 1e-300, (n, x, got.method)


def test_bessel_reported_error_is_honest():
    rng = np.random.default_rng(7)
    for _ in range(100):
        n = int(rng.integers(0, 40))
        x = float(10 ** rng.uniform(-1, 4))
        got = bessel_j(n, x)
        ref = ref_j(n, x)
        assert abs(got.value - ref) <= max(got.abs_error * 8, 4e-16 * abs(ref) + 1e-300), (
            n, x, got.method,
        )


def test_bessel_small_argument_domination():
    # |J_{k-1}(x)| <= (x/2)^{k-1} / (k-1)! for x <= k
    for k in (6, 10, 16, 24):
        for x in np.linspace(0.3, k, 12):
            bound = (x / 2) ** (k - 1) / math.factorial(k - 1)
            assert abs(bessel_j(k - 1, float(x)).value) <= bound * (1 + 1e-9), (k, x)


def test_bessel_methods_cover_regimes():
    assert bessel_j(3, 1.0).method == "series"
    assert bessel_j(5, 60.0).method == "recurrence"
    assert bessel_j(2, 2.0e6).method == "asymptotic"


def test_bessel_asymptotic_vs_reference():
    for n in (0, 1, 7):
        for x in (6.0e5, 3.3e6, 9.9e7):
            got = bessel_j(n, x)
            ref = ref_j(n, x)
            assert abs(got.value - ref) <= 1e-10 * abs(ref) + 1e-16, (n, x)


def test_bessel_range_signalling():
    with pytest.raises(RangeError):
        bessel_j(-1, 1.0)
    with pytest.raises(RangeError):
        bessel_j(20000, 1.0)
    with pytest.raises(RangeError):
        bessel_j(0, 2.0e8)
    with pytest.raises(RangeError):
        bessel_j(5000, 2.0e6)  # recurrence too long, asymptotic invalid


def test_bessel_many_matches_scalar():
    xs = np.array([0.0, 0.5, 3.0, 9.5, 77.0, 1234.5])
    for n in (0, 4, 13):
        got = bessel_j_many(n, xs)
        for x, g in zip(xs, got):
            assert abs(g - bessel_j(n, float(x)).value) < 1e-13


def test_log_gamma_factorial():
    g = gamma_fn(5.0 + 0j)
    assert abs(g.value - 24.0) < 1e-12 * 24


def test_gamma_modulus_form():
    t = 20.0
    ref = abs(complex(mp.gamma(mp.mpc(0.5, t))))
    approx = gamma_modulus_asymptotic(0.5, t)
    assert abs(approx - ref) / ref <= 0.05


def test_gamma_reflection_identity():
    s = 0.3 + 11.0j
    lhs = gamma_fn(s).value * gamma_fn(1 - s).value
    rhs = math.pi / cmath.sin(math.pi * s)
    assert abs(lhs - rhs) <= 1e-10 * abs(rhs)


def test_log_gamma_against_mpmath_grid():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(100):
        sig = float(rng.uniform(-3, 8))
        t = float(rng.uniform(5, 300)) * (1 if rng.random() < 0.5 else -1)
        s = complex(sig, t)
        got = log_gamma(s)
        ref = complex(mp.loggamma(mp.mpc(sig, t)))
        err = abs(got.value - ref)
        worst = max(worst, err)
        assert err <= got.abs_error + 1e-11 * (1 + abs(ref)), s
    assert worst < 1e-9


def test_log_gamma_error_decreases_with_terms():
    s = complex(2.0, 9.0)
    ref = complex(mp.loggamma(mp.mpc(2.0, 9.0)))
    errs = [abs(log_gamma(s, terms=k).value - ref) for k in (1, 2, 4, 8)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[3] < 1e-12


def test_log_gamma_pole():
    with pytest.raises(ZeroDivisionError):
        log_gamma(0.0 + 0j)
    with pytest.raises(ZeroDivisionError):
        log_gamma(-3.0 + 0j)


def test_log_gamma_vec_matches_scalar():
    zs = np.array([2 + 9j, 0.5 + 40j, -1.5 + 7j, 6.0 + 0.5j])
    got = log_gamma_vec(zs)
    for z, g in zip(zs, got):
        assert abs(g - log_gamma(complex(z)).value) < 1e-12


def test_gamma_ratio_tau_zero():
    r = gamma_ratio_phase(100.0, 0.0)
    assert abs(r.ratio.value - 1.0) < 1e-14


def test_gamma_ratio_unit_modulus_and_phase():
    for K, tau in [(100.0, 0.5), (200.0, 2.0), (1000.0, 5.0), (50.0, 12.0)]:
        r = gamma_ratio_phase(K, tau)
        assert abs(abs(r.ratio.value) - 1.0) < 1e-10
        # corrected phase lands within the omitted cubic term (4/3) tau^3/K^2
        tol = 10 * tau**2 / K**2 + 1.5 * tau**3 / K**2 + 1e-9
        assert r.diff_corrected <= tol, (K, tau)
        # displayed form misses by ~|tau| (1 - 2 log 2) plus the log 2 slip
        envelope = abs(2 * tau * math.log(2)) + 10 * tau**2 / K**2 + abs(tau) / K
        assert r.diff_displayed <= envelope, (K, tau)
        assert r.diff_displayed >= 0.1 * abs(tau) * (2 * math.log(2) - 1), (K, tau)
    # at the documented benchmark the quadratic envelope alone suffices
    r = gamma_ratio_phase(1000.0, 5.0)
    assert r.diff_corrected <= 10 * 25.0 / 1000.0**2


def test_gamma_ratio_against_mpmath():
    for K, tau in [(120.0, 3.0), (640.0, 11.0)]:
        r = gamma_ratio_phase(K, tau)
        ref = complex(mp.gamma(mp.mpc(K / 2, tau)) / mp.gamma(mp.mpc(K / 2, -tau)))
        assert abs(r.ratio.value - ref) < 1e-11


def test_kernel_ca_examples():
    assert abs(bessel_kernel_ca(1, 0.0, math.pi) - 0.0) < 1e-15
    want = -2j * math.sin(2.0)
    assert abs(bessel_kernel_ca(1, 0.25, 2.0) - want) < 1e-12
    s = math.sin(math.sqrt(2) / 2)
    want = (-2j - 2) * s
    assert abs(bessel_kernel_ca(3, 0.125, 1.0) - want) < 1e-12


def test_complex_estimate_rejects_nonfinite():
    with pytest.raises(ValueError):
        ComplexEstimate(1.0, float("inf"), "series")
