import math

import numpy as np
import pytest
from scipy.integrate import quad

from weylbound.oscint import (
    PhaseSpec,
    QuadratureError,
    SmoothWeight,
    StationaryPointError,
    bessel_weighted_k_sum,
    bump_fourier,
    bump_weight,
    fresnel_gaussian_reference,
    gaussian_weight,
    nonstationary_decay_check,
    oscillatory_quadrature,
    plateau_weight,
    second_derivative_bound_check,
    stationary_phase_eval,
    sum_over_orders_check,
)

ZERO_PHASE = PhaseSpec(
    evaluator=lambda t: np.zeros_like(t), deriv=lambda t: np.zeros_like(t),
    deriv2=lambda t: np.zeros_like(t),
)


def quadratic_phase(A, center=1.5):
    return PhaseSpec(
        evaluator=lambda t: A * (t - center) ** 2,
        deriv=lambda t: 2 * A * (t - center),
        deriv2=lambda t: 2 * A * np.ones_like(t),
        Y=abs(A) / 4,
        Q=0.5,
    )


def test_weights_vanish_at_endpoints():
    assert bump_weight(1, 2).endpoint_defect() < 1e-8
    assert plateau_weight(0.5, 1.0, 2.0, 3.0).endpoint_defect() < 1e-8


def test_nonvanishing_weight_flagged():
    w = SmoothWeight(lambda t: np.cos(t), (0.0, 1.0))
    assert w.endpoint_defect() > 1e-3


def test_plateau_is_flat_on_middle():
    u = plateau_weight(0.5, 1.0, 2.0, 3.0)
    ts = np.linspace(1.0, 2.0, 50)
    assert np.max(np.abs(u(ts) - 1.0)) < 1e-12


def test_quadrature_no_oscillation():
    w = bump_weight(1.0, 2.0)
    r = oscillatory_quadrature(w, ZERO_PHASE, tol=1e-12)
    ref = quad(lambda t: w(np.array([t]))[0], 1, 2, epsabs=1e-14)[0]
    assert abs(r.value - ref) < 1e-12


def test_quadrature_self_consistency():
    w = bump_weight(1.0, 2.0)
    h = PhaseSpec(
        evaluator=lambda t: 1000.0 * np.log(t) * 40.0,
        deriv=lambda t: 40000.0 / t,
        Y=4e4, Q=1.5,
    )
    r1 = oscillatory_quadrature(w, h, tol=1e-9)
    r2 = oscillatory_quadrature(w, h, tol=1e-12)
    assert abs(r1.value - r2.value) <= max(r1.abs_error, 1e-12)


def _regression_corpus(n_cases=50, seed=11):
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(n_cases):
        a, b = sorted(rng.uniform(0.5, 3.0, size=2))
        if b - a < 0.3:
            b = a + 0.3
        kind = int(rng.integers(0, 2))
        w = (
            bump_weight(a, b, float(rng.uniform(0.5, 2.0)))
            if kind == 0
            else plateau_weight(a, a + 0.3 * (b - a), b - 0.3 * (b - a), b)
        )
        amp = float(10 ** rng.uniform(0.5, 3.0))
        c0 = float(rng.uniform(a + 0.2 * (b - a), b - 0.2 * (b - a)))
        style = int(rng.integers(0, 2))
        if style == 0:
            h = PhaseSpec(
                evaluator=lambda t, A=amp, c=c0: A * (t - c) ** 2,
                deriv=lambda t, A=amp, c=c0: 2 * A * (t - c),
                deriv2=lambda t, A=amp: 2 * A * np.ones_like(t),
                Y=amp, Q=(b - a) / 2,
            )
        else:
            h = PhaseSpec(
                evaluator=lambda t, A=amp: A * np.log(t),
                deriv=lambda t, A=amp: A / t,
                deriv2=lambda t, A=amp: -A / t**2,
                Y=amp, Q=a,
            )
        cases.append((w, h))
    return cases


def test_quadrature_regression_corpus_halving():
    # halving tol moves the result by less than the claimed bound
    for w, h in _regression_corpus():
        r1 = oscillatory_quadrature(w, h, tol=2e-9)
        r2 = oscillatory_quadrature(w, h, tol=1e-9)
        assert abs(r1.value - r2.value) <= max(r1.abs_error, r2.abs_error, 1e-13)


def test_stationary_error_model_on_corpus():
    # |order-0 - quadrature| <= 5 * first-correction size.  The model
    # compares against the correction term, so it is only meaningful
    # where that term does not accidentally vanish (a flat-topped
    # weight at the critical point zeroes every correction while the
    # residual error lives at the plateau edges); such degenerate cases
    # are skipped.
    checked = 0
    for w, h in _regression_corpus():
        try:
            s0 = stationary_phase_eval(w, h, order=0)
            s1 = stationary_phase_eval(w, h, order=1)
        except StationaryPointError:
            continue
        ref = oscillatory_quadrature(w, h, tol=1e-12)
        first_corr = abs(s1.value - s0.value)
        if first_corr < 1e-6 * abs(s0.value):
            continue
        assert abs(s0.value - ref.value) <= 5 * first_corr + 1e-10
        checked += 1
    assert checked >= 15


def test_quadrature_phase_budget():
    w = bump_weight(0.0, 1.0)
    h = PhaseSpec(evaluator=lambda t: 2e7 * t, deriv=lambda t: 2e7 * np.ones_like(t))
    with pytest.raises(ValueError):
        oscillatory_quadrature(w, h, tol=1e-9)


def test_quadrature_node_budget_reports_partial():
    w = bump_weight(1.0, 2.0)
    h = PhaseSpec(evaluator=lambda t: 3e5 * t, deriv=lambda t: 3e5 * np.ones_like(t))
    with pytest.raises(QuadratureError) as exc:
        oscillatory_quadrature(w, h, tol=1e-12, max_nodes=500)
    assert exc.value.achieved_bound > 0


def test_stationary_phase_quadratic_leading():
    w = bump_weight(1.0, 2.0)
    A = 1000.0
    got = stationary_phase_eval(w, quadratic_phase(A), order=0)
    lead = math.sqrt(math.pi / A) * np.exp(1j * math.pi / 4) * w(np.array([1.5]))[0]
    assert abs(got.value - lead) < 1e-14
    ref = oscillatory_quadrature(w, quadratic_phase(A), tol=1e-12)
    assert abs(got.value - ref.value) <= 0.02 * abs(ref.value)


def test_stationary_phase_corrections_sharpen():
    w = bump_weight(1.0, 2.0)
    h = quadratic_phase(400.0)
    ref = oscillatory_quadrature(w, h, tol=1e-12).value
    errs = [
        abs(stationary_phase_eval(w, h, order=n).value - ref) / abs(ref)
        for n in (0, 1, 2)
    ]
    assert errs[0] < 0.02
    assert errs[2] < errs[0]
    assert errs[2] < 1e-5


def test_stationary_phase_negative_curvature():
    w = bump_weight(1.0, 2.0)
    h = quadratic_phase(-700.0)
    ref = oscillatory_quadrature(w, h, tol=1e-12).value
    got = stationary_phase_eval(w, h, order=1)
    assert abs(got.value - ref) <= 0.01 * abs(ref)


def test_stationary_phase_error_model_envelope():
    # |order-0 - quadrature| <= 5 * first-correction magnitude
    w = bump_weight(1.0, 2.0)
    for A in (200.0, 1000.0, 5000.0):
        h = quadratic_phase(A)
        ref = oscillatory_quadrature(w, h, tol=1e-12).value
        s0 = stationary_phase_eval(w, h, order=0).value
        s1 = stationary_phase_eval(w, h, order=1).value
        first_corr = abs(s1 - s0)
        assert abs(s0 - ref) <= 5 * first_corr + 1e-12, A


def test_fresnel_gaussian_reference_case():
    wg = gaussian_weight(0.0, 1.0, 9.0)
    A = 7.0
    h = PhaseSpec(
        evaluator=lambda t: A * t**2, deriv=lambda t: 2 * A * t,
        deriv2=lambda t: 2 * A * np.ones_like(t), Q=1.0,
    )
    got = oscillatory_quadrature(wg, h, tol=1e-12)
    assert abs(got.value - fresnel_gaussian_reference(A)) < 1e-11


def test_offdiag_dual_phase_curvature_scale():
    # log-quadratic-bilinear phase: 2 t log x - a x^2 - b x x3, with the
    # curvature at the critical point on the scale of t
    t, N, Q, K = 1000.0, 1e4, 100.0, 10.0
    ntil = Q * Q * K**4 / N
    c1, n1, x3 = 100.0, 9.0, 1.2
    a = N * n1 / c1
    b = math.sqrt(N * ntil) / c1
    h = PhaseSpec(
        evaluator=lambda x: 2 * t * np.log(x) - a * x**2 - b * x * x3,
        deriv=lambda x: 2 * t / x - 2 * a * x - b * x3,
        deriv2=lambda x: -2 * t / x**2 - 2 * a * np.ones_like(x),
        Y=t, Q=1.0,
    )
    w = bump_weight(0.8, 1.6)
    got = stationary_phase_eval(w, h, order=0)
    # curvature check at the located point
    from weylbound.oscint import _find_stationary_point

    x0 = _find_stationary_point(h, 0.8, 1.6)
    curv = abs(float(h.d2(np.array([x0]))[0]))
    assert t / 4 <= curv <= 4 * t
    ref = oscillatory_quadrature(w, h, tol=1e-12)
    assert abs(got.value - ref.value) <= 0.02 * abs(ref.value)


def test_stationary_point_absence_detected():
    w = bump_weight(1.0, 2.0)
    h = PhaseSpec(evaluator=lambda t: 50.0 * t, deriv=lambda t: 50.0 * np.ones_like(t))
    with pytest.raises(StationaryPointError):
        stationary_phase_eval(w, h)


def test_multiple_stationary_points_error():
    w = bump_weight(-1.0, 1.0)
    h = PhaseSpec(
        evaluator=lambda t: 100.0 * np.sin(8 * t),
        deriv=lambda t: 800.0 * np.cos(8 * t),
    )
    with pytest.raises(StationaryPointError):
        stationary_phase_eval(w, h)


def test_nonstationary_linear_phase_ladder():
    w = bump_weight(1.0, 2.0)
    R0 = 40.0
    h = PhaseSpec(
        evaluator=lambda t: R0 * t, deriv=lambda t: R0 * np.ones_like(t),
        Y=R0, Q=1.0, R=R0,
    )
    rep = nonstationary_decay_check(w, h)
    assert rep.status == "PASS"
    # raw magnitudes fall much faster than R^-3 across the ladder
    drop = rep.magnitudes[-1] / rep.magnitudes[0]
    assert drop < (rep.scales[-1] / rep.scales[0]) ** (-3)


def test_nonstationary_below_threshold_inconclusive():
    w = bump_weight(1.0, 2.0)
    h = PhaseSpec(
        evaluator=lambda t: 1e-3 * t, deriv=lambda t: 1e-3 * np.ones_like(t),
        Y=1e-3, Q=1.0, R=1e-3,
    )
    rep = nonstationary_decay_check(w, h, ladder=(1.0, 2.0))
    assert rep.status == "INCONCLUSIVE"


def test_nonstationary_requires_R():
    w = bump_weight(1.0, 2.0)
    h = PhaseSpec(evaluator=lambda t: t, deriv=lambda t: np.ones_like(t))
    with pytest.raises(ValueError):
        nonstationary_decay_check(w, h)


def test_plus_sign_phase_is_negligible():
    # with the plus sign there is no critical point on the support and
    # the integral collapses relative to the minus sign
    K, u = 10.0, 40.0
    coef = u / 2.0  # makes the minus-phase critical point sit at v = 1
    w = bump_weight(0.4, 1.8)
    two_pi = 2 * math.pi
    h_plus = PhaseSpec(
        evaluator=lambda v: two_pi * (u * v + coef * v**2),
        deriv=lambda v: two_pi * (u + 2 * coef * v),
    )
    h_minus = PhaseSpec(
        evaluator=lambda v: two_pi * (u * v - coef * v**2),
        deriv=lambda v: two_pi * (u - 2 * coef * v),
    )
    ip = oscillatory_quadrature(w, h_plus, tol=1e-12)
    im = oscillatory_quadrature(w, h_minus, tol=1e-12)
    assert abs(im.value) >= 1e3 * abs(ip.value)


def test_second_derivative_bound_square_phase():
    g = bump_weight(1.0, 2.0)
    f = PhaseSpec(
        evaluator=lambda x: x**2, deriv=lambda x: 2 * x,
        deriv2=lambda x: 2 * np.ones_like(x), Y=4.0, Q=1.0,
    )
    rep = second_derivative_bound_check(g, f)
    assert rep.status == "PASS"
    assert abs(rep.r - 2.0) < 1e-6
    assert rep.bound >= abs(rep.integral)


def test_second_derivative_bound_log_phase():
    # f = (t / 2 pi) log x on [1, 2]: r ~ t / (8 pi), the 1/sqrt(t) mechanism
    t = 500.0
    g = bump_weight(1.0, 2.0)
    f = PhaseSpec(
        evaluator=lambda x: (t / (2 * math.pi)) * np.log(x),
        deriv=lambda x: (t / (2 * math.pi)) / x,
        deriv2=lambda x: -(t / (2 * math.pi)) / x**2,
        Y=t, Q=1.0,
    )
    rep = second_derivative_bound_check(g, f)
    assert rep.status == "PASS"
    assert abs(rep.r - t / (8 * math.pi)) < 0.05 * rep.r
    assert abs(rep.integral) <= 8.0 / math.sqrt(t / (8 * math.pi))


def test_second_derivative_bound_zero_weight():
    g = SmoothWeight(lambda t: np.zeros_like(t), (1.0, 2.0))
    f = PhaseSpec(
        evaluator=lambda x: x**2, deriv=lambda x: 2 * x,
        deriv2=lambda x: 2 * np.ones_like(x),
    )
    rep = second_derivative_bound_check(g, f)
    assert rep.status == "PASS"
    assert abs(rep.integral) < 1e-12


def test_second_derivative_sign_change_rejected():
    g = bump_weight(-1.0, 1.0)
    f = PhaseSpec(
        evaluator=lambda x: x**3, deriv=lambda x: 3 * x**2,
        deriv2=lambda x: 6 * x,
    )
    with pytest.raises(ValueError):
        second_derivative_bound_check(g, f)


def test_bump_fourier_inversion_sanity():
    # int What(v) e(-uv) dv recovers W(u) for u inside the support
    from scipy.integrate import quad as _q

    u0 = 1.4
    re = _q(
        lambda v: (bump_fourier(np.array([v]))[0] * np.exp(-2j * math.pi * u0 * v)).real,
        -40, 40, limit=4000,
    )[0]
    w = bump_weight(1.0, 2.0)
    assert abs(re - w(np.array([u0]))[0]) < 1e-6


def test_ksum_identity_direct_vs_kernel_small():
    for K, x in [(8, 10.0), (8, 100.0), (16, 10.0), (16, 100.0), (32, 10.0)]:
        d = bessel_weighted_k_sum(K, x, "direct")
        k = bessel_weighted_k_sum(K, x, "kernel")
        assert abs(d.value - k.value) <= 1e-8, (K, x)


def test_ksum_asymptotic_scale():
    for K in (8, 16, 32):
        x = float(4 * K * K)
        d = bessel_weighted_k_sum(K, x, "direct")
        a = bessel_weighted_k_sum(K, x, "asymptotic")
        assert abs(a.value - d.value) <= 0.10 * abs(d.value), K


def test_ksum_rejects_small_K_and_bad_mode():
    with pytest.raises(ValueError):
        bessel_weighted_k_sum(4, 10.0, "direct")
    with pytest.raises(ValueError):
        bessel_weighted_k_sum(8, 10.0, "sideways")


def test_sum_over_orders_identity_odd_classes():
    sigma = 6.0
    center = 12.0

    def g(u):
        return np.exp(-(((np.asarray(u, dtype=float) - center) / sigma) ** 2))

    def g_hat(v):
        v = np.asarray(v, dtype=float)
        return (
            sigma
            * math.sqrt(math.pi)
            * np.exp(2j * math.pi * center * v)
            * np.exp(-((sigma * math.pi * v) ** 2))
        )

    for a in (1, 3):
        for y in (5.0, 30.0):
            direct, kernel = sum_over_orders_check(a, y, g, g_hat, v_max=1.0)
            assert abs(direct - kernel) < 1e-10, (a, y)
