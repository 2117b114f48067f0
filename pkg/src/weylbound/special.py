"""Special functions: integer-order Bessel J, Stirling log-Gamma, the
Gamma-ratio phase expansion, and the mod-4 trigonometric kernel.

The Bessel evaluator routes between an ascending series (no-cancellation
regime), Miller backward recurrence normalized by the Neumann identity,
and the Hankel asymptotic expansion with Cody-Waite argument reduction.
Production paths are double precision; extended-precision references
live in the test layer only.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

EPS = 2.220446049250313e-16
_TWO_PI = 2.0 * math.pi
# Cody-Waite split of 2*pi: short-mantissa parts keep q*c_i exact
_CW1 = 6.28125
_CW2 = 0.0019353071693331003
_CW3 = 1.0253376489868793e-11
_CW4 = 1.1650928224373424e-19

# B_{2j} for the Stirling tail, j = 1..15
_BERNOULLI = [
    1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6,
    -3617 / 510, 43867 / 798, -174611 / 330, 854513 / 138,
    -236364091 / 2730, 8553103 / 6, -23749461029 / 870,
    8615841276005 / 14322,
]


@dataclass(frozen=True)
class ComplexEstimate:
    """A computed complex value with a claimed absolute error bound.

    The bound is rigorous where the method admits one (series, Neumann-
    normalized recurrence) and heuristic where only an error model is
    available (asymptotics, quadrature); `method` records which engine
    produced the value.
    """

    value: complex
    abs_error: float
    method: str

    def __post_init__(self):
        if not math.isfinite(self.abs_error):
            raise ValueError("abs_error must be finite")


class RangeError(ValueError):
    """Input outside the range any implemented method can certify."""


def _reduce_two_pi(x: float) -> float:
    """x mod 2*pi by multi-part Cody-Waite, accurate for x <= 1e8."""
    q = math.floor(x / _TWO_PI + 0.5)
    r = x - q * _CW1
    r -= q * _CW2
    r -= q * _CW3
    r -= q * _CW4
    return r


def _bessel_series(n: int, x: float) -> tuple[float, float]:
    """Ascending series; precondition x*x <= 2(n+1) or x small."""
    half = 0.5 * x
    log_t0 = n * math.log(half) - math.lgamma(n + 1) if half > 0 else 0.0
    if half == 0.0:
        return (1.0, 0.0) if n == 0 else (0.0, 0.0)
    if log_t0 < -745.0:
        return 0.0, math.exp(-700.0)  # underflow-level tail bound
    t = math.exp(log_t0)
    total = t
    largest = abs(t)
    xx = half * half
    j = 0
    while True:
        j += 1
        t *= -xx / (j * (n + j))
        total += t
        largest = max(largest, abs(t))
        if abs(t) < abs(total) * EPS + 5e-324 or j > 600:
            break
    return total, largest * EPS * (j + 2) + abs(t)


def _bessel_miller(n: int, x: float) -> tuple[float, float]:
    """Backward recurrence from above, normalized by the Neumann sum
    J_0 + 2 J_2 + 2 J_4 + ... = 1."""
    start = int(max(n, x) + 16.0 * math.sqrt(max(n, x) + 1.0) + 24)
    if start % 2 == 1:
        start += 1
    fp = 0.0  # f_{j+1}
    fc = 1e-290  # f_j at j = start
    target = 0.0
    neumann = 0.0
    for j in range(start, 0, -1):
        fm = (2.0 * j / x) * fc - fp
        fp = fc
        fc = fm
        jm = j - 1
        if jm == n:
            target = fc
        if jm % 2 == 0:
            neumann += fc if jm == 0 else 2.0 * fc
        if abs(fc) > 1e250:
            fc *= 1e-250
            fp *= 1e-250
            target *= 1e-250
            neumann *= 1e-250
    value = target / neumann
    # near zeros the error scales with the oscillation envelope, not |J|
    envelope = math.sqrt(2.0 / (math.pi * x)) if x >= n else abs(value)
    return value, (abs(value) + envelope) * 5e-14 + 1e-305


def _bessel_hankel(n: int, x: float) -> tuple[float, float]:
    """Hankel asymptotic expansion, valid for x well beyond n^2."""
    mu = 4.0 * n * n
    p, q = 1.0, 0.0
    term = 1.0
    k = 0
    smallest = 1.0
    while k < 40:
        k += 1
        nxt = term * (mu - (2 * k - 1) ** 2) / (8.0 * x * k)
        if abs(nxt) > 4 * smallest:
            break  # divergence onset: stop at the optimal truncation
        term = nxt
        if k % 2 == 1:
            q += term if (k // 2) % 2 == 0 else -term
        else:
            p += term if (k // 2) % 2 == 0 else -term
        smallest = min(smallest, abs(term))
        if abs(term) < 1e-17:
            break
    # reduce x alone first: subtracting the order phase from a huge x
    # would cost ~ulp(x) of phase accuracy
    chi = _reduce_two_pi(x) - (0.5 * n + 0.25) * math.pi
    amp = math.sqrt(2.0 / (math.pi * x))
    value = amp * (p * math.cos(chi) - q * math.sin(chi))
    return value, amp * (smallest + 20 * EPS)


def bessel_j(order: int, x: float) -> ComplexEstimate:
    """J_order(x) for integer order >= 0 and real x >= 0.

    Series for small or order-dominated arguments, Miller backward
    recurrence in midrange, Hankel expansion when the recurrence would
    be too long and the expansion is in regime; anything else raises.
    """
    if order < 0 or order > 10**4:
        raise RangeError(f"order {order} outside [0, 10^4]")
    if x < 0 or x > 10**8:
        raise RangeError(f"argument {x} outside [0, 10^8]")
    if x == 0.0:
        return ComplexEstimate(1.0 if order == 0 else 0.0, 0.0, "series")
    if x <= 8.5 or x * x <= 2.0 * (order + 1):
        v, err = _bessel_series(order, x)
        return ComplexEstimate(v, err, "series")
    if max(order, x) <= 5e5:
        v, err = _bessel_miller(order, x)
        return ComplexEstimate(v, err, "recurrence")
    if x >= max(1000.0, 1.5 * order * order):
        v, err = _bessel_hankel(order, x)
        return ComplexEstimate(v, err, "asymptotic")
    raise RangeError(
        f"J_{order}({x}): no certified method (recurrence too long, "
        "asymptotic out of regime)"
    )


def bessel_j_many(order: int, xs: np.ndarray) -> np.ndarray:
    """J_order over an array of arguments (values only).

    The series branch is vectorized; the handful of midrange arguments
    fall back to the scalar engines.
    """
    xs = np.asarray(xs, dtype=float)
    out = np.empty_like(xs)
    series_mask = (xs <= 8.5) | (xs * xs <= 2.0 * (order + 1))
    hard = np.nonzero(~series_mask)[0]
    xm = xs[series_mask]
    if xm.size:
        half = 0.5 * xm
        with np.errstate(divide="ignore"):
            logt = np.where(
                half > 0, order * np.log(np.where(half > 0, half, 1.0)), 0.0
            ) - math.lgamma(order + 1)
        t = np.where(
            half > 0,
            np.where(logt > -745.0, np.exp(logt), 0.0),
            1.0 if order == 0 else 0.0,
        )
        total = t.copy()
        xx = half * half
        for j in range(1, 80):
            t = t * (-xx) / (j * (order + j))
            total += t
            if np.max(np.abs(t)) < 1e-18 * max(np.max(np.abs(total)), 1e-300):
                break
        out[series_mask] = total
    for i in hard:
        out[i] = bessel_j(order, float(xs[i])).value
    return out


# ----------------------------------------------------------------------
# Gamma


def _stirling_tail(z: complex, terms: int) -> tuple[complex, float]:
    tail = 0j
    zz = z * z
    zpow = z
    last = 0.0
    for j in range(1, terms + 1):
        c = _BERNOULLI[j - 1] / ((2 * j - 1) * (2 * j))
        t = c / zpow
        tail += t
        last = abs(t)
        zpow *= zz
    nxt = abs(_BERNOULLI[min(terms, 14)] / ((2 * terms + 1) * (2 * terms + 2)))
    err = nxt / abs(z) ** (2 * terms + 1)
    return tail, err


def log_gamma(s: complex, terms: int = 12) -> ComplexEstimate:
    """Principal-branch log Gamma(s) by Stirling with recursion lift.

    The argument is lifted by Gamma(s) = Gamma(s+m)/(s...(s+m-1)) until
    |s+m| is comfortably in the asymptotic regime; the claimed error is
    the first omitted Bernoulli term plus lift rounding.
    """
    if terms < 1 or terms > 15:
        raise ValueError("terms must be in 1..15")
    if s.imag == 0 and s.real <= 0 and s.real == int(s.real):
        raise ZeroDivisionError(f"Gamma pole at s = {s}")
    shift = 0j
    m = 0
    z = complex(s)
    while abs(z) < 18.0 or z.real < 1.0:
        shift += cmath.log(z)
        z += 1
        m += 1
        if m > 400:
            raise RangeError("recursion lift did not reach Stirling regime")
    tail, tail_err = _stirling_tail(z, terms)
    val = (z - 0.5) * cmath.log(z) - z + 0.5 * math.log(2 * math.pi) + tail
    val -= shift
    err = tail_err + (m + 4) * EPS * (abs(val) + 1.0)
    return ComplexEstimate(val, err, "asymptotic")


def gamma_fn(s: complex, terms: int = 12) -> ComplexEstimate:
    lg = log_gamma(s, terms)
    v = cmath.exp(lg.value)
    return ComplexEstimate(v, abs(v) * (lg.abs_error + 2 * EPS), "asymptotic")


def gamma_modulus_asymptotic(sigma: float, t: float) -> float:
    """Leading modulus form sqrt(2 pi) |t|^(sigma - 1/2) e^(-pi |t| / 2)."""
    at = abs(t)
    if at == 0:
        raise ValueError("modulus form needs t != 0")
    return math.sqrt(2 * math.pi) * at ** (sigma - 0.5) * math.exp(-0.5 * math.pi * at)


def log_gamma_vec(z: np.ndarray, terms: int = 12) -> np.ndarray:
    """Vectorized principal log Gamma for complex arrays (values only)."""
    z = np.asarray(z, dtype=complex).copy()
    shift = np.zeros_like(z)
    for _ in range(64):
        mask = (np.abs(z) < 18.0) | (z.real < 1.0)
        if not mask.any():
            break
        shift[mask] += np.log(z[mask])
        z[mask] += 1
    tail = np.zeros_like(z)
    zz = z * z
    zpow = z.copy()
    for j in range(1, terms + 1):
        tail += (_BERNOULLI[j - 1] / ((2 * j - 1) * (2 * j))) / zpow
        zpow *= zz
    return (z - 0.5) * np.log(z) - z + 0.5 * math.log(2 * math.pi) + tail - shift


@dataclass(frozen=True)
class GammaRatioPhase:
    """Gamma(K/2 + i tau) / Gamma(K/2 - i tau) and its approximations.

    true_phase is the unwrapped phase 2 Im log Gamma(K/2 + i tau).  The
    displayed approximation 2 tau log K - tau/K - tau propagates two
    slips of the underlying expansion (log r = log(K/2), theta = 2
    tau/K); the corrected candidate 2 tau log(K/2) - 2 tau/K repairs
    both and lands within O(tau^2/K^2).
    """

    ratio: ComplexEstimate
    true_phase: float
    displayed_phase: float
    corrected_phase: float
    diff_displayed: float
    diff_corrected: float


def gamma_ratio_phase(K: float, tau: float) -> GammaRatioPhase:
    if K < 10:
        raise ValueError("need K >= 10")
    if abs(tau) > K / 4:
        raise ValueError("need |tau| <= K/4")
    num = log_gamma(complex(K / 2, tau))
    den = log_gamma(complex(K / 2, -tau))
    ratio = cmath.exp(num.value - den.value)
    err = abs(ratio) * (num.abs_error + den.abs_error + 4 * EPS)
    true_phase = 2.0 * num.value.imag
    displayed = 2 * tau * math.log(K) - tau / K - tau
    corrected = 2 * tau * math.log(K / 2) - 2 * tau / K
    return GammaRatioPhase(
        ratio=ComplexEstimate(ratio, err, "asymptotic"),
        true_phase=true_phase,
        displayed_phase=displayed,
        corrected_phase=corrected,
        diff_displayed=abs(true_phase - displayed),
        diff_corrected=abs(true_phase - corrected),
    )


def bessel_kernel_ca(a: int, v: float, x: float) -> complex:
    """C_a(v, x) = -2i sin(x sin 2 pi v) + 2 i^(1-a) sin(x cos 2 pi v).

    The mod-4 kernel of the sum-over-orders identity; for sums over
    orders in a fixed odd residue class a mod 4, pairing J_u(y) with
    C_a(v, y) (same argument y on both sides) makes the identity exact.
    """
    return -2j * math.sin(x * math.sin(2 * math.pi * v)) + 2 * (1j) ** (
        (1 - a) % 4
    ) * math.sin(x * math.cos(2 * math.pi * v))
