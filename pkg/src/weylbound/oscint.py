"""Oscillatory-integral engine.

A brute-force adaptive quadrature is the ground truth: panels are sized
so each carries a bounded amount of phase, Gauss-Legendre pairs give a
per-panel error estimate, and accepted panels are summed in interval
order so results do not depend on refinement scheduling.  On top of it
sit the stationary-phase evaluation with finite-difference correction
terms, nonstationary decay and second-derivative bound checks, and the
Bessel-weighted sum over weights with its integral-kernel identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import roots_legendre

from .special import ComplexEstimate, bessel_j

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl(n: int) -> tuple[np.ndarray, np.ndarray]:
    got = _GL_CACHE.get(n)
    if got is None:
        got = roots_legendre(n)
        _GL_CACHE[n] = got
    return got


class QuadratureError(RuntimeError):
    """Raised when the node budget is exhausted; carries the best value."""

    def __init__(self, message: str, value: complex, achieved_bound: float):
        super().__init__(message)
        self.value = value
        self.achieved_bound = achieved_bound


# ----------------------------------------------------------------------
# weights and phases


@dataclass
class SmoothWeight:
    """A smooth weight w with compact support [a, b].

    amp_scale and var_scale are the X and V of the derivative model
    w^(j) << X V^(-j); they gauge error heuristics, not correctness.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    support: tuple[float, float]
    amp_scale: float = 1.0
    var_scale: float = 1.0

    def __call__(self, t):
        return self.evaluator(np.asarray(t, dtype=float))

    def endpoint_defect(self) -> float:
        """Largest sampled |w|, |w'|, |w''| at the support endpoints."""
        a, b = self.support
        h = 1e-4 * (b - a)
        worst = 0.0
        for x0 in (a, b):
            pts = np.array([x0 - h, x0, x0 + h])
            inside = np.clip(pts, a, b)
            vals = self.evaluator(inside)
            # one-sided values outside the support are zero by definition
            vals = np.where((pts >= a) & (pts <= b), vals, 0.0)
            w0 = vals[1]
            w1 = (vals[2] - vals[0]) / (2 * h)
            w2 = (vals[2] - 2 * vals[1] + vals[0]) / (h * h)
            worst = max(worst, abs(w0), abs(w1) * h, abs(w2) * h * h)
        return worst


@dataclass
class PhaseSpec:
    """A smooth phase h (radians) with scale metadata.

    h^(j) << Y Q^(-j) and, where relevant, h'' >> Y Q^(-2); R is an
    optional lower bound for |h'| used by the nonstationary check.
    Derivatives default to central differences at step eps^(1/3) Q.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray], np.ndarray] | None = None
    deriv2: Callable[[np.ndarray], np.ndarray] | None = None
    Y: float = 1.0
    Q: float = 1.0
    R: float | None = None

    def __call__(self, t):
        return self.evaluator(np.asarray(t, dtype=float))

    def d1(self, t):
        t = np.asarray(t, dtype=float)
        if self.deriv is not None:
            return self.deriv(t)
        step = 6e-6 * max(self.Q, 1e-12)
        return (self.evaluator(t + step) - self.evaluator(t - step)) / (2 * step)

    def d2(self, t):
        t = np.asarray(t, dtype=float)
        if self.deriv2 is not None:
            return self.deriv2(t)
        step = 2e-4 * max(self.Q, 1e-12)
        return (
            self.evaluator(t + step) - 2 * self.evaluator(t) + self.evaluator(t - step)
        ) / (step * step)

    def scale_spot_check(self, support: tuple[float, float], factor: float = 50.0):
        """Sample |h'|, |h''| on a 32-point grid against Y/Q, Y/Q^2."""
        a, b = support
        ts = np.linspace(a + 1e-9 * (b - a), b - 1e-9 * (b - a), 32)
        ok1 = np.max(np.abs(self.d1(ts))) <= factor * self.Y / self.Q
        ok2 = np.max(np.abs(self.d2(ts))) <= factor * self.Y / self.Q**2
        return bool(ok1), bool(ok2)


def _canonical_bump(s: np.ndarray) -> np.ndarray:
    out = np.zeros_like(s)
    m = np.abs(s) < 1.0
    out[m] = np.exp(1.0 - 1.0 / (1.0 - s[m] ** 2))
    return out


def _smooth_step(t: np.ndarray) -> np.ndarray:
    """C-infinity step: 0 for t <= 0, 1 for t >= 1."""
    t = np.clip(t, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        g0 = np.where(t > 0, np.exp(-1.0 / np.maximum(t, 1e-300)), 0.0)
        g1 = np.where(t < 1, np.exp(-1.0 / np.maximum(1.0 - t, 1e-300)), 0.0)
    return g0 / (g0 + g1)


def bump_weight(a: float, b: float, amp: float = 1.0) -> SmoothWeight:
    """Canonical bump exp(1 - 1/(1-s^2)) mapped onto [a, b], peak = amp."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)

    def ev(t: np.ndarray) -> np.ndarray:
        return amp * _canonical_bump((np.asarray(t, dtype=float) - mid) / half)

    return SmoothWeight(ev, (a, b), amp_scale=amp, var_scale=half)


def plateau_weight(a: float, b: float, c: float, d: float, amp: float = 1.0) -> SmoothWeight:
    """Smoothed-step pair: rises on [a, b], flat at amp on [b, c], falls on [c, d]."""
    if not (a < b <= c < d):
        raise ValueError("need a < b <= c < d")

    def ev(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return amp * _smooth_step((t - a) / (b - a)) * _smooth_step((d - t) / (d - c))

    return SmoothWeight(ev, (a, d), amp_scale=amp, var_scale=min(b - a, d - c))


def gaussian_weight(center: float, sigma: float, halfwidth: float) -> SmoothWeight:
    """Truncated Gaussian; halfwidth must make the cut numerically silent."""

    def ev(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return np.exp(-(((t - center) / sigma) ** 2))

    return SmoothWeight(
        ev, (center - halfwidth, center + halfwidth), amp_scale=1.0, var_scale=sigma
    )


# ----------------------------------------------------------------------
# quadrature oracle

_PHASE_PER_PANEL = 9.0


def _phase_edges(h: PhaseSpec, a: float, b: float, max_panels: int) -> np.ndarray:
    """Panel edges at roughly equal phase increments."""
    n = 1025
    for _ in range(2):
        ts = np.linspace(a, b, n)
        hv = np.asarray(h(ts), dtype=float)
        total = float(np.sum(np.abs(np.diff(hv))))
        need = int(min(max(total / 2.0, 1024), 4_000_000))
        if need <= n:
            break
        n = need + 1
    if total > 1.2e7:
        raise ValueError(f"total phase variation {total:.3g} exceeds the 1e7 budget")
    cum = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(hv)))])
    panels = int(min(max(total / _PHASE_PER_PANEL, 8), max_panels))
    targets = np.linspace(0.0, cum[-1], panels + 1)
    edges = np.interp(targets, cum, ts)
    edges[0], edges[-1] = a, b
    return np.unique(edges)


def oscillatory_quadrature(
    w: SmoothWeight,
    h: PhaseSpec,
    tol: float = 1e-10,
    max_nodes: int = 3_000_000,
) -> ComplexEstimate:
    """integral of w(t) exp(i h(t)) dt over the support of w.

    Initial panels hold ~9 radians of phase each; every panel is
    accepted only when a GL24/GL12 pair agrees within its share of tol,
    otherwise it is bisected.  Accepted panels are summed left to right.
    """
    if tol < 1e-12:
        raise ValueError("tol below the 1e-12 floor")
    a, b = w.support
    x24, w24 = _gl(24)
    x12, w12 = _gl(12)

    def panel_pair(lo: float, hi: float) -> tuple[complex, complex]:
        half = 0.5 * (hi - lo)
        mid = 0.5 * (lo + hi)
        t24 = mid + half * x24
        f24 = w(t24) * np.exp(1j * np.asarray(h(t24), dtype=float))
        t12 = mid + half * x12
        f12 = w(t12) * np.exp(1j * np.asarray(h(t12), dtype=float))
        return half * np.dot(w24, f24), half * np.dot(w12, f12)

    edges = _phase_edges(h, a, b, max_panels=max_nodes // 72)
    todo = [(float(lo), float(hi)) for lo, hi in zip(edges[:-1], edges[1:])]
    accepted: list[tuple[float, complex, float]] = []
    nodes = 0
    span = b - a
    while todo:
        lo, hi = todo.pop()
        nodes += 36
        if nodes > max_nodes:
            best = sum(v for _, v, _ in accepted)
            bound = sum(e for _, _, e in accepted) + sum(
                abs(hi2 - lo2) * w.amp_scale for lo2, hi2 in todo
            )
            raise QuadratureError(
                f"node budget {max_nodes} exhausted", best, bound
            )
        i24, i12 = panel_pair(lo, hi)
        err = abs(i24 - i12)
        share = tol * max((hi - lo) / span, 1e-6)
        if err <= share or (hi - lo) < 1e-13 * span:
            accepted.append((lo, i24, min(err, share)))
        else:
            mid = 0.5 * (lo + hi)
            todo.append((mid, hi))
            todo.append((lo, mid))
    accepted.sort(key=lambda p: p[0])
    value = complex(sum(v for _, v, _ in accepted))
    bound = float(sum(e for _, _, e in accepted))
    return ComplexEstimate(value, max(bound, 1e-16 * abs(value)), "quadrature")


# ----------------------------------------------------------------------
# stationary phase


class StationaryPointError(RuntimeError):
    pass


def _find_stationary_point(h: PhaseSpec, a: float, b: float) -> float:
    ts = np.linspace(a, b, 257)
    d = np.asarray(h.d1(ts), dtype=float)
    sgn = np.sign(d)
    exact = [i for i in range(1, len(ts) - 1) if sgn[i] == 0]
    flips = [
        i for i in range(len(ts) - 1)
        if sgn[i] * sgn[i + 1] < 0
    ]
    if len(exact) + len(flips) == 0:
        raise StationaryPointError(
            "no interior sign change of h'; use nonstationary_decay_check"
        )
    if len(exact) + len(flips) > 1:
        raise StationaryPointError("multiple stationary points in support")
    if exact:
        i = exact[0]
        lo, hi = float(ts[i - 1]), float(ts[i + 1])
    else:
        lo, hi = float(ts[flips[0]]), float(ts[flips[0] + 1])
    flo = float(h.d1(np.array([lo]))[0])
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        fm = float(h.d1(np.array([mid]))[0])
        if flo * fm <= 0:
            hi = mid
        else:
            lo, flo = mid, fm
        if hi - lo < 1e-15 * max(abs(lo), abs(hi), 1.0):
            break
    t0 = 0.5 * (lo + hi)
    for _ in range(4):  # Newton polish
        d1 = float(h.d1(np.array([t0]))[0])
        d2 = float(h.d2(np.array([t0]))[0])
        if d2 == 0:
            break
        step = d1 / d2
        t0n = t0 - step
        if not (a < t0n < b):
            break
        t0 = t0n
        if abs(step) < 1e-14 * max(abs(t0), 1.0):
            break
    return t0


def stationary_phase_eval(
    w: SmoothWeight, h: PhaseSpec, order: int = 0
) -> ComplexEstimate:
    """Stationary-phase expansion of integral w exp(i h) at a unique
    interior critical point.

    Correction term n uses the 2n-th derivative at t0 of
    G(t) = w(t) exp(i (h(t) - h(t0) - h''(t0) (t-t0)^2 / 2)), computed
    by central differences; orders above 2 are out of scope.
    """
    if order < 0 or order > 2:
        raise ValueError("correction order limited to 0..2")
    a, b = w.support
    t0 = _find_stationary_point(h, a, b)
    h0 = float(h(np.array([t0]))[0])
    h2 = float(h.d2(np.array([t0]))[0])
    if h2 == 0.0:
        raise StationaryPointError("degenerate stationary point (h'' = 0)")
    sgn = 1.0 if h2 > 0 else -1.0
    rot = complex(math.cos(sgn * math.pi / 4), math.sin(sgn * math.pi / 4))

    def g_fn(ts: np.ndarray) -> np.ndarray:
        hv = np.asarray(h(ts), dtype=float)
        quad = h0 + 0.5 * h2 * (ts - t0) ** 2
        return np.asarray(w(ts), dtype=float) * np.exp(1j * (hv - quad))

    front = math.sqrt(2 * math.pi) * rot * complex(math.cos(h0), math.sin(h0))
    front /= math.sqrt(abs(h2))
    w0 = float(w(np.array([t0]))[0])
    terms = [front * w0]
    scale = min(w.var_scale, h.Q)
    if order >= 1:
        delta = scale * 3e-3
        pts = t0 + delta * np.arange(-2, 3)
        gv = g_fn(pts)
        g2 = (gv[3] - 2 * gv[2] + gv[1]) / (delta**2)
        terms.append(front * (1j * sgn / (2 * abs(h2))) * g2)
        if order >= 2:
            g4 = (gv[0] - 4 * gv[1] + 6 * gv[2] - 4 * gv[3] + gv[4]) / (delta**4)
            terms.append(front * 0.5 * (1j * sgn / (2 * abs(h2))) ** 2 * g4)
    value = sum(terms)
    # error model: geometric decay of the expansion plus FD noise
    ratio = 1.0 / max(
        (w.var_scale**2 * abs(h2)), (abs(h2) * h.Q**2) ** (1.0 / 3.0), 1.0001
    )
    err = abs(terms[-1]) * ratio + abs(terms[0]) * ratio ** (order + 1)
    err += abs(front) * 1e-9
    return ComplexEstimate(value, float(err), "asymptotic")


def fresnel_gaussian_reference(A: float) -> complex:
    """Closed form of integral exp(i A t^2 - t^2) dt over the real line."""
    return complex(np.sqrt(np.pi / complex(1.0, -A)))


# ----------------------------------------------------------------------
# decay and bound checks


@dataclass
class DecayReport:
    status: str  # PASS | FAIL | INCONCLUSIVE
    scales: list[float]
    magnitudes: list[float]
    bound_ratios: list[float]
    observed_ratios: list[float]
    threshold_scale: float | None
    note: str = ""


def nonstationary_decay_check(
    w: SmoothWeight,
    h: PhaseSpec,
    ladder: tuple[float, ...] = (1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0),
    A: float = 3.0,
    slack: float = 4.0,
) -> DecayReport:
    """Scale the phase by s along a geometric ladder and compare decay.

    With h_s = s h the first-derivative floor R and the size Y both
    scale by s, so the no-critical-point bound scales like
    (Q s R / sqrt(s Y))^-A + (s R V)^-A.  PASS requires the observed
    |I| to fall at least as fast (within a fixed slack) between
    consecutive rungs past the threshold R_s >= 10 max(sqrt(Y_s)/Q, 1/V).
    """
    if h.R is None or h.R <= 0:
        raise ValueError("phase must carry a positive lower bound R on |h'|")
    base = h.evaluator
    mags, bounds = [], []
    for s in ladder:
        hs = PhaseSpec(
            evaluator=lambda t, s=s: s * np.asarray(base(t), dtype=float),
            deriv=(lambda t, s=s: s * np.asarray(h.deriv(t), dtype=float))
            if h.deriv
            else None,
            Y=s * h.Y,
            Q=h.Q,
            R=s * h.R,
        )
        val = oscillatory_quadrature(w, hs, tol=1e-12)
        mags.append(abs(val.value))
        b1 = (h.Q * s * h.R / math.sqrt(s * h.Y)) ** (-A)
        b2 = (s * h.R * w.var_scale) ** (-A)
        bounds.append(w.var_scale * w.amp_scale * (b1 + b2))
    threshold = 10.0 * max(math.sqrt(h.Y) / h.Q, 1.0 / w.var_scale)
    past = [i for i, s in enumerate(ladder) if s * h.R >= threshold]
    if len(past) < 2:
        return DecayReport(
            "INCONCLUSIVE", list(ladder), mags, bounds, [], None,
            note="fewer than two rungs past the decay threshold",
        )
    obs, brat = [], []
    ok = True
    i0 = past[0]
    floor = 1e-15 * max(mags)
    for i in past[1:]:
        o = mags[i] / max(mags[i0], 1e-300)
        r = bounds[i] / bounds[i0]
        obs.append(o)
        brat.append(r)
        if mags[i] > floor and o > slack * r:
            ok = False
    return DecayReport(
        "PASS" if ok else "FAIL",
        list(ladder), mags, bounds, obs, ladder[i0],
    )


@dataclass
class SecondDerivativeReport:
    status: str
    integral: complex
    bound: float
    r: float
    M: float
    monotone_ok: bool
    sign_constant: bool


def second_derivative_bound_check(
    g: SmoothWeight, f: PhaseSpec
) -> SecondDerivativeReport:
    """Check |integral g e(f)| <= 8 M / sqrt(r) for f'' of constant sign.

    r = min |f''| and M = max |g| come from a grid scan; monotonicity of
    g/f' is scanned as a precondition flag.  The integrand uses the
    e(x) = exp(2 pi i x) convention of the bound.
    """
    a, b = g.support
    ts = np.linspace(a + 1e-9, b - 1e-9, 1025)
    f2 = np.asarray(f.d2(ts), dtype=float)
    sign_constant = bool(np.all(f2 > 0) or np.all(f2 < 0))
    if not sign_constant:
        raise ValueError("f'' changes sign on the support")
    r = float(np.min(np.abs(f2)))
    M = float(np.max(np.abs(np.asarray(g(ts), dtype=float))))
    f1 = np.asarray(f.d1(ts), dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.asarray(g(ts), dtype=float) / f1
    finite = np.isfinite(ratio)
    diffs = np.diff(ratio[finite])
    monotone_ok = bool(np.all(diffs >= -1e-12) or np.all(diffs <= 1e-12))
    phase = PhaseSpec(
        evaluator=lambda t: 2 * math.pi * np.asarray(f.evaluator(t), dtype=float),
        deriv=(lambda t: 2 * math.pi * np.asarray(f.deriv(t), dtype=float))
        if f.deriv
        else None,
        Y=2 * math.pi * f.Y,
        Q=f.Q,
    )
    val = oscillatory_quadrature(g, phase, tol=1e-11)
    bound = 8.0 * M / math.sqrt(r)
    status = "PASS" if abs(val.value) <= bound else "FAIL"
    return SecondDerivativeReport(
        status=status,
        integral=val.value,
        bound=bound,
        r=r,
        M=M,
        monotone_ok=monotone_ok,
        sign_constant=sign_constant,
    )


# ----------------------------------------------------------------------
# Bessel-weighted sum over the odd weight grid

_PHI_HAT_STEP = 0.02
_PHI_HAT_MAX = 368.0  # |phi_hat| < 1e-13 beyond this frequency
_phi_hat_cache: list[CubicSpline] = []


def _phi_hat_spline() -> CubicSpline:
    """Spline of phi_hat(xi) = int_{-1}^{1} exp(1 - 1/(1-s^2)) e^{i xi s} ds.

    phi is even, so phi_hat is real and even.  The rule must resolve the
    full 2*xi radians of phase at the top of the grid, hence the large
    node count; past _PHI_HAT_MAX the transform is below 1e-13 and is
    treated as zero by callers.
    """
    if _phi_hat_cache:
        return _phi_hat_cache[0]
    grid = np.arange(0.0, _PHI_HAT_MAX + 1.0, _PHI_HAT_STEP)
    xs, ws = _gl(560)
    phi = _canonical_bump(xs)
    vals = np.cos(np.outer(grid, xs)) @ (phi * ws)
    sp = CubicSpline(grid, vals)
    _phi_hat_cache.append(sp)
    return sp


def _phi_hat(xi: np.ndarray) -> np.ndarray:
    """phi_hat at |xi|, zero past the certified range."""
    xi = np.abs(np.asarray(xi, dtype=float))
    sp = _phi_hat_spline()
    out = np.zeros_like(xi)
    m = xi <= _PHI_HAT_MAX
    out[m] = sp(xi[m])
    return out


def bump_fourier(v: np.ndarray) -> np.ndarray:
    """Fourier transform of the canonical [1,2] bump: int W(u) e(uv) du."""
    v = np.asarray(v, dtype=float)
    return 0.5 * np.exp(3j * math.pi * v) * _phi_hat(v * math.pi)


def bessel_weighted_k_sum(K: int, x: float, mode: str) -> ComplexEstimate:
    """S1 = sum over odd weights k of i^(-k) W((k-1)/K) J_{k-1}(2 pi x).

    The sum runs over the odd weight grid (the parity attached to odd
    nebentypus in the trace formula), with W the canonical bump on
    [1, 2].  Modes:

    direct      brute-force sum of Bessel values;
    kernel      the sum-over-orders identity: combining the mod-4
                kernels over the even order classes collapses to
                -i int_R K What(K v) cos(2 pi x cos 2 pi v) dv,
                evaluated by panelled quadrature (What via bump_fourier);
    asymptotic  leading stationary term with the u-integral folded in:
                -i K w0 cos(2 pi x - pi/4) / (2 pi sqrt(x)), w0 = int W.
    """
    if K < 8:
        raise ValueError("need K >= 8")
    if x <= 0:
        raise ValueError("need x > 0")
    if mode == "direct":
        total = 0j
        err = 0.0
        for k in range(K + 1, 2 * K + 2):
            if k % 2 == 0:
                continue
            u = (k - 1) / K
            wv = float(_canonical_bump(np.array([2.0 * u - 3.0]))[0])
            if wv == 0.0:
                continue
            jv = bessel_j(k - 1, 2 * math.pi * x)
            total += (1j) ** (-k % 4) * wv * jv.value
            err += wv * jv.abs_error
        return ComplexEstimate(total, err + 1e-15, "series")
    if mode == "kernel":
        y = 2 * math.pi * x
        vmax = _PHI_HAT_MAX / (math.pi * K)
        # weight factor oscillates at ~4 pi K, the kernel at <= 2 pi y
        rate = 2 * math.pi * y + 4 * math.pi * K
        panels = int(min(max(rate * vmax / 11.0, 64), 2_000_000))
        xs, ws = _gl(24)
        edges = np.linspace(0.0, vmax, panels + 1)
        total = 0.0
        chunk = 4096
        for i0 in range(0, panels, chunk):
            lo = edges[i0 : min(i0 + chunk, panels)]
            hi = edges[i0 + 1 : min(i0 + chunk, panels) + 1]
            half = 0.5 * (hi - lo)
            mid = 0.5 * (hi + lo)
            v = mid[:, None] + half[:, None] * xs[None, :]
            f = (
                (K / 2.0)
                * np.cos(3 * math.pi * K * v)
                * _phi_hat(math.pi * K * v)
                * np.cos(y * np.cos(2 * math.pi * v))
            )
            total += float(np.sum((f @ ws) * half))
        value = -2j * total
        return ComplexEstimate(value, 2e-9 + abs(value) * 1e-10, "quadrature")
    if mode == "asymptotic":
        xs, ws = _gl(64)
        w0 = float(np.dot(_canonical_bump(xs), ws)) * 0.5
        lead = -1j * K * w0 * math.cos(2 * math.pi * x - math.pi / 4) / (
            2 * math.pi * math.sqrt(x)
        )
        err = abs(K * w0 / (2 * math.pi * math.sqrt(x))) * min(
            1.0, 2.0 * K * K / x
        )
        return ComplexEstimate(lead, err, "asymptotic")
    raise ValueError(f"unknown mode {mode!r}")


def sum_over_orders_check(
    a: int,
    y: float,
    g: Callable[[np.ndarray], np.ndarray],
    g_hat: Callable[[np.ndarray], np.ndarray],
    order_range: tuple[int, int] = (-80, 120),
    v_max: float = 12.0,
) -> tuple[complex, complex]:
    """Both sides of 4 sum_{u = a mod 4} g(u) J_u(y) = int ghat(v) C_a(v, y) dv.

    Odd residue class a; the kernel argument matches the Bessel argument
    y on both sides.  Returns (direct, kernel) for the caller to compare.
    """
    if a % 2 == 0:
        raise ValueError("this check covers odd residue classes")
    from .special import bessel_kernel_ca

    direct = 0.0 + 0j
    for u in range(order_range[0], order_range[1] + 1):
        if u % 4 != a % 4:
            continue
        gu = float(g(np.array([float(u)]))[0])
        if gu == 0.0:
            continue
        if u >= 0:
            ju = bessel_j(u, y).value
        else:
            jv = bessel_j(-u, y).value
            ju = jv if (-u) % 2 == 0 else -jv
        direct += 4.0 * gu * ju
    rate = 2 * math.pi * y + 1.0
    panels = int(min(max(rate * 2 * v_max / 10.0, 64), 400_000))
    xs, ws = _gl(24)
    edges = np.linspace(-v_max, v_max, panels + 1)
    total = 0j
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        v = mid + half * xs
        ca = np.array([bessel_kernel_ca(a, float(vv), y) for vv in v])
        total += half * np.dot(ws, np.asarray(g_hat(v), dtype=complex) * ca)
    return direct, total
