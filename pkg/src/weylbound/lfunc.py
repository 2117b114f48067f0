"""Central values L(1/2 + it, f) by smoothed approximate functional
equation, the weighted coefficient sums S(N), and the exponent scan.

The AFE splits L into two Dirichlet pieces of complementary lengths
around sqrt(analytic conductor), linked by the root factor
eps(f) gamma(1-s)/gamma(s).  Correctness is certified internally: the
split point ("balance") is mathematically irrelevant, so disagreement
between two balance choices measures every error source at once.

The smoothing is V(u) = (1/2 pi i) int G(w) (gamma(s+w)/gamma(s))
u^(-w) dw / w on Re w = 1 with the widened Gaussian G(w) =
exp((w/3)^2).  A unit-width Gaussian decays in u only like
exp(-ln(u/sqrt C)^2 / 4), which would need Dirichlet pieces tens of
thousands of conductors long; the width-3 version reaches 1e-12 by
u ~ 30 sqrt(C) while still dying superexponentially on the contour.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .modforms import delta_eigenform, hecke_eigenforms
from .oscint import SmoothWeight
from .special import ComplexEstimate, log_gamma_vec

MOLLIFIER_WIDTH = 3.0
CUT_RATIO = 30.0  # V(u) < 5e-12 once u > CUT_RATIO * sqrt(conductor)
# Re w = 1 keeps the series absolutely convergent while the integrand
# only reaches conductor^(1/2), limiting cancellation noise
_CONTOUR_SIGMA = 1.0
# on the lower half-line the gamma ratio grows like exp(pi |tau| / 2);
# the Gaussian must bury that: T^2/width^2 - (pi/2) T >= 34
_CONTOUR_TMAX = 28.0
_CONTOUR_PANELS = 40
_CONTOUR_NODES = 12


@dataclass(frozen=True)
class CoefficientSource:
    """Normalized coefficients lambda(1..n_max); values[0] is unused."""

    origin: str  # computed | ingested
    values: np.ndarray
    n_max: int

    def __post_init__(self):
        if abs(self.values[1] - 1.0) > 1e-12:
            raise ValueError("coefficients must be normalized with lambda(1) = 1")


@dataclass(frozen=True)
class LFunctionSpec:
    """Degree-2 L-function data: gamma factor kind, coefficients, root number."""

    kind: str  # holomorphic | maass
    gamma_data: float  # weight k, or spectral parameter nu
    coefficients: CoefficientSource
    root_number: complex

    def __post_init__(self):
        if self.kind not in ("holomorphic", "maass"):
            raise ValueError("kind must be holomorphic or maass")
        if abs(abs(self.root_number) - 1.0) > 1e-9:
            raise ValueError("root number must be unimodular")


def delta_spec(prec: int = 11000) -> LFunctionSpec:
    """The weight-12 level-1 form with coefficients from the eta product."""
    f = delta_eigenform(prec)
    vals = np.array(f.normalized)
    return LFunctionSpec(
        kind="holomorphic",
        gamma_data=12.0,
        coefficients=CoefficientSource("computed", vals, prec),
        root_number=complex((1j) ** 12),
    )


def holomorphic_spec(k: int, prec: int, index: int = 0) -> LFunctionSpec:
    """Eigenform L-function of weight k; root number i^k."""
    f = hecke_eigenforms(k, prec)[index]
    vals = np.array(f.normalized)
    return LFunctionSpec(
        kind="holomorphic",
        gamma_data=float(k),
        coefficients=CoefficientSource("computed", vals, prec),
        root_number=complex((1j) ** (k % 4)),
    )


def conductor_sqrt(spec: LFunctionSpec, t: float) -> float:
    """sqrt of the analytic conductor at height t (gamma-factor scale)."""
    s = complex(0.5, t)
    if spec.kind == "holomorphic":
        return abs(s + (spec.gamma_data - 1) / 2.0) / (2 * math.pi)
    nu = spec.gamma_data
    return math.sqrt(abs(s * s + nu * nu)) / (2 * math.pi)


def _log_gamma_factor(spec: LFunctionSpec, s: np.ndarray) -> np.ndarray:
    """log of the completed gamma factor, vectorized over s."""
    s = np.asarray(s, dtype=complex)
    if spec.kind == "holomorphic":
        k = spec.gamma_data
        return -s * math.log(2 * math.pi) + log_gamma_vec(s + (k - 1) / 2.0)
    nu = spec.gamma_data
    return (
        -s * math.log(math.pi)
        + log_gamma_vec((s + 1j * nu) / 2.0)
        + log_gamma_vec((s - 1j * nu) / 2.0)
    )


class _AfeContour:
    """Precomputed contour data for V at one (spec, t).

    The default panel count serves the AFE sums, whose arguments stay
    within a few e-folds of the conductor scale (the gamma-ratio drift
    cancels most of the exp(-i tau ln u) oscillation there).  Callers
    probing extreme arguments pass a denser panelling.
    """

    def __init__(self, spec: LFunctionSpec, t: float, panels: int | None = None):
        from scipy.special import roots_legendre

        if panels is None:
            panels = _CONTOUR_PANELS
        xg, wg = roots_legendre(_CONTOUR_NODES)
        edges = np.linspace(-_CONTOUR_TMAX, _CONTOUR_TMAX, panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[:-1] + edges[1:])
        tau = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
        wts = (half[:, None] * wg[None, :]).ravel()
        w = _CONTOUR_SIGMA + 1j * tau
        s = complex(0.5, t)
        log_ratio = _log_gamma_factor(spec, s + w) - _log_gamma_factor(
            spec, np.array([s])
        )
        G = np.exp((w / MOLLIFIER_WIDTH) ** 2)
        # (1/2 pi i) f(w) dw on the vertical line = (1/2 pi) f dtau
        amp = wts * G * np.exp(log_ratio) / w / (2 * math.pi)
        keep = np.abs(amp) > 1e-19 * np.abs(amp).max()
        self.amp = amp[keep]
        self.w = w[keep]

    def weight(self, u: np.ndarray) -> np.ndarray:
        """V(u) for an array of positive cutoff arguments."""
        u = np.atleast_1d(np.asarray(u, dtype=float))
        lu = np.log(u)
        tau = self.w.imag
        out = np.empty(len(u), dtype=complex)
        block = 4096
        for i in range(0, len(u), block):
            seg = lu[i : i + block]
            m = np.outer(seg, tau)
            cos_m, sin_m = np.cos(m), np.sin(m)
            # u^{-w} = u^{-sigma} (cos(tau ln u) - i sin(tau ln u))
            out[i : i + block] = np.exp(-_CONTOUR_SIGMA * seg) * (
                cos_m @ self.amp - 1j * (sin_m @ self.amp)
            )
        return out


def afe_weight(y: float, t: float, spec: LFunctionSpec, balance: float) -> complex:
    """Smoothed cutoff V_t(balance * y): tends to 1 as y -> 0 and dies
    superpolynomially past the conductor scale (with an order-ten
    oscillatory transition region in between, a trait of the widened
    mollifier)."""
    if y <= 0:
        raise ValueError("y must be positive")
    if not (0.25 <= balance <= 4.0):
        raise ValueError("balance must lie in [1/4, 4]")
    u = balance * y
    # a lone extreme argument carries u^(-sigma)-amplified cancellation;
    # pay for a dense contour (phase <= ~6 radians per panel)
    span = abs(math.log(u)) + abs(math.log(max(conductor_sqrt(spec, t), 1e-6))) + 6.0
    panels = max(_CONTOUR_PANELS, int(2 * _CONTOUR_TMAX * span / 6.0) + 1)
    contour = _AfeContour(spec, t, panels=panels)
    return complex(contour.weight(np.array([u]))[0])


def afe_lengths(spec: LFunctionSpec, t: float, balance: float) -> tuple[int, int]:
    """Dirichlet-piece truncation lengths for the two AFE sums."""
    sc = conductor_sqrt(spec, t)
    n1 = int(math.ceil(CUT_RATIO * sc / balance)) + 1
    n2 = int(math.ceil(CUT_RATIO * sc * balance)) + 1
    return n1, n2


def central_value(
    spec: LFunctionSpec,
    t: float,
    balance: float = 1.0,
    _contour: "_AfeContour | None" = None,
) -> ComplexEstimate:
    """L(1/2 + it) as the two smoothed Dirichlet pieces plus root factor."""
    if not (0.25 <= balance <= 4.0):
        raise ValueError("balance must lie in [1/4, 4]")
    n1, n2 = afe_lengths(spec, t, balance)
    if max(n1, n2) > spec.coefficients.n_max:
        raise ValueError(
            f"need coefficients to n = {max(n1, n2)}, have {spec.coefficients.n_max}"
        )
    contour = _contour if _contour is not None else _AfeContour(spec, t)
    lam = spec.coefficients.values
    s = complex(0.5, t)

    ns = np.arange(1, n1 + 1, dtype=float)
    v1 = contour.weight(ns * balance)
    sum1 = complex(np.sum(lam[1 : n1 + 1] * ns ** (-s) * v1))

    ns2 = np.arange(1, n2 + 1, dtype=float)
    v2 = np.conj(contour.weight(ns2 / balance))
    sum2 = complex(np.sum(lam[1 : n2 + 1] * ns2 ** (s - 1.0) * v2))

    lg_s = complex(_log_gamma_factor(spec, np.array([s]))[0])
    lg_1ms = complex(_log_gamma_factor(spec, np.array([1 - s]))[0])
    omega = spec.root_number * np.exp(lg_1ms - lg_s)

    value = sum1 + omega * sum2
    # truncation model: the log-normal mollifier tail past the cut,
    # summed against a divisor-weighted n^(-1/2) envelope
    v_cut = math.exp(-((MOLLIFIER_WIDTH * math.log(CUT_RATIO) / 2.0) ** 2))
    tail = v_cut * 35.0 * (1.0 + (math.sqrt(n1) + math.sqrt(n2)) / 30.0)
    return ComplexEstimate(value, tail + 1e-12 * abs(value), "quadrature")


def sn_sum(
    coeffs: CoefficientSource, N: int, t: float, W: SmoothWeight
) -> complex:
    """sum of lambda(n) n^{it} W(n/N) over the support of W, compensated."""
    lo, hi = W.support
    n_lo = max(1, int(math.floor(lo * N)))
    n_hi = int(math.ceil(hi * N))
    if n_hi > coeffs.n_max:
        raise ValueError(f"need coefficients to n = {n_hi}, have {coeffs.n_max}")
    ns = np.arange(n_lo, n_hi + 1, dtype=float)
    wv = W(ns / N)
    terms = coeffs.values[n_lo : n_hi + 1] * wv * np.exp(1j * t * np.log(ns))
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


@dataclass(frozen=True)
class ScanRecord:
    t: float
    modulus: float
    afe_length: int
    consistency_gap: float
    convexity_ratio: float
    weyl_ratio: float
    accepted: bool


def _scan_one(spec: LFunctionSpec, t: float, balances: tuple[float, float]) -> ScanRecord:
    contour = _AfeContour(spec, t)
    v1 = central_value(spec, t, balances[0], _contour=contour)
    v2 = central_value(spec, t, balances[1], _contour=contour)
    gap = abs(v1.value - v2.value)
    modulus = abs(v1.value)
    ok = gap <= 1e-6 * max(1.0, modulus)
    base = max(t, 1e-9)
    return ScanRecord(
        t=t,
        modulus=modulus,
        afe_length=max(afe_lengths(spec, t, balances[0])),
        consistency_gap=gap,
        convexity_ratio=modulus / base**0.5,
        weyl_ratio=modulus / base ** (1.0 / 3.0),
        accepted=ok,
    )


def exponent_scan(
    spec: LFunctionSpec,
    t_min: float,
    t_max: float,
    step: float,
    balances: tuple[float, float] = (1.0, 2.0),
    parallelism: int = 1,
) -> list[ScanRecord]:
    """Scan |L(1/2 + it)| over a t-grid with consistency gating.

    Grid includes both endpoints when t_min < t_max and is empty when
    t_min = t_max.  Records are computed independently (optionally in
    a thread pool) and returned ordered by t.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    if t_max > 5000:
        raise ValueError("desk-scale scan limited to t <= 5000")
    if t_max <= t_min:
        return []
    count = int(math.floor((t_max - t_min) / step + 1e-9)) + 1
    ts = [t_min + i * step for i in range(count)]
    if ts[-1] < t_max - 1e-9:
        ts.append(t_max)
    if parallelism > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            records = list(pool.map(lambda t: _scan_one(spec, t, balances), ts))
    else:
        records = [_scan_one(spec, t, balances) for t in ts]
    return records


@dataclass(frozen=True)
class ScanSummary:
    n_records: int
    n_flagged: int
    max_convexity_ratio: float
    max_weyl_ratio: float
    peak_count: int
    fit_slope: float | None
    fit_intercept: float | None


def scan_summary(records: list[ScanRecord]) -> ScanSummary:
    """Max ratios plus a least-squares fit of log |L| peaks against log t.

    Peaks are interior local maxima of |L| among accepted records; the
    fitted slope is the empirical growth exponent.
    """
    ok = [r for r in records if r.accepted]
    flagged = len(records) - len(ok)
    if not ok:
        return ScanSummary(len(records), flagged, 0.0, 0.0, 0, None, None)
    peaks = [
        r
        for i, r in enumerate(ok)
        if 0 < i < len(ok) - 1
        and ok[i - 1].modulus <= r.modulus >= ok[i + 1].modulus
        and r.modulus > 0
    ]
    slope = intercept = None
    if len(peaks) >= 2:
        xs = np.log([r.t for r in peaks])
        ys = np.log([r.modulus for r in peaks])
        slope_f, intercept_f = np.polyfit(xs, ys, 1)
        slope, intercept = float(slope_f), float(intercept_f)
    return ScanSummary(
        n_records=len(records),
        n_flagged=flagged,
        max_convexity_ratio=max(r.convexity_ratio for r in ok),
        max_weyl_ratio=max(r.weyl_ratio for r in ok),
        peak_count=len(peaks),
        fit_slope=slope,
        fit_intercept=intercept,
    )


@dataclass(frozen=True)
class MaassIngestReport:
    nu: float
    epsilon: float
    parity: str
    n_max: int
    kim_sarnak_violations: tuple
    rankin_selberg_ratio: float


def load_maass_file(path: str) -> tuple[LFunctionSpec, MaassIngestReport]:
    """Read a Maass coefficient file and run its admission checks.

    Header: '# nu = <decimal>', '# epsilon = <+1|-1>',
    '# parity = <even|odd>'; then 'n,lambda_n' rows from n = 1 with
    lambda(1) = 1.  The Rankin-Selberg mean-square ratio must land in
    [0.05, 20] or the file is rejected; coefficients breaching twice
    the 7/64 bound are reported but tolerated.
    """
    nu = epsilon = None
    parity = None
    rows: dict[int, float] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, val = body.partition("=")
                    key = key.strip().lower()
                    val = val.strip()
                    if key == "nu":
                        nu = float(val)
                    elif key == "epsilon":
                        epsilon = float(val)
                    elif key == "parity":
                        parity = val
                continue
            n_str, _, lam_str = line.partition(",")
            rows[int(n_str)] = float(lam_str)
    if nu is None:
        raise ValueError("missing '# nu = ...' header")
    if parity not in ("even", "odd"):
        raise ValueError("missing or bad '# parity = ...' header")
    if epsilon is None:
        epsilon = 1.0 if parity == "even" else -1.0
    n_max = max(rows)
    if set(rows) != set(range(1, n_max + 1)):
        raise ValueError("coefficient rows must cover n = 1..n_max")
    vals = np.zeros(n_max + 1)
    for n, lam in rows.items():
        vals[n] = lam
    if abs(vals[1] - 1.0) > 1e-12:
        raise ValueError("lambda(1) must equal 1")
    ns = np.arange(1, n_max + 1, dtype=float)
    violations = tuple(
        int(n)
        for n, lam in zip(ns, vals[1:])
        if abs(lam) > 2.0 * n ** (7.0 / 64.0)
    )
    rs_ratio = float(np.sum(vals[1:] ** 2) / n_max)
    if not (0.05 <= rs_ratio <= 20.0):
        raise ValueError(
            f"Rankin-Selberg mean-square ratio {rs_ratio:.4g} outside [0.05, 20]; "
            "file looks corrupted or misnormalized"
        )
    spec = LFunctionSpec(
        kind="maass",
        gamma_data=nu,
        coefficients=CoefficientSource("ingested", vals, n_max),
        root_number=complex(epsilon),
    )
    report = MaassIngestReport(
        nu=nu,
        epsilon=epsilon,
        parity=parity,
        n_max=n_max,
        kim_sarnak_violations=violations,
        rankin_selberg_ratio=rs_ratio,
    )
    return spec, report


def completed_modulus_closure(spec: LFunctionSpec, t: float) -> float:
    """| |Lambda(1/2+it)| - |Lambda(1/2-it)| | from the computed central value.

    Lambda(s) = gamma(s) L(s); with real coefficients L(1/2 - it) is the
    conjugate, so the closure defect isolates gamma-factor and AFE error.
    """
    v_plus = central_value(spec, t).value
    v_minus = central_value(spec, -t).value
    lg_p = complex(_log_gamma_factor(spec, np.array([complex(0.5, t)]))[0])
    lg_m = complex(_log_gamma_factor(spec, np.array([complex(0.5, -t)]))[0])
    lam_p = abs(np.exp(lg_p)) * abs(v_plus)
    lam_m = abs(np.exp(lg_m)) * abs(v_minus)
    return abs(lam_p - lam_m)
