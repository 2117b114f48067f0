"""Kloosterman sums, twisted variants, and two complete character sums.

Every operation here is a brute-force evaluator meant as semantic
ground truth: terms are exact roots of unity looked up from a cached
table, accumulated with compensated summation.  Closed forms are always
checked against these sums, never substituted for them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import inv_mod, is_prime, require_inv, unit_roots
from .characters import DirichletCharacter, gauss_sum


def _residue_tables(c: int) -> tuple[np.ndarray, np.ndarray]:
    """Units mod c and their inverses, as parallel integer arrays."""
    xs = []
    invs = []
    for x in range(c):
        xinv = inv_mod(x, c)
        if xinv is not None:
            xs.append(x)
            invs.append(xinv)
    return np.array(xs, dtype=np.int64), np.array(invs, dtype=np.int64)


_table_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def units_and_inverses(c: int) -> tuple[np.ndarray, np.ndarray]:
    got = _table_cache.get(c)
    if got is None:
        got = _residue_tables(c)
        _table_cache[c] = got
    return got


def kloosterman(m: int, n: int, c: int) -> complex:
    """S(m, n; c) = sum over units x mod c of e((m x + n xbar)/c)."""
    if c < 1:
        raise ValueError("modulus must be positive")
    if c == 1:
        return 1.0 + 0.0j
    xs, invs = units_and_inverses(c)
    idx = (m % c * xs + n % c * invs) % c
    terms = unit_roots(c)[idx]
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def twisted_kloosterman(
    chi: DirichletCharacter, m: int, n: int, c: int
) -> complex:
    """S_chi(m, n; c) with chi of modulus dividing c."""
    if c % chi.modulus != 0:
        raise ValueError(
            f"character modulus {chi.modulus} does not divide c = {c}"
        )
    if c == 1:
        return 1.0 + 0.0j
    xs, invs = units_and_inverses(c)
    idx = (m % c * xs + n % c * invs) % c
    roots = unit_roots(c)
    re, im = [], []
    for x, j in zip(xs, idx):
        w = roots[j] * chi.value(int(x))
        re.append(w.real)
        im.append(w.imag)
    return complex(math.fsum(re), math.fsum(im))


def kloosterman_crt(m: int, n: int, c1: int, c2: int) -> complex:
    """S(m, n; c1 c2) assembled from the coprime factorization.

    S(m, n; c1 c2) = S(m c2bar, n c2bar; c1) * S(m c1bar, n c1bar; c2)
    where c2bar inverts c2 mod c1 and vice versa.  Used only as a fast
    path cross-checked against the brute-force definition.
    """
    if math.gcd(c1, c2) != 1:
        raise ValueError("factors must be coprime")
    c2b = require_inv(c2, c1) if c1 > 1 else 0
    c1b = require_inv(c1, c2) if c2 > 1 else 0
    return kloosterman(m * c2b, n * c2b, c1) * kloosterman(m * c1b, n * c1b, c2)


@dataclass
class FactorizationReport:
    """Three independent evaluations of the twisted-sum factorization.

    lhs          S_psi(n q^(2+nu), m'; c q), the full twisted sum
    middle       S_psi(0, m' cbar; q) * S(n q^(1+nu), m' qbar; c)
    displayed    sqrt(q) conj(eps_psi) psi(m' cbar) S(n, m' q^nu; c)
    corrected    psi(-1) * displayed

    The lhs/middle equality is an exact CRT splitting.  The displayed
    final form drops a psi(-1); for odd psi that is a sign flip, which
    the corrected variant restores.
    """

    q: int
    c: int
    n: int
    mprime: int
    nu: int
    lhs: complex
    middle: complex
    displayed: complex
    corrected: complex
    diff_lhs_middle: float = field(init=False)
    diff_lhs_displayed: float = field(init=False)
    diff_lhs_corrected: float = field(init=False)

    def __post_init__(self):
        self.diff_lhs_middle = abs(self.lhs - self.middle)
        self.diff_lhs_displayed = abs(self.lhs - self.displayed)
        self.diff_lhs_corrected = abs(self.lhs - self.corrected)


def verify_twisted_factorization(
    chi: DirichletCharacter, n: int, mprime: int, nu: int, c: int
) -> FactorizationReport:
    """Evaluate both sides of the twisted Kloosterman factorization.

    Preconditions: q prime, chi primitive and odd, gcd(c, q) = 1,
    gcd(m', q) = 1, nu >= 0.
    """
    q = chi.modulus
    if not is_prime(q):
        raise ValueError("modulus of the twist must be prime")
    if not (chi.primitive and chi.is_odd):
        raise ValueError("twist must be primitive and odd")
    if math.gcd(c, q) != 1 or math.gcd(mprime, q) != 1:
        raise ValueError("c and m' must be coprime to q")
    if nu < 0:
        raise ValueError("nu must be nonnegative")

    lhs = twisted_kloosterman(chi, n * q ** (2 + nu), mprime, c * q)

    cbar_q = require_inv(c, q)
    qbar_c = require_inv(q, c) if c > 1 else 0
    middle = twisted_kloosterman(chi, 0, mprime * cbar_q, q) * kloosterman(
        n * q ** (1 + nu), mprime * qbar_c, c
    )

    eps = gauss_sum(chi).epsilon
    displayed = (
        math.sqrt(q)
        * eps.conjugate()
        * chi.value(mprime * cbar_q)
        * kloosterman(n, mprime * q**nu, c)
    )
    corrected = chi.value(q - 1) * displayed

    return FactorizationReport(
        q=q, c=c, n=n, mprime=mprime, nu=nu,
        lhs=lhs, middle=middle, displayed=displayed, corrected=corrected,
    )


@dataclass(frozen=True)
class GridSumResult:
    value: complex
    closed_form: complex | None
    abs_diff: float | None


def charsum_grid(m: int, n: int, c: int) -> GridSumResult:
    """C(m, n, c) = sum over alpha mod c, beta in units mod c of
    e((alpha beta + m betabar + n alpha)/c), by literal double sum.

    alpha runs over all residues, beta over units (betabar must exist).
    Compared against the closed form c e(-m nbar / c), which requires
    gcd(n, c) = 1; when that fails the comparison is marked inapplicable
    and only the brute-force value is returned.
    """
    if c < 1:
        raise ValueError("modulus must be positive")
    if c == 1:
        return GridSumResult(1.0 + 0j, 1.0 + 0j, 0.0)
    betas, betabars = units_and_inverses(c)
    roots = unit_roots(c)
    alphas = np.arange(c, dtype=np.int64)
    # exponent grid: alpha*(beta + n) + m*betabar, reduced mod c
    expo = (np.outer(alphas, (betas + n) % c) + (m % c) * betabars) % c
    terms = roots[expo]
    value = complex(
        math.fsum(terms.real.sum(axis=0)), math.fsum(terms.imag.sum(axis=0))
    )
    nbar = inv_mod(n, c)
    if nbar is None:
        return GridSumResult(value, None, None)
    closed = c * complex(roots[(-m % c) * nbar % c])
    return GridSumResult(value, closed, abs(value - closed))


def charsum_grid_collapsed(m: int, n: int, c: int) -> complex:
    """Fast path: the alpha-sum collapses onto beta = -n.

    sum over alpha of e(alpha (beta + n)/c) is c when beta = -n mod c
    and 0 otherwise, so the grid reduces to a single term (or to 0 when
    -n is not a unit).  Tests bit-compare this against charsum_grid.
    """
    if c == 1:
        return 1.0 + 0.0j
    betabar = inv_mod(-n, c)
    if betabar is None:
        return 0.0 + 0.0j
    return c * complex(unit_roots(c)[(m % c) * betabar % c])


@dataclass(frozen=True)
class CongruenceSumResult:
    value: complex
    indicator: bool
    predicted: complex
    abs_diff: float


def charsum_congruence(
    m: int, n1: int, n2: int, c1: int, c2: int
) -> CongruenceSumResult:
    """sum over beta mod c1 c2 of
    e(-beta n1bar/c1 + beta n2bar/c2 + m beta/(c1 c2)),
    compared against c1 c2 * [n1bar c2 - n2bar c1 = m mod c1 c2].
    """
    n1b = require_inv(n1, c1) if c1 > 1 else 0
    n2b = require_inv(n2, c2) if c2 > 1 else 0
    cc = c1 * c2
    roots = unit_roots(cc)
    # exponent is beta * (m - n1bar c2 + n2bar c1) / (c1 c2)
    t = (m - n1b * c2 + n2b * c1) % cc
    terms = roots[np.arange(cc, dtype=np.int64) * t % cc]
    value = complex(math.fsum(terms.real), math.fsum(terms.imag))
    fired = t == 0
    predicted = complex(cc if fired else 0.0)
    return CongruenceSumResult(value, fired, predicted, abs(value - predicted))
