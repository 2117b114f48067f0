"""Level-1 holomorphic cusp forms with exact integer q-expansions.

The basis of weight-k cusp forms is echelonized from monomials in the
Eisenstein series E4 and E6; all coefficient arithmetic is exact big
integers (polynomial products go through Kronecker substitution, so
CPython's subquadratic integer multiply does the heavy lifting).
Floating point enters only at the final normalization
lambda(n) = a(n) / n^((k-1)/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import divisor_counts


# ----------------------------------------------------------------------
# integer polynomial arithmetic (coefficient lists, index = q-power)

def _encode(coeffs: list[int], width: int) -> int:
    chunks = b"".join(
        c.to_bytes(width, "little", signed=False) for c in coeffs
    )
    return int.from_bytes(chunks, "little")


def _decode(value: int, width: int, count: int) -> list[int]:
    nbytes = max((value.bit_length() + 7) // 8, width * count)
    raw = value.to_bytes(nbytes, "little", signed=False)
    return [
        int.from_bytes(raw[i * width : (i + 1) * width], "little")
        for i in range(count)
    ]


def poly_mul(a: list[int], b: list[int], prec: int) -> list[int]:
    """Product of integer polynomials truncated past degree prec.

    Signed Kronecker substitution: split into positive/negative parts,
    pack each into one big integer, and let integer multiplication do
    the convolution.  Exact for arbitrarily large coefficients.
    """
    a = a[: prec + 1]
    b = b[: prec + 1]
    if not a or not b:
        return [0] * (prec + 1)
    max_a = max(abs(c) for c in a)
    max_b = max(abs(c) for c in b)
    if max_a == 0 or max_b == 0:
        return [0] * (prec + 1)
    overlap = min(len(a), len(b))
    bound = max_a * max_b * overlap
    width = (bound.bit_length() + 8) // 8 + 1
    ap = _encode([c if c > 0 else 0 for c in a], width)
    am = _encode([-c if c < 0 else 0 for c in a], width)
    bp = _encode([c if c > 0 else 0 for c in b], width)
    bm = _encode([-c if c < 0 else 0 for c in b], width)
    n_out = min(len(a) + len(b) - 1, prec + 1)
    pos = _decode(ap * bp + am * bm, width, n_out)
    neg = _decode(ap * bm + am * bp, width, n_out)
    out = [p - q for p, q in zip(pos, neg)]
    out += [0] * (prec + 1 - len(out))
    return out


def poly_pow(base: list[int], e: int, prec: int) -> list[int]:
    result = [1] + [0] * prec
    acc = base[: prec + 1]
    while e:
        if e & 1:
            result = poly_mul(result, acc, prec)
        e >>= 1
        if e:
            acc = poly_mul(acc, acc, prec)
    return result


def _sigma_list(r: int, prec: int) -> list[int]:
    """sigma_r(n) for 0 <= n <= prec (index 0 unused, set to 0)."""
    out = [0] * (prec + 1)
    for d in range(1, prec + 1):
        dr = d**r
        for m in range(d, prec + 1, d):
            out[m] += dr
    return out


def eisenstein_qexp(k: int, prec: int) -> list[int]:
    """Normalized E_k with constant term 1, for k in {4, 6}."""
    if k == 4:
        mult = 240
    elif k == 6:
        mult = -504
    else:
        raise ValueError("only E4 and E6 are needed here")
    sig = _sigma_list(k - 1, prec)
    return [1] + [mult * sig[n] for n in range(1, prec + 1)]


def eta_power24(prec: int) -> list[int]:
    """Coefficients of prod (1 - q^n)^24 up to q^prec.

    Pentagonal-number theorem gives the sparse first power; the 24th
    power is five Kronecker products.
    """
    eta = [0] * (prec + 1)
    j = 0
    while True:
        done = True
        for jj in (j, -j) if j else (0,):
            g = jj * (3 * jj - 1) // 2
            if g <= prec:
                eta[g] += (-1) ** (jj % 2)
                done = False
        if done:
            break
        j += 1
    e2 = poly_mul(eta, eta, prec)
    e4 = poly_mul(e2, e2, prec)
    e8 = poly_mul(e4, e4, prec)
    e16 = poly_mul(e8, e8, prec)
    return poly_mul(e16, e8, prec)


def delta_qexp(prec: int) -> list[int]:
    """Ramanujan tau expansion: q prod (1-q^n)^24, coefficients a(0..prec)."""
    body = eta_power24(prec - 1) if prec >= 1 else []
    return [0] + body[:prec]


# ----------------------------------------------------------------------
# spaces of cusp forms

def dim_modular(k: int) -> int:
    if k < 0 or k % 2 == 1:
        return 0
    return k // 12 + (0 if k % 12 == 2 else 1)


def dim_cusp(k: int) -> int:
    """Dimension of the level-1 weight-k cusp space."""
    if k < 4 or k % 2 == 1:
        return 0
    return max(dim_modular(k) - 1, 0)


@dataclass(frozen=True)
class QExpansion:
    """A cusp form as an exact integer q-expansion a(0..prec)."""

    weight: int
    coefficients: tuple
    prec: int

    def a(self, n: int) -> int:
        if n > self.prec:
            raise IndexError(
                f"coefficient a({n}) beyond computed precision {self.prec}"
            )
        return self.coefficients[n]


def victor_miller_basis(k: int, prec: int) -> list[QExpansion]:
    """Echelonized integer basis of the weight-k cusp space.

    Expands every monomial E4^a E6^b of weight k, eliminates the
    Eisenstein direction, and reduces the rest so that the i-th basis
    form has a(j) = delta_ij for 1 <= j <= dim.  All steps stay in
    exact rational arithmetic and the result is verified integral.
    """
    if k % 2 == 1 or k < 4:
        raise ValueError("weight must be an even integer >= 4")
    d = dim_cusp(k)
    if d == 0:
        return []
    if prec < d + 2:
        raise ValueError(f"prec must be at least dim+2 = {d + 2}")
    e4 = eisenstein_qexp(4, prec)
    e6 = eisenstein_qexp(6, prec)
    monomials = []
    for a_exp in range(k // 4 + 1):
        rem = k - 4 * a_exp
        if rem % 6 == 0:
            b_exp = rem // 6
            monomials.append(
                poly_mul(poly_pow(e4, a_exp, prec), poly_pow(e6, b_exp, prec), prec)
            )
    assert len(monomials) == d + 1, "monomial count must equal dim M_k"
    rows = [[Fraction(c) for c in m] for m in monomials]
    # eliminate the constant term (every monomial starts with 1)
    head = rows[0]
    cusp = [
        [rc - hc for rc, hc in zip(row, head)] for row in rows[1:]
    ]
    # echelonize on columns 1..d
    for i in range(d):
        col = i + 1
        pivot_row = next(
            (r for r in range(i, d) if cusp[r][col] != 0), None
        )
        if pivot_row is None:
            raise ArithmeticError("unexpected rank deficiency in cusp space")
        cusp[i], cusp[pivot_row] = cusp[pivot_row], cusp[i]
        piv = cusp[i][col]
        cusp[i] = [c / piv for c in cusp[i]]
        for r in range(d):
            if r != i and cusp[r][col] != 0:
                f = cusp[r][col]
                cusp[r] = [c - f * p for c, p in zip(cusp[r], cusp[i])]
    basis = []
    for row in cusp:
        ints = []
        for c in row:
            if c.denominator != 1:
                raise ArithmeticError("echelon basis failed integrality")
            ints.append(int(c))
        basis.append(QExpansion(weight=k, coefficients=tuple(ints), prec=prec))
    return basis


def hecke_operator_matrix(k: int, n: int, basis: list[QExpansion]) -> list[list[int]]:
    """Matrix of T_n in the echelon basis (columns act on basis forms).

    Needs coefficients up to n * dim; fails loudly if the basis was
    built too short rather than truncating.
    """
    d = len(basis)
    if d == 0:
        return []
    if basis[0].prec < n * d:
        raise ValueError(
            f"basis precision {basis[0].prec} too small for T_{n} on dim {d}"
        )
    mat = [[0] * d for _ in range(d)]
    for i, f in enumerate(basis):
        for m in range(1, d + 1):
            b = 0
            for dd in range(1, math.gcd(m, n) + 1):
                if m % dd == 0 and n % dd == 0:
                    b += dd ** (k - 1) * f.a(m * n // (dd * dd))
            mat[m - 1][i] = b
    return mat


@dataclass(frozen=True)
class Eigenform:
    """A normalized Hecke eigenform of level 1.

    arithmetic_coeffs holds a(n) with a(1) = 1 (exact integers when the
    form is rational, 50-digit floats for the quadratic pair at dim 2);
    normalized[n] = a(n) / n^((k-1)/2) as float64.
    """

    weight: int
    arithmetic_coeffs: tuple
    normalized: tuple
    space_dim: int
    prec: int

    def lam(self, n: int) -> float:
        if n > self.prec:
            raise IndexError(
                f"lambda({n}) beyond computed precision {self.prec}"
            )
        return self.normalized[n]


def _normalize(weight: int, coeffs, prec: int, dim: int) -> Eigenform:
    lam = [0.0] * (prec + 1)
    for n in range(1, prec + 1):
        lam[n] = float(coeffs[n]) / float(n) ** ((weight - 1) / 2.0)
    return Eigenform(
        weight=weight,
        arithmetic_coeffs=tuple(coeffs),
        normalized=tuple(lam),
        space_dim=dim,
        prec=prec,
    )


def hecke_eigenforms(k: int, prec: int) -> list[Eigenform]:
    """Eigenforms of T_2 on the weight-k cusp space, a(1) = 1.

    Supports dim <= 2 (all weights k <= 30 and several beyond).  The
    dim-2 quadratic eigenvalues are computed to 50 significant digits
    before normalization; a repeated T_2 eigenvalue raises.
    """
    d = dim_cusp(k)
    if d == 0:
        return []
    if d > 2:
        raise NotImplementedError("dim S_k > 2 is out of scope")
    basis_prec = max(prec, 2 * d + 2, d + 2)
    basis = victor_miller_basis(k, basis_prec)
    if d == 1:
        f = basis[0]
        return [_normalize(k, list(f.coefficients[: prec + 1]), prec, 1)]
    import mpmath as mp

    t2 = hecke_operator_matrix(k, 2, basis)
    m00, m01 = t2[0]
    m10, m11 = t2[1]
    disc = (m00 - m11) ** 2 + 4 * m01 * m10
    if disc == 0:
        raise ArithmeticError(f"T_2 has a repeated eigenvalue at weight {k}")
    with mp.workdps(50):
        sq = mp.sqrt(disc)
        out = []
        for sign in (+1, -1):
            beta = (-(m00 - m11) + sign * sq) / (2 * m01)
            coeffs = [mp.mpf(0)] * (prec + 1)
            for n in range(1, prec + 1):
                coeffs[n] = basis[0].a(n) + beta * basis[1].a(n)
            out.append(_normalize(k, [float(c) for c in coeffs], prec, 2))
    return out


def delta_eigenform(prec: int) -> Eigenform:
    """The weight-12 form from the eta product, normalized.

    Independent of the Victor-Miller route; tests compare the two.
    """
    coeffs = delta_qexp(prec)
    return _normalize(12, coeffs, prec, 1)


@dataclass(frozen=True)
class CoefficientBoundReport:
    weight: int
    X: int
    max_deligne_ratio: float
    argmax_n: int
    grid: tuple
    partial_sum_ratios: tuple


def coefficient_bound_report(f: Eigenform, X: int) -> CoefficientBoundReport:
    """Deligne ratio max |lambda(n)|/d(n) and mean-square partial sums.

    The second sequence, sum_{n<=x} lambda(n)^2 / x on a geometric grid,
    should stabilize near a constant for a genuine eigenform.
    """
    if X > f.prec:
        raise ValueError(f"X = {X} exceeds available coefficients ({f.prec})")
    d = divisor_counts(X)
    lam = np.array(f.normalized[: X + 1])
    ratios = np.abs(lam[1:]) / d[1:]
    argmax = int(np.argmax(ratios)) + 1
    grid = []
    x = 1
    while x < X:
        x = min(max(x * 2, x + 1), X)
        grid.append(x)
    csum = np.cumsum(lam**2)
    ps = tuple(float(csum[x] / x) for x in grid)
    return CoefficientBoundReport(
        weight=f.weight,
        X=X,
        max_deligne_ratio=float(ratios.max()),
        argmax_n=argmax,
        grid=tuple(grid),
        partial_sum_ratios=ps,
    )
