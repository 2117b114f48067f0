import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weylbound.arith import divisor_counts
from weylbound.modforms import (
    coefficient_bound_report,
    delta_eigenform,
    delta_qexp,
    dim_cusp,
    eisenstein_qexp,
    hecke_eigenforms,
    hecke_operator_matrix,
    poly_mul,
    victor_miller_basis,
)

# classical dimensions of S_k(SL(2,Z)) for even k
KNOWN_DIMS = {
    4: 0, 6: 0, 8: 0, 10: 0, 12: 1, 14: 0, 16: 1, 18: 1, 20: 1,
    22: 1, 24: 2, 26: 1, 28: 2, 30: 2, 32: 2, 34: 2, 36: 3, 38: 2, 40: 3,
}

# first Ramanujan tau values (classical table)
TAU = [0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920]


@settings(max_examples=50, deadline=None)
@given(
    a=st.lists(st.integers(min_value=-10**9, max_value=10**9), min_size=1, max_size=24),
    b=st.lists(st.integers(min_value=-10**9, max_value=10**9), min_size=1, max_size=24),
)
def test_poly_mul_matches_schoolbook(a, b):
    prec = len(a) + len(b)
    got = poly_mul(a, b, prec)
    want = [0] * (prec + 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            if i + j <= prec:
                want[i + j] += ai * bj
    assert got == want


def test_dimension_formula():
    for k, d in KNOWN_DIMS.items():
        assert dim_cusp(k) == d, k


def test_eisenstein_first_terms():
    e4 = eisenstein_qexp(4, 4)
    assert e4 == [1, 240, 2160, 6720, 17520]
    e6 = eisenstein_qexp(6, 3)
    assert e6 == [1, -504, -16632, -122976]


def test_delta_tau_values():
    d = delta_qexp(10)
    assert d == TAU


def test_vm_basis_empty_weights():
    assert victor_miller_basis(10, 20) == []
    assert victor_miller_basis(4, 20) == []


def test_vm_basis_weight12_is_delta():
    basis = victor_miller_basis(12, 10)
    assert len(basis) == 1
    assert list(basis[0].coefficients) == TAU
    assert basis[0].a(0) == 0


def test_vm_basis_weight16():
    basis = victor_miller_basis(16, 8)
    assert len(basis) == 1
    assert basis[0].a(1) == 1
    assert basis[0].a(2) == 216


def test_vm_basis_weight24_echelon():
    basis = victor_miller_basis(24, 12)
    assert len(basis) == 2
    for i, f in enumerate(basis):
        for j in range(1, 3):
            assert f.a(j) == (1 if j == i + 1 else 0)
        assert f.a(0) == 0


def test_vm_basis_echelon_exact_all_weights():
    for k in range(12, 41, 2):
        d = dim_cusp(k)
        if d == 0:
            continue
        basis = victor_miller_basis(k, d + 6)
        assert len(basis) == d
        for i, f in enumerate(basis):
            for j in range(1, d + 1):
                assert f.a(j) == (1 if j == i + 1 else 0), (k, i, j)


def test_vm_rejects_bad_weight():
    with pytest.raises(ValueError):
        victor_miller_basis(11, 10)
    with pytest.raises(ValueError):
        victor_miller_basis(2, 10)


def test_hecke_consistency_commuting():
    # T_m T_n = T_{mn} for coprime m, n as exact integer matrices
    for k in (12, 24, 36):
        d = dim_cusp(k)
        pairs = [(2, 3), (2, 5), (3, 4), (2, 9), (3, 10)]
        need = max(m * n for m, n in pairs) * d + 2
        basis = victor_miller_basis(k, need * 2)
        for m, n in pairs:
            tm = np.array(hecke_operator_matrix(k, m, basis), dtype=object)
            tn = np.array(hecke_operator_matrix(k, n, basis), dtype=object)
            tmn = np.array(hecke_operator_matrix(k, m * n, basis), dtype=object)
            assert (tm @ tn == tmn).all(), (k, m, n)
            assert (tm @ tn == tn @ tm).all(), (k, m, n)


def test_eigenform_weight12():
    f = hecke_eigenforms(12, 30)[0]
    assert f.arithmetic_coeffs[2] == -24
    assert abs(f.lam(2) - (-24 / 2**5.5)) < 1e-12
    assert f.space_dim == 1


def test_eigenform_weight16():
    f = hecke_eigenforms(16, 20)[0]
    assert f.arithmetic_coeffs[2] == 216


def test_eigenforms_weight24_hecke_recursion():
    forms = hecke_eigenforms(24, 60)
    assert len(forms) == 2
    k = 24
    for f in forms:
        lam = f.lam
        # multiplicativity at coprime pairs
        for m, n in [(2, 3), (3, 4), (2, 5), (4, 5), (3, 7)]:
            assert abs(lam(m * n) - lam(m) * lam(n)) <= 1e-10 * max(
                1.0, abs(lam(m * n))
            )
        # recursion at p = 2: lam(2) lam(2^j) = lam(2^{j+1}) + lam(2^{j-1})
        for j in (1, 2, 3, 4):
            lhs = lam(2) * lam(2**j)
            rhs = lam(2 ** (j + 1)) + lam(2 ** (j - 1))
            assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


def test_eigenform_deligne_bound():
    for k in (12, 16, 18, 20, 22, 26):
        f = hecke_eigenforms(k, 200)[0]
        d = divisor_counts(200)
        for n in range(1, 201):
            assert abs(f.lam(n)) <= d[n] * (1 + 1e-10), (k, n)


def test_eigenform_prec_stability():
    short = hecke_eigenforms(24, 20)
    longer = hecke_eigenforms(24, 80)
    for fs, fl in zip(short, longer):
        for n in range(1, 21):
            assert abs(fs.lam(n) - fl.lam(n)) < 1e-9


def test_eigenforms_exist_through_weight30():
    # T_2 eigenvalues stay simple for every supported weight
    for k in range(12, 31, 2):
        if dim_cusp(k) == 0:
            continue
        forms = hecke_eigenforms(k, 24)
        assert len(forms) == dim_cusp(k)
        for f in forms:
            lhs = f.lam(2) * f.lam(3)
            assert abs(lhs - f.lam(6)) <= 1e-9 * max(1.0, abs(lhs)), k


def test_eigenforms_dim3_out_of_scope():
    with pytest.raises(NotImplementedError):
        hecke_eigenforms(36, 20)


def test_delta_two_routes_agree():
    # eta-product route against the Victor-Miller echelon route
    via_eta = delta_eigenform(60)
    via_vm = hecke_eigenforms(12, 60)[0]
    assert via_eta.arithmetic_coeffs == via_vm.arithmetic_coeffs


def test_delta_multiplicativity_exact():
    d = delta_qexp(300)
    for m, n in [(2, 3), (3, 5), (4, 9), (6, 35), (8, 27)]:
        assert d[m] * d[n] == d[m * n]


def test_coefficient_bound_report_delta():
    f = delta_eigenform(1000)
    rep = coefficient_bound_report(f, 1000)
    assert rep.max_deligne_ratio <= 1 + 1e-10
    for r in rep.partial_sum_ratios:
        assert 0.1 <= r <= 10.0


def test_coefficient_bound_report_trivial():
    f = delta_eigenform(10)
    rep = coefficient_bound_report(f, 1)
    assert abs(rep.max_deligne_ratio - 1.0) < 1e-12


def test_coefficient_bound_report_weight16():
    f = hecke_eigenforms(16, 500)[0]
    rep = coefficient_bound_report(f, 500)
    assert rep.max_deligne_ratio <= 1 + 1e-10
    for r in rep.partial_sum_ratios:
        assert 0.1 <= r <= 10.0


def test_coefficient_report_rejects_long_X():
    f = delta_eigenform(50)
    with pytest.raises(ValueError):
        coefficient_bound_report(f, 51)
