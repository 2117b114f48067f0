import numpy as np
import pytest

from weylbound.trace import (
    petersson_delta,
    petersson_matrix,
    trace_consistency,
)


def test_empty_space_cancellation():
    # dim S_10 = 0: delta term and Kloosterman side must cancel exactly
    for m, n in [(1, 1), (2, 3), (1, 4), (5, 5)]:
        side = petersson_delta(10, m, n)
        assert abs(side.value) <= 1e-8, (m, n)


def test_delta_positive_at_weight12():
    side = petersson_delta(12, 1, 1)
    assert side.value > 0
    assert side.tail_bound < 1e-12 * max(1.0, abs(side.value))


def test_dim1_factorization():
    d11 = petersson_delta(12, 1, 1).value
    d23 = petersson_delta(12, 2, 3).value
    d21 = petersson_delta(12, 2, 1).value
    d13 = petersson_delta(12, 1, 3).value
    assert abs(d23 * d11 - d21 * d13) <= 1e-8 * max(abs(d23 * d11), 1.0)


def test_symmetry():
    for k in (10, 12):
        for m, n in [(2, 3), (1, 5), (4, 7)]:
            a = petersson_delta(k, m, n).value
            b = petersson_delta(k, n, m).value
            assert abs(a - b) < 1e-10


def test_truncation_soundness():
    side = petersson_delta(12, 2, 3, tol=1e-12)
    refined = petersson_delta(12, 2, 3, tol=1e-14)
    assert abs(side.value - refined.value) <= side.tail_bound + 1e-13


def test_lambda2_recovery_weight12():
    rep = trace_consistency(12, 8, tol=1e-7)
    assert rep.status == "PASS"
    assert abs(rep.recovered_lambda2 - (-24 / 2**5.5)) <= 1e-7
    assert rep.lambda_max_err <= 1e-7


def test_rank_one_structure_all_dim1_weights():
    for k in (12, 16, 18, 20, 22, 26):
        rep = trace_consistency(k, 8, tol=1e-6)
        assert rep.status == "PASS", k
        assert rep.rank_ratio <= 1e-6, k


def test_empty_space_report():
    rep = trace_consistency(10, 5, tol=1e-8)
    assert rep.status == "PASS"
    assert rep.max_abs_delta <= 1e-8


def test_dim2_weights_and_prediction():
    rep = trace_consistency(24, 6, tol=1e-6)
    assert rep.status == "PASS"
    assert rep.weights_positive
    assert rep.max_residual <= 1e-6


def test_recovered_lambdas_satisfy_hecke():
    # lambda recovered from the trace formula obeys the p = 2 recursion
    # and the divisor bound
    from weylbound.arith import divisor_counts

    mat = petersson_matrix(12, 8)
    lam = [None] + [mat[m - 1, 0] / mat[0, 0] for m in range(1, 9)]
    lhs = lam[2] * lam[2]
    rhs = lam[4] + 1.0  # lam(2)^2 = lam(4) + lam(1)
    assert abs(lhs - rhs) <= 1e-6
    lhs = lam[2] * lam[3]
    rhs = lam[6]
    assert abs(lhs - rhs) <= 1e-6
    d = divisor_counts(8)
    for n in range(1, 9):
        assert abs(lam[n]) <= d[n] + 1e-6


def test_petersson_rejects_bad_input():
    with pytest.raises(ValueError):
        petersson_delta(11, 1, 1)
    with pytest.raises(ValueError):
        petersson_delta(12, 0, 1)
    with pytest.raises(ValueError):
        petersson_delta(12, 2000, 2000)
