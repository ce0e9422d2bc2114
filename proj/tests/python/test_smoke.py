import math

import pytest

import amgpoly


def test_fused_update_hand_example():
    r, d, x = amgpoly.fused_update(0.5, 0.4, 2.0, [1.0], [3.0], [2.0], [5.0])
    assert r == [2.0]
    assert d[0] == pytest.approx(4.4, rel=1e-15)
    assert x[0] == pytest.approx(9.4, rel=1e-15)


def test_fused_update_length_mismatch():
    with pytest.raises(ValueError):
        amgpoly.fused_update(0.5, 0.4, 2.0, [1.0, 2.0], [3.0], [2.0], [5.0])


def test_chebyshev_values():
    theta = 0.7
    assert amgpoly.cheb1_eval(5, math.cos(theta)) == pytest.approx(math.cos(5 * theta))
    w = math.sin(5.5 * theta) / math.sin(theta / 2)
    assert amgpoly.cheb4_eval(5, math.cos(theta)) == pytest.approx(w)


def test_optimal_parameters():
    assert amgpoly.solve_a_star(1) == pytest.approx(1.0 / 3.0, abs=1e-12)
    lam = amgpoly.lambda_of(4, amgpoly.solve_a_star(4))
    assert 0.0 < lam < amgpoly.gamma_cheb4(4)
    assert amgpoly.gamma_cheb4(2) == pytest.approx(3.0 / 24.0, rel=1e-14)
    a_lo, a_hi, l_lo, l_hi = amgpoly.theorem_bounds(6)
    assert a_lo <= amgpoly.solve_a_star(6) <= a_hi
    assert l_lo <= amgpoly.lambda_of(6, amgpoly.solve_a_star(6)) <= l_hi


def test_optimize_beta():
    t = amgpoly.optimize_beta(2)
    assert t["k"] == 2
    assert len(t["beta"]) == 2
    assert t["converged"]
    assert t["gamma_value"] < amgpoly.gamma_cheb4(2)


def test_csr_basics():
    A = amgpoly.CsrMatrix(2, 2, [0, 0, 1, 1], [0, 1, 0, 1], [2.0, -1.0, -1.0, 2.0])
    assert A.shape == (2, 2)
    assert A.nnz == 4
    assert A.is_symmetric()
    assert A.matvec([1.0, 1.0]) == [1.0, 1.0]
    assert A.to_dense() == [[2.0, -1.0], [-1.0, 2.0]]


def test_poisson_amg_solve():
    A, b = amgpoly.poisson3d(8)
    assert A.shape == (512, 512)
    res = amgpoly.amg_solve(A, b, family="optcheb1", degree=4, tol=1e-8)
    assert res["converged"]
    assert res["iterations"] < 20
    r = [bi - ai for bi, ai in zip(b, A.matvec(res["x"]))]
    rel = math.sqrt(sum(v * v for v in r)) / math.sqrt(sum(v * v for v in b))
    assert rel <= 1e-8


def test_smoother_reduces_error():
    A, b = amgpoly.poisson3d(6)
    x = amgpoly.smoother_apply("optcheb4", 3, A, b, [0.0] * len(b))
    r = [bi - ai for bi, ai in zip(b, A.matvec(x))]
    assert sum(v * v for v in r) < sum(v * v for v in b)


def test_bad_family_rejected():
    A, b = amgpoly.poisson3d(3)
    with pytest.raises(Exception):
        amgpoly.smoother_apply("gauss-seidel", 2, A, b, [0.0] * len(b))


def test_spectrum_grid_small():
    rows = amgpoly.spectrum_grid([16], [1, 2], tol=1e-5)
    assert len(rows) == 6
    for row in rows:
        assert row["N"] == 16
        assert row["converged_first_kind"] and row["converged_fourth_kind"]
