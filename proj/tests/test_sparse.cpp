#include <cstring>
#include <numbers>
#include <sstream>

#include "amgpoly/csr.hpp"
#include "amgpoly/dense.hpp"
#include "amgpoly/problems.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace amgpoly;

TEST_CASE("csr storage invariants") {
  CsrMatrix A = CsrMatrix::from_triplets(3, 3, {{2, 0, 1.0}, {0, 2, 2.0}, {0, 0, 3.0}, {0, 2, 1.0}, {1, 1, 0.0}});
  CHECK(A.nnz() == 3);  // duplicate summed, explicit zero dropped
  CHECK(A.at(0, 2) == 3.0);
  CHECK(A.row_ptr()[0] == 0);
  CHECK(A.row_ptr()[3] == A.nnz());
  CHECK_THROWS_AS(CsrMatrix(2, 2, {0, 2, 2}, {1, 0}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(CsrMatrix(2, 2, {0, 1}, {0}, {1.0}), std::invalid_argument);
}

TEST_CASE("spmv examples") {
  CHECK(spmv(CsrMatrix::identity(3), Vector{1, 2, 3}) == Vector{1, 2, 3});
  CHECK(spmv(laplacian1d(3).A, Vector{1, 1, 1}) == Vector{1, 0, 1});

  const CsrMatrix A = poisson3d(2).A;
  Vector e(8, 0.0);
  e[1] = 1.0;
  const Vector col = spmv(A, e);
  const DenseMatrix D = DenseMatrix::from_csr(A);
  int neighbours = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(col[i] == D(i, 1));
    if (col[i] == -1.0) ++neighbours;
  }
  CHECK(col[1] == 6.0);
  CHECK(neighbours == 3);

  CHECK_THROWS(spmv(A, Vector(3, 1.0)));
}

TEST_CASE("spmv is linear") {
  const CsrMatrix A = poisson3d(5).A;
  const Vector x = testing::random_vector(A.rows(), 1);
  const Vector y = testing::random_vector(A.rows(), 2);
  const double alpha = 0.7, beta = -1.3;
  Vector comb(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) comb[i] = alpha * x[i] + beta * y[i];
  const Vector lhs = spmv(A, comb);
  const Vector ax = spmv(A, x), ay = spmv(A, y);
  double scale = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::abs(lhs[i] - (alpha * ax[i] + beta * ay[i])) <= 1e-13 * (std::abs(lhs[i]) + 10.0));
    scale = std::max(scale, std::abs(lhs[i]));
  }
  CHECK(scale > 0.0);
}

TEST_CASE("fused_update") {
  SUBCASE("zero coefficients") {
    Vector s{1, 2}, r{5, 5}, d{3, 4}, x{7, 8};
    fused_update(0, 0, 0, s, r, d, x);
    CHECK(r == Vector{4, 3});
    CHECK(d == Vector{0, 0});
    CHECK(x == Vector{7, 8});
  }
  SUBCASE("hand evaluation") {
    Vector s{1}, r{3}, d{2}, x{5};
    fused_update(0.5, 0.4, 2.0, s, r, d, x);
    CHECK(r[0] == 2.0);
    CHECK(d[0] == doctest::Approx(4.4).epsilon(1e-15));
    CHECK(x[0] == doctest::Approx(9.4).epsilon(1e-15));
  }
  SUBCASE("bitwise equal to separate vector ops") {
    const std::size_t n = 4096;
    const Vector s = testing::random_vector(n, 11);
    Vector r = testing::random_vector(n, 12), d = testing::random_vector(n, 13), x = testing::random_vector(n, 14);
    Vector r2 = r, d2 = d, x2 = x;
    const double rho = 0.83, rho_prev = 0.91, t = 1.7;
    fused_update(rho, rho_prev, t, s, r, d, x);
    const double c = rho * rho_prev;
    for (std::size_t i = 0; i < n; ++i) r2[i] -= s[i];
    for (std::size_t i = 0; i < n; ++i) d2[i] = c * d2[i] + t * r2[i];
    for (std::size_t i = 0; i < n; ++i) x2[i] += d2[i];
    CHECK(std::memcmp(r.data(), r2.data(), n * sizeof(double)) == 0);
    CHECK(std::memcmp(d.data(), d2.data(), n * sizeof(double)) == 0);
    CHECK(std::memcmp(x.data(), x2.data(), n * sizeof(double)) == 0);
  }
  SUBCASE("length mismatch") {
    Vector s{1}, r{1, 2}, d{1, 2}, x{1, 2};
    CHECK_THROWS(fused_update(1, 1, 1, s, r, d, x));
  }
}

TEST_CASE("transpose and multiply") {
  const CsrMatrix A = CsrMatrix::from_triplets(2, 3, {{0, 0, 1}, {0, 2, 2}, {1, 1, 3}});
  const CsrMatrix At = transpose(A);
  CHECK(At.rows() == 3);
  CHECK(At.at(2, 0) == 2.0);
  const CsrMatrix AAt = multiply(A, At);
  CHECK(AAt.at(0, 0) == 5.0);
  CHECK(AAt.at(1, 1) == 9.0);
  CHECK(AAt.at(0, 1) == 0.0);
}

TEST_CASE("matrix market round trip") {
  const CsrMatrix A = poisson3d(3).A;
  for (bool sym : {false, true}) {
    std::stringstream ss;
    write_matrix_market(ss, A, sym);
    const CsrMatrix B = read_matrix_market(ss);
    REQUIRE(B.nnz() == A.nnz());
    for (std::size_t k = 0; k < A.nnz(); ++k) {
      CHECK(B.col_idx()[k] == A.col_idx()[k]);
      CHECK(B.values()[k] == A.values()[k]);
    }
  }
  std::istringstream bad("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n");
  CHECK_THROWS(read_matrix_market(bad));
}

TEST_CASE("dense_sym_eig") {
  SUBCASE("diagonal") {
    DenseMatrix S(3, 3);
    S(0, 0) = 3;
    S(1, 1) = 1;
    S(2, 2) = 2;
    const SymEig e = dense_sym_eig(S);
    CHECK(e.values == Vector{1, 2, 3});
  }
  SUBCASE("second difference spectrum") {
    const std::size_t n = 20;
    const SymEig e = dense_sym_eig(DenseMatrix::from_csr(laplacian1d(n).A));
    for (std::size_t j = 1; j <= n; ++j) {
      const double want = 2.0 - 2.0 * std::cos(static_cast<double>(j) * std::numbers::pi / (n + 1));
      CHECK(std::abs(e.values[j - 1] - want) <= 1e-12);
    }
  }
  SUBCASE("random spd reconstruction and residuals") {
    const std::size_t n = 30;
    const DenseMatrix S = testing::random_spd_dense(n, 5);
    const SymEig e = dense_sym_eig(S);
    const double fro = S.frobenius_norm();
    DenseMatrix L(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) L(i, j) = e.vectors(i, j) * e.values[j];
    const DenseMatrix R = L * e.vectors.transposed();
    CHECK((R - S).frobenius_norm() <= 1e-9 * fro);
    const DenseMatrix VtV = e.vectors.transposed() * e.vectors;
    CHECK((VtV - DenseMatrix::identity(n)).max_abs() <= 1e-10);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(e.values[j] > 0.0);
      if (j > 0) CHECK(e.values[j] >= e.values[j - 1]);
      double res = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double s = -e.values[j] * e.vectors(i, j);
        for (std::size_t k = 0; k < n; ++k) s += S(i, k) * e.vectors(k, j);
        res += s * s;
      }
      CHECK(std::sqrt(res) <= 1e-10 * fro);
    }
  }
  SUBCASE("non-symmetric input") {
    DenseMatrix S(2, 2, 1.0);
    S(0, 1) = 2.0;
    CHECK_THROWS_AS(dense_sym_eig(S), std::invalid_argument);
  }
}

TEST_CASE("dense_cholesky_solve") {
  CHECK(dense_cholesky_solve(DenseMatrix::identity(3), Vector{4, 5, 6}) == Vector{4, 5, 6});
  DenseMatrix D(2, 2);
  D(0, 0) = 2;
  D(1, 1) = 4;
  CHECK(testing::max_abs_diff(dense_cholesky_solve(D, Vector{2, 8}), Vector{1, 2}) <= 1e-15);

  const DenseMatrix T = DenseMatrix::from_csr(laplacian1d(4).A);
  const Vector x = dense_cholesky_solve(T, T * Vector{1, 2, 3, 4});
  CHECK(testing::max_abs_diff(x, Vector{1, 2, 3, 4}) <= 1e-12);

  DenseMatrix bad(2, 2);
  bad(0, 0) = 1;
  bad(0, 1) = bad(1, 0) = 2;
  bad(1, 1) = 1;
  CHECK_THROWS_AS(Cholesky{bad}, std::domain_error);
}

TEST_CASE("galerkin product of a symmetric matrix is symmetric") {
  const CsrMatrix A = poisson3d(4).A;
  std::vector<Triplet> t;
  const Vector v = testing::random_vector(64 * 9, 21);
  for (std::size_t i = 0; i < 64; ++i)
    for (std::size_t j = 0; j < 9; ++j)
      if ((i + j) % 3 == 0) t.push_back({i, j, v[i * 9 + j]});
  const CsrMatrix P = CsrMatrix::from_triplets(64, 9, t);
  const CsrMatrix C = multiply(transpose(P), multiply(A, P));
  double amax = 0.0;
  for (double x : C.values()) amax = std::max(amax, std::abs(x));
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) CHECK(std::abs(C.at(i, j) - C.at(j, i)) <= 1e-13 * amax);
}
