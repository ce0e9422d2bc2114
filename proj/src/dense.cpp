#include "amgpoly/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace amgpoly {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

DenseMatrix DenseMatrix::from_csr(const CsrMatrix& A) {
  DenseMatrix D(A.rows(), A.cols());
  const auto rp = A.row_ptr();
  const auto ci = A.col_idx();
  const auto v = A.values();
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t k = rp[i]; k < rp[i + 1]; ++k) D(i, ci[k]) += v[k];
  }
  return D;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix T(ncols_, nrows_);
  for (std::size_t i = 0; i < nrows_; ++i) {
    for (std::size_t j = 0; j < ncols_; ++j) T(j, i) = (*this)(i, j);
  }
  return T;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool DenseMatrix::is_symmetric(double tol) const {
  if (nrows_ != ncols_) return false;
  const double scale = max_abs();
  for (std::size_t i = 0; i < nrows_; ++i) {
    for (std::size_t j = i + 1; j < ncols_; ++j) {
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol * scale) return false;
    }
  }
  return true;
}

DenseMatrix operator*(const DenseMatrix& A, const DenseMatrix& B) {
  if (A.cols() != B.rows()) throw std::invalid_argument("DenseMatrix product: dimension mismatch");
  DenseMatrix C(A.rows(), B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    auto ci = C.row(i);
    for (std::size_t k = 0; k < A.cols(); ++k) {
      const double a = A(i, k);
      if (a == 0.0) continue;
      const auto bk = B.row(k);
      for (std::size_t j = 0; j < B.cols(); ++j) ci[j] += a * bk[j];
    }
  }
  return C;
}

namespace {

DenseMatrix combine(const DenseMatrix& A, const DenseMatrix& B, double sign) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw std::invalid_argument("DenseMatrix sum: dimension mismatch");
  }
  DenseMatrix C(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = A(i, j) + sign * B(i, j);
  }
  return C;
}

}  // namespace

DenseMatrix operator+(const DenseMatrix& A, const DenseMatrix& B) { return combine(A, B, 1.0); }
DenseMatrix operator-(const DenseMatrix& A, const DenseMatrix& B) { return combine(A, B, -1.0); }

DenseMatrix operator*(double s, const DenseMatrix& A) {
  DenseMatrix C(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) C(i, j) = s * A(i, j);
  }
  return C;
}

Vector operator*(const DenseMatrix& A, std::span<const double> x) {
  if (A.cols() != x.size()) throw std::invalid_argument("DenseMatrix * vector: dimension mismatch");
  Vector y(A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) y[i] = dot(A.row(i), x);
  return y;
}

namespace {

// Cyclic Jacobi on a copy of S; returns the diagonalized matrix. When `vt` is
// given it accumulates the eigenvectors as rows, so every rotation touches
// contiguous memory. Columns of the working matrix are refreshed from its rows
// by symmetry.
DenseMatrix jacobi_diagonalize(const DenseMatrix& S, DenseMatrix* vt) {
  if (!S.is_symmetric(1e-12)) throw std::invalid_argument("dense_sym_eig: matrix is not symmetric");
  const std::size_t n = S.rows();
  DenseMatrix a = S;
  if (vt) *vt = DenseMatrix::identity(n);
  const double tol = 1e-12 * S.frobenius_norm();

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    }
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 100 && off_norm() > tol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle annihilating a(p,q) (stable form from Rutishauser).
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double app = a(p, p) - t * apq;
        const double aqq = a(q, q) + t * apq;
        double* rp = &a(p, 0);
        double* rq = &a(q, 0);
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = rp[k];
          const double aqk = rq[k];
          rp[k] = c * apk - s * aqk;
          rq[k] = s * apk + c * aqk;
        }
        rp[p] = app;
        rq[q] = aqq;
        rp[q] = rq[p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          a(k, p) = rp[k];
          a(k, q) = rq[k];
        }
        if (!vt) continue;
        double* vp = &(*vt)(p, 0);
        double* vq = &(*vt)(q, 0);
        for (std::size_t k = 0; k < n; ++k) {
          const double vpk = vp[k];
          const double vqk = vq[k];
          vp[k] = c * vpk - s * vqk;
          vq[k] = s * vpk + c * vqk;
        }
      }
    }
  }
  return a;
}

}  // namespace

SymEig dense_sym_eig(const DenseMatrix& S) {
  DenseMatrix vt;
  const DenseMatrix a = jacobi_diagonalize(S, &vt);
  const std::size_t n = S.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  SymEig out{Vector(n), DenseMatrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, c) = vt(order[c], k);
  }
  return out;
}

Vector dense_sym_eigvals(const DenseMatrix& S) {
  const DenseMatrix a = jacobi_diagonalize(S, nullptr);
  Vector values(S.rows());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = a(i, i);
  std::sort(values.begin(), values.end());
  return values;
}

Cholesky::Cholesky(const DenseMatrix& S) : L_(S.rows(), S.cols()) {
  if (S.rows() != S.cols()) throw std::invalid_argument("Cholesky: matrix not square");
  const std::size_t n = S.rows();
  for (std::size_t j = 0; j < n; ++j) {
    double d = S(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= L_(j, k) * L_(j, k);
    if (!(d > 0.0)) throw std::domain_error("Cholesky: non-positive pivot, matrix is not SPD");
    const double ljj = std::sqrt(d);
    L_(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = S(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= L_(i, k) * L_(j, k);
      L_(i, j) = s / ljj;
    }
  }
}

void Cholesky::solve_in_place(std::span<double> x) const {
  const std::size_t n = L_.rows();
  if (x.size() != n) throw std::invalid_argument("Cholesky::solve: dimension mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    double s = x[i];
    for (std::size_t k = 0; k < i; ++k) s -= L_(i, k) * x[k];
    x[i] = s / L_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= L_(k, i) * x[k];
    x[i] = s / L_(i, i);
  }
}

Vector Cholesky::solve(std::span<const double> b) const {
  Vector x(b.begin(), b.end());
  solve_in_place(x);
  return x;
}

Vector dense_cholesky_solve(const DenseMatrix& S, std::span<const double> b) {
  return Cholesky(S).solve(b);
}

DenseMatrix spd_inverse(const DenseMatrix& S) {
  const Cholesky chol(S);
  const std::size_t n = S.rows();
  DenseMatrix inv(n, n);
  Vector e(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    chol.solve_in_place(e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = e[i];
  }
  return inv;
}

}  // namespace amgpoly
