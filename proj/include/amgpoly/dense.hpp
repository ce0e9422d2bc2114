#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "amgpoly/csr.hpp"

namespace amgpoly {

/// Row-major dense matrix. Only used by oracle paths and coarse direct solves.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t nrows, std::size_t ncols, double fill = 0.0)
      : nrows_(nrows), ncols_(ncols), data_(nrows * ncols, fill) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_csr(const CsrMatrix& A);

  std::size_t rows() const { return nrows_; }
  std::size_t cols() const { return ncols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * ncols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * ncols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * ncols_, ncols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * ncols_, ncols_}; }
  std::span<const double> data() const { return data_; }

  DenseMatrix transposed() const;
  double frobenius_norm() const;
  double max_abs() const;
  /// max|S - S^T| <= tol * max|S|
  bool is_symmetric(double tol = 1e-12) const;

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& A, const DenseMatrix& B);
DenseMatrix operator+(const DenseMatrix& A, const DenseMatrix& B);
DenseMatrix operator-(const DenseMatrix& A, const DenseMatrix& B);
DenseMatrix operator*(double s, const DenseMatrix& A);
Vector operator*(const DenseMatrix& A, std::span<const double> x);

struct SymEig {
  Vector values;        // ascending
  DenseMatrix vectors;  // column i is the eigenvector of values[i]
};

/// Cyclic Jacobi rotations, at most 100 sweeps, stopping when the
/// off-diagonal Frobenius norm drops below 1e-12 * ||S||_F.
/// Throws std::invalid_argument for non-symmetric input.
SymEig dense_sym_eig(const DenseMatrix& S);
/// Eigenvalues only (ascending), same iteration without the vector updates.
Vector dense_sym_eigvals(const DenseMatrix& S);

/// Lower-triangular Cholesky factor L with S = L L^T.
/// Throws std::domain_error on a non-positive pivot.
class Cholesky {
 public:
  Cholesky() = default;
  explicit Cholesky(const DenseMatrix& S);

  std::size_t size() const { return L_.rows(); }
  Vector solve(std::span<const double> b) const;
  void solve_in_place(std::span<double> x) const;
  const DenseMatrix& factor() const { return L_; }

 private:
  DenseMatrix L_;
};

Vector dense_cholesky_solve(const DenseMatrix& S, std::span<const double> b);

/// Dense inverse of an SPD matrix via Cholesky.
DenseMatrix spd_inverse(const DenseMatrix& S);

}  // namespace amgpoly
