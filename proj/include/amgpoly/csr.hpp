#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace amgpoly {

using Vector = std::vector<double>;

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed sparse row matrix with sorted, duplicate-free columns per row.
class CsrMatrix {
 public:
  CsrMatrix() = default;

  /// Takes ownership of raw CSR arrays. Throws std::invalid_argument if the
  /// arrays violate the storage invariants.
  CsrMatrix(std::size_t nrows, std::size_t ncols, std::vector<std::size_t> row_ptr,
            std::vector<std::size_t> col_idx, std::vector<double> values);

  /// Duplicates are summed, exact zeros dropped.
  static CsrMatrix from_triplets(std::size_t nrows, std::size_t ncols,
                                 std::vector<Triplet> entries);
  static CsrMatrix identity(std::size_t n);
  static CsrMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return nrows_; }
  std::size_t cols() const { return ncols_; }
  std::size_t nnz() const { return values_.size(); }

  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const std::size_t> col_idx() const { return col_idx_; }
  std::span<const double> values() const { return values_; }

  /// Entry (i, j), zero if not stored.
  double at(std::size_t i, std::size_t j) const;
  Vector diagonal() const;

  /// Structural and numerical symmetry up to |a_ij - a_ji| <= tol * max|a|.
  bool is_symmetric(double tol = 0.0) const;

  std::vector<Triplet> to_triplets() const;

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

/// y = A x, accumulating each row in stored column order.
void spmv(const CsrMatrix& A, std::span<const double> x, std::span<double> y);
Vector spmv(const CsrMatrix& A, std::span<const double> x);

CsrMatrix transpose(const CsrMatrix& A);
/// Sparse product A * B (row-wise Gustavson).
CsrMatrix multiply(const CsrMatrix& A, const CsrMatrix& B);

/// Single pass over the elements performing
///   r_i -= s_i;  d_i = rho*rho_prev*d_i + two_rho_over_delta*r_i;  x_i += d_i
void fused_update(double rho, double rho_prev, double two_rho_over_delta,
                  std::span<const double> s, std::span<double> r, std::span<double> d,
                  std::span<double> x);

/// Sequential left-to-right accumulation.
double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
/// y += alpha x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// Non-owning view of a square linear operator.
class OperatorRef {
 public:
  using ApplyFn = std::function<void(std::span<const double>, std::span<double>)>;

  OperatorRef(const CsrMatrix& A);  // NOLINT(google-explicit-constructor)
  OperatorRef(std::size_t n, ApplyFn apply) : n_(n), apply_(std::move(apply)) {}

  std::size_t size() const { return n_; }
  void apply(std::span<const double> x, std::span<double> y) const { apply_(x, y); }

 private:
  std::size_t n_;
  ApplyFn apply_;
};

// Matrix Market coordinate format. Symmetric files are expanded to full
// storage on read; indices are 1-based on disk.
CsrMatrix read_matrix_market(std::istream& in);
CsrMatrix read_matrix_market(const std::string& path);
/// Writes the lower triangle with a symmetric header when `symmetric` is set.
void write_matrix_market(std::ostream& out, const CsrMatrix& A, bool symmetric = false);
void write_matrix_market(const std::string& path, const CsrMatrix& A, bool symmetric = false);

}  // namespace amgpoly
