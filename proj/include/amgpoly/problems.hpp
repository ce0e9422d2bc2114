#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "amgpoly/csr.hpp"
#include "amgpoly/dense.hpp"

namespace amgpoly {

struct Problem {
  CsrMatrix A;
  Vector b;
};

/// 7-point Laplacian on an m^3 interior grid (Dirichlet eliminated), b = ones.
Problem poisson3d(std::size_t m);
/// 5-point Laplacian on an m^2 interior grid, b = ones.
Problem poisson2d(std::size_t m);
/// tridiag(-1, 2, -1) of size n, b = ones.
Problem laplacian1d(std::size_t n);

/// Bilinear elements on an m x m grid of [-1,1]^2 with the rotated tensor
/// R diag(1, epsilon) R^T, nodes on y = -1 eliminated, load exp(-100(x^2+y^2))
/// by centroid quadrature. n = m(m+1), x-fastest ordering.
Problem aniso2d_q1(std::size_t m, double epsilon, double angle);

/// Linear interpolation from the odd-indexed points of an n-point 1D grid
/// (n x n/2).
CsrMatrix linear_interpolation_1d(std::size_t n);
/// Tensor product of linear_interpolation_1d(m) for an m x m grid.
CsrMatrix linear_interpolation_2d(std::size_t m);

enum class SpectrumDistribution { Equispaced, BoundaryAccumulating, Gapped };

std::string to_string(SpectrumDistribution d);
SpectrumDistribution parse_spectrum_distribution(std::string_view name);

/// n logarithmically spaced values from 10^p to 10^q. As in MATLAB, q = pi
/// means the last point is pi itself.
Vector logspace(double p, double q, std::size_t n);

/// Eigenvalues for the synthetic experiment; N must be even for the split
/// distributions.
Vector spectrum_eigenvalues(std::size_t N, SpectrumDistribution dist);

/// A = Q D Q^T with Q the orthonormal sine basis Q_ij = sqrt(2/(N+1)) sin(ij pi/(N+1)).
class SpectralOperator {
 public:
  explicit SpectralOperator(Vector eigenvalues);

  std::size_t size() const { return d_.size(); }
  const Vector& eigenvalues() const { return d_; }
  const DenseMatrix& basis() const { return q_; }

  /// y = Q (D (Q^T x))
  void apply(std::span<const double> x, std::span<double> y) const;
  OperatorRef op() const;

  /// Row i of A.
  Vector row(std::size_t i) const;
  /// sum_j |a_ij| for every row.
  Vector l1_row_sums() const;
  DenseMatrix to_dense() const;

 private:
  Vector d_;
  DenseMatrix q_;
};

struct SpectralProblem {
  SpectralOperator A;
  Vector b;  // A * ones
};

SpectralProblem spectral_synthetic(std::size_t N, SpectrumDistribution dist);

}  // namespace amgpoly
