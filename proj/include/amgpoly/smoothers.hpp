#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amgpoly/csr.hpp"

namespace amgpoly {

enum class SmootherFamily { L1JacobiSweeps, Cheb4, OptCheb4, OptCheb1 };

std::string to_string(SmootherFamily f);
/// Accepts "l1jacobi", "cheb4", "optcheb4", "optcheb1" (case-insensitive).
SmootherFamily parse_smoother_family(std::string_view name);

struct PolySmootherConfig {
  SmootherFamily family = SmootherFamily::OptCheb1;
  int degree = 1;
  double a = 0.0;             // OptCheb1 only
  std::vector<double> beta;   // OptCheb4 only, length degree
  double rho_scale = 1.0;     // divisor for M^{-1}A; 1 for the l1-Jacobi base

  /// Fills a (shipped a*_k, or solved for k > 20) or beta (shipped table).
  /// OptCheb4 beyond the tabulated degrees falls back to Cheb4 with a warning.
  static PolySmootherConfig make(SmootherFamily family, int degree);

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

/// Error polynomial p_k(t) of the configured smoother, t an eigenvalue of M^{-1}A / rho.
double smoother_poly(const PolySmootherConfig& cfg, double t);
double smoother_poly_slope_at_zero(const PolySmootherConfig& cfg);
/// sup_{0<t<=1} t p(t)^2/(1-p(t)^2) sampled on the standard log grid.
double smoother_gamma(const PolySmootherConfig& cfg);

struct L1JacobiData {
  Vector m_diag;

  /// Throws std::invalid_argument on a non-positive entry.
  static L1JacobiData from_diagonal(Vector d);
};

/// M_i = a_ii + sum_{j != i} |a_ij|. Throws on a non-positive diagonal entry.
L1JacobiData l1_jacobi_diag(const CsrMatrix& A);

/// Scratch vectors reused across applications; contents undefined on entry.
struct SmootherWorkspace {
  Vector z, r, d, s;
  std::size_t spmv_count = 0;

  void resize(std::size_t n);
};

/// x <- smoothed x for A x = b, with error e_k = p_k(M^{-1}A / rho) e_0.
/// Every family performs exactly `degree` operator applications.
void smoother_apply(const PolySmootherConfig& cfg, const OperatorRef& A, const L1JacobiData& M,
                    std::span<const double> b, std::span<double> x, SmootherWorkspace& ws);
Vector smoother_apply(const PolySmootherConfig& cfg, const OperatorRef& A, const L1JacobiData& M,
                      std::span<const double> b, std::span<const double> x0);

/// p_k(M^{-1}A / rho) e0 evaluated from the polynomial's own basis expansion
/// (powers of I - Y, W_j or T_k recurrences on the matrix argument).
Vector smoother_error_oracle(const OperatorRef& A, const L1JacobiData& M,
                             const PolySmootherConfig& cfg, std::span<const double> e0);

/// Power iteration for rho(M^{-1}A) from a fixed rippled all-ones vector.
double estimate_rho(const OperatorRef& A, const L1JacobiData& M, int iterations = 25);

}  // namespace amgpoly
