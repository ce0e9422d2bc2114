#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "amgpoly/csr.hpp"

namespace amgpoly {

enum class KrylovVariant { PCG, FCG };

std::string to_string(KrylovVariant v);
KrylovVariant parse_krylov_variant(std::string_view name);

struct KrylovConfig {
  KrylovVariant variant = KrylovVariant::FCG;
  double tol = 1e-7;  // on ||b - Ax|| / ||b||
  int itmax = 1000;
  bool record_history = true;

  void validate() const;
};

struct SolveReport {
  int iterations = 0;
  bool converged = false;
  bool breakdown = false;
  double final_relres = 0.0;
  Vector residual_history;  // relative residuals, entry 0 is the initial one
  std::size_t spmv_count = 0;
  std::size_t precond_count = 0;
  std::string message;
};

struct SolveResult {
  Vector x;
  SolveReport report;
};

/// The identity operator of size n.
OperatorRef identity_operator(std::size_t n);

/// Preconditioned CG (classical recurrence) or flexible CG with one-direction
/// orthogonalization. Breakdown (non-positive curvature) ends the iteration
/// and is flagged in the report.
SolveResult solve(const OperatorRef& A, std::span<const double> b, const OperatorRef& precond,
                  const KrylovConfig& cfg, std::span<const double> x0);

}  // namespace amgpoly
