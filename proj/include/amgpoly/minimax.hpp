#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "amgpoly/csr.hpp"

namespace amgpoly {

struct TheoremBounds {
  double a_lower;
  double a_upper;
  double lam_lower;
  double lam_upper;
};

/// Per-degree record of the optimal first-kind parameter.
struct OptimalParams {
  int k = 0;
  double a_star = 0.0;
  double lambda_k = 0.0;
  std::optional<TheoremBounds> bounds;  // only for k >= 3
};

/// Coefficients beta_1..beta_k of
///   p_k(x) = sum_{j=0}^{k} (beta_j - beta_{j+1})/(2j+1) W_j(1-2x),
/// with beta_0 = 1 and beta_{k+1} = 0 implied.
struct BetaTable {
  int k = 0;
  std::vector<double> beta;
  double gamma_value = 0.0;
  bool converged = true;
};

/// 8k(1-x^2)^{2k} + x[(1-x)^{4k} - (1+x)^{4k}] divided by (1+x)^{4k}.
/// Same sign as the unscaled expression on (0,1).
double phi(int k, double x);

/// a*_k = x^2 where x is the unique root of phi(k, .) in (0,1).
double solve_a_star(int k);

/// 1/(2|c_1|): the x -> 0+ value of the smoothing objective.
double lambda_left(int k, double a);
/// tau(1)^2/(1 - tau(1)^2) evaluated as 1/sinh^2(2k atanh(sqrt(a))).
double lambda_right(int k, double a);
/// max(lambda_left, lambda_right).
double lambda_of(int k, double a);

/// Closed-form parameter and value bounds; throws std::invalid_argument for k < 3.
TheoremBounds theorem_bounds(int k);

/// 3/(4k(k+1)).
double gamma_cheb4(int k);

OptimalParams optimal_params(int k);

/// n log-uniformly spaced points from lo to hi inclusive.
Vector log_grid(std::size_t n, double lo = 1e-8, double hi = 1.0);

/// sup over (0,1] of x p(x)^2 / (1 - p(x)^2) sampled on a log grid of
/// (1e-8, 1]. When p'(0) is supplied the x -> 0 limit 1/(2|p'(0)|) is
/// included. Throws std::domain_error if |p| >= 1 at a grid point.
double evaluate_gamma_numeric(const std::function<double(double)>& p,
                              std::size_t grid_size = 20001,
                              std::optional<double> slope_at_zero = std::nullopt);

/// p_k(x) for the beta expansion above.
double beta_poly_eval(std::span<const double> beta, double x);
/// p_k'(0).
double beta_poly_slope_at_zero(std::span<const double> beta);

struct BetaSearchOptions {
  std::size_t grid_size = 20001;
  int max_rounds = 500;
};

/// Minimax coefficients for degrees 1..12. Uses a bracketed search on the
/// attainable value, each trial value being a small linear feasibility problem
/// over the grid solved by constraint generation.
BetaTable optimize_beta(int k, const BetaSearchOptions& options = {});

/// Shipped tables (see tables.cpp). Throws std::out_of_range outside the range.
constexpr int kMaxTabulatedAStar = 20;
constexpr int kMaxTabulatedBeta = 12;
double tabulated_a_star(int k);
double tabulated_lambda(int k);
const BetaTable& tabulated_beta(int k);
bool has_tabulated_beta(int k);

/// k, a_star, lambda_k, gamma_cheb4, gamma_opt4, a_lower, a_upper, lam_lower, lam_upper
/// gamma_opt4 comes from the shipped table; fields that do not apply are left empty.
void write_params_csv(std::ostream& out, int kmax);

}  // namespace amgpoly
