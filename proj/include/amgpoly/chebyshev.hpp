#pragma once

#include <vector>

namespace amgpoly {

/// Parameters of the shifted and scaled first-kind Chebyshev polynomial
/// tau_k^{[a,1]}, normalized so that tau(0) = 1.
struct ScaledChebParams {
  double a;    // left end of the interval [a, 1], in [0, 1)
  int k;       // degree
  double theta() const { return 0.5 * (1.0 + a); }
  double delta() const { return 0.5 * (1.0 - a); }

  /// Throws std::invalid_argument unless a in [0,1) and k >= 0.
  void validate() const;
};

/// First-kind Chebyshev polynomial T_k(x) (T_1(x) = x) for any real x.
double cheb1_eval(int k, double x);
/// Second-kind Chebyshev polynomial U_k(x) (U_1(x) = 2x).
double cheb2_eval(int k, double x);
/// Fourth-kind Chebyshev polynomial W_k(x) = sin((k+1/2)t)/sin(t/2), x = cos t,
/// so that W_1(x) = 2x + 1 and W_k(1) = 2k + 1.
/// Throws std::domain_error for |x| > 1.
double cheb4_eval(int k, double x);

/// Normalization constants sigma_0..sigma_k with sigma_0 = 1, sigma_1 = theta/delta.
std::vector<double> sigma_sequence(const ScaledChebParams& p);

/// tau_k^{[a,1]}(x) through the normalized three-term recurrence.
double scaled_cheb_eval(const ScaledChebParams& p, double x);

/// c_1 = d/dx tau_k^{[a,1]} at 0, from the binomial-ratio closed form.
double c1_coefficient(double a, int k);

/// x * tau^2 / (1 - tau^2) for x in (0,1]. The x -> 0+ limit is 1/(2|c_1|).
/// Throws std::domain_error at an interior pole (tau^2 = 1).
double smoothing_objective(const ScaledChebParams& p, double x);
double smoothing_objective_limit_at_zero(const ScaledChebParams& p);

struct CoefficientRoots {
  std::vector<double> alpha;  // roots of sum_j C(2k,2j) x^j, descending
  std::vector<double> delta;  // roots of sum_j C(2k,2j+1) x^j, descending
};

/// Closed-form roots alpha_j = -tan^2((2j+1)pi/(4k)), delta_j = -tan^2(j pi/(2k)).
CoefficientRoots coefficient_roots(int k);

/// Binomial coefficient C(n, r) in floating point (multiplicative recurrence).
double binomial(int n, int r);

/// sum_{j=0}^{k} C(2k,2j) x^j  and  sum_{j=0}^{k-1} C(2k,2j+1) x^j
double even_binomial_poly(int k, double x);
double odd_binomial_poly(int k, double x);

}  // namespace amgpoly
