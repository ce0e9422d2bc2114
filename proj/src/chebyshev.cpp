#include "amgpoly/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace amgpoly {

void ScaledChebParams::validate() const {
  if (!(a >= 0.0 && a < 1.0)) {
    throw std::invalid_argument("ScaledChebParams: a must lie in [0,1), got " + std::to_string(a));
  }
  if (k < 0) throw std::invalid_argument("ScaledChebParams: negative degree");
}

double cheb1_eval(int k, double x) {
  if (k < 0) throw std::invalid_argument("cheb1_eval: negative degree");
  if (std::abs(x) <= 1.0) {
    if (k == 0) return 1.0;
    double tm1 = 1.0, t = x;
    for (int j = 1; j < k; ++j) {
      const double tp = 2.0 * x * t - tm1;
      tm1 = t;
      t = tp;
    }
    return t;
  }
  const double ax = std::abs(x);
  const double r = ax + std::sqrt((ax - 1.0) * (ax + 1.0));
  const double rk = std::pow(r, k);
  const double v = 0.5 * (rk + 1.0 / rk);
  return (x < 0.0 && (k % 2 == 1)) ? -v : v;
}

double cheb2_eval(int k, double x) {
  if (k < 0) throw std::invalid_argument("cheb2_eval: negative degree");
  if (std::abs(x) <= 1.0) {
    if (k == 0) return 1.0;
    double um1 = 1.0, u = 2.0 * x;
    for (int j = 1; j < k; ++j) {
      const double up = 2.0 * x * u - um1;
      um1 = u;
      u = up;
    }
    return u;
  }
  const double ax = std::abs(x);
  const double s = std::sqrt((ax - 1.0) * (ax + 1.0));
  const double r = ax + s;
  const double rk = std::pow(r, k + 1);
  const double v = (rk - 1.0 / rk) / (2.0 * s);
  return (x < 0.0 && (k % 2 == 1)) ? -v : v;
}

double cheb4_eval(int k, double x) {
  if (k < 0) throw std::invalid_argument("cheb4_eval: negative degree");
  if (std::abs(x) > 1.0) throw std::domain_error("cheb4_eval: |x| > 1");
  if (k == 0) return 1.0;
  double wm1 = 1.0, w = 2.0 * x + 1.0;
  for (int j = 1; j < k; ++j) {
    const double wp = 2.0 * x * w - wm1;
    wm1 = w;
    w = wp;
  }
  return w;
}

std::vector<double> sigma_sequence(const ScaledChebParams& p) {
  p.validate();
  const double ratio = p.theta() / p.delta();
  std::vector<double> sigma(static_cast<std::size_t>(p.k) + 1);
  sigma[0] = 1.0;
  if (p.k >= 1) sigma[1] = ratio;
  for (int j = 1; j < p.k; ++j) sigma[j + 1] = 2.0 * ratio * sigma[j] - sigma[j - 1];
  return sigma;
}

namespace {

// Runs the normalized recurrence for tau_j together with u_j = (1 - tau_j)/x,
// which stays accurate as x -> 0.
struct TauAndSlope {
  double tau;
  double u;
};

TauAndSlope tau_and_slope(const ScaledChebParams& p, double x) {
  const std::vector<double> sigma = sigma_sequence(p);
  if (p.k == 0) return {1.0, 0.0};
  const double theta = p.theta();
  const double delta = p.delta();
  const double y = (theta - x) / delta;
  double tm1 = 1.0, t = 1.0 - x / theta;
  double um1 = 0.0, u = 1.0 / theta;
  for (int j = 1; j < p.k; ++j) {
    const double down = sigma[j] / sigma[j + 1];
    const double back = sigma[j - 1] / sigma[j];
    const double tp = down * (2.0 * y * t - back * tm1);
    const double up = down * (2.0 / delta + 2.0 * y * u - back * um1);
    tm1 = t;
    t = tp;
    um1 = u;
    u = up;
  }
  return {t, u};
}

}  // namespace

double scaled_cheb_eval(const ScaledChebParams& p, double x) { return tau_and_slope(p, x).tau; }

double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  r = std::min(r, n - r);
  double c = 1.0;
  for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

double even_binomial_poly(int k, double x) {
  double s = 0.0, xp = 1.0;
  for (int j = 0; j <= k; ++j) {
    s += binomial(2 * k, 2 * j) * xp;
    xp *= x;
  }
  return s;
}

double odd_binomial_poly(int k, double x) {
  double s = 0.0, xp = 1.0;
  for (int j = 0; j < k; ++j) {
    s += binomial(2 * k, 2 * j + 1) * xp;
    xp *= x;
  }
  return s;
}

double c1_coefficient(double a, int k) {
  if (k < 1) throw std::invalid_argument("c1_coefficient: degree must be >= 1");
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("c1_coefficient: a must lie in (0,1)");
  return -k * odd_binomial_poly(k, a) / even_binomial_poly(k, a);
}

double smoothing_objective_limit_at_zero(const ScaledChebParams& p) {
  p.validate();
  if (p.k < 1) throw std::invalid_argument("smoothing_objective: degree must be >= 1");
  return 0.5 / tau_and_slope(p, 0.0).u;
}

double smoothing_objective(const ScaledChebParams& p, double x) {
  p.validate();
  if (p.k < 1) throw std::invalid_argument("smoothing_objective: degree must be >= 1");
  if (!(x > 0.0 && x <= 1.0)) throw std::domain_error("smoothing_objective: x must lie in (0,1]");
  const auto [tau, u] = tau_and_slope(p, x);
  // 1 - tau^2 = x * u * (1 + tau)
  const double den = u * (1.0 + tau);
  const double den0 = 2.0 * tau_and_slope(p, 0.0).u;
  if (std::abs(x * den) <= 1e-14 && x * std::abs(den0) > 1e-14) {
    throw std::domain_error("smoothing_objective: pole (tau^2 = 1) at x = " + std::to_string(x));
  }
  return tau * tau / den;
}

CoefficientRoots coefficient_roots(int k) {
  if (k < 1) throw std::invalid_argument("coefficient_roots: degree must be >= 1");
  CoefficientRoots roots;
  const double pi = std::numbers::pi;
  for (int j = 0; j < k; ++j) {
    const double t = std::tan((2.0 * j + 1.0) * pi / (4.0 * k));
    roots.alpha.push_back(-t * t);
  }
  for (int j = 1; j < k; ++j) {
    const double t = std::tan(j * pi / (2.0 * k));
    roots.delta.push_back(-t * t);
  }
  return roots;
}

}  // namespace amgpoly
