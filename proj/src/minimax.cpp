#include "amgpoly/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "amgpoly/chebyshev.hpp"
#include "amgpoly/roots.hpp"
#include "lp.hpp"

namespace amgpoly {

double phi(int k, double x) {
  if (k < 1) throw std::invalid_argument("phi: degree must be >= 1");
  const double r = (1.0 - x) / (1.0 + x);
  return 8.0 * k * std::pow(r, 2 * k) + x * (std::pow(r, 4 * k) - 1.0);
}

double solve_a_star(int k) {
  if (k < 1) throw std::invalid_argument("solve_a_star: degree must be >= 1");
  const double x = brent_root([k](double t) { return phi(k, t); }, 1e-8, 1.0 - 1e-8, 1e-15);
  return x * x;
}

double lambda_left(int k, double a) { return 0.5 / std::abs(c1_coefficient(a, k)); }

double lambda_right(int k, double a) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("lambda_right: a must lie in (0,1)");
  const double s = std::sinh(2.0 * k * std::atanh(std::sqrt(a)));
  return 1.0 / (s * s);
}

double lambda_of(int k, double a) { return std::max(lambda_left(k, a), lambda_right(k, a)); }

TheoremBounds theorem_bounds(int k) {
  if (k < 3) throw std::invalid_argument("theorem_bounds: requires k >= 3");
  const double lk = std::log(static_cast<double>(k));
  const double k2 = static_cast<double>(k) * k;
  return {lk * lk / (9.0 * k2), lk * lk / k2, lk / (6.0 * k2), 1.03 * lk / (2.0 * k2)};
}

double gamma_cheb4(int k) {
  if (k < 1) throw std::invalid_argument("gamma_cheb4: degree must be >= 1");
  return 3.0 / (4.0 * k * (k + 1.0));
}

OptimalParams optimal_params(int k) {
  OptimalParams p;
  p.k = k;
  p.a_star = solve_a_star(k);
  p.lambda_k = lambda_of(k, p.a_star);
  if (k >= 3) p.bounds = theorem_bounds(k);
  return p;
}

Vector log_grid(std::size_t n, double lo, double hi) {
  if (n == 0) return {};
  if (n == 1) return {hi};
  Vector g(n);
  const double l0 = std::log10(lo);
  const double step = (std::log10(hi) - l0) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = std::pow(10.0, l0 + step * static_cast<double>(i));
  g.front() = lo;
  g.back() = hi;
  return g;
}

double evaluate_gamma_numeric(const std::function<double(double)>& p, std::size_t grid_size,
                              std::optional<double> slope_at_zero) {
  double best = 0.0;
  for (double x : log_grid(grid_size)) {
    const double v = p(x);
    if (!(std::abs(v) < 1.0)) {
      throw std::domain_error("evaluate_gamma_numeric: |p| >= 1 at x = " + std::to_string(x));
    }
    best = std::max(best, x * v * v / ((1.0 - v) * (1.0 + v)));
  }
  if (slope_at_zero) best = std::max(best, 0.5 / std::abs(*slope_at_zero));
  return best;
}

namespace {

// G_j(x) = Q_j(x) - Q_{j-1}(x) with Q_j = (W_j(1) - W_j(1-2x)) / ((2j+1) x), so
// that (1 - p(x))/x = sum_j beta_j G_j(x). Valid at x = 0.
void beta_basis(int k, double x, std::span<double> g) {
  double vm1 = 0.0, v = 4.0, qprev = 0.0;
  const double y = 1.0 - 2.0 * x;
  for (int j = 1; j <= k; ++j) {
    const double q = v / (2.0 * j + 1.0);
    g[j - 1] = q - qprev;
    qprev = q;
    const double vp = 4.0 * (2.0 * j + 1.0) + 2.0 * y * v - vm1;
    vm1 = v;
    v = vp;
  }
}

double beta_q(std::span<const double> beta, double x) {
  std::vector<double> g(beta.size());
  beta_basis(static_cast<int>(beta.size()), x, g);
  double q = 0.0;
  for (std::size_t j = 0; j < beta.size(); ++j) q += beta[j] * g[j];
  return q;
}

struct RowRef {
  std::size_t point;
  bool upper;
  bool operator==(const RowRef&) const = default;
};

class BetaSearch {
 public:
  BetaSearch(int k, const BetaSearchOptions& opt)
      : k_(k), max_rounds_(opt.max_rounds), basis_((opt.grid_size + 1) * k) {
    x_.push_back(0.0);
    for (double v : log_grid(opt.grid_size)) x_.push_back(v);
    for (std::size_t i = 0; i < x_.size(); ++i) beta_basis(k, x_[i], row(i));
    seeds_.push_back({0, false});
    const std::size_t nseed = 4 * static_cast<std::size_t>(k) + 4;
    for (std::size_t s = 1; s <= nseed; ++s) {
      const std::size_t i = s * (x_.size() - 1) / nseed;
      seeds_.push_back({i, false});
      seeds_.push_back({i, true});
    }
    active_ = seeds_;
  }

  // Largest uniform relative slack s such that some beta satisfies every
  // grid constraint of f <= gamma with margin s. Negative means infeasible.
  double margin(double gamma) {
    std::vector<RowRef> ref = active_;
    for (const RowRef& r : seeds_) add_unique(ref, r);
    double s_true = -std::numeric_limits<double>::infinity();
    for (int round = 0; round < max_rounds_; ++round) {
      std::vector<std::vector<double>> A;
      std::vector<double> b;
      for (const RowRef& r : ref) {
        std::vector<double> a(k_ + 1);
        const double scale = r.upper ? inv_upper(r.point, gamma) : -inv_lower(r.point, gamma);
        auto g = row(r.point);
        for (int j = 0; j < k_; ++j) a[j] = scale * g[j];
        a[k_] = 1.0;
        A.push_back(std::move(a));
        b.push_back(r.upper ? 1.0 : -1.0);
      }
      for (int j = 0; j < k_; ++j) {
        std::vector<double> a(k_ + 1, 0.0);
        a[j] = 1.0;
        A.push_back(a);
        b.push_back(kBox);
        a[j] = -1.0;
        A.push_back(std::move(a));
        b.push_back(kBox);
      }
      std::vector<double> c(k_ + 1, 0.0);
      c[k_] = 1.0;
      const detail::LpResult lp = detail::maximize_free(c, A, b);
      if (lp.status != detail::LpStatus::Optimal) {
        throw std::runtime_error("optimize_beta: linear subproblem failed");
      }
      const double s_ref = lp.x[k_];
      beta_.assign(lp.x.begin(), lp.x.begin() + k_);

      lower_.resize(x_.size());
      upper_.resize(x_.size());
      s_true = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < x_.size(); ++i) {
        const double q = dot(row(i), beta_);
        lower_[i] = q * inv_lower(i, gamma) - 1.0;
        upper_[i] = 1.0 - q * inv_upper(i, gamma);
        s_true = std::min({s_true, lower_[i], upper_[i]});
      }

      const double tol = 1e-13;
      if (s_true >= s_ref - tol) {
        active_.clear();
        for (const RowRef& r : ref) {
          const double m = r.upper ? upper_[r.point] : lower_[r.point];
          if (m <= s_ref + 1e-9) active_.push_back(r);
        }
        return s_true;
      }

      // Add the deepest local minima of the violated margins.
      std::vector<std::pair<double, RowRef>> cand;
      for (int side = 0; side < 2; ++side) {
        const Vector& m = side ? upper_ : lower_;
        for (std::size_t i = 0; i < x_.size(); ++i) {
          if (m[i] >= s_ref - tol) continue;
          const bool left_ok = i == 0 || m[i - 1] >= m[i];
          const bool right_ok = i + 1 == x_.size() || m[i + 1] > m[i];
          if (left_ok && right_ok) cand.push_back({m[i], RowRef{i, side == 1}});
        }
      }
      std::sort(cand.begin(), cand.end(),
                [](const auto& l, const auto& r) { return l.first < r.first; });
      std::size_t added = 0;
      for (const auto& [m, r] : cand) {
        if (added >= 2 * static_cast<std::size_t>(k_) + 2) break;
        if (add_unique(ref, r)) ++added;
      }
      if (added == 0) return s_true;
    }
    converged_ = false;
    return s_true;
  }

  const std::vector<double>& beta() const { return beta_; }
  bool converged() const { return converged_; }

  // max over the grid of p^2/(q(1+p)), with the x = 0 limit 1/(2q(0)).
  double gamma_value(std::span<const double> beta) const {
    double best = 0.0;
    for (std::size_t i = 0; i < x_.size(); ++i) {
      const double q = dot(row(i), beta);
      const double p = 1.0 - x_[i] * q;
      if (!(q > 0.0) || !(p > -1.0)) return std::numeric_limits<double>::infinity();
      best = std::max(best, p * p / (q * (1.0 + p)));
    }
    return best;
  }

 private:
  static constexpr double kBox = 1e6;

  std::span<double> row(std::size_t i) {
    return {basis_.data() + i * static_cast<std::size_t>(k_), static_cast<std::size_t>(k_)};
  }
  std::span<const double> row(std::size_t i) const {
    return {basis_.data() + i * static_cast<std::size_t>(k_), static_cast<std::size_t>(k_)};
  }

  // f <= gamma  <=>  1/((x+g)(1+w)) <= q <= (1+w)/x,  w = sqrt(g/(x+g))
  double inv_lower(std::size_t i, double gamma) const {
    const double w = std::sqrt(gamma / (x_[i] + gamma));
    return (x_[i] + gamma) * (1.0 + w);
  }
  double inv_upper(std::size_t i, double gamma) const {
    const double w = std::sqrt(gamma / (x_[i] + gamma));
    return x_[i] / (1.0 + w);
  }

  static bool add_unique(std::vector<RowRef>& v, const RowRef& r) {
    if (std::find(v.begin(), v.end(), r) != v.end()) return false;
    v.push_back(r);
    return true;
  }

  int k_;
  int max_rounds_;
  Vector x_;
  std::vector<double> basis_;
  std::vector<RowRef> seeds_;
  std::vector<RowRef> active_;
  std::vector<double> beta_;
  Vector lower_, upper_;
  bool converged_ = true;
};

}  // namespace

double beta_poly_eval(std::span<const double> beta, double x) {
  const std::size_t k = beta.size();
  const double y = 1.0 - 2.0 * x;
  double wm1 = 1.0, w = 2.0 * y + 1.0;
  double pprev = 1.0, p = 1.0;
  for (std::size_t j = 1; j <= k; ++j) {
    const double pj = w / (2.0 * static_cast<double>(j) + 1.0);
    p += beta[j - 1] * (pj - pprev);
    pprev = pj;
    const double wp = 2.0 * y * w - wm1;
    wm1 = w;
    w = wp;
  }
  return p;
}

double beta_poly_slope_at_zero(std::span<const double> beta) { return -beta_q(beta, 0.0); }

BetaTable optimize_beta(int k, const BetaSearchOptions& options) {
  if (k < 1 || k > kMaxTabulatedBeta) {
    throw std::invalid_argument("optimize_beta: degree must lie in 1..12");
  }
  BetaSearch search(k, options);
  const double hi = 1.01 * gamma_cheb4(k);
  double lo = hi / 8.0;
  while (search.margin(lo) >= 0.0) lo *= 0.5;
  if (search.margin(hi) < 0.0) throw std::runtime_error("optimize_beta: upper bracket infeasible");

  const double g_star = brent_root([&](double g) { return search.margin(g); }, lo, hi,
                                   1e-13 * hi);
  double g = g_star * (1.0 + 1e-10);
  while (search.margin(g) < 0.0) g *= 1.0 + 1e-9;

  BetaTable t;
  t.k = k;
  t.beta = search.beta();
  t.gamma_value = search.gamma_value(t.beta);
  t.converged = search.converged();
  return t;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_params_csv(std::ostream& out, int kmax) {
  out << "k,a_star,lambda_k,gamma_cheb4,gamma_opt4,a_lower,a_upper,lam_lower,lam_upper\n";
  for (int k = 1; k <= kmax; ++k) {
    const OptimalParams p = optimal_params(k);
    out << k << ',' << fmt17(p.a_star) << ',' << fmt17(p.lambda_k) << ',' << fmt17(gamma_cheb4(k))
        << ',';
    if (has_tabulated_beta(k)) out << fmt17(tabulated_beta(k).gamma_value);
    if (p.bounds) {
      out << ',' << fmt17(p.bounds->a_lower) << ',' << fmt17(p.bounds->a_upper) << ','
          << fmt17(p.bounds->lam_lower) << ',' << fmt17(p.bounds->lam_upper) << '\n';
    } else {
      out << ",,,,\n";
    }
  }
}

}  // namespace amgpoly
