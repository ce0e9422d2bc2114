#include "amgpoly/smoothers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "amgpoly/chebyshev.hpp"
#include "amgpoly/minimax.hpp"

namespace amgpoly {

std::string to_string(SmootherFamily f) {
  switch (f) {
    case SmootherFamily::L1JacobiSweeps: return "l1jacobi";
    case SmootherFamily::Cheb4: return "cheb4";
    case SmootherFamily::OptCheb4: return "optcheb4";
    case SmootherFamily::OptCheb1: return "optcheb1";
  }
  return "unknown";
}

SmootherFamily parse_smoother_family(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "l1jacobi" || s == "l1-jacobi" || s == "jacobi") return SmootherFamily::L1JacobiSweeps;
  if (s == "cheb4") return SmootherFamily::Cheb4;
  if (s == "optcheb4") return SmootherFamily::OptCheb4;
  if (s == "optcheb1") return SmootherFamily::OptCheb1;
  throw std::invalid_argument("unknown smoother family '" + std::string(name) + "'");
}

PolySmootherConfig PolySmootherConfig::make(SmootherFamily family, int degree) {
  if (degree < 1) throw std::invalid_argument("smoother degree must be >= 1");
  PolySmootherConfig c;
  c.family = family;
  c.degree = degree;
  if (family == SmootherFamily::OptCheb1) {
    c.a = degree <= kMaxTabulatedAStar ? tabulated_a_star(degree) : solve_a_star(degree);
  } else if (family == SmootherFamily::OptCheb4) {
    if (has_tabulated_beta(degree)) {
      c.beta = tabulated_beta(degree).beta;
    } else {
      std::clog << "warning: no optimized coefficients for degree " << degree
                << ", using plain 4th-kind Chebyshev\n";
      c.family = SmootherFamily::Cheb4;
    }
  }
  return c;
}

void PolySmootherConfig::validate() const {
  if (degree < 1) throw std::invalid_argument("smoother degree must be >= 1");
  if (!(rho_scale > 0.0)) throw std::invalid_argument("rho_scale must be positive");
  if (family == SmootherFamily::OptCheb1 && !(a > 0.0 && a < 1.0)) {
    throw std::invalid_argument("optcheb1 parameter a must lie in (0,1)");
  }
  if (family == SmootherFamily::OptCheb4 && beta.size() != static_cast<std::size_t>(degree)) {
    throw std::invalid_argument("optcheb4 needs one coefficient per degree");
  }
}

namespace {

std::vector<double> coefficients(const PolySmootherConfig& cfg) {
  if (cfg.family == SmootherFamily::OptCheb4) return cfg.beta;
  return std::vector<double>(static_cast<std::size_t>(cfg.degree), 1.0);
}

}  // namespace

double smoother_poly(const PolySmootherConfig& cfg, double t) {
  cfg.validate();
  switch (cfg.family) {
    case SmootherFamily::L1JacobiSweeps: return std::pow(1.0 - t, cfg.degree);
    case SmootherFamily::Cheb4:
    case SmootherFamily::OptCheb4: return beta_poly_eval(coefficients(cfg), t);
    case SmootherFamily::OptCheb1: return scaled_cheb_eval({cfg.a, cfg.degree}, t);
  }
  return 0.0;
}

double smoother_poly_slope_at_zero(const PolySmootherConfig& cfg) {
  cfg.validate();
  switch (cfg.family) {
    case SmootherFamily::L1JacobiSweeps: return -static_cast<double>(cfg.degree);
    case SmootherFamily::Cheb4:
    case SmootherFamily::OptCheb4: return beta_poly_slope_at_zero(coefficients(cfg));
    case SmootherFamily::OptCheb1: return c1_coefficient(cfg.a, cfg.degree);
  }
  return 0.0;
}

double smoother_gamma(const PolySmootherConfig& cfg) {
  return evaluate_gamma_numeric([&](double t) { return smoother_poly(cfg, t); }, 20001,
                                smoother_poly_slope_at_zero(cfg));
}

L1JacobiData L1JacobiData::from_diagonal(Vector d) {
  for (double v : d) {
    if (!(v > 0.0)) throw std::invalid_argument("l1-Jacobi diagonal must be positive");
  }
  return {std::move(d)};
}

L1JacobiData l1_jacobi_diag(const CsrMatrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("l1_jacobi_diag: matrix not square");
  const auto rp = A.row_ptr();
  const auto ci = A.col_idx();
  const auto v = A.values();
  Vector m(A.rows(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    double diag = 0.0, off = 0.0;
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
      if (ci[p] == i) {
        diag = v[p];
      } else {
        off += std::abs(v[p]);
      }
    }
    if (!(diag > 0.0)) {
      throw std::invalid_argument("l1_jacobi_diag: non-positive diagonal in row " +
                                  std::to_string(i));
    }
    m[i] = diag + off;
  }
  return {std::move(m)};
}

void SmootherWorkspace::resize(std::size_t n) {
  z.resize(n);
  r.resize(n);
  d.resize(n);
  s.resize(n);
}

namespace {

void check_dims(const OperatorRef& A, const L1JacobiData& M, std::size_t nb, std::size_t nx) {
  const std::size_t n = A.size();
  if (M.m_diag.size() != n || nb != n || nx != n) {
    throw std::invalid_argument("smoother_apply: dimension mismatch");
  }
}

// r = b - A x
void residual(const OperatorRef& A, std::span<const double> b, std::span<const double> x,
              std::span<double> r, SmootherWorkspace& ws) {
  A.apply(x, r);
  ++ws.spmv_count;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
}

}  // namespace

void smoother_apply(const PolySmootherConfig& cfg, const OperatorRef& A, const L1JacobiData& M,
                    std::span<const double> b, std::span<double> x, SmootherWorkspace& ws) {
  cfg.validate();
  check_dims(A, M, b.size(), x.size());
  const std::size_t n = x.size();
  ws.resize(n);
  const int k = cfg.degree;
  const Vector& m = M.m_diag;
  const double inv_rho = 1.0 / cfg.rho_scale;

  switch (cfg.family) {
    case SmootherFamily::L1JacobiSweeps: {
      for (int it = 0; it < k; ++it) {
        residual(A, b, x, ws.r, ws);
        for (std::size_t i = 0; i < n; ++i) x[i] += inv_rho * ws.r[i] / m[i];
      }
      return;
    }
    case SmootherFamily::Cheb4:
    case SmootherFamily::OptCheb4: {
      const bool opt = cfg.family == SmootherFamily::OptCheb4;
      residual(A, b, x, ws.r, ws);
      std::fill(ws.z.begin(), ws.z.end(), 0.0);
      for (int it = 1; it <= k; ++it) {
        const double c_z = (2.0 * it - 3.0) / (2.0 * it + 1.0);
        const double c_r = (8.0 * it - 4.0) / (2.0 * it + 1.0) * inv_rho;
        const double beta = opt ? cfg.beta[it - 1] : 1.0;
        for (std::size_t i = 0; i < n; ++i) {
          ws.z[i] = c_z * ws.z[i] + c_r * ws.r[i] / m[i];
          x[i] += beta * ws.z[i];
        }
        if (it < k) {
          A.apply(ws.z, ws.s);
          ++ws.spmv_count;
          for (std::size_t i = 0; i < n; ++i) ws.r[i] -= ws.s[i];
        }
      }
      return;
    }
    case SmootherFamily::OptCheb1: {
      const ScaledChebParams p{cfg.a, k};
      const double theta = p.theta();
      const double delta = p.delta();
      const double sigma1 = theta / delta;
      residual(A, b, x, ws.r, ws);
      for (std::size_t i = 0; i < n; ++i) {
        ws.r[i] = inv_rho * ws.r[i] / m[i];
        ws.d[i] = ws.r[i] / theta;
        x[i] += ws.d[i];
      }
      double rho_prev = 1.0 / sigma1;
      for (int j = 1; j < k; ++j) {
        A.apply(ws.d, ws.s);
        ++ws.spmv_count;
        for (std::size_t i = 0; i < n; ++i) ws.s[i] = inv_rho * ws.s[i] / m[i];
        const double rho = 1.0 / (2.0 * sigma1 - rho_prev);
        fused_update(rho, rho_prev, 2.0 * rho / delta, ws.s, ws.r, ws.d, x);
        rho_prev = rho;
      }
      return;
    }
  }
}

Vector smoother_apply(const PolySmootherConfig& cfg, const OperatorRef& A, const L1JacobiData& M,
                      std::span<const double> b, std::span<const double> x0) {
  Vector x(x0.begin(), x0.end());
  SmootherWorkspace ws;
  smoother_apply(cfg, A, M, b, x, ws);
  return x;
}

Vector smoother_error_oracle(const OperatorRef& A, const L1JacobiData& M,
                             const PolySmootherConfig& cfg, std::span<const double> e0) {
  cfg.validate();
  const std::size_t n = e0.size();
  if (A.size() != n || M.m_diag.size() != n) {
    throw std::invalid_argument("smoother_error_oracle: dimension mismatch");
  }
  Vector tmp(n);
  // y = M^{-1} A v / rho
  auto apply_y = [&](const Vector& v, Vector& y) {
    A.apply(v, tmp);
    y.resize(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = tmp[i] / M.m_diag[i] / cfg.rho_scale;
  };
  const int k = cfg.degree;
  Vector e(e0.begin(), e0.end());
  Vector y;

  switch (cfg.family) {
    case SmootherFamily::L1JacobiSweeps: {
      for (int it = 0; it < k; ++it) {
        apply_y(e, y);
        for (std::size_t i = 0; i < n; ++i) e[i] -= y[i];
      }
      return e;
    }
    case SmootherFamily::Cheb4:
    case SmootherFamily::OptCheb4: {
      // sum_j (beta_j - beta_{j+1})/(2j+1) W_j(X) e0,  X = I - 2Y
      std::vector<double> beta(static_cast<std::size_t>(k) + 2, 0.0);
      beta[0] = 1.0;
      for (int j = 1; j <= k; ++j) {
        beta[j] = cfg.family == SmootherFamily::OptCheb4 ? cfg.beta[j - 1] : 1.0;
      }
      Vector wm1 = e;
      Vector w(n);
      apply_y(wm1, y);
      for (std::size_t i = 0; i < n; ++i) w[i] = 2.0 * (wm1[i] - 2.0 * y[i]) + wm1[i];
      Vector out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = (beta[0] - beta[1]) * wm1[i];
      for (int j = 1; j <= k; ++j) {
        const double c = (beta[j] - beta[j + 1]) / (2.0 * j + 1.0);
        for (std::size_t i = 0; i < n; ++i) out[i] += c * w[i];
        if (j == k) break;
        apply_y(w, y);
        Vector wp(n);
        for (std::size_t i = 0; i < n; ++i) wp[i] = 2.0 * (w[i] - 2.0 * y[i]) - wm1[i];
        wm1 = std::move(w);
        w = std::move(wp);
      }
      return out;
    }
    case SmootherFamily::OptCheb1: {
      // T_k((theta I - Y)/delta) e0 / T_k(theta/delta)
      const double theta = 0.5 * (1.0 + cfg.a);
      const double delta = 0.5 * (1.0 - cfg.a);
      auto apply_z = [&](const Vector& v, Vector& out) {
        apply_y(v, y);
        out.resize(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = (theta * v[i] - y[i]) / delta;
      };
      Vector tm1 = e, t, zt;
      apply_z(tm1, t);
      for (int j = 1; j < k; ++j) {
        apply_z(t, zt);
        for (std::size_t i = 0; i < n; ++i) zt[i] = 2.0 * zt[i] - tm1[i];
        tm1 = std::move(t);
        t = std::move(zt);
      }
      const double scale = cheb1_eval(k, theta / delta);
      for (double& v : t) v /= scale;
      return t;
    }
  }
  return e;
}

double estimate_rho(const OperatorRef& A, const L1JacobiData& M, int iterations) {
  const std::size_t n = A.size();
  // same rippled start as estimate_lambda_max
  Vector v(n), av(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * static_cast<double>((i * 2654435761u) % 1024) / 1024.0;
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    A.apply(v, av);
    double vav = 0.0, vmv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      vav += v[i] * av[i];
      vmv += v[i] * M.m_diag[i] * v[i];
    }
    lambda = vav / vmv;
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = av[i] / M.m_diag[i];
      nrm += v[i] * v[i];
    }
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) break;
    for (double& x : v) x /= nrm;
  }
  return lambda;
}

}  // namespace amgpoly
