#include "amgpoly/krylov.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace amgpoly {

std::string to_string(KrylovVariant v) { return v == KrylovVariant::PCG ? "pcg" : "fcg"; }

KrylovVariant parse_krylov_variant(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "pcg" || s == "cg") return KrylovVariant::PCG;
  if (s == "fcg") return KrylovVariant::FCG;
  throw std::invalid_argument("unknown Krylov variant '" + std::string(name) + "'");
}

void KrylovConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("krylov tol must be positive");
  if (itmax < 1) throw std::invalid_argument("krylov itmax must be >= 1");
}

OperatorRef identity_operator(std::size_t n) {
  return OperatorRef(n, [](std::span<const double> x, std::span<double> y) {
    std::copy(x.begin(), x.end(), y.begin());
  });
}

SolveResult solve(const OperatorRef& A, std::span<const double> b, const OperatorRef& precond,
                  const KrylovConfig& cfg, std::span<const double> x0) {
  cfg.validate();
  const std::size_t n = A.size();
  if (b.size() != n || x0.size() != n || precond.size() != n) {
    throw std::invalid_argument("solve: dimension mismatch");
  }
  SolveResult out;
  SolveReport& rep = out.report;
  Vector& x = out.x;
  x.assign(x0.begin(), x0.end());

  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    rep.converged = true;
    if (cfg.record_history) rep.residual_history.push_back(0.0);
    return out;
  }

  Vector r(n), z(n), p(n), q(n);
  auto true_residual = [&]() {
    A.apply(x, r);
    ++rep.spmv_count;
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    return norm2(r) / bnorm;
  };

  double relres = true_residual();
  if (cfg.record_history) rep.residual_history.push_back(relres);
  rep.final_relres = relres;
  if (relres <= cfg.tol) {
    rep.converged = true;
    return out;
  }

  precond.apply(r, z);
  ++rep.precond_count;
  p = z;
  double rz = dot(r, z);
  if (!(rz > 0.0) && cfg.variant == KrylovVariant::PCG) {
    rep.breakdown = true;
    rep.message = "preconditioner not positive definite";
    return out;
  }

  for (int it = 1; it <= cfg.itmax; ++it) {
    A.apply(p, q);
    ++rep.spmv_count;
    const double pq = dot(p, q);
    if (!(pq > 0.0)) {
      rep.breakdown = true;
      rep.iterations = it;
      rep.message = "non-positive curvature p^T A p";
      return out;
    }
    const double alpha = (cfg.variant == KrylovVariant::PCG ? rz : dot(p, r)) / pq;
    axpy(alpha, p, x);
    axpy(-alpha, q, r);
    relres = norm2(r) / bnorm;
    rep.iterations = it;

    if (relres <= cfg.tol) {
      // Confirm with the true residual before stopping.
      relres = true_residual();
      if (cfg.record_history) rep.residual_history.push_back(relres);
      rep.final_relres = relres;
      if (relres <= cfg.tol) {
        rep.converged = true;
        return out;
      }
    } else {
      if (cfg.record_history) rep.residual_history.push_back(relres);
      rep.final_relres = relres;
    }
    if (it == cfg.itmax) break;

    precond.apply(r, z);
    ++rep.precond_count;
    const double rz_new = dot(r, z);
    if (!(rz_new > 0.0) && cfg.variant == KrylovVariant::PCG) {
      rep.breakdown = true;
      rep.message = "preconditioner not positive definite";
      return out;
    }
    double beta;
    if (cfg.variant == KrylovVariant::PCG) {
      beta = rz_new / rz;
    } else {
      beta = -dot(z, q) / pq;
    }
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  rep.message = "iteration limit reached";
  return out;
}

}  // namespace amgpoly
