#include "lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace amgpoly::detail {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-12;

struct Tableau {
  std::size_t rows;
  std::size_t cols;  // excluding the rhs column
  std::vector<double> data;
  std::vector<std::size_t> basis;

  double& at(std::size_t r, std::size_t c) { return data[r * (cols + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * (cols + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols); }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols; ++c) at(pr, c) /= p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols; ++c) at(r, c) -= f * at(pr, c);
    }
    basis[pr] = pc;
  }
};

enum class PhaseResult { Optimal, Unbounded, IterationLimit };

// Minimizes cost^T y over the current canonical tableau, letting only
// columns [0, enter_limit) enter the basis.
PhaseResult run_phase(Tableau& t, const std::vector<double>& cost, std::size_t enter_limit,
                      int max_iter) {
  const int bland_after = max_iter / 4;
  for (int iter = 0; iter < max_iter; ++iter) {
    std::size_t enter = t.cols;
    double best = -kCostTol;
    for (std::size_t j = 0; j < enter_limit; ++j) {
      double d = cost[j];
      for (std::size_t r = 0; r < t.rows; ++r) d -= cost[t.basis[r]] * t.at(r, j);
      if (iter >= bland_after) {
        if (d < -kCostTol) {
          enter = j;
          break;
        }
      } else if (d < best) {
        best = d;
        enter = j;
      }
    }
    if (enter == t.cols) return PhaseResult::Optimal;

    std::size_t leave = t.rows;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < t.rows; ++r) {
      const double a = t.at(r, enter);
      if (a <= kPivotTol) continue;
      const double q = t.rhs(r) / a;
      if (q < ratio - 1e-15 || (q <= ratio + 1e-15 && leave < t.rows && t.basis[r] < t.basis[leave])) {
        ratio = q;
        leave = r;
      }
    }
    if (leave == t.rows) return PhaseResult::Unbounded;
    t.pivot(leave, enter);
  }
  return PhaseResult::IterationLimit;
}

}  // namespace

LpResult maximize_free(const std::vector<double>& c, const std::vector<std::vector<double>>& A,
                       const std::vector<double>& b) {
  const std::size_t n = c.size();
  const std::size_t m = b.size();
  if (A.size() != m) throw std::invalid_argument("maximize_free: row count mismatch");

  Tableau t{n, m + n, std::vector<double>(n * (m + n + 1), 0.0), std::vector<std::size_t>(n)};
  std::vector<double> sign(n, 1.0);
  for (std::size_t r = 0; r < n; ++r) {
    if (c[r] < 0.0) sign[r] = -1.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (A[j].size() != n) throw std::invalid_argument("maximize_free: row length mismatch");
      t.at(r, j) = sign[r] * A[j][r];
    }
    t.at(r, m + r) = 1.0;
    t.rhs(r) = sign[r] * c[r];
    t.basis[r] = m + r;
  }

  const int max_iter = static_cast<int>(50 * (m + n)) + 1000;
  LpResult result;

  std::vector<double> phase1(m + n, 0.0);
  for (std::size_t r = 0; r < n; ++r) phase1[m + r] = 1.0;
  if (run_phase(t, phase1, m, max_iter) == PhaseResult::IterationLimit) return result;
  double infeas = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    if (t.basis[r] >= m) infeas += t.rhs(r);
  }
  if (infeas > 1e-9 * (1.0 + std::abs(c.back()))) {
    result.status = LpStatus::Unbounded;  // dual infeasible
    return result;
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (t.basis[r] < m) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (std::abs(t.at(r, j)) > 1e-9) {
        t.pivot(r, j);
        break;
      }
    }
  }

  std::vector<double> phase2(m + n, 0.0);
  for (std::size_t j = 0; j < m; ++j) phase2[j] = b[j];
  const PhaseResult p2 = run_phase(t, phase2, m, max_iter);
  if (p2 == PhaseResult::Unbounded) {
    result.status = LpStatus::Infeasible;  // dual unbounded
    return result;
  }
  if (p2 == PhaseResult::IterationLimit) return result;

  // The artificial block of the tableau holds B^{-1}; multipliers c_B B^{-1}
  // of the (sign-adjusted) equality rows are the primal variables.
  result.x.assign(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    double pi = 0.0;
    for (std::size_t i = 0; i < n; ++i) pi += phase2[t.basis[i]] * t.at(i, m + r);
    result.x[r] = sign[r] * pi;
  }
  result.objective = 0.0;
  for (std::size_t r = 0; r < n; ++r) result.objective += c[r] * result.x[r];
  result.status = LpStatus::Optimal;
  return result;
}

}  // namespace amgpoly::detail
