#pragma once

// Small dense linear programming used by the minimax coefficient search.
// Internal header, not installed.

#include <cstddef>
#include <vector>

namespace amgpoly::detail {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  std::vector<double> x;
  double objective = 0.0;
};

/// maximize c^T x  subject to  A x <= b,  x free.
/// `A` is row-major with rows.size() == b.size(), each row of length c.size().
/// Solved through the dual (min b^T y, A^T y = c, y >= 0) by a two-phase
/// tableau simplex; the primal point is recovered from the optimal basis.
LpResult maximize_free(const std::vector<double>& c, const std::vector<std::vector<double>>& A,
                       const std::vector<double>& b);

}  // namespace amgpoly::detail
