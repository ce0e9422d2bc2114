#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amgpoly/csr.hpp"
#include "amgpoly/dense.hpp"
#include "amgpoly/smoothers.hpp"

namespace amgpoly {

enum class CoarseningKind { SmoothedAggregation, PairwiseMatching };

std::string to_string(CoarseningKind k);
CoarseningKind parse_coarsening_kind(std::string_view name);

struct CoarseningConfig {
  CoarseningKind kind = CoarseningKind::PairwiseMatching;
  double strength_theta = 0.01;  // smoothed aggregation only
  int matching_sweeps = 3;       // aggregates of up to 2^sweeps points
  bool prolongator_smoothing = true;

  void validate() const;
};

enum class CoarseSolverKind { L1JacobiSweeps, DenseDirect };

struct HierarchyLimits {
  std::size_t min_coarse_size = 200;
  int max_levels = 10;
  CoarseSolverKind coarse_solver = CoarseSolverKind::L1JacobiSweeps;
  int coarse_sweeps = 30;
};

struct Level {
  CsrMatrix A;
  CsrMatrix P;   // prolongator from the next coarser level; empty on the coarsest
  CsrMatrix R;   // P^T
  PolySmootherConfig smoother;
  L1JacobiData M;
};

struct AmgHierarchy {
  std::vector<Level> levels;  // fine to coarse
  CoarseSolverKind coarse_solver = CoarseSolverKind::L1JacobiSweeps;
  int coarse_sweeps = 30;
  Cholesky coarse_factor;     // DenseDirect only
  bool stagnated = false;

  std::size_t num_levels() const { return levels.size(); }
  /// sum_l nnz(A_l) / nnz(A_0)
  double operator_complexity() const;
};

/// Tentative prolongator (one unit entry per row) from greedy aggregation:
/// a point whose strong neighbours are all free seeds an aggregate with them
/// and their free strong neighbours; leftovers join the most strongly coupled
/// neighbouring aggregate, isolated points become singletons.
/// Strong: |a_ij| >= theta sqrt(a_ii a_jj).
CsrMatrix sa_aggregate(const CsrMatrix& A, double theta);

/// `sweeps` rounds of greedy pairwise matching on w_ij = max(0, 1 - 2a_ij/(a_ii+a_jj)),
/// heaviest edges first, ties to the lowest index pair.
CsrMatrix matching_aggregate(const CsrMatrix& A, int sweeps);

/// (I - omega D^{-1} A) P_hat with D = diag(A).
CsrMatrix smooth_prolongator(const CsrMatrix& A, const CsrMatrix& P_hat, double omega);

/// 25 power iterations on D^{-1}A (D-weighted Rayleigh quotient) from a fixed
/// rippled all-ones vector.
double estimate_lambda_max(const CsrMatrix& A, std::span<const double> D, int iterations = 25);

/// P^T A P
CsrMatrix galerkin_rap(const CsrMatrix& A, const CsrMatrix& P);

/// Throws std::invalid_argument for invalid configs or a non-square A.
AmgHierarchy build_hierarchy(const CsrMatrix& A, const CoarseningConfig& coarsening,
                             const PolySmootherConfig& smoother, const HierarchyLimits& limits = {});

/// One symmetric V-cycle from a zero initial guess: z = B r.
void vcycle_apply(const AmgHierarchy& h, std::span<const double> r, std::span<double> z);
Vector vcycle_apply(const AmgHierarchy& h, std::span<const double> r);

/// The V-cycle as a preconditioner. The hierarchy must outlive the operator.
OperatorRef vcycle_operator(const AmgHierarchy& h);

/// JSON object: levels (size, nnz, aggregates, smoother, degree), operator complexity.
std::string hierarchy_summary_json(const AmgHierarchy& h);

struct TwoLevelConstants {
  double C = 0.0;           // lambda_max(M^{1/2} (A^{-1} - P A_c^{-1} P^T) M^{1/2})
  double gamma = 0.0;       // smoothing constant of the smoother polynomial
  double bound = 0.0;       // C / (C + 1/gamma)
  double E_norm = 0.0;      // ||E||_A,  E = G (I - P A_c^{-1} P^T A) G,  G = p(M^{-1}A)
  double E_norm_sq = 0.0;
  bool bound_holds = false;  // E_norm_sq <= bound + 1e-8
};

/// Dense two-level analysis for desk-sized problems (n <= 2000). The parts that
/// depend only on (A, P, M) are computed once.
class TwoLevelOracle {
 public:
  TwoLevelOracle(const CsrMatrix& A, const CsrMatrix& P, const L1JacobiData& M);

  double C() const { return C_; }
  TwoLevelConstants evaluate(const PolySmootherConfig& smoother) const;
  /// Same with an explicit smoothing constant, e.g. 1/(2k) for plain sweeps.
  TwoLevelConstants evaluate(const PolySmootherConfig& smoother, double gamma) const;

 private:
  CsrMatrix A_;
  L1JacobiData M_;
  DenseMatrix coarse_complement_;  // I - P A_c^{-1} P^T A
  DenseMatrix L_;                  // A = L L^T
  DenseMatrix L_inv_;
  double C_ = 0.0;
};

TwoLevelConstants two_level_constants(const CsrMatrix& A, const CsrMatrix& P,
                                      const L1JacobiData& M, const PolySmootherConfig& smoother);

}  // namespace amgpoly
