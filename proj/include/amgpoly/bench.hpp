#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "amgpoly/amg.hpp"
#include "amgpoly/krylov.hpp"
#include "amgpoly/problems.hpp"
#include "amgpoly/smoothers.hpp"

namespace amgpoly {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ProblemKind { Poisson3D, Aniso2D, Spectral, MatrixMarket };

struct ProblemSpec {
  ProblemKind kind = ProblemKind::Poisson3D;
  std::size_t m = 16;
  double epsilon = 100.0;
  double angle = 0.52359877559829887;  // pi/6
  std::size_t N = 256;
  SpectrumDistribution distribution = SpectrumDistribution::Equispaced;
  std::string matrix_path;
};

struct ExperimentConfig {
  ProblemSpec problem;
  CoarseningConfig coarsening;
  HierarchyLimits limits;
  SmootherFamily family = SmootherFamily::OptCheb1;
  int degree = 4;
  double a = 0.0;  // OptCheb1 override when > 0
  KrylovConfig solver;
  std::string output;  // empty: stdout
};

/// Flat "key = value" lines; '#' and ';' start comments, [section] headers are
/// accepted and ignored. Unknown keys and bad values throw ConfigError.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);
/// Applies one "key=value" override.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);
void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Optimal-parameter table for k = 1..kmax (kmax <= 30).
void cmd_optimize(std::ostream& out, int kmax);

/// k, gamma_cheb4, lambda_k, gamma_opt4, first_kind_better for k = 1..kmax (kmax <= 12).
void cmd_bounds(std::ostream& out, int kmax);

struct SolveOutcome {
  SolveReport report;
  std::string json;  // report, hierarchy summary, timings under "metadata"
};

SolveOutcome cmd_solve(const ExperimentConfig& cfg);

struct SpectrumGridRow {
  SpectrumDistribution distribution;
  std::size_t N;
  int k;
  int iters_first;   // optimized 1st kind
  int iters_fourth;  // optimized 4th kind
  bool converged_first;
  bool converged_fourth;
  int difference() const { return iters_first - iters_fourth; }
};

/// PCG with the polynomial smoother alone as preconditioner on the synthetic
/// spectra, for every distribution, size and degree. Cells run on up to
/// `workers` threads; rows come back in (distribution, N, k) order.
std::vector<SpectrumGridRow> spectrum_grid(const std::vector<std::size_t>& sizes,
                                           const std::vector<int>& degrees, double tol,
                                           int itmax = 1000, unsigned workers = 1);
void write_spectrum_grid_csv(std::ostream& out, const std::vector<SpectrumGridRow>& rows);

/// Worker count from AMGPOLY_THREADS, defaulting to the hardware concurrency.
unsigned worker_count();

/// Summary JSON of a Matrix Market file plus its default hierarchy.
std::string cmd_import(const std::string& path);

}  // namespace amgpoly
