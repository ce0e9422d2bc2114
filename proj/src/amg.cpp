#include "amgpoly/amg.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace amgpoly {

std::string to_string(CoarseningKind k) {
  return k == CoarseningKind::SmoothedAggregation ? "sa" : "matching";
}

CoarseningKind parse_coarsening_kind(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "sa" || s == "smoothed_aggregation" || s == "vbm") return CoarseningKind::SmoothedAggregation;
  if (s == "matching" || s == "pairwise") return CoarseningKind::PairwiseMatching;
  throw std::invalid_argument("unknown coarsening '" + std::string(name) + "'");
}

void CoarseningConfig::validate() const {
  if (!(strength_theta >= 0.0 && strength_theta < 1.0)) {
    throw std::invalid_argument("strength_theta must lie in [0,1)");
  }
  if (matching_sweeps < 1) throw std::invalid_argument("matching_sweeps must be >= 1");
}

namespace {

CsrMatrix aggregates_to_prolongator(const std::vector<std::size_t>& agg, std::size_t nagg) {
  std::vector<Triplet> t;
  t.reserve(agg.size());
  for (std::size_t i = 0; i < agg.size(); ++i) t.push_back({i, agg[i], 1.0});
  return CsrMatrix::from_triplets(agg.size(), nagg, std::move(t));
}

void require_square(const CsrMatrix& A, const char* who) {
  if (A.rows() != A.cols()) throw std::invalid_argument(std::string(who) + ": matrix not square");
}

}  // namespace

CsrMatrix sa_aggregate(const CsrMatrix& A, double theta) {
  require_square(A, "sa_aggregate");
  const std::size_t n = A.rows();
  const auto rp = A.row_ptr();
  const auto ci = A.col_idx();
  const auto v = A.values();
  const Vector d = A.diagonal();

  std::vector<std::vector<std::size_t>> strong(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
      const std::size_t j = ci[p];
      if (j != i && std::abs(v[p]) >= theta * std::sqrt(std::abs(d[i] * d[j]))) {
        strong[i].push_back(j);
      }
    }
  }

  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> agg(n, kFree);
  std::size_t nagg = 0;

  for (std::size_t i = 0; i < n; ++i) {
    if (agg[i] != kFree || strong[i].empty()) continue;
    const bool all_free = std::all_of(strong[i].begin(), strong[i].end(),
                                      [&](std::size_t j) { return agg[j] == kFree; });
    if (!all_free) continue;
    agg[i] = nagg;
    for (std::size_t j : strong[i]) agg[j] = nagg;
    for (std::size_t j : strong[i]) {
      for (std::size_t l : strong[j]) {
        if (agg[l] == kFree) agg[l] = nagg;
      }
    }
    ++nagg;
  }

  // Leftovers join the neighbouring aggregate they are most strongly coupled to.
  const std::vector<std::size_t> first_pass = agg;
  for (std::size_t i = 0; i < n; ++i) {
    if (agg[i] != kFree) continue;
    double best = 0.0;
    std::size_t target = kFree;
    for (std::size_t j : strong[i]) {
      if (first_pass[j] == kFree) continue;
      const double w = std::abs(A.at(i, j));
      if (w > best) {
        best = w;
        target = first_pass[j];
      }
    }
    if (target != kFree) agg[i] = target;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (agg[i] == kFree) agg[i] = nagg++;
  }
  return aggregates_to_prolongator(agg, nagg);
}

namespace {

// One round of greedy pairwise matching. Returns aggregate index per vertex.
std::pair<std::vector<std::size_t>, std::size_t> match_once(const CsrMatrix& A) {
  const std::size_t n = A.rows();
  const auto rp = A.row_ptr();
  const auto ci = A.col_idx();
  const auto v = A.values();
  const Vector d = A.diagonal();

  struct Edge {
    double w;
    std::size_t i, j;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
      const std::size_t j = ci[p];
      if (j <= i) continue;
      const double w = 1.0 - 2.0 * v[p] / (d[i] + d[j]);
      if (w > 0.0) edges.push_back({w, i, j});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.w != b.w) return a.w > b.w;
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> mate(n, kNone);
  for (const Edge& e : edges) {
    if (mate[e.i] == kNone && mate[e.j] == kNone) {
      mate[e.i] = e.j;
      mate[e.j] = e.i;
    }
  }
  std::vector<std::size_t> agg(n, kNone);
  std::size_t nagg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (agg[i] != kNone) continue;
    agg[i] = nagg;
    if (mate[i] != kNone) agg[mate[i]] = nagg;
    ++nagg;
  }
  return {std::move(agg), nagg};
}

}  // namespace

CsrMatrix matching_aggregate(const CsrMatrix& A, int sweeps) {
  require_square(A, "matching_aggregate");
  if (sweeps < 1) throw std::invalid_argument("matching_aggregate: sweeps must be >= 1");
  std::vector<std::size_t> agg(A.rows());
  std::iota(agg.begin(), agg.end(), std::size_t{0});
  CsrMatrix Ac = A;
  for (int s = 0; s < sweeps; ++s) {
    auto [local, nagg] = match_once(Ac);
    for (std::size_t& a : agg) a = local[a];
    if (nagg == Ac.rows()) break;
    Ac = galerkin_rap(Ac, aggregates_to_prolongator(local, nagg));
  }
  return aggregates_to_prolongator(agg, Ac.rows());
}

CsrMatrix smooth_prolongator(const CsrMatrix& A, const CsrMatrix& P_hat, double omega) {
  require_square(A, "smooth_prolongator");
  if (A.cols() != P_hat.rows()) throw std::invalid_argument("smooth_prolongator: dimension mismatch");
  const Vector d = A.diagonal();
  for (double x : d) {
    if (x == 0.0) throw std::invalid_argument("smooth_prolongator: zero diagonal");
  }
  std::vector<Triplet> t = P_hat.to_triplets();
  if (omega != 0.0) {
    const CsrMatrix AP = multiply(A, P_hat);
    for (const Triplet& e : AP.to_triplets()) {
      t.push_back({e.row, e.col, -omega / d[e.row] * e.value});
    }
  }
  return CsrMatrix::from_triplets(P_hat.rows(), P_hat.cols(), std::move(t));
}

double estimate_lambda_max(const CsrMatrix& A, std::span<const double> D, int iterations) {
  const std::size_t n = A.rows();
  if (D.size() != n) throw std::invalid_argument("estimate_lambda_max: dimension mismatch");
  // All ones with a fixed ripple: on mirror-symmetric grids with an even
  // number of points the plain ones vector has no component along the top
  // eigenvector.
  Vector x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * static_cast<double>((i * 2654435761u) % 1024) / 1024.0;
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    spmv(A, x, y);
    double xay = 0.0, xdx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      xay += x[i] * y[i];
      xdx += x[i] * D[i] * x[i];
    }
    lambda = xay / xdx;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / D[i];
    const double nrm = norm2(x);
    if (nrm == 0.0) break;
    for (double& v : x) v /= nrm;
  }
  return lambda;
}

CsrMatrix galerkin_rap(const CsrMatrix& A, const CsrMatrix& P) {
  if (A.cols() != P.rows() || A.rows() != P.rows()) {
    throw std::invalid_argument("galerkin_rap: dimension mismatch");
  }
  return multiply(transpose(P), multiply(A, P));
}

double AmgHierarchy::operator_complexity() const {
  if (levels.empty() || levels.front().A.nnz() == 0) return 0.0;
  double total = 0.0;
  for (const Level& l : levels) total += static_cast<double>(l.A.nnz());
  return total / static_cast<double>(levels.front().A.nnz());
}

AmgHierarchy build_hierarchy(const CsrMatrix& A, const CoarseningConfig& coarsening,
                             const PolySmootherConfig& smoother, const HierarchyLimits& limits) {
  require_square(A, "build_hierarchy");
  coarsening.validate();
  smoother.validate();
  if (limits.max_levels < 1) throw std::invalid_argument("build_hierarchy: max_levels must be >= 1");

  AmgHierarchy h;
  h.coarse_solver = limits.coarse_solver;
  h.coarse_sweeps = limits.coarse_sweeps;
  CsrMatrix current = A;
  int slow_levels = 0;

  while (true) {
    Level lvl;
    lvl.A = std::move(current);
    lvl.smoother = smoother;
    lvl.M = l1_jacobi_diag(lvl.A);
    const std::size_t n = lvl.A.rows();
    const bool last = static_cast<int>(h.levels.size()) + 1 >= limits.max_levels ||
                      n <= limits.min_coarse_size;
    if (last) {
      h.levels.push_back(std::move(lvl));
      break;
    }

    CsrMatrix P = coarsening.kind == CoarseningKind::SmoothedAggregation
                      ? sa_aggregate(lvl.A, coarsening.strength_theta)
                      : matching_aggregate(lvl.A, coarsening.matching_sweeps);
    const std::size_t nc = P.cols();
    if (nc == 0 || nc >= n) {
      // No coarsening possible.
      h.stagnated = nc >= n;
      h.levels.push_back(std::move(lvl));
      break;
    }
    if (static_cast<double>(nc) >= 0.95 * static_cast<double>(n)) {
      if (++slow_levels >= 2) {
        h.stagnated = true;
        h.levels.push_back(std::move(lvl));
        break;
      }
    } else {
      slow_levels = 0;
    }
    if (coarsening.prolongator_smoothing) {
      const Vector d = lvl.A.diagonal();
      const double lmax = estimate_lambda_max(lvl.A, d);
      P = smooth_prolongator(lvl.A, P, 4.0 / (3.0 * lmax));
    }
    current = galerkin_rap(lvl.A, P);
    lvl.R = transpose(P);
    lvl.P = std::move(P);
    h.levels.push_back(std::move(lvl));
  }

  if (h.coarse_solver == CoarseSolverKind::DenseDirect) {
    h.coarse_factor = Cholesky(DenseMatrix::from_csr(h.levels.back().A));
  }
  return h;
}

namespace {

void vcycle_level(const AmgHierarchy& h, std::size_t l, std::span<const double> r,
                  std::span<double> x) {
  const Level& lvl = h.levels[l];
  const std::size_t n = lvl.A.rows();
  std::fill(x.begin(), x.end(), 0.0);
  SmootherWorkspace ws;

  if (l + 1 == h.levels.size()) {
    if (h.coarse_solver == CoarseSolverKind::DenseDirect) {
      std::copy(r.begin(), r.end(), x.begin());
      h.coarse_factor.solve_in_place(x);
    } else {
      PolySmootherConfig cs;
      cs.family = SmootherFamily::L1JacobiSweeps;
      cs.degree = h.coarse_sweeps;
      smoother_apply(cs, lvl.A, lvl.M, r, x, ws);
    }
    return;
  }

  const OperatorRef A(lvl.A);
  smoother_apply(lvl.smoother, A, lvl.M, r, x, ws);
  Vector res(n);
  spmv(lvl.A, x, res);
  for (std::size_t i = 0; i < n; ++i) res[i] = r[i] - res[i];
  const std::size_t nc = lvl.P.cols();
  Vector rc(nc), xc(nc), corr(n);
  spmv(lvl.R, res, rc);
  vcycle_level(h, l + 1, rc, xc);
  spmv(lvl.P, xc, corr);
  for (std::size_t i = 0; i < n; ++i) x[i] += corr[i];
  smoother_apply(lvl.smoother, A, lvl.M, r, x, ws);
}

}  // namespace

void vcycle_apply(const AmgHierarchy& h, std::span<const double> r, std::span<double> z) {
  if (h.levels.empty()) throw std::invalid_argument("vcycle_apply: empty hierarchy");
  const std::size_t n = h.levels.front().A.rows();
  if (r.size() != n || z.size() != n) throw std::invalid_argument("vcycle_apply: dimension mismatch");
  vcycle_level(h, 0, r, z);
}

Vector vcycle_apply(const AmgHierarchy& h, std::span<const double> r) {
  Vector z(r.size());
  vcycle_apply(h, r, z);
  return z;
}

OperatorRef vcycle_operator(const AmgHierarchy& h) {
  return OperatorRef(h.levels.front().A.rows(),
                     [&h](std::span<const double> r, std::span<double> z) { vcycle_apply(h, r, z); });
}

std::string hierarchy_summary_json(const AmgHierarchy& h) {
  nlohmann::ordered_json j;
  j["num_levels"] = h.levels.size();
  j["operator_complexity"] = h.operator_complexity();
  j["stagnated"] = h.stagnated;
  j["coarse_solver"] = h.coarse_solver == CoarseSolverKind::DenseDirect ? "dense_direct" : "l1jacobi";
  nlohmann::ordered_json levels = nlohmann::ordered_json::array();
  for (std::size_t l = 0; l < h.levels.size(); ++l) {
    const Level& lvl = h.levels[l];
    nlohmann::ordered_json e;
    e["level"] = l;
    e["size"] = lvl.A.rows();
    e["nnz"] = lvl.A.nnz();
    e["aggregates"] = lvl.P.cols();
    e["smoother"] = to_string(lvl.smoother.family);
    e["degree"] = lvl.smoother.degree;
    levels.push_back(std::move(e));
  }
  j["levels"] = std::move(levels);
  return j.dump();
}

namespace {

DenseMatrix lower_inverse(const DenseMatrix& L) {
  const std::size_t n = L.rows();
  DenseMatrix X(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = c; i < n; ++i) {
      double s = i == c ? 1.0 : 0.0;
      for (std::size_t k = c; k < i; ++k) s -= L(i, k) * X(k, c);
      X(i, c) = s / L(i, i);
    }
  }
  return X;
}

DenseMatrix symmetrized(const DenseMatrix& S) {
  DenseMatrix out = S;
  for (std::size_t i = 0; i < S.rows(); ++i) {
    for (std::size_t j = 0; j < S.cols(); ++j) out(i, j) = 0.5 * (S(i, j) + S(j, i));
  }
  return out;
}

}  // namespace

TwoLevelOracle::TwoLevelOracle(const CsrMatrix& A, const CsrMatrix& P, const L1JacobiData& M)
    : A_(A), M_(M) {
  require_square(A, "two_level_constants");
  const std::size_t n = A.rows();
  if (P.rows() != n || M.m_diag.size() != n) {
    throw std::invalid_argument("two_level_constants: dimension mismatch");
  }
  const DenseMatrix Ad = DenseMatrix::from_csr(A);
  const DenseMatrix Pd = DenseMatrix::from_csr(P);
  const DenseMatrix Pt = Pd.transposed();
  DenseMatrix Pi(n, n);
  if (P.cols() > 0) Pi = Pd * (spd_inverse(Pt * Ad * Pd) * Pt);

  const Cholesky chol(Ad);
  L_ = chol.factor();
  L_inv_ = lower_inverse(L_);
  const DenseMatrix Ainv = L_inv_.transposed() * L_inv_;
  const DenseMatrix T = Ainv - Pi;

  DenseMatrix S(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      S(i, j) = std::sqrt(M.m_diag[i]) * T(i, j) * std::sqrt(M.m_diag[j]);
    }
  }
  C_ = std::max(0.0, dense_sym_eigvals(symmetrized(S)).back());
  coarse_complement_ = DenseMatrix::identity(n) - Pi * Ad;
}

TwoLevelConstants TwoLevelOracle::evaluate(const PolySmootherConfig& smoother) const {
  return evaluate(smoother, smoother_gamma(smoother));
}

TwoLevelConstants TwoLevelOracle::evaluate(const PolySmootherConfig& smoother, double gamma) const {
  const std::size_t n = A_.rows();
  DenseMatrix G(n, n);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Vector g = smoother_error_oracle(A_, M_, smoother, e);
    for (std::size_t i = 0; i < n; ++i) G(i, j) = g[i];
    e[j] = 0.0;
  }
  const DenseMatrix E = G * (coarse_complement_ * G);
  // E is A-selfadjoint, so L^T E L^{-T} is symmetric with the same spectrum.
  const DenseMatrix X = L_.transposed() * (E * L_inv_.transposed());
  const Vector eig = dense_sym_eigvals(symmetrized(X));
  const double norm = std::max(std::abs(eig.front()), std::abs(eig.back()));

  TwoLevelConstants out;
  out.C = C_;
  out.gamma = gamma;
  out.bound = C_ / (C_ + 1.0 / gamma);
  out.E_norm = norm;
  out.E_norm_sq = norm * norm;
  out.bound_holds = out.E_norm_sq <= out.bound + 1e-8;
  return out;
}

TwoLevelConstants two_level_constants(const CsrMatrix& A, const CsrMatrix& P,
                                      const L1JacobiData& M, const PolySmootherConfig& smoother) {
  return TwoLevelOracle(A, P, M).evaluate(smoother);
}

}  // namespace amgpoly
