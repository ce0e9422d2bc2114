#include <cmath>
#include <map>
#include <numbers>

#include "amgpoly/amg.hpp"
#include "amgpoly/minimax.hpp"
#include "amgpoly/problems.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"

using namespace amgpoly;

namespace {

// Aggregate index of every fine point, from a tentative prolongator.
std::vector<std::size_t> aggregate_of(const CsrMatrix& P) {
  std::vector<std::size_t> agg(P.rows());
  for (std::size_t i = 0; i < P.rows(); ++i) {
    REQUIRE(P.row_ptr()[i + 1] - P.row_ptr()[i] == 1);
    CHECK(P.values()[P.row_ptr()[i]] == 1.0);
    agg[i] = P.col_idx()[P.row_ptr()[i]];
  }
  return agg;
}

std::map<std::size_t, std::size_t> aggregate_sizes(const CsrMatrix& P) {
  std::map<std::size_t, std::size_t> sizes;
  for (std::size_t a : aggregate_of(P)) ++sizes[a];
  return sizes;
}

double relative_frobenius(const CsrMatrix& A, const CsrMatrix& B) {
  const DenseMatrix a = DenseMatrix::from_csr(A), b = DenseMatrix::from_csr(B);
  return (a - b).frobenius_norm() / a.frobenius_norm();
}

double a_dot(const CsrMatrix& A, const Vector& x, const Vector& y) { return dot(x, spmv(A, y)); }

}  // namespace

TEST_CASE("coarsening names and validation") {
  CHECK(parse_coarsening_kind("sa") == CoarseningKind::SmoothedAggregation);
  CHECK(parse_coarsening_kind("vbm") == CoarseningKind::SmoothedAggregation);
  CHECK(parse_coarsening_kind("matching") == CoarseningKind::PairwiseMatching);
  CHECK_THROWS(parse_coarsening_kind("rs"));
  CoarseningConfig c;
  c.strength_theta = 1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.matching_sweeps = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("smoothed aggregation") {
  const CsrMatrix I = sa_aggregate(CsrMatrix::identity(5), 0.01);
  CHECK(aggregate_of(I) == std::vector<std::size_t>{0, 1, 2, 3, 4});

  const CsrMatrix T = sa_aggregate(laplacian1d(6).A, 0.01);
  CHECK(T.cols() == 2);
  CHECK(aggregate_of(T) == std::vector<std::size_t>{0, 0, 0, 1, 1, 1});

  const CsrMatrix P = sa_aggregate(poisson3d(4).A, 0.01);
  CHECK(P.cols() < 64);
  CHECK(P.cols() * 27 >= 64);
  for (auto [agg, size] : aggregate_sizes(P)) CHECK(size <= 27);

  // Weak couplings below theta are ignored.
  const CsrMatrix W = CsrMatrix::from_triplets(2, 2, {{0, 0, 1.0}, {0, 1, -1e-4}, {1, 0, -1e-4}, {1, 1, 1.0}});
  CHECK(sa_aggregate(W, 0.01).cols() == 2);
  CHECK(sa_aggregate(W, 0.0).cols() == 1);
}

TEST_CASE("pairwise matching") {
  CHECK(matching_aggregate(CsrMatrix::identity(4), 3).cols() == 4);
  const CsrMatrix two = CsrMatrix::from_triplets(2, 2, {{0, 0, 2}, {0, 1, -1}, {1, 0, -1}, {1, 1, 2}});
  CHECK(matching_aggregate(two, 1).cols() == 1);

  const std::size_t nc = matching_aggregate(laplacian1d(8).A, 3).cols();
  CHECK((nc == 1 || nc == 2));

  for (int sweeps = 1; sweeps <= 3; ++sweeps) {
    const CsrMatrix P = matching_aggregate(poisson3d(6).A, sweeps);
    for (auto [agg, size] : aggregate_sizes(P)) CHECK(size <= (std::size_t{1} << sweeps));
    CHECK(P.cols() < 216);
  }
  // a coupling as large as the mean diagonal gets zero weight
  const CsrMatrix pos = CsrMatrix::from_triplets(2, 2, {{0, 0, 1}, {0, 1, 2}, {1, 0, 2}, {1, 1, 3}});
  CHECK(matching_aggregate(pos, 2).cols() == 2);
}

TEST_CASE("prolongator smoothing") {
  const CsrMatrix A = laplacian1d(9).A;
  const CsrMatrix Ph = sa_aggregate(A, 0.01);
  const CsrMatrix P0 = smooth_prolongator(A, Ph, 0.0);
  CHECK(relative_frobenius(Ph, P0) == 0.0);

  const CsrMatrix S = smooth_prolongator(CsrMatrix::identity(3), CsrMatrix::identity(3), 2.0 / 3.0);
  for (std::size_t i = 0; i < 3; ++i) CHECK(S.at(i, i) == doctest::Approx(1.0 / 3.0));

  // Interior aggregate of the 1D operator keeps its column sum.
  const CsrMatrix P = smooth_prolongator(A, Ph, 0.6);
  const CsrMatrix Pt = transpose(P);
  const CsrMatrix Pht = transpose(Ph);
  const Vector ones(A.rows(), 1.0);
  const Vector cs = spmv(Pt, ones), chs = spmv(Pht, ones);
  CHECK(cs[1] == doctest::Approx(chs[1]).epsilon(1e-14));
}

TEST_CASE("largest eigenvalue estimate") {
  const CsrMatrix D = CsrMatrix::diagonal(Vector{2.0, 3.0, 7.0});
  CHECK(estimate_lambda_max(D, D.diagonal()) == doctest::Approx(1.0).epsilon(1e-14));

  const std::size_t n = 40;
  const CsrMatrix T = laplacian1d(n).A;
  const double exact = 1.0 + std::cos(std::numbers::pi / (n + 1));
  const double est = estimate_lambda_max(T, T.diagonal());
  CHECK(est <= 1.05 * exact);
  CHECK(est >= 0.5 * exact);

  const CsrMatrix P = poisson3d(4).A;
  const double ep = estimate_lambda_max(P, P.diagonal());
  CHECK(ep <= 2.0);
  CHECK(ep >= 1.5);
  const double dense = dense_sym_eig((1.0 / 6.0) * DenseMatrix::from_csr(P)).values.back();
  CHECK(ep >= 0.5 * dense);
  CHECK(ep <= 1.05 * dense);
}

TEST_CASE("galerkin product") {
  const CsrMatrix A = laplacian1d(3).A;
  CHECK(relative_frobenius(A, galerkin_rap(A, CsrMatrix::identity(3))) == 0.0);
  const CsrMatrix ones = CsrMatrix::from_triplets(3, 1, {{0, 0, 1}, {1, 0, 1}, {2, 0, 1}});
  const CsrMatrix c = galerkin_rap(A, ones);
  CHECK(c.rows() == 1);
  CHECK(c.at(0, 0) == 2.0);

  const CsrMatrix S = testing::to_csr(testing::random_spd_dense(20, 9));
  const DenseMatrix Pr = [] {
    DenseMatrix m(20, 6);
    const Vector v = testing::random_vector(120, 10);
    for (std::size_t i = 0; i < 20; ++i)
      for (std::size_t j = 0; j < 6; ++j) m(i, j) = v[i * 6 + j];
    return m;
  }();
  const CsrMatrix Ac = galerkin_rap(S, testing::to_csr(Pr));
  CHECK(Ac.is_symmetric(1e-13));
  CHECK(dense_sym_eig(DenseMatrix::from_csr(Ac)).values.front() > 0.0);
  CHECK_THROWS(galerkin_rap(S, ones));
}

TEST_CASE("hierarchy construction") {
  const PolySmootherConfig sm = PolySmootherConfig::make(SmootherFamily::OptCheb1, 4);
  SUBCASE("single point") {
    HierarchyLimits lim;
    lim.coarse_solver = CoarseSolverKind::DenseDirect;
    const AmgHierarchy h = build_hierarchy(CsrMatrix::diagonal(Vector{4.0}), {}, sm, lim);
    CHECK(h.num_levels() == 1);
    CHECK(vcycle_apply(h, Vector{2.0})[0] == doctest::Approx(0.5));
  }
  SUBCASE("poisson with matching") {
    const CsrMatrix A = poisson3d(8).A;
    const AmgHierarchy h = build_hierarchy(A, {}, sm);
    CHECK(h.num_levels() >= 2);
    CHECK(h.num_levels() <= 4);
    CHECK(h.levels.back().A.rows() <= 200);
    CHECK_FALSE(h.stagnated);
    CHECK(h.operator_complexity() <= 3.0);
    for (std::size_t l = 0; l + 1 < h.num_levels(); ++l) {
      const Level& lvl = h.levels[l];
      CHECK(lvl.P.cols() == h.levels[l + 1].A.rows());
      CHECK(relative_frobenius(h.levels[l + 1].A, galerkin_rap(lvl.A, lvl.P)) <= 1e-12);
      CHECK(relative_frobenius(lvl.R, transpose(lvl.P)) == 0.0);
      // full column rank: Gram matrix is SPD
      CHECK_NOTHROW(Cholesky(DenseMatrix::from_csr(multiply(lvl.R, lvl.P))));
    }
    const auto j = nlohmann::json::parse(hierarchy_summary_json(h));
    CHECK(j["num_levels"] == h.num_levels());
    CHECK(j["levels"][0]["size"] == 512);
    CHECK(j["levels"][0]["smoother"] == "optcheb1");
  }
  SUBCASE("smoothed aggregation on the anisotropic operator") {
    CoarseningConfig c;
    c.kind = CoarseningKind::SmoothedAggregation;
    const AmgHierarchy h = build_hierarchy(aniso2d_q1(32, 100.0, std::numbers::pi / 6).A, c, sm);
    CHECK(h.num_levels() >= 2);
    CHECK(h.operator_complexity() <= 3.0);
  }
  SUBCASE("no coarsening possible") {
    HierarchyLimits lim;
    lim.min_coarse_size = 2;
    const AmgHierarchy h = build_hierarchy(CsrMatrix::identity(10), {}, sm, lim);
    CHECK(h.num_levels() == 1);
    CHECK(h.stagnated);
  }
  SUBCASE("level cap") {
    HierarchyLimits lim;
    lim.min_coarse_size = 1;
    lim.max_levels = 2;
    CHECK(build_hierarchy(poisson3d(6).A, {}, sm, lim).num_levels() == 2);
  }
}

TEST_CASE("v-cycle") {
  const CsrMatrix A = poisson3d(6).A;
  const AmgHierarchy h =
      build_hierarchy(A, {}, PolySmootherConfig::make(SmootherFamily::OptCheb1, 4), {.min_coarse_size = 20});
  REQUIRE(h.num_levels() >= 3);
  const std::size_t n = A.rows();
  CHECK(vcycle_apply(h, Vector(n, 0.0)) == Vector(n, 0.0));

  const Vector u = testing::random_vector(n, 51), v = testing::random_vector(n, 52);
  const Vector Bu = vcycle_apply(h, u), Bv = vcycle_apply(h, v);
  CHECK(std::abs(dot(u, Bv) - dot(v, Bu)) <= 1e-10 * std::abs(dot(u, Bv)));
  CHECK(dot(u, Bu) > 0.0);

  Vector w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = 0.3 * u[i] - 2.0 * v[i];
  const Vector Bw = vcycle_apply(h, w);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(Bw[i] - (0.3 * Bu[i] - 2.0 * Bv[i])) <= 1e-12 * (1.0 + std::abs(Bw[i])));

  CHECK_THROWS(vcycle_apply(h, Vector(3, 1.0)));
}

TEST_CASE("single-level direct cycle is the exact inverse") {
  const CsrMatrix A = poisson3d(3).A;
  HierarchyLimits lim;
  lim.coarse_solver = CoarseSolverKind::DenseDirect;
  lim.min_coarse_size = 1000;
  const AmgHierarchy h = build_hierarchy(A, {}, PolySmootherConfig::make(SmootherFamily::Cheb4, 2), lim);
  REQUIRE(h.num_levels() == 1);
  const Vector x = testing::random_vector(A.rows(), 61);
  CHECK(testing::max_abs_diff(vcycle_apply(h, spmv(A, x)), x) <= 1e-10);
}

TEST_CASE("two-level cycle contracts in the energy norm") {
  const CsrMatrix A = poisson3d(4).A;
  HierarchyLimits lim;
  lim.max_levels = 2;
  lim.min_coarse_size = 1;
  lim.coarse_solver = CoarseSolverKind::DenseDirect;
  const AmgHierarchy h = build_hierarchy(A, {}, PolySmootherConfig::make(SmootherFamily::OptCheb1, 4), lim);
  REQUIRE(h.num_levels() == 2);
  double worst = 0.0;
  for (std::uint32_t s = 0; s < 50; ++s) {
    const Vector e = testing::random_vector(A.rows(), 100 + s);
    const Vector BAe = vcycle_apply(h, spmv(A, e));
    Vector f(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) f[i] = e[i] - BAe[i];
    worst = std::max(worst, std::sqrt(a_dot(A, f, f) / a_dot(A, e, e)));
  }
  CHECK(worst < 1.0);
}

TEST_CASE("two-level constants") {
  SUBCASE("exact coarse space") {
    const CsrMatrix A = laplacian1d(8).A;
    const TwoLevelConstants t = two_level_constants(A, CsrMatrix::identity(8), l1_jacobi_diag(A),
                                                    PolySmootherConfig::make(SmootherFamily::Cheb4, 2));
    CHECK(t.C <= 1e-12);
    CHECK(t.E_norm <= 1e-12);
    CHECK(t.bound <= 1e-12);
    CHECK(t.bound_holds);
  }
  SUBCASE("1D linear interpolation") {
    const CsrMatrix A = laplacian1d(64).A;
    const TwoLevelOracle oracle(A, linear_interpolation_1d(64), l1_jacobi_diag(A));
    CHECK(oracle.C() > 0.0);
    const PolySmootherConfig sweep = PolySmootherConfig::make(SmootherFamily::L1JacobiSweeps, 1);
    const TwoLevelConstants s = oracle.evaluate(sweep, 0.5);
    CHECK(s.bound == doctest::Approx(s.C / (s.C + 2.0)));
    CHECK(s.E_norm_sq <= s.bound);
    const TwoLevelConstants o = oracle.evaluate(PolySmootherConfig::make(SmootherFamily::OptCheb1, 2));
    CHECK(testing::rel_err(o.gamma, 0.112015284483472) <= 1e-6);
    CHECK(o.E_norm_sq <= o.bound);
  }
  SUBCASE("every family, degree and coarsening") {
    struct Case {
      CsrMatrix A;
      CsrMatrix P;
    };
    const CsrMatrix A1 = laplacian1d(32).A;
    const CsrMatrix A2 = poisson2d(8).A;
    const CsrMatrix A3 = poisson3d(4).A;
    std::vector<Case> cases{{A1, linear_interpolation_1d(32)}, {A2, linear_interpolation_2d(8)}};
    for (const CsrMatrix* A : {&A1, &A2, &A3}) {
      const CsrMatrix Psa = sa_aggregate(*A, 0.01);
      cases.push_back({*A, smooth_prolongator(*A, Psa, 4.0 / (3.0 * estimate_lambda_max(*A, A->diagonal())))});
      cases.push_back({*A, matching_aggregate(*A, 2)});
    }
    for (const Case& c : cases) {
      const TwoLevelOracle oracle(c.A, c.P, l1_jacobi_diag(c.A));
      for (SmootherFamily f : {SmootherFamily::L1JacobiSweeps, SmootherFamily::Cheb4, SmootherFamily::OptCheb4,
                               SmootherFamily::OptCheb1}) {
        for (int k : {1, 2, 4, 6}) {
          const TwoLevelConstants t = oracle.evaluate(PolySmootherConfig::make(f, k));
          CAPTURE(to_string(f));
          CAPTURE(k);
          CHECK(t.bound_holds);
        }
      }
      // For a fixed C the bound follows the smoothing constants.
      for (int k = 2; k <= 4; ++k) {
        const double b4 = oracle.evaluate(PolySmootherConfig::make(SmootherFamily::Cheb4, k)).bound;
        const double b1 = oracle.evaluate(PolySmootherConfig::make(SmootherFamily::OptCheb1, k)).bound;
        const double bo = oracle.evaluate(PolySmootherConfig::make(SmootherFamily::OptCheb4, k)).bound;
        CHECK(bo <= b1);
        CHECK(b1 <= b4);
      }
    }
  }
}
