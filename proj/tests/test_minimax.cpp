#include <chrono>
#include <cmath>
#include <sstream>

#include "amgpoly/chebyshev.hpp"
#include "amgpoly/minimax.hpp"
#include "amgpoly/roots.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace amgpoly;

namespace {

const double kTableAStar[8] = {0.3333333333333333, 0.1805359927403007, 0.1159278464862213,
                               0.0820780659590383, 0.0618496002413377, 0.0486605823426062,
                               0.0395132986024057, 0.0328701017544880};

const double kFirstKind[15] = {0.333333333333333,   0.112015284483472,   0.0583799108887474,
                               0.0364585625794908,  0.0251807505038628,  0.0185523566224834,
                               0.0142996943551221,  0.0113957022544334,  0.00931777395189635,
                               0.00777582002921479, 0.00659772898163279, 0.00567585604215863,
                               0.00493992741097829, 0.00434240512759291, 0.0038501517289458};

const double kOptFourth[12] = {0.333333333333333,   0.105572809000084,  0.052095083601687,
                               0.0310912041257632,  0.020672197824105,  0.014743298009627,
                               0.0110469002707826,  0.00858655133486778, 0.00686617111092233,
                               0.00561594964618996, 0.00467881635584698, 0.00395825535563739};

}  // namespace

TEST_CASE("brent root finder") {
  const double r = brent_root([](double x) { return x * x - 2.0; }, 0.0, 2.0);
  CHECK(std::abs(r - std::sqrt(2.0)) <= 1e-15);
  CHECK_THROWS_AS(brent_root([](double x) { return x * x + 1.0; }, -1.0, 1.0), BracketError);
}

TEST_CASE("phi sign pattern") {
  CHECK(std::abs(phi(1, 1.0 / std::sqrt(3.0))) <= 1e-12);
  CHECK(phi(1, 0.1) > 0.0);
  CHECK(phi(1, 0.9) < 0.0);
  // Large k stays finite thanks to the scaling.
  for (int k : {16, 25, 30}) {
    const double x = std::sqrt(solve_a_star(k));
    CHECK(std::isfinite(phi(k, 0.5 * x)));
    CHECK(phi(k, 0.5 * x) > 0.0);
    CHECK(phi(k, std::min(0.999, 2.0 * x)) < 0.0);
  }
}

TEST_CASE("optimal parameters") {
  const auto t0 = std::chrono::steady_clock::now();
  for (int k = 1; k <= 8; ++k) CHECK(std::abs(solve_a_star(k) - kTableAStar[k - 1]) <= 1e-12);
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(1));

  for (int k = 1; k <= 15; ++k) {
    const double a = solve_a_star(k);
    CAPTURE(k);
    CHECK(testing::rel_err(lambda_of(k, a), kFirstKind[k - 1]) <= 1e-9);
  }
  CHECK(lambda_of(1, 1.0 / 3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("branches agree at the optimum") {
  for (int k = 1; k <= 20; ++k) {
    const double a = solve_a_star(k);
    const double l = lambda_left(k, a), r = lambda_right(k, a);
    CAPTURE(k);
    CHECK(std::abs(l - r) <= 1e-9 * l);
    CHECK(lambda_of(k, 0.99 * a) > lambda_of(k, a));
    CHECK(lambda_of(k, 1.01 * a) > lambda_of(k, a));
    // right branch via the recurrence
    const double t = scaled_cheb_eval({a, k}, 1.0);
    CHECK(testing::rel_err(r, t * t / (1.0 - t * t)) <= 1e-9);
  }
}

TEST_CASE("lambda decreases with the degree") {
  double prev = INFINITY;
  for (int k = 1; k <= 20; ++k) {
    const double l = lambda_of(k, solve_a_star(k));
    CHECK(l < prev);
    prev = l;
  }
}

TEST_CASE("theorem bounds") {
  const TheoremBounds b3 = theorem_bounds(3);
  CHECK(testing::rel_err(b3.a_lower, 0.0149006044544763) <= 1e-12);
  CHECK(testing::rel_err(b3.a_upper, 0.134105440090287) <= 1e-12);
  CHECK(testing::rel_err(theorem_bounds(4).lam_upper, 0.0446213497485465) <= 1e-12);
  CHECK(testing::rel_err(theorem_bounds(10).lam_lower, 0.00383764182165674) <= 1e-12);
  CHECK_THROWS_AS(theorem_bounds(2), std::invalid_argument);

  for (int k = 3; k <= 50; ++k) {
    const OptimalParams p = optimal_params(k);
    REQUIRE(p.bounds.has_value());
    CAPTURE(k);
    CHECK(p.bounds->a_lower < p.a_star);
    CHECK(p.a_star < p.bounds->a_upper);
    CHECK(p.bounds->lam_lower < p.lambda_k);
    CHECK(p.lambda_k < p.bounds->lam_upper);
  }
  CHECK_FALSE(optimal_params(2).bounds.has_value());
}

TEST_CASE("fourth kind baseline") {
  CHECK(gamma_cheb4(1) == 0.375);
  CHECK(gamma_cheb4(2) == 0.125);
  CHECK(gamma_cheb4(3) == 0.0625);
  CHECK(gamma_cheb4(4) == 0.0375);
  CHECK(gamma_cheb4(5) == 0.025);
  for (int k = 1; k <= 15; ++k) CHECK(gamma_cheb4(k) == 3.0 / (4.0 * k * (k + 1)));
}

TEST_CASE("first kind beats the fourth-kind baseline only for small degrees") {
  for (int k = 1; k <= 4; ++k) CHECK(lambda_of(k, solve_a_star(k)) < gamma_cheb4(k));
  // The crossover sits between 4 and 5: 0.02518... against 0.025.
  for (int k = 5; k <= 15; ++k) CHECK(lambda_of(k, solve_a_star(k)) > gamma_cheb4(k));
}

TEST_CASE("numeric gamma") {
  CHECK(evaluate_gamma_numeric([](double x) { return 1.0 - x; }, 20001, -1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(evaluate_gamma_numeric([](double x) { return 1.0 - x; }) == doctest::Approx(0.5).epsilon(1e-6));
  for (int k = 1; k <= 8; ++k) {
    const double a = solve_a_star(k);
    const double g1 = evaluate_gamma_numeric([&](double x) { return scaled_cheb_eval({a, k}, x); }, 20001,
                                             c1_coefficient(a, k));
    CHECK(testing::rel_err(g1, lambda_of(k, a)) <= 1e-6);
    const double g4 = evaluate_gamma_numeric([&](double x) { return cheb4_eval(k, 1.0 - 2.0 * x) / (2 * k + 1); });
    CHECK(testing::rel_err(g4, gamma_cheb4(k)) <= 1e-6);
  }
  CHECK_THROWS_AS(evaluate_gamma_numeric([](double x) { return 1.0 - 3.0 * x; }), std::domain_error);
}

TEST_CASE("log grid") {
  const Vector g = log_grid(5, 1e-4, 1.0);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == doctest::Approx(1e-4));
  CHECK(g[1] == doctest::Approx(1e-3));
  CHECK(g.back() == 1.0);
}

TEST_CASE("optimized fourth kind coefficients") {
  const BetaTable b1 = optimize_beta(1);
  CHECK(b1.gamma_value == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  for (int k = 1; k <= 8; ++k) {
    const BetaTable t = optimize_beta(k);
    CAPTURE(k);
    REQUIRE(t.beta.size() == static_cast<std::size_t>(k));
    CHECK(t.gamma_value > 0.0);
    CHECK(testing::rel_err(t.gamma_value, kOptFourth[k - 1]) <= 0.02);
    CHECK(std::abs(beta_poly_eval(t.beta, 0.0) - 1.0) <= 1e-10);
    if (k >= 2) CHECK(t.gamma_value <= lambda_of(k, solve_a_star(k)) + 1e-9);
    // the stored value is what the polynomial actually attains
    const double g = evaluate_gamma_numeric([&](double x) { return beta_poly_eval(t.beta, x); }, 20001,
                                            beta_poly_slope_at_zero(t.beta));
    CHECK(testing::rel_err(g, t.gamma_value) <= 1e-9);
  }
  // All-ones beta is the plain fourth-kind polynomial.
  for (int k = 1; k <= 6; ++k) {
    const std::vector<double> ones(k, 1.0);
    for (double x : {0.0, 0.1, 0.5, 0.9})
      CHECK(beta_poly_eval(ones, x) == doctest::Approx(cheb4_eval(k, 1.0 - 2.0 * x) / (2 * k + 1)).epsilon(1e-13));
  }
  CHECK_THROWS(optimize_beta(0));
  CHECK_THROWS(optimize_beta(13));
}

TEST_CASE("shipped tables match a fresh computation") {
  for (int k = 1; k <= kMaxTabulatedAStar; ++k) {
    CAPTURE(k);
    CHECK(testing::rel_err(tabulated_a_star(k), solve_a_star(k)) <= 1e-14);
    CHECK(testing::rel_err(tabulated_lambda(k), lambda_of(k, solve_a_star(k))) <= 1e-14);
  }
  for (int k = 1; k <= kMaxTabulatedBeta; ++k) {
    const BetaTable fresh = optimize_beta(k);
    const BetaTable& shipped = tabulated_beta(k);
    CAPTURE(k);
    CHECK(testing::rel_err(shipped.gamma_value, fresh.gamma_value) <= 1e-9);
    CHECK(testing::rel_err(shipped.gamma_value, kOptFourth[k - 1]) <= 0.02);
  }
  CHECK_FALSE(has_tabulated_beta(13));
  CHECK_THROWS_AS(tabulated_a_star(21), std::out_of_range);
}

TEST_CASE("parameter csv") {
  std::ostringstream out;
  write_params_csv(out, 3);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "k,a_star,lambda_k,gamma_cheb4,gamma_opt4,a_lower,a_upper,lam_lower,lam_upper");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
  CHECK(out.str().find("\n1,0.33333333333333") != std::string::npos);
}
