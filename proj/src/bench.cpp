#include "amgpoly/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "amgpoly/minimax.hpp"
#include "json.hpp"

namespace amgpoly {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError("invalid number for '" + key + "': '" + v + "'");
  }
  return out;
}

// Plain numbers, or multiples of pi such as "pi/6", "3*pi/4", "pi".
double parse_angle(const std::string& key, const std::string& v) {
  const std::string s = lower(v);
  const auto pos = s.find("pi");
  if (pos == std::string::npos) return parse_double(key, s);
  double num = 1.0, den = 1.0;
  std::string head = s.substr(0, pos);
  std::string tail = s.substr(pos + 2);
  if (!head.empty()) {
    if (head.back() != '*') throw ConfigError("invalid angle for '" + key + "': '" + v + "'");
    num = parse_double(key, head.substr(0, head.size() - 1));
  }
  if (!tail.empty()) {
    if (tail.front() != '/') throw ConfigError("invalid angle for '" + key + "': '" + v + "'");
    den = parse_double(key, tail.substr(1));
  }
  return num * std::numbers::pi / den;
}

long parse_int(const std::string& key, const std::string& v, long lo) {
  long out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError("invalid integer for '" + key + "': '" + v + "'");
  }
  if (out < lo) throw ConfigError("'" + key + "' must be >= " + std::to_string(lo));
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  const std::string s = lower(v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError("invalid boolean for '" + key + "': '" + v + "'");
}

template <class F>
auto wrap(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("invalid value for '" + key + "': " + e.what());
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void set_config_value(ExperimentConfig& cfg, const std::string& key_in, const std::string& value_in) {
  const std::string key = lower(trim(key_in));
  const std::string v = trim(value_in);
  if (v.empty()) throw ConfigError("empty value for '" + key + "'");
  ProblemSpec& p = cfg.problem;

  if (key == "problem") {
    const std::string s = lower(v);
    if (s == "poisson3d") {
      p.kind = ProblemKind::Poisson3D;
    } else if (s == "aniso2d") {
      p.kind = ProblemKind::Aniso2D;
    } else if (s == "spectral") {
      p.kind = ProblemKind::Spectral;
    } else if (s == "matrix_market" || s == "mtx") {
      p.kind = ProblemKind::MatrixMarket;
    } else {
      throw ConfigError("unknown problem '" + v + "'");
    }
  } else if (key == "m") {
    p.m = static_cast<std::size_t>(parse_int(key, v, 2));
  } else if (key == "epsilon") {
    p.epsilon = parse_double(key, v);
    if (!(p.epsilon > 0.0)) throw ConfigError("'epsilon' must be positive");
  } else if (key == "angle") {
    p.angle = parse_angle(key, v);
  } else if (key == "n" || key == "size") {
    p.N = static_cast<std::size_t>(parse_int(key, v, 2));
  } else if (key == "distribution") {
    p.distribution = wrap(key, [&] { return parse_spectrum_distribution(v); });
  } else if (key == "matrix") {
    p.matrix_path = v;
  } else if (key == "coarsening") {
    cfg.coarsening.kind = wrap(key, [&] { return parse_coarsening_kind(v); });
  } else if (key == "strength_theta") {
    cfg.coarsening.strength_theta = parse_double(key, v);
  } else if (key == "matching_sweeps") {
    cfg.coarsening.matching_sweeps = static_cast<int>(parse_int(key, v, 1));
  } else if (key == "prolongator_smoothing") {
    cfg.coarsening.prolongator_smoothing = parse_bool(key, v);
  } else if (key == "min_coarse_size") {
    cfg.limits.min_coarse_size = static_cast<std::size_t>(parse_int(key, v, 1));
  } else if (key == "max_levels") {
    cfg.limits.max_levels = static_cast<int>(parse_int(key, v, 1));
  } else if (key == "coarse_solver") {
    const std::string s = lower(v);
    if (s == "l1jacobi") {
      cfg.limits.coarse_solver = CoarseSolverKind::L1JacobiSweeps;
    } else if (s == "direct" || s == "dense_direct") {
      cfg.limits.coarse_solver = CoarseSolverKind::DenseDirect;
    } else {
      throw ConfigError("unknown coarse solver '" + v + "'");
    }
  } else if (key == "coarse_sweeps") {
    cfg.limits.coarse_sweeps = static_cast<int>(parse_int(key, v, 1));
  } else if (key == "smoother") {
    cfg.family = wrap(key, [&] { return parse_smoother_family(v); });
  } else if (key == "degree" || key == "k") {
    cfg.degree = static_cast<int>(parse_int(key, v, 1));
  } else if (key == "a") {
    cfg.a = parse_double(key, v);
    if (!(cfg.a > 0.0 && cfg.a < 1.0)) throw ConfigError("'a' must lie in (0,1)");
  } else if (key == "solver") {
    cfg.solver.variant = wrap(key, [&] { return parse_krylov_variant(v); });
  } else if (key == "tol") {
    cfg.solver.tol = parse_double(key, v);
    if (!(cfg.solver.tol > 0.0)) throw ConfigError("'tol' must be positive");
  } else if (key == "itmax") {
    cfg.solver.itmax = static_cast<int>(parse_int(key, v, 1));
  } else if (key == "record_history") {
    cfg.solver.record_history = parse_bool(key, v);
  } else if (key == "output") {
    cfg.output = v;
  } else {
    throw ConfigError("unknown config key '" + key_in + "'");
  }
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto c = line.find_first_of("#;");
    if (c != std::string::npos) line.erase(c);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    set_config_value(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override must be key=value: '" + assignment + "'");
  set_config_value(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

void cmd_optimize(std::ostream& out, int kmax) {
  if (kmax < 0 || kmax > 30) throw ConfigError("kmax must lie in 0..30");
  write_params_csv(out, kmax);
}

void cmd_bounds(std::ostream& out, int kmax) {
  if (kmax < 0 || kmax > kMaxTabulatedBeta) throw ConfigError("kmax must lie in 0..12");
  out << "k,gamma_cheb4,lambda_k,gamma_opt4,first_kind_better\n";
  for (int k = 1; k <= kmax; ++k) {
    const double g4 = gamma_cheb4(k);
    const double lam = lambda_of(k, solve_a_star(k));
    out << k << ',' << fmt17(g4) << ',' << fmt17(lam) << ',' << fmt17(tabulated_beta(k).gamma_value)
        << ',' << (lam < g4 ? 1 : 0) << '\n';
  }
}

namespace {

PolySmootherConfig smoother_from(const ExperimentConfig& cfg) {
  PolySmootherConfig s = wrap("degree", [&] { return PolySmootherConfig::make(cfg.family, cfg.degree); });
  if (cfg.a > 0.0 && s.family == SmootherFamily::OptCheb1) s.a = cfg.a;
  return s;
}

nlohmann::ordered_json config_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  const ProblemSpec& p = cfg.problem;
  switch (p.kind) {
    case ProblemKind::Poisson3D:
      j["problem"] = "poisson3d";
      j["m"] = p.m;
      break;
    case ProblemKind::Aniso2D:
      j["problem"] = "aniso2d";
      j["m"] = p.m;
      j["epsilon"] = p.epsilon;
      j["angle"] = p.angle;
      break;
    case ProblemKind::Spectral:
      j["problem"] = "spectral";
      j["N"] = p.N;
      j["distribution"] = to_string(p.distribution);
      break;
    case ProblemKind::MatrixMarket:
      j["problem"] = "matrix_market";
      j["matrix"] = p.matrix_path;
      break;
  }
  j["coarsening"] = to_string(cfg.coarsening.kind);
  j["strength_theta"] = cfg.coarsening.strength_theta;
  j["matching_sweeps"] = cfg.coarsening.matching_sweeps;
  j["prolongator_smoothing"] = cfg.coarsening.prolongator_smoothing;
  j["min_coarse_size"] = cfg.limits.min_coarse_size;
  j["max_levels"] = cfg.limits.max_levels;
  j["coarse_solver"] = cfg.limits.coarse_solver == CoarseSolverKind::DenseDirect ? "direct" : "l1jacobi";
  j["coarse_sweeps"] = cfg.limits.coarse_sweeps;
  j["smoother"] = to_string(cfg.family);
  j["degree"] = cfg.degree;
  j["solver"] = to_string(cfg.solver.variant);
  j["tol"] = cfg.solver.tol;
  j["itmax"] = cfg.solver.itmax;
  return j;
}

nlohmann::ordered_json report_json(const SolveReport& r) {
  nlohmann::ordered_json j;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["breakdown"] = r.breakdown;
  j["final_relres"] = r.final_relres;
  j["spmv_count"] = r.spmv_count;
  j["precond_count"] = r.precond_count;
  j["message"] = r.message;
  j["residual_history"] = r.residual_history;
  return j;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

SolveOutcome cmd_solve(const ExperimentConfig& cfg) {
  const PolySmootherConfig smoother = smoother_from(cfg);
  wrap("coarsening", [&] {
    cfg.coarsening.validate();
    return 0;
  });
  nlohmann::ordered_json j;
  j["config"] = config_json(cfg);
  SolveOutcome out;
  const auto t_setup = Clock::now();

  if (cfg.problem.kind == ProblemKind::Spectral) {
    const SpectralProblem sp = wrap("N", [&] {
      return spectral_synthetic(cfg.problem.N, cfg.problem.distribution);
    });
    const L1JacobiData M = L1JacobiData::from_diagonal(sp.A.l1_row_sums());
    const OperatorRef A = sp.A.op();
    const OperatorRef B(A.size(), [&](std::span<const double> r, std::span<double> z) {
      std::fill(z.begin(), z.end(), 0.0);
      SmootherWorkspace ws;
      smoother_apply(smoother, A, M, r, z, ws);
    });
    const double setup = seconds_since(t_setup);
    const auto t_solve = Clock::now();
    SolveResult res = solve(A, sp.b, B, cfg.solver, Vector(A.size(), 0.0));
    j["problem"] = {{"n", A.size()}};
    j["report"] = report_json(res.report);
    j["metadata"] = {{"setup_seconds", setup}, {"solve_seconds", seconds_since(t_solve)}};
    out.report = std::move(res.report);
    out.json = j.dump(2);
    return out;
  }

  Problem prob;
  switch (cfg.problem.kind) {
    case ProblemKind::Poisson3D: prob = poisson3d(cfg.problem.m); break;
    case ProblemKind::Aniso2D:
      prob = aniso2d_q1(cfg.problem.m, cfg.problem.epsilon, cfg.problem.angle);
      break;
    case ProblemKind::MatrixMarket: {
      if (cfg.problem.matrix_path.empty()) throw ConfigError("problem matrix_market needs 'matrix'");
      try {
        prob.A = read_matrix_market(cfg.problem.matrix_path);
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
      prob.b.assign(prob.A.rows(), 1.0);
      break;
    }
    case ProblemKind::Spectral: break;
  }
  const AmgHierarchy h = build_hierarchy(prob.A, cfg.coarsening, smoother, cfg.limits);
  const double setup = seconds_since(t_setup);
  const auto t_solve = Clock::now();
  SolveResult res = solve(prob.A, prob.b, vcycle_operator(h), cfg.solver, Vector(prob.A.rows(), 0.0));
  j["problem"] = {{"n", prob.A.rows()}, {"nnz", prob.A.nnz()}};
  j["hierarchy"] = nlohmann::ordered_json::parse(hierarchy_summary_json(h));
  j["report"] = report_json(res.report);
  j["metadata"] = {{"setup_seconds", setup}, {"solve_seconds", seconds_since(t_solve)}};
  out.report = std::move(res.report);
  out.json = j.dump(2);
  return out;
}

unsigned worker_count() {
  if (const char* env = std::getenv("AMGPOLY_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SpectrumGridRow> spectrum_grid(const std::vector<std::size_t>& sizes,
                                           const std::vector<int>& degrees, double tol, int itmax,
                                           unsigned workers) {
  for (std::size_t N : sizes) {
    if (N < 2 || N % 2 != 0 || N > 1024) throw ConfigError("sizes must be even and at most 1024");
  }
  for (int k : degrees) {
    if (k < 1 || k > kMaxTabulatedBeta) throw ConfigError("degrees must lie in 1..12");
  }
  const std::vector<SpectrumDistribution> dists{SpectrumDistribution::Equispaced,
                                                SpectrumDistribution::BoundaryAccumulating,
                                                SpectrumDistribution::Gapped};

  struct Case {
    SpectralProblem problem;
    L1JacobiData M;
  };
  std::vector<Case> cases;
  for (SpectrumDistribution d : dists) {
    for (std::size_t N : sizes) {
      SpectralProblem sp = spectral_synthetic(N, d);
      L1JacobiData M = L1JacobiData::from_diagonal(sp.A.l1_row_sums());
      cases.push_back({std::move(sp), std::move(M)});
    }
  }

  std::vector<SpectrumGridRow> rows(cases.size() * degrees.size());
  KrylovConfig kc;
  kc.variant = KrylovVariant::PCG;
  kc.tol = tol;
  kc.itmax = itmax;
  kc.record_history = false;

  auto run_cell = [&](std::size_t idx) {
    const std::size_t ci = idx / degrees.size();
    const int k = degrees[idx % degrees.size()];
    const Case& c = cases[ci];
    const OperatorRef A = c.problem.A.op();
    auto iterations = [&](SmootherFamily f, bool& converged) {
      const PolySmootherConfig s = PolySmootherConfig::make(f, k);
      const OperatorRef B(A.size(), [&](std::span<const double> r, std::span<double> z) {
        std::fill(z.begin(), z.end(), 0.0);
        SmootherWorkspace ws;
        smoother_apply(s, A, c.M, r, z, ws);
      });
      const SolveResult res = solve(A, c.problem.b, B, kc, Vector(A.size(), 0.0));
      converged = res.report.converged;
      return res.report.iterations;
    };
    SpectrumGridRow& row = rows[idx];
    row.distribution = dists[ci / sizes.size()];
    row.N = sizes[ci % sizes.size()];
    row.k = k;
    row.iters_first = iterations(SmootherFamily::OptCheb1, row.converged_first);
    row.iters_fourth = iterations(SmootherFamily::OptCheb4, row.converged_fourth);
  };

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(rows.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) run_cell(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < rows.size(); i = next++) run_cell(i);
    });
  }
  for (auto& t : pool) t.join();
  return rows;
}

void write_spectrum_grid_csv(std::ostream& out, const std::vector<SpectrumGridRow>& rows) {
  out << "distribution,N,k,iters_first_kind,iters_fourth_kind,difference,converged_first,"
         "converged_fourth\n";
  for (const SpectrumGridRow& r : rows) {
    out << to_string(r.distribution) << ',' << r.N << ',' << r.k << ',' << r.iters_first << ','
        << r.iters_fourth << ',' << r.difference() << ',' << (r.converged_first ? 1 : 0) << ','
        << (r.converged_fourth ? 1 : 0) << '\n';
  }
}

std::string cmd_import(const std::string& path) {
  CsrMatrix A;
  try {
    A = read_matrix_market(path);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  nlohmann::ordered_json j;
  j["matrix"] = path;
  j["rows"] = A.rows();
  j["cols"] = A.cols();
  j["nnz"] = A.nnz();
  const bool sym = A.rows() == A.cols() && A.is_symmetric(1e-12);
  j["symmetric"] = sym;
  if (A.rows() == A.cols() && A.rows() > 0) {
    const Vector d = A.diagonal();
    j["min_diagonal"] = *std::min_element(d.begin(), d.end());
    j["max_diagonal"] = *std::max_element(d.begin(), d.end());
    if (sym && j["min_diagonal"].get<double>() > 0.0) {
      const AmgHierarchy h =
          build_hierarchy(A, CoarseningConfig{}, PolySmootherConfig::make(SmootherFamily::OptCheb1, 4));
      j["hierarchy"] = nlohmann::ordered_json::parse(hierarchy_summary_json(h));
    }
  }
  return j.dump(2);
}

}  // namespace amgpoly
