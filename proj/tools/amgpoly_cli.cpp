// Command-line harness: parameter tables, bound comparison, AMG-preconditioned
// solves and the synthetic-spectrum grid.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "amgpoly/bench.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitBreakdown = 3;

// Writes to `path`, or stdout when empty.
template <class F>
void with_output(const std::string& path, F&& f) {
  if (path.empty()) {
    f(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw amgpoly::ConfigError("cannot open output file '" + path + "'");
  f(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AMG with polynomial smoothers: experiments and parameter tables"};
  app.require_subcommand(1);
  std::string output;
  app.add_option("-o,--output", output, "Output file (default: stdout)");

  int kmax_opt = 8;
  auto* optimize = app.add_subcommand("optimize", "Optimal first-kind parameters a*_k and Lambda_k");
  optimize->add_option("--kmax", kmax_opt, "Largest degree (<= 30)");

  int kmax_bounds = 12;
  auto* bounds = app.add_subcommand("bounds", "Smoothing constants of the three polynomial families");
  bounds->add_option("--kmax", kmax_bounds, "Largest degree (<= 12)");

  std::string config_path;
  std::vector<std::string> overrides;
  auto* solve = app.add_subcommand("solve", "AMG-preconditioned CG on a configured problem");
  solve->add_option("--config", config_path, "INI-style experiment file")->required();
  solve->add_option("--override", overrides, "key=value, may be repeated");

  std::vector<std::size_t> sizes{64, 128, 256};
  std::vector<int> degrees{1, 2, 3, 4, 5, 6, 7, 8};
  double grid_tol = 1e-5;
  auto* grid = app.add_subcommand("spectrum-grid", "PCG iterations with smoother-only preconditioning");
  grid->add_option("--sizes", sizes, "Matrix sizes (even, <= 1024)")->delimiter(',');
  grid->add_option("--degrees", degrees, "Polynomial degrees (1..12)")->delimiter(',');
  grid->add_option("--tol", grid_tol, "Relative residual tolerance");

  std::string matrix_path;
  auto* import = app.add_subcommand("import", "Inspect a Matrix Market file");
  import->add_option("--matrix", matrix_path, "Matrix Market path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*optimize) {
      with_output(output, [&](std::ostream& out) { amgpoly::cmd_optimize(out, kmax_opt); });
    } else if (*bounds) {
      with_output(output, [&](std::ostream& out) { amgpoly::cmd_bounds(out, kmax_bounds); });
    } else if (*solve) {
      amgpoly::ExperimentConfig cfg = amgpoly::load_config(config_path);
      for (const std::string& o : overrides) amgpoly::apply_override(cfg, o);
      const amgpoly::SolveOutcome res = amgpoly::cmd_solve(cfg);
      const std::string& path = output.empty() ? cfg.output : output;
      with_output(path, [&](std::ostream& out) { out << res.json << '\n'; });
      if (res.report.breakdown) {
        std::cerr << "solver breakdown: " << res.report.message << '\n';
        return kExitBreakdown;
      }
    } else if (*grid) {
      const auto rows = amgpoly::spectrum_grid(sizes, degrees, grid_tol, 1000, amgpoly::worker_count());
      with_output(output, [&](std::ostream& out) { amgpoly::write_spectrum_grid_csv(out, rows); });
    } else if (*import) {
      const std::string summary = amgpoly::cmd_import(matrix_path);
      with_output(output, [&](std::ostream& out) { out << summary << '\n'; });
    }
  } catch (const amgpoly::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
