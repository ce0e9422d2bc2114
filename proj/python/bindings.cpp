#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "amgpoly/amg.hpp"
#include "amgpoly/bench.hpp"
#include "amgpoly/chebyshev.hpp"
#include "amgpoly/csr.hpp"
#include "amgpoly/krylov.hpp"
#include "amgpoly/minimax.hpp"
#include "amgpoly/problems.hpp"
#include "amgpoly/smoothers.hpp"

namespace py = pybind11;
using namespace amgpoly;

namespace {

py::dict report_dict(const SolveReport& r) {
  py::dict d;
  d["iterations"] = r.iterations;
  d["converged"] = r.converged;
  d["breakdown"] = r.breakdown;
  d["final_relres"] = r.final_relres;
  d["residual_history"] = r.residual_history;
  d["spmv_count"] = r.spmv_count;
  d["precond_count"] = r.precond_count;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "AMG-preconditioned CG with Chebyshev polynomial smoothers";

  py::class_<CsrMatrix>(m, "CsrMatrix")
      .def(py::init([](std::size_t nrows, std::size_t ncols, const std::vector<std::size_t>& rows,
                       const std::vector<std::size_t>& cols, const std::vector<double>& vals) {
             if (rows.size() != cols.size() || rows.size() != vals.size()) {
               throw std::invalid_argument("rows, cols and values must have equal length");
             }
             std::vector<Triplet> t;
             for (std::size_t i = 0; i < rows.size(); ++i) t.push_back({rows[i], cols[i], vals[i]});
             return CsrMatrix::from_triplets(nrows, ncols, std::move(t));
           }),
           py::arg("nrows"), py::arg("ncols"), py::arg("rows"), py::arg("cols"), py::arg("values"))
      .def_property_readonly("shape", [](const CsrMatrix& A) { return py::make_tuple(A.rows(), A.cols()); })
      .def_property_readonly("nnz", &CsrMatrix::nnz)
      .def("at", &CsrMatrix::at)
      .def("diagonal", py::overload_cast<>(&CsrMatrix::diagonal, py::const_))
      .def("is_symmetric", &CsrMatrix::is_symmetric, py::arg("tol") = 0.0)
      .def("matvec", [](const CsrMatrix& A, const Vector& x) { return spmv(A, x); })
      .def("to_dense", [](const CsrMatrix& A) {
        std::vector<std::vector<double>> d(A.rows(), std::vector<double>(A.cols(), 0.0));
        for (const Triplet& t : A.to_triplets()) d[t.row][t.col] = t.value;
        return d;
      });

  m.def("fused_update",
        [](double rho, double rho_prev, double two_rho_over_delta, const Vector& s, Vector r, Vector d,
           Vector x) {
          fused_update(rho, rho_prev, two_rho_over_delta, s, r, d, x);
          return py::make_tuple(r, d, x);
        },
        "Returns the updated (r, d, x).");

  m.def("cheb1_eval", &cheb1_eval);
  m.def("cheb2_eval", &cheb2_eval);
  m.def("cheb4_eval", &cheb4_eval);
  m.def("scaled_cheb_eval", [](double a, int k, double x) { return scaled_cheb_eval({a, k}, x); });
  m.def("c1_coefficient", &c1_coefficient);

  m.def("phi", &phi);
  m.def("solve_a_star", &solve_a_star);
  m.def("lambda_of", &lambda_of);
  m.def("gamma_cheb4", &gamma_cheb4);
  m.def("theorem_bounds", [](int k) {
    const TheoremBounds b = theorem_bounds(k);
    return py::make_tuple(b.a_lower, b.a_upper, b.lam_lower, b.lam_upper);
  });
  m.def("optimize_beta", [](int k) {
    const BetaTable t = optimize_beta(k);
    py::dict d;
    d["k"] = t.k;
    d["beta"] = t.beta;
    d["gamma_value"] = t.gamma_value;
    d["converged"] = t.converged;
    return d;
  });

  m.def("poisson3d", [](std::size_t mm) {
    Problem p = poisson3d(mm);
    return py::make_tuple(std::move(p.A), std::move(p.b));
  });
  m.def("aniso2d_q1", [](std::size_t mm, double eps, double angle) {
    Problem p = aniso2d_q1(mm, eps, angle);
    return py::make_tuple(std::move(p.A), std::move(p.b));
  });

  m.def("smoother_apply",
        [](const std::string& family, int degree, const CsrMatrix& A, const Vector& b, const Vector& x0) {
          const PolySmootherConfig cfg = PolySmootherConfig::make(parse_smoother_family(family), degree);
          return smoother_apply(cfg, A, l1_jacobi_diag(A), b, x0);
        },
        py::arg("family"), py::arg("degree"), py::arg("A"), py::arg("b"), py::arg("x0"));

  m.def("amg_solve",
        [](const CsrMatrix& A, const Vector& b, const std::string& family, int degree,
           const std::string& coarsening, const std::string& solver, double tol, int itmax) {
          CoarseningConfig cc;
          cc.kind = parse_coarsening_kind(coarsening);
          const AmgHierarchy h =
              build_hierarchy(A, cc, PolySmootherConfig::make(parse_smoother_family(family), degree));
          KrylovConfig kc;
          kc.variant = parse_krylov_variant(solver);
          kc.tol = tol;
          kc.itmax = itmax;
          SolveResult res = solve(A, b, vcycle_operator(h), kc, Vector(A.rows(), 0.0));
          py::dict d = report_dict(res.report);
          d["x"] = std::move(res.x);
          d["num_levels"] = h.num_levels();
          d["operator_complexity"] = h.operator_complexity();
          return d;
        },
        py::arg("A"), py::arg("b"), py::arg("family") = "optcheb1", py::arg("degree") = 4,
        py::arg("coarsening") = "matching", py::arg("solver") = "fcg", py::arg("tol") = 1e-7,
        py::arg("itmax") = 1000);

  m.def("spectrum_grid",
        [](const std::vector<std::size_t>& sizes, const std::vector<int>& degrees, double tol) {
          py::list out;
          for (const SpectrumGridRow& r : spectrum_grid(sizes, degrees, tol)) {
            py::dict d;
            d["distribution"] = to_string(r.distribution);
            d["N"] = r.N;
            d["k"] = r.k;
            d["iters_first_kind"] = r.iters_first;
            d["iters_fourth_kind"] = r.iters_fourth;
            d["converged_first_kind"] = r.converged_first;
            d["converged_fourth_kind"] = r.converged_fourth;
            out.append(d);
          }
          return out;
        },
        py::arg("sizes"), py::arg("degrees"), py::arg("tol") = 1e-5);
}
