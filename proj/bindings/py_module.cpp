#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "blockcs/amp.hpp"
#include "blockcs/datagen.hpp"
#include "blockcs/metrics.hpp"
#include "blockcs/oracle.hpp"
#include "blockcs/solver.hpp"

namespace py = pybind11;
using namespace blockcs;

namespace {

SolverConfig solver_config(double tau, double eta, double gamma,
                           double epsilon, int max_iter) {
  SolverConfig cfg;
  cfg.tau = tau;
  cfg.eta = eta;
  cfg.gamma = gamma;
  cfg.epsilon = epsilon;
  cfg.max_iter = max_iter;
  return cfg;
}

py::dict solve_result_dict(const SolveResult& r) {
  py::dict d;
  d["x_hat"] = r.x_hat;
  d["x_raw"] = r.x_raw;
  d["iterations"] = r.iterations;
  d["reason"] = to_string(r.reason);
  d["line_search_failed"] = r.line_search_failed;
  d["diverged"] = r.diverged;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "block-sparse complex recovery: solvers, data generation, metrics";

  py::class_<BlockStructure>(m, "BlockStructure")
      .def(py::init<std::vector<int>, std::vector<int>>(), py::arg("lengths"),
           py::arg("sparsities"))
      .def_static("uniform", &BlockStructure::uniform, py::arg("blocks"),
                  py::arg("length"), py::arg("sparsity"))
      .def_property_readonly("blocks", &BlockStructure::blocks)
      .def_property_readonly("total_len", &BlockStructure::total_len)
      .def_property_readonly("total_sparsity", &BlockStructure::total_sparsity)
      .def("length", &BlockStructure::length, py::arg("i"))
      .def("sparsity", &BlockStructure::sparsity, py::arg("i"))
      .def("offset", &BlockStructure::offset, py::arg("i"));

  py::class_<SensingMatrix, std::shared_ptr<SensingMatrix>>(m, "SensingMatrix")
      .def(py::init<CxMat>(), py::arg("A"))
      .def_property_readonly("matrix",
                             [](const SensingMatrix& s) { return s.mat(); })
      .def_property_readonly("rows", &SensingMatrix::rows)
      .def_property_readonly("cols", &SensingMatrix::cols)
      .def_property_readonly("lambda_max", &SensingMatrix::lambda_max)
      .def_property_readonly("alpha_f", &SensingMatrix::alpha_f);

  py::class_<Problem>(m, "Problem")
      .def(py::init([](std::shared_ptr<SensingMatrix> A, CxVec y,
                       BlockStructure bs) {
             return make_problem(std::move(A), std::move(y), std::move(bs));
           }),
           py::arg("A"), py::arg("y"), py::arg("bs"))
      .def_property_readonly("y", [](const Problem& p) { return p.y; })
      .def_property_readonly("bs", [](const Problem& p) { return p.bs; });

  m.def("make_problem",
        [](CxMat A, CxVec y, BlockStructure bs) {
          return make_problem(std::move(A), std::move(y), std::move(bs));
        },
        py::arg("A"), py::arg("y"), py::arg("bs"));

  m.def("objective", &objective, py::arg("problem"), py::arg("x"));
  m.def("gradient", &gradient, py::arg("problem"), py::arg("x"));
  m.def("block_project", &block_project, py::arg("x"), py::arg("bs"));
  m.def("auto_tau", &auto_tau, py::arg("problem"));

  m.def("bnhtp_solve",
        [](const Problem& p, double tau, double eta, double gamma,
           double epsilon, int max_iter) {
          return solve_result_dict(bnhtp_solve(
              p, solver_config(tau, eta, gamma, epsilon, max_iter)));
        },
        py::arg("problem"), py::arg("tau") = 0.0, py::arg("eta") = 0.1,
        py::arg("gamma") = 0.01, py::arg("epsilon") = 1e-6,
        py::arg("max_iter") = 100);

  m.def("amp_solve",
        [](const Problem& p, int max_iter, double threshold_scale,
           double damping, double tol) {
          AmpConfig cfg;
          cfg.max_iter = max_iter;
          cfg.threshold_scale = threshold_scale;
          cfg.damping = damping;
          cfg.tol = tol;
          return solve_result_dict(amp_solve(p, cfg));
        },
        py::arg("problem"), py::arg("max_iter") = 100,
        py::arg("threshold_scale") = 1.0, py::arg("damping") = 0.0,
        py::arg("tol") = 1e-6);

  m.def("exhaustive_solve",
        [](const Problem& p) {
          OracleResult r = exhaustive_solve(p);
          py::dict d;
          d["x"] = r.x;
          d["objective"] = r.objective;
          d["support"] = r.support.indices;
          d["supports_evaluated"] = r.supports_evaluated;
          return d;
        },
        py::arg("problem"));

  m.def("gen_instance",
        [](const std::string& kind, int m, int blocks, int block_len,
           int block_sparsity, int s_bar, double sigma, std::uint64_t seed,
           double beta) {
          ScenarioParams p;
          p.m = m;
          p.bs = BlockStructure::uniform(blocks, block_len, block_sparsity);
          p.s_bar = s_bar;
          p.beta_signal = beta;
          p.sigma_noise = sigma;
          p.kind = matrix_kind_from_string(kind);
          p.seed = seed;
          Instance inst = gen_instance(p);
          py::dict d;
          d["A"] = inst.problem.A->mat();
          d["y"] = inst.problem.y;
          d["x_true"] = inst.x_true;
          d["active_blocks"] = inst.active_blocks;
          return d;
        },
        py::arg("kind"), py::arg("m"), py::arg("blocks"), py::arg("block_len"),
        py::arg("block_sparsity") = 1, py::arg("s_bar") = 1,
        py::arg("sigma") = 0.0, py::arg("seed") = 0, py::arg("beta") = 1.0);

  m.def("relative_error", &relative_error, py::arg("x_rec"), py::arg("x_true"),
        py::arg("true_denominator") = false);
  m.def("support_rates",
        [](const CxVec& x_rec, const CxVec& x_true, double zero_tol) {
          SupportRates r = support_rates(x_rec, x_true, zero_tol);
          return py::make_tuple(r.t_rate, r.tc_rate);
        },
        py::arg("x_rec"), py::arg("x_true"), py::arg("zero_tol") = 1e-8);
}
