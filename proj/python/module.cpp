// Python bindings for the core operations: ensembles, problem setup,
// the greedy and SDP solvers, rounding, metrics and signal generation.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "phasecut/experiments.hpp"
#include "phasecut/greedy.hpp"
#include "phasecut/linalg.hpp"
#include "phasecut/metrics.hpp"
#include "phasecut/operators.hpp"
#include "phasecut/phasecut_sdp.hpp"
#include "phasecut/phaselift.hpp"
#include "phasecut/selftest.hpp"
#include "phasecut/signals.hpp"

namespace py = pybind11;
using namespace phasecut;

namespace {

using EnsemblePtr = std::shared_ptr<MeasurementEnsemble>;

PhaseProblem problem_from(const EnsemblePtr& e, const RealVec& b, bool real_signal,
                          std::optional<Vec> truth) {
  return make_problem(e, b, real_signal, std::move(truth));
}

}  // namespace

PYBIND11_MODULE(_phasecut, m) {
  m.doc() = "Phase retrieval via the complex MaxCut relaxation";

  // linear algebra substrate
  py::class_<EigDecomposition>(m, "EigDecomposition")
      .def_readonly("eigenvalues", &EigDecomposition::eigenvalues)
      .def_readonly("eigenvectors", &EigDecomposition::eigenvectors);
  m.def("eig_hermitian", &eig_hermitian, py::arg("H"));
  m.def("pseudoinverse", &pseudoinverse, py::arg("A"), py::arg("rank_tol") = 1e-12);
  m.def("realify", &realify, py::arg("Z"));
  m.def("psd_project", &psd_project, py::arg("H"));
  m.def("dist_to_F_oracle", &dist_to_F_oracle, py::arg("V"), py::arg("A"));

  // ensembles and problems
  py::class_<MeasurementEnsemble, EnsemblePtr>(m, "MeasurementEnsemble")
      .def_property_readonly("n", [](const MeasurementEnsemble& e) { return e.n; })
      .def_property_readonly("p", [](const MeasurementEnsemble& e) { return e.p; })
      .def_property_readonly("A", [](const MeasurementEnsemble& e) { return e.A; })
      .def_property_readonly("pinv", [](const MeasurementEnsemble& e) { return e.pinv; })
      .def_property_readonly("sigma_min", [](const MeasurementEnsemble& e) { return e.sigma_min; })
      .def_property_readonly("kind", [](const MeasurementEnsemble& e) { return to_string(e.kind); })
      .def("apply", &MeasurementEnsemble::apply, py::arg("x"))
      .def("apply_pinv", &MeasurementEnsemble::apply_pinv, py::arg("y"))
      .def("descriptor", [](const MeasurementEnsemble& e) { return e.descriptor().dump(); });

  m.def("make_oversampled_fourier",
        [](Index p, int J) { return std::make_shared<MeasurementEnsemble>(make_oversampled_fourier(p, J)); },
        py::arg("p"), py::arg("J"));
  m.def("make_random_filters",
        [](Index p, int J, std::uint64_t seed) {
          return std::make_shared<MeasurementEnsemble>(make_random_filters(p, J, seed));
        },
        py::arg("p"), py::arg("J"), py::arg("seed"));
  m.def("make_cauchy_wavelet",
        [](Index p, int J, int d) {
          return std::make_shared<MeasurementEnsemble>(make_cauchy_wavelet(p, J, d));
        },
        py::arg("p"), py::arg("J"), py::arg("d") = 5);
  m.def("make_gaussian",
        [](Index n, Index p, std::uint64_t seed) {
          return std::make_shared<MeasurementEnsemble>(make_gaussian(n, p, seed));
        },
        py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def("make_dense",
        [](const Mat& A) { return std::make_shared<MeasurementEnsemble>(make_dense(A)); },
        py::arg("A"));

  m.def("build_M", [](const EnsemblePtr& e, const RealVec& b) { return build_M(*e, b); });
  m.def("build_B", [](const EnsemblePtr& e, const RealVec& b) { return build_B(*e, b); });

  py::class_<PhaseProblem>(m, "PhaseProblem")
      .def_readonly("b", &PhaseProblem::b)
      .def_readonly("real_signal", &PhaseProblem::real_signal)
      .def_readonly("intrinsic_noise", &PhaseProblem::intrinsic_noise);
  m.def("make_problem", &problem_from, py::arg("ensemble"), py::arg("b"),
        py::arg("real_signal") = false, py::arg("truth") = std::nullopt);

  // greedy solvers
  py::class_<GreedyTrace>(m, "GreedyTrace")
      .def_readonly("iterations", &GreedyTrace::iterations)
      .def_readonly("objective_history", &GreedyTrace::objective_history)
      .def_readonly("converged", &GreedyTrace::converged)
      .def_readonly("final_residual", &GreedyTrace::final_residual);
  py::class_<GsResult>(m, "GsResult")
      .def_readonly("y", &GsResult::y)
      .def_readonly("x", &GsResult::x)
      .def_readonly("trace", &GsResult::trace);
  py::class_<GreedyPhaseResult>(m, "GreedyPhaseResult")
      .def_readonly("u", &GreedyPhaseResult::u)
      .def_readonly("trace", &GreedyPhaseResult::trace);
  m.def("gerchberg_saxton", &gerchberg_saxton, py::arg("problem"), py::arg("y0"),
        py::arg("max_iter") = 2000, py::arg("tol") = 1e-10);
  m.def("greedy_phase", &greedy_phase, py::arg("M"), py::arg("u0"), py::arg("max_sweeps") = 2000,
        py::arg("tol") = 1e-10);
  m.def("refine", &refine, py::arg("problem"), py::arg("x_tilde"), py::arg("max_iter") = 2000);

  // the SDP relaxation
  py::class_<PhaseCutOptions>(m, "PhaseCutOptions")
      .def(py::init<>())
      .def_readwrite("nu", &PhaseCutOptions::nu)
      .def_readwrite("max_sweeps", &PhaseCutOptions::max_sweeps)
      .def_readwrite("tol", &PhaseCutOptions::tol)
      .def_readwrite("continuation", &PhaseCutOptions::continuation)
      .def_readwrite("nu_floor", &PhaseCutOptions::nu_floor);
  py::class_<PhaseCutState>(m, "PhaseCutState")
      .def_readonly("U", &PhaseCutState::U)
      .def_readonly("nu", &PhaseCutState::nu)
      .def_readonly("sweep", &PhaseCutState::sweep)
      .def_readonly("objective", &PhaseCutState::objective)
      .def_readonly("dual_gap", &PhaseCutState::dual_gap)
      .def_readonly("converged", &PhaseCutState::converged);
  m.def("solve_phasecut", &solve_phasecut, py::arg("M"), py::arg("opts") = PhaseCutOptions{});
  m.def("solve_phasecut_mod", &solve_phasecut_mod, py::arg("M"), py::arg("B"),
        py::arg("gamma_pen") = -1.0, py::arg("opts") = PhaseCutOptions{});
  m.def("dual_bound", &dual_bound, py::arg("M"), py::arg("w"));
  m.def("round_spectral", &round_spectral, py::arg("U"));
  m.def("spectral_uncertainty", &spectral_uncertainty, py::arg("U"));
  m.def("spectral_init", &spectral_init, py::arg("M"));
  m.def("arcsin_kernel", &arcsin_kernel, py::arg("w"));
  m.def("arcsin_kernel_matrix", &arcsin_kernel_matrix, py::arg("U"));
  py::class_<RoundingReport>(m, "RoundingReport")
      .def_readonly("u", &RoundingReport::u)
      .def_readonly("qp_value", &RoundingReport::qp_value)
      .def_readonly("sdp_value", &RoundingReport::sdp_value)
      .def_readonly("expected_value", &RoundingReport::expected_value)
      .def_readonly("sample_mean", &RoundingReport::sample_mean)
      .def_readonly("leading_ratio", &RoundingReport::leading_ratio);
  m.def("round_randomized", &round_randomized, py::arg("U"), py::arg("M"), py::arg("samples"),
        py::arg("seed"));
  m.def("reduce_structure",
        py::overload_cast<const Mat&, const std::vector<Index>&, Index>(&reduce_structure),
        py::arg("M"), py::arg("assign"), py::arg("q"));
  m.def("lift_reduced", &lift_reduced, py::arg("v"), py::arg("assign"));

  // the lifted relaxation
  py::class_<LiftState>(m, "LiftState")
      .def_readonly("X", &LiftState::X)
      .def_readonly("outer_k", &LiftState::outer_k)
      .def_readonly("residual", &LiftState::residual)
      .def_readonly("objective_history", &LiftState::objective_history)
      .def_readonly("converged", &LiftState::converged);
  m.def("phaselift_penalized", &phaselift_penalized, py::arg("problem"), py::arg("lambda"),
        py::arg("inner_iters"), py::arg("step0") = -1.0);
  m.def("phaselift_reweighted", &phaselift_reweighted, py::arg("problem"), py::arg("K") = 10,
        py::arg("eta") = -1.0, py::arg("lambda") = -1.0, py::arg("inner_iters") = 1000);
  m.def("weak_phaselift", &weak_phaselift, py::arg("problem"), py::arg("inner_iters") = 1000);
  m.def("phi_map", [](const Mat& X, const EnsemblePtr& e, const RealVec& b) {
    return phi_map(X, *e, b);
  });
  m.def("phi_inverse", [](const Mat& U, const EnsemblePtr& e, const RealVec& b) {
    return phi_inverse(U, *e, b);
  });
  py::class_<RealSdpResult>(m, "RealSdpResult")
      .def_readonly("V", &RealSdpResult::V)
      .def_readonly("objective", &RealSdpResult::objective)
      .def_readonly("constraint_violation", &RealSdpResult::constraint_violation)
      .def_readonly("converged", &RealSdpResult::converged)
      .def_readonly("iterations", &RealSdpResult::iterations);
  m.def("solve_real_sdp", &solve_real_sdp, py::arg("M2"), py::arg("inner_iters") = 2000);
  m.def("realify_problem", [](const EnsemblePtr& e, const RealVec& b) {
    const RealifiedProblem r = realify_problem(*e, b);
    return py::make_tuple(r.A2, r.b2, r.M2);
  });
  m.def("extract_signal", &extract_signal, py::arg("X"));
  m.def("leading_ratio", py::overload_cast<const Mat&>(&leading_ratio), py::arg("X"));

  // signals and metrics
  m.def("gen_signal", [](const std::string& sclass, Index p, std::uint64_t seed) {
    return gen_signal({signal_class_from_string(sclass), p, seed});
  });
  m.def("add_noise", &add_noise, py::arg("b"), py::arg("rel_level"), py::arg("seed"));
  m.def("error_signal", &error_signal, py::arg("x"), py::arg("xt"));
  m.def("error_modulus", [](const EnsemblePtr& e, const Vec& x, const Vec& xt) {
    return error_modulus(*e, x, xt);
  });

  m.def("run_property_suites", [](std::uint64_t seed) {
    py::list out;
    for (const auto& r : selftest::run_property_suites(seed)) {
      py::dict d;
      d["name"] = r.name;
      d["passed"] = r.passed;
      d["instances"] = r.instances;
      d["detail"] = r.detail;
      out.append(d);
    }
    return out;
  }, py::arg("seed") = 0xACCE97);
}
