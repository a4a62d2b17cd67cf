#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsuff/divergences.hpp"
#include "qsuff/hypothesis.hpp"
#include "qsuff/recovery.hpp"

namespace py = pybind11;
using namespace qsuff;

namespace {

QuantumChannel make_channel(const std::vector<cmat>& kraus) { return QuantumChannel(kraus); }

py::dict divergence_dict(const DivergenceReport& r) {
  py::dict d;
  d["d_spectral"] = r.d_spectral;
  d["d_integral"] = r.d_integral;
  d["quad_error_estimate"] = r.quad_error_estimate;
  d["d_max_rho_sigma"] = r.d_max_rho_sigma;
  d["d_max_sigma_rho"] = r.d_max_sigma_rho;
  d["d_omega"] = r.d_omega;
  return d;
}

py::dict sufficiency_dict(const SufficiencyReport& r) {
  py::dict d;
  d["max_l1_gap"] = r.max_l1_gap;
  d["max_pe_gap"] = r.max_pe_gap;
  d["max_trpos_gap"] = r.max_trpos_gap;
  d["max_trneg_gap"] = r.max_trneg_gap;
  d["entropy_gap"] = r.entropy_gap;
  d["petz_recovery_error"] = r.petz_recovery_error;
  d["rotated_recovery_errors"] = r.rotated_recovery_errors;
  d["cocycle_residuals"] = r.cocycle_residuals;
  d["verdict"] = std::string(verdict_name(r.verdict));
  d["threshold"] = r.threshold;
  return d;
}

py::dict recovery_dict(const RecoveryReport& r) {
  py::dict d;
  d["entropy_gap"] = r.entropy_gap;
  d["minus_2log_f"] = r.minus_2log_f;
  d["quarter_l1_sq"] = r.quarter_l1_sq;
  d["recovered_trace_distance"] = r.recovered_trace_distance;
  d["epsilon"] = r.epsilon;
  d["d_omega"] = r.d_omega;
  d["bound_3_2"] = r.bound_3_2;
  d["chain_slacks"] = std::make_pair(r.chain_slacks[0], r.chain_slacks[1]);
  d["forward_max_violation"] = r.forward_max_violation;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Relative entropy, hypothesis testing curves, and Petz/universal recovery maps "
            "for finite-dimensional quantum channels";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("trace_norm", &trace_norm, py::arg("a"), "Sum of singular values.");
  m.def(
      "fidelity",
      [](const cmat& rho, const cmat& sigma) {
        return fidelity(DensityMatrix(rho), DensityMatrix(sigma));
      },
      py::arg("rho"), py::arg("sigma"), "||rho^{1/2} sigma^{1/2}||_1.");

  m.def(
      "relative_entropy_spectral",
      [](const cmat& rho, const cmat& sigma) {
        return relative_entropy_spectral(DensityMatrix(rho), DensityMatrix(sigma));
      },
      py::arg("rho"), py::arg("sigma"),
      "Tr[rho (log rho - log sigma)] in nats; inf on support violation.");

  m.def(
      "relative_entropy_integral",
      [](const cmat& rho, const cmat& sigma, double rel_tol, int max_nodes) {
        QuadratureSpec spec;
        spec.rel_tol = rel_tol;
        spec.max_nodes = max_nodes;
        const QuadratureResult r =
            relative_entropy_integral(DensityMatrix(rho), DensityMatrix(sigma), spec);
        return std::make_pair(r.value, r.error_estimate);
      },
      py::arg("rho"), py::arg("sigma"), py::arg("rel_tol") = 1e-8,
      py::arg("max_nodes") = 200000,
      "Integral-representation route; returns (value, error_estimate).");

  m.def(
      "frenkel_integrand",
      [](const cmat& rho, const cmat& sigma, double t) {
        return frenkel_integrand(DensityMatrix(rho), DensityMatrix(sigma), t);
      },
      py::arg("rho"), py::arg("sigma"), py::arg("t"));

  m.def(
      "d_max",
      [](const cmat& rho, const cmat& sigma) {
        return d_max(DensityMatrix(rho), DensityMatrix(sigma));
      },
      py::arg("rho"), py::arg("sigma"), "log min{lambda : rho <= lambda sigma}.");

  m.def(
      "divergence_report",
      [](const cmat& rho, const cmat& sigma, double rel_tol) {
        QuadratureSpec spec;
        spec.rel_tol = rel_tol;
        return divergence_dict(divergence_report(DensityMatrix(rho), DensityMatrix(sigma), spec));
      },
      py::arg("rho"), py::arg("sigma"), py::arg("rel_tol") = 1e-8);

  m.def(
      "default_s_grid",
      [](const cmat& rho, const cmat& sigma, int count) {
        return default_s_grid(DensityMatrix(rho), DensityMatrix(sigma), count);
      },
      py::arg("rho"), py::arg("sigma"), py::arg("count") = 513);

  m.def(
      "sweep_curves",
      [](const cmat& rho, const cmat& sigma, const std::vector<double>& grid) {
        const std::vector<CurvePoint> curve =
            sweep_curves(DensityMatrix(rho), DensityMatrix(sigma), grid);
        py::list out;
        for (const CurvePoint& p : curve) {
          py::dict d;
          d["s"] = p.s;
          d["l1"] = p.l1;
          d["tr_pos"] = p.tr_pos;
          d["tr_neg"] = p.tr_neg;
          d["pe"] = p.pe;
          out.append(d);
        }
        return out;
      },
      py::arg("rho"), py::arg("sigma"), py::arg("grid"));

  m.def(
      "optimal_test",
      [](const cmat& rho, const cmat& sigma, double s) {
        const OptimalTestDecomposition t =
            optimal_test(DensityMatrix(rho), DensityMatrix(sigma), s);
        py::dict d;
        d["s"] = t.s;
        d["tr_pos"] = t.tr_pos;
        d["tr_neg"] = t.tr_neg;
        d["p_plus"] = t.p_plus.projector;
        d["p_minus"] = t.p_minus.projector;
        d["p_zero"] = t.p_zero.projector;
        return d;
      },
      py::arg("rho"), py::arg("sigma"), py::arg("s"));

  m.def(
      "bayes_error_of_test",
      [](const cmat& rho, const cmat& sigma, const cmat& effect, double lam) {
        return bayes_error_of_test(DensityMatrix(rho), DensityMatrix(sigma), Effect(effect), lam);
      },
      py::arg("rho"), py::arg("sigma"), py::arg("effect"), py::arg("lam"));

  m.def(
      "apply_channel",
      [](const std::vector<cmat>& kraus, const cmat& rho) {
        return apply_channel(make_channel(kraus), DensityMatrix(rho)).matrix();
      },
      py::arg("kraus"), py::arg("rho"));

  m.def(
      "apply_adjoint",
      [](const std::vector<cmat>& kraus, const cmat& a) {
        return apply_adjoint(make_channel(kraus), a);
      },
      py::arg("kraus"), py::arg("a"));

  m.def(
      "kraus_to_choi",
      [](const std::vector<cmat>& kraus) { return kraus_to_choi(make_channel(kraus)).matrix(); },
      py::arg("kraus"), "Choi matrix in (out, in) row-major index order.");

  m.def(
      "deficiency_epsilon",
      [](const cmat& rho, const cmat& sigma, const std::vector<cmat>& kraus,
         const std::vector<double>& grid) {
        return deficiency_epsilon(DensityMatrix(rho), DensityMatrix(sigma), make_channel(kraus),
                                  grid);
      },
      py::arg("rho"), py::arg("sigma"), py::arg("kraus"), py::arg("grid"));

  m.def(
      "petz_kraus",
      [](const std::vector<cmat>& kraus, const cmat& sigma) {
        return petz_map(make_channel(kraus), DensityMatrix(sigma)).base.kraus();
      },
      py::arg("kraus"), py::arg("sigma"), "Kraus family of the Petz recovery map.");

  m.def(
      "rotated_petz_kraus",
      [](const std::vector<cmat>& kraus, const cmat& sigma, double t) {
        return rotated_petz(make_channel(kraus), DensityMatrix(sigma), t).base.kraus();
      },
      py::arg("kraus"), py::arg("sigma"), py::arg("t"));

  m.def(
      "universal_recovery_choi",
      [](const std::vector<cmat>& kraus, const cmat& sigma, double truncation, int nodes) {
        return universal_recovery(make_channel(kraus), DensityMatrix(sigma), truncation, nodes)
            .choi.matrix();
      },
      py::arg("kraus"), py::arg("sigma"), py::arg("truncation") = 4.0, py::arg("nodes") = 801,
      "Choi matrix of the beta0-averaged universal recovery channel.");

  m.def("beta0_density", &beta0_density, py::arg("t"));

  m.def(
      "cocycles",
      [](const cmat& rho, const cmat& sigma, const std::vector<cmat>& kraus, double t) {
        const CocyclePair pair =
            cocycles(DensityMatrix(rho), DensityMatrix(sigma), make_channel(kraus), t);
        return std::make_pair(pair.u_t, pair.v_t);
      },
      py::arg("rho"), py::arg("sigma"), py::arg("kraus"), py::arg("t"),
      "Connes cocycle pair (u_t, v_t).");

  m.def(
      "sufficiency_report",
      [](const cmat& rho, const cmat& sigma, const std::vector<cmat>& kraus,
         const std::vector<double>& grid, const std::vector<double>& t_samples,
         double threshold) {
        return sufficiency_dict(sufficiency_report(DensityMatrix(rho), DensityMatrix(sigma),
                                                   make_channel(kraus), grid, t_samples,
                                                   threshold));
      },
      py::arg("rho"), py::arg("sigma"), py::arg("kraus"), py::arg("grid"),
      py::arg("t_samples") = std::vector<double>{-1.0, 0.3, 2.0}, py::arg("threshold") = 1e-6);

  m.def(
      "recovery_report",
      [](const cmat& rho, const cmat& sigma, const std::vector<cmat>& kraus,
         const std::vector<double>& grid, double truncation, int nodes) {
        return recovery_dict(recovery_report(DensityMatrix(rho), DensityMatrix(sigma),
                                             make_channel(kraus), grid, truncation, nodes));
      },
      py::arg("rho"), py::arg("sigma"), py::arg("kraus"), py::arg("grid"),
      py::arg("truncation") = 4.0, py::arg("nodes") = 801);

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
