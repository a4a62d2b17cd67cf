#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qsuff/divergences.hpp"
#include "qsuff/hypothesis.hpp"
#include "qsuff/quantum.hpp"

namespace qsuff {

/// Petz recovery map of phi with respect to sigma,
/// Kraus family {sigma^{1/2} K_i^dag Phi(sigma)^{-1/2}} on the supports.
struct PetzMap {
  QuantumChannel base;
  DensityMatrix sigma;
  DensityMatrix phi_sigma_out;
};

/// Petz map conjugated by the modular unitaries sigma^{+-it}, Phi(sigma)^{+-it}:
/// Kraus family {sigma^{1/2 - it} K_i^dag Phi(sigma)^{-1/2 + it}}.
struct RotatedPetzMap {
  double t = 0.0;
  QuantumChannel base;
};

/// Rotated Petz maps averaged against beta0(t) = pi / (cosh(2 pi t) + 1),
/// truncated to [-T, T], plus the kernel branch
/// X -> Tr[(I - P) X] * kernel_state with P = supp(Phi(sigma)).
struct AveragedRecoveryChannel {
  ChoiMatrix choi;
  std::vector<std::pair<double, double>> measure_nodes;  // (t_j, w_j)
  double truncation = 0.0;
  double tail_mass = 0.0;  // beta0 mass outside [-T, T]
  SupportProjection p_support;
  DensityMatrix kernel_state;

  DensityMatrix apply(const DensityMatrix& rho) const;
};

/// Connes cocycles u_t = rho^{it} sigma^{-it}, v_t = Phi(rho)^{it} Phi(sigma)^{-it},
/// with support-restricted imaginary powers.
struct CocyclePair {
  double t = 0.0;
  cmat u_t;
  cmat v_t;
};

double beta0_density(double t);

enum class Verdict { Sufficient, NotSufficient, Borderline };
const char* verdict_name(Verdict v);

struct SufficiencyReport {
  double max_l1_gap = 0.0;
  double max_pe_gap = 0.0;
  double max_trpos_gap = 0.0;
  double max_trneg_gap = 0.0;
  double entropy_gap = 0.0;
  double petz_recovery_error = 0.0;
  std::vector<std::pair<double, double>> rotated_recovery_errors;  // (t, error)
  std::vector<std::pair<double, double>> cocycle_residuals;        // (t, ||Phi*(v_t) - u_t||_F)
  Verdict verdict = Verdict::Borderline;
  double threshold = 1e-6;
};

struct RecoveryReport {
  double entropy_gap = 0.0;
  double minus_2log_f = 0.0;
  double quarter_l1_sq = 0.0;
  double recovered_trace_distance = 0.0;  // ||rho - Phi^u casc Phi(rho)||_1
  double epsilon = 0.0;
  double d_omega = 0.0;
  double bound_3_2 = 0.0;       // sqrt(2 eps) * D_Omega^{1/2}
  double chain_slacks[2] = {0.0, 0.0};
  double forward_max_violation = 0.0;  // max_s (||rho-s sigma||_1 - ||img||_1 - recovery error)
};

PetzMap petz_map(const QuantumChannel& phi, const DensityMatrix& sigma);

RotatedPetzMap rotated_petz(const QuantumChannel& phi, const DensityMatrix& sigma, double t);

AveragedRecoveryChannel universal_recovery(const QuantumChannel& phi, const DensityMatrix& sigma,
                                           double truncation_T = 4.0, int nodes = 801);

CocyclePair cocycles(const DensityMatrix& rho, const DensityMatrix& sigma,
                     const QuantumChannel& phi, double t);

SufficiencyReport sufficiency_report(const DensityMatrix& rho, const DensityMatrix& sigma,
                                     const QuantumChannel& phi, const std::vector<double>& grid,
                                     const std::vector<double>& t_samples, double threshold = 1e-6);

RecoveryReport recovery_report(const DensityMatrix& rho, const DensityMatrix& sigma,
                               const QuantumChannel& phi, const std::vector<double>& grid,
                               double truncation_T = 4.0, int nodes = 801);

}  // namespace qsuff
