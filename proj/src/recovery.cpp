#include "qsuff/recovery.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>

namespace qsuff {

namespace {

void require_equal_dims(int a, int b, const char* what) {
  if (a != b) {
    raise(ErrorKind::DimensionMismatch,
          std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

bool support_contained(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const cmat p = sigma.support().projector;
  return (rho.matrix() * (cmat::Identity(rho.dim(), rho.dim()) - p)).trace().real() <= 1e-9;
}

std::vector<cmat> rotated_kraus(const QuantumChannel& phi, const DensityMatrix& sigma,
                                const DensityMatrix& phi_sigma, double t) {
  const cmat left = sigma.power_on_support(complexd(0.5, -t));
  const cmat right = phi_sigma.power_on_support(complexd(-0.5, t));
  std::vector<cmat> kraus;
  kraus.reserve(phi.kraus().size());
  for (const cmat& k : phi.kraus()) {
    kraus.push_back(left * k.adjoint() * right);
  }
  return kraus;
}

cmat choi_of_kraus(const std::vector<cmat>& kraus, int dim_in, int dim_out) {
  cmat choi = cmat::Zero(dim_in * dim_out, dim_in * dim_out);
  for (const cmat& k : kraus) {
    cvec v(dim_in * dim_out);
    for (int r = 0; r < dim_out; ++r)
      for (int c = 0; c < dim_in; ++c) v[r * dim_in + c] = k(r, c);
    choi += v * v.adjoint();
  }
  return choi;
}

cmat apply_choi_raw(const cmat& choi, int dim_in, int dim_out, const cmat& x) {
  cmat out = cmat::Zero(dim_out, dim_out);
  for (int k = 0; k < dim_out; ++k)
    for (int l = 0; l < dim_out; ++l) {
      complexd acc = 0.0;
      for (int i = 0; i < dim_in; ++i)
        for (int j = 0; j < dim_in; ++j) acc += choi(k * dim_in + i, l * dim_in + j) * x(i, j);
      out(k, l) = acc;
    }
  return out;
}

double entropy_gap_of(const DensityMatrix& rho, const DensityMatrix& sigma,
                      const DensityMatrix& img_rho, const DensityMatrix& img_sigma) {
  const double d_in = relative_entropy_spectral(rho, sigma);
  const double d_out = relative_entropy_spectral(img_rho, img_sigma);
  if (!std::isfinite(d_in) && !std::isfinite(d_out)) return 0.0;
  return d_in - d_out;
}

}  // namespace

double beta0_density(double t) { return M_PI / (std::cosh(2.0 * M_PI * t) + 1.0); }

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Sufficient: return "sufficient";
    case Verdict::NotSufficient: return "not-sufficient";
    case Verdict::Borderline: return "borderline";
  }
  return "unknown";
}

PetzMap petz_map(const QuantumChannel& phi, const DensityMatrix& sigma) {
  require_equal_dims(sigma.dim(), phi.dim_in(), "petz_map");
  DensityMatrix phi_sigma = apply_channel(phi, sigma);
  std::vector<cmat> kraus = rotated_kraus(phi, sigma, phi_sigma, 0.0);
  const cmat domain = phi_sigma.support().projector;
  QuantumChannel base = QuantumChannel::on_domain(std::move(kraus), domain, 1e-7);

  // sigma-recovery invariant, checked once at construction
  const cmat recovered = apply_kraus(base.kraus(), phi_sigma.matrix());
  if (trace_norm(recovered - sigma.matrix()) > 1e-8) {
    raise(ErrorKind::ValidationError, "Petz map fails to recover sigma");
  }
  return PetzMap{std::move(base), sigma, std::move(phi_sigma)};
}

RotatedPetzMap rotated_petz(const QuantumChannel& phi, const DensityMatrix& sigma, double t) {
  require_equal_dims(sigma.dim(), phi.dim_in(), "rotated_petz");
  DensityMatrix phi_sigma = apply_channel(phi, sigma);
  std::vector<cmat> kraus = rotated_kraus(phi, sigma, phi_sigma, t);
  const cmat domain = phi_sigma.support().projector;
  QuantumChannel base = QuantumChannel::on_domain(std::move(kraus), domain, 1e-7);

  const cmat recovered = apply_kraus(base.kraus(), phi_sigma.matrix());
  if (trace_norm(recovered - sigma.matrix()) > 1e-8) {
    raise(ErrorKind::ValidationError, "rotated Petz map fails to recover sigma");
  }
  return RotatedPetzMap{t, std::move(base)};
}

DensityMatrix AveragedRecoveryChannel::apply(const DensityMatrix& rho) const {
  return apply_via_choi(choi, rho);
}

AveragedRecoveryChannel universal_recovery(const QuantumChannel& phi, const DensityMatrix& sigma,
                                           double truncation_T, int nodes) {
  require_equal_dims(sigma.dim(), phi.dim_in(), "universal_recovery");
  if (!(truncation_T >= 3.0)) {
    raise(ErrorKind::InvalidTruncation, "truncation must be >= 3");
  }
  if (nodes % 2 == 0) {
    raise(ErrorKind::EvenNodeCount, "composite Simpson needs an odd node count");
  }
  if (nodes < 101) {
    raise(ErrorKind::ValidationError, "node count must be >= 101");
  }

  const DensityMatrix phi_sigma = apply_channel(phi, sigma);
  const int dim_in = phi.dim_out();   // recovery runs K -> H
  const int dim_out = phi.dim_in();

  // Composite Simpson weights against beta0, renormalized to the exact
  // truncated mass integral_{-T}^{T} beta0 = tanh(pi T).
  const double mass = std::tanh(M_PI * truncation_T);
  const double h = 2.0 * truncation_T / (nodes - 1);
  std::vector<std::pair<double, double>> measure(nodes);
  double raw_sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double t = -truncation_T + h * j;
    const double coeff = (j == 0 || j == nodes - 1) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    const double w = coeff * (h / 3.0) * beta0_density(t);
    measure[j] = {t, w};
    raw_sum += w;
  }
  for (auto& node : measure) node.second *= mass / raw_sum;

  cmat choi = cmat::Zero(dim_in * dim_out, dim_in * dim_out);
  for (const auto& [t, w] : measure) {
    choi += w * choi_of_kraus(rotated_kraus(phi, sigma, phi_sigma, t), dim_in, dim_out);
  }

  // Kernel branch X -> Tr[(I - P) X] * sigma, as a Choi block sigma (x) Q^T.
  const SupportProjection p_support = phi_sigma.support();
  const cmat q = cmat::Identity(dim_in, dim_in) - p_support.projector;
  choi += Eigen::kroneckerProduct(sigma.matrix(), q.transpose()).eval();

  AveragedRecoveryChannel out{ChoiMatrix(dim_in, dim_out, choi, 1e-7),
                              std::move(measure),
                              truncation_T,
                              1.0 - mass,
                              p_support,
                              sigma};

  const DensityMatrix recovered = out.apply(phi_sigma);
  if (trace_norm(recovered.matrix() - sigma.matrix()) > 1e-7) {
    raise(ErrorKind::ValidationError, "averaged recovery channel fails to recover sigma");
  }
  return out;
}

CocyclePair cocycles(const DensityMatrix& rho, const DensityMatrix& sigma,
                     const QuantumChannel& phi, double t) {
  require_equal_dims(rho.dim(), sigma.dim(), "cocycles");
  require_equal_dims(rho.dim(), phi.dim_in(), "cocycles");
  if (!support_contained(rho, sigma)) {
    raise(ErrorKind::SupportViolation, "cocycles need supp(rho) <= supp(sigma)");
  }
  const DensityMatrix img_rho = apply_channel(phi, rho);
  const DensityMatrix img_sigma = apply_channel(phi, sigma);
  CocyclePair out;
  out.t = t;
  out.u_t = rho.power_on_support(complexd(0.0, t)) * sigma.power_on_support(complexd(0.0, -t));
  out.v_t =
      img_rho.power_on_support(complexd(0.0, t)) * img_sigma.power_on_support(complexd(0.0, -t));
  return out;
}

SufficiencyReport sufficiency_report(const DensityMatrix& rho, const DensityMatrix& sigma,
                                     const QuantumChannel& phi, const std::vector<double>& grid,
                                     const std::vector<double>& t_samples, double threshold) {
  const DensityMatrix img_rho = apply_channel(phi, rho);
  const DensityMatrix img_sigma = apply_channel(phi, sigma);

  SufficiencyReport report;
  report.threshold = threshold;
  const auto gap_of = [&](auto&& pick) {
    return refined_grid_max(
        [&](double s) {
          return pick(curve_point_at(rho, sigma, s), curve_point_at(img_rho, img_sigma, s));
        },
        grid);
  };
  report.max_l1_gap = gap_of([](const CurvePoint& in, const CurvePoint& img) {
    return in.l1 - img.l1;
  });
  report.max_pe_gap = gap_of([](const CurvePoint& in, const CurvePoint& img) {
    return img.pe - in.pe;
  });
  report.max_trpos_gap = gap_of([](const CurvePoint& in, const CurvePoint& img) {
    return in.tr_pos - img.tr_pos;
  });
  report.max_trneg_gap = gap_of([](const CurvePoint& in, const CurvePoint& img) {
    return in.tr_neg - img.tr_neg;
  });
  report.entropy_gap = entropy_gap_of(rho, sigma, img_rho, img_sigma);

  const PetzMap petz = petz_map(phi, sigma);
  report.petz_recovery_error =
      trace_norm(apply_kraus(petz.base.kraus(), img_rho.matrix()) - rho.matrix());
  for (double t : t_samples) {
    const RotatedPetzMap rotated = rotated_petz(phi, sigma, t);
    report.rotated_recovery_errors.emplace_back(
        t, trace_norm(apply_kraus(rotated.base.kraus(), img_rho.matrix()) - rho.matrix()));
  }
  if (support_contained(rho, sigma)) {
    for (double t : t_samples) {
      const CocyclePair pair = cocycles(rho, sigma, phi, t);
      report.cocycle_residuals.emplace_back(t, (apply_adjoint(phi, pair.v_t) - pair.u_t).norm());
    }
  }

  double metric = std::max({report.max_l1_gap, report.max_pe_gap, report.max_trpos_gap,
                            report.max_trneg_gap, report.entropy_gap,
                            report.petz_recovery_error});
  if (metric <= threshold) {
    report.verdict = Verdict::Sufficient;
  } else if (metric <= 1e-4) {
    report.verdict = Verdict::Borderline;
  } else {
    report.verdict = Verdict::NotSufficient;
  }
  return report;
}

RecoveryReport recovery_report(const DensityMatrix& rho, const DensityMatrix& sigma,
                               const QuantumChannel& phi, const std::vector<double>& grid,
                               double truncation_T, int nodes) {
  const DensityMatrix img_rho = apply_channel(phi, rho);
  const DensityMatrix img_sigma = apply_channel(phi, sigma);

  RecoveryReport report;
  report.entropy_gap = entropy_gap_of(rho, sigma, img_rho, img_sigma);

  const AveragedRecoveryChannel universal = universal_recovery(phi, sigma, truncation_T, nodes);
  const cmat recovered_raw = apply_choi_raw(universal.choi.matrix(), universal.choi.dim_in(),
                                            universal.choi.dim_out(), img_rho.matrix());
  const DensityMatrix recovered(recovered_raw, 1e-7);

  report.minus_2log_f = -2.0 * std::log(fidelity(rho, recovered));
  report.recovered_trace_distance = trace_norm(rho.matrix() - recovered.matrix());
  report.quarter_l1_sq = 0.25 * report.recovered_trace_distance * report.recovered_trace_distance;

  report.epsilon = deficiency_epsilon(rho, sigma, phi, grid);
  report.d_omega = d_max(rho, sigma) + d_max(sigma, rho);
  report.bound_3_2 = std::isfinite(report.d_omega)
                         ? std::sqrt(2.0 * report.epsilon * report.d_omega)
                         : kInfinity;
  report.chain_slacks[0] = report.entropy_gap - report.minus_2log_f;
  report.chain_slacks[1] = report.minus_2log_f - report.quarter_l1_sq;

  double forward = -kInfinity;
  for (double s : grid) {
    const double lhs = trace_norm(rho.matrix() - s * sigma.matrix());
    const double rhs = trace_norm(img_rho.matrix() - s * img_sigma.matrix()) +
                       report.recovered_trace_distance;
    forward = std::max(forward, lhs - rhs);
  }
  report.forward_max_violation = forward;
  return report;
}

}  // namespace qsuff
