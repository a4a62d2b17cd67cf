#pragma once

#include <limits>

#include "qsuff/quantum.hpp"

namespace qsuff {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct QuadratureSpec {
  enum class Scheme { AdaptiveSimpson, FixedGaussLegendre };
  Scheme scheme = Scheme::AdaptiveSimpson;
  int max_nodes = 200000;
  double rel_tol = 1e-8;
  // Integration always runs in the log domain, s = e^x.
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int nodes_used = 0;
};

struct DivergenceReport {
  double d_spectral = 0.0;         // nats, +inf when supp(rho) !<= supp(sigma)
  double d_integral = 0.0;         // nats, +inf likewise
  double quad_error_estimate = 0.0;
  double d_max_rho_sigma = 0.0;
  double d_max_sigma_rho = 0.0;
  double d_omega = 0.0;            // Hilbert projective metric
};

/// Tr[rho (log rho - log sigma)] with support-restricted logs; +inf when
/// supp(rho) !<= supp(sigma).
double relative_entropy_spectral(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Tr[((1-t) rho + t sigma)_-]; vanishes identically on t in [0, 1].
double frenkel_integrand(const DensityMatrix& rho, const DensityMatrix& sigma, double t);

/// Integral route: D = int_mu^lambda ds/s Tr[(rho - s sigma)_-] + log(lambda)
/// + 1 - lambda with mu = e^{-Dmax(sigma||rho)} and lambda = e^{Dmax(rho||sigma)},
/// evaluated after the substitution s = e^x.
QuadratureResult relative_entropy_integral(const DensityMatrix& rho, const DensityMatrix& sigma,
                                           const QuadratureSpec& spec = {});

/// log min{lambda : rho <= lambda sigma}, +inf when supp(rho) !<= supp(sigma).
double d_max(const DensityMatrix& rho, const DensityMatrix& sigma);

DivergenceReport divergence_report(const DensityMatrix& rho, const DensityMatrix& sigma,
                                   const QuadratureSpec& spec = {});

}  // namespace qsuff
