#pragma once

#include <functional>
#include <vector>

#include "qsuff/quantum.hpp"

namespace qsuff {

/// Three-way spectral split of rho - s*sigma and the optimal error masses.
struct OptimalTestDecomposition {
  double s = 0.0;
  SupportProjection p_plus;   // supp((rho - s sigma)_+)
  SupportProjection p_minus;  // supp((rho - s sigma)_-)
  SupportProjection p_zero;   // I - P_+ - P_-
  double tr_pos = 0.0;        // Tr[(rho - s sigma)_+]
  double tr_neg = 0.0;        // Tr[(rho - s sigma)_-]
};

struct CurvePoint {
  double s = 0.0;
  double l1 = 0.0;      // ||rho - s sigma||_1
  double tr_pos = 0.0;
  double tr_neg = 0.0;
  double pe = 0.0;      // optimal Bayes error at lambda = s/(1+s)
};

/// Per-grid-point monotonicity slacks, each nonnegative up to tolerance:
///   l1:     ||rho - s sigma||_1 - ||Phi(rho) - s Phi(sigma)||_1
///   tr_neg: Tr[(rho - s sigma)_-] - Tr[(Phi rho - s Phi sigma)_-]
///   pe:     P_e(lambda, Phi sigma, Phi rho) - P_e(lambda, sigma, rho)
struct DpiSlack {
  double s = 0.0;
  double l1 = 0.0;
  double tr_neg = 0.0;
  double pe = 0.0;
};

struct DpiReport {
  std::vector<DpiSlack> points;
  double min_l1_slack = 0.0;
  double min_tr_neg_slack = 0.0;
  double min_pe_slack = 0.0;
};

inline double s_from_lambda(double lambda) { return lambda / (1.0 - lambda); }
inline double lambda_from_s(double s) { return s / (1.0 + s); }

/// Curve values at a single threshold s.
CurvePoint curve_point_at(const DensityMatrix& rho, const DensityMatrix& sigma, double s);

/// max of f over the grid, polished by golden-section search inside the
/// cells around the leading local maxima. The curves have kinks where
/// eigenvalues of rho - s sigma cross zero, so the bare grid maximum moves
/// by O(grid spacing) under refinement; the polished value is grid-stable.
double refined_grid_max(const std::function<double(double)>& f, const std::vector<double>& grid);

/// lambda Tr[sigma M] + (1 - lambda) Tr[rho (I - M)].
double bayes_error_of_test(const DensityMatrix& rho, const DensityMatrix& sigma, const Effect& m,
                           double lambda);

OptimalTestDecomposition optimal_test(const DensityMatrix& rho, const DensityMatrix& sigma,
                                      double s);

/// Minimal Bayes error over all tests; lambda = 1 is the P_e = 0 endpoint.
double optimal_bayes_error(const DensityMatrix& rho, const DensityMatrix& sigma, double lambda);

std::vector<CurvePoint> sweep_curves(const DensityMatrix& rho, const DensityMatrix& sigma,
                                     const std::vector<double>& grid);

/// max over the grid of (||rho - s sigma||_1 - ||Phi rho - s Phi sigma||_1),
/// clamped below at zero.
double deficiency_epsilon(const DensityMatrix& rho, const DensityMatrix& sigma,
                          const QuantumChannel& phi, const std::vector<double>& grid);

DpiReport check_dpi_pointwise(const DensityMatrix& rho, const DensityMatrix& sigma,
                              const QuantumChannel& phi, const std::vector<double>& grid);

/// Geometric grid with `count` points on
/// [max(1e-6, e^{-Dmax(sigma||rho)}), e^{Dmax(rho||sigma)}], augmented with
/// s = 0 and s = 1. Infinite Dmax endpoints fall back to 1e-6 and 1e6.
std::vector<double> default_s_grid(const DensityMatrix& rho, const DensityMatrix& sigma,
                                   int count = 513);

}  // namespace qsuff
