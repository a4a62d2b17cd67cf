#include "qsuff/hypothesis.hpp"

#include <algorithm>
#include <cmath>

#include "qsuff/divergences.hpp"

namespace qsuff {

namespace {

// Eigenvalues within this distance of zero belong to P_{s,0}.
constexpr double kZeroBand = 1e-12;

void require_equal_dims(int a, int b, const char* what) {
  if (a != b) {
    raise(ErrorKind::DimensionMismatch,
          std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

void require_grid(const std::vector<double>& grid) {
  if (grid.empty()) {
    raise(ErrorKind::EmptyGrid, "s-grid must be nonempty");
  }
  for (double s : grid) {
    if (!(s >= 0.0)) {
      raise(ErrorKind::EmptyGrid, "s-grid values must be >= 0");
    }
  }
}

struct SplitMasses {
  double tr_pos = 0.0;
  double tr_neg = 0.0;
};

SplitMasses split_masses(const cmat& delta) {
  const HermitianEigen eig = hermitian_eig(delta);
  SplitMasses out;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lambda = eig.eigenvalues[i];
    if (lambda > kZeroBand) out.tr_pos += lambda;
    if (lambda < -kZeroBand) out.tr_neg -= lambda;
  }
  return out;
}

CurvePoint curve_point(const cmat& delta, double s) {
  const SplitMasses m = split_masses(delta);
  CurvePoint p;
  p.s = s;
  p.tr_pos = m.tr_pos;
  p.tr_neg = m.tr_neg;
  p.l1 = m.tr_pos + m.tr_neg;
  p.pe = 0.5 * (1.0 - (1.0 - lambda_from_s(s)) * p.l1);
  return p;
}

double golden_section_max(const std::function<double(double)>& f, double a, double b) {
  constexpr double ratio = 0.6180339887498949;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int iter = 0; iter < 80 && (b - a) > 1e-13 * std::max(1.0, b); ++iter) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

}  // namespace

CurvePoint curve_point_at(const DensityMatrix& rho, const DensityMatrix& sigma, double s) {
  return curve_point(rho.matrix() - s * sigma.matrix(), s);
}

double refined_grid_max(const std::function<double(double)>& f, const std::vector<double>& grid) {
  require_grid(grid);
  const size_t n = grid.size();
  std::vector<double> vals(n);
  for (size_t i = 0; i < n; ++i) vals[i] = f(grid[i]);

  std::vector<size_t> peaks;
  for (size_t i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || vals[i] >= vals[i - 1];
    const bool right_ok = i + 1 == n || vals[i] >= vals[i + 1];
    if (left_ok && right_ok) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(),
            [&](size_t a, size_t b) { return vals[a] > vals[b]; });
  if (peaks.size() > 6) peaks.resize(6);

  double best = *std::max_element(vals.begin(), vals.end());
  for (size_t i : peaks) {
    const double lo = grid[i == 0 ? 0 : i - 1];
    const double hi = grid[i + 1 >= n ? n - 1 : i + 1];
    if (hi > lo) best = std::max(best, golden_section_max(f, lo, hi));
  }
  return best;
}

double bayes_error_of_test(const DensityMatrix& rho, const DensityMatrix& sigma, const Effect& m,
                           double lambda) {
  require_equal_dims(rho.dim(), sigma.dim(), "bayes_error_of_test");
  require_equal_dims(rho.dim(), m.dim(), "bayes_error_of_test");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    raise(ErrorKind::InvalidLambda, "lambda must lie in [0, 1]");
  }
  const double alpha = (sigma.matrix() * m.matrix()).trace().real();
  const double beta =
      (rho.matrix() * (cmat::Identity(rho.dim(), rho.dim()) - m.matrix())).trace().real();
  return lambda * alpha + (1.0 - lambda) * beta;
}

OptimalTestDecomposition optimal_test(const DensityMatrix& rho, const DensityMatrix& sigma,
                                      double s) {
  require_equal_dims(rho.dim(), sigma.dim(), "optimal_test");
  if (!(s >= 0.0)) {
    raise(ErrorKind::ValidationError, "threshold s must be >= 0");
  }
  const cmat delta = rho.matrix() - s * sigma.matrix();
  const HermitianEigen eig = hermitian_eig(delta);
  const int d = rho.dim();

  OptimalTestDecomposition out;
  out.s = s;
  cmat p_plus = cmat::Zero(d, d);
  cmat p_minus = cmat::Zero(d, d);
  int rank_plus = 0, rank_minus = 0;
  for (int i = 0; i < d; ++i) {
    const double lambda = eig.eigenvalues[i];
    const cmat vv = eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
    if (lambda > kZeroBand) {
      p_plus += vv;
      ++rank_plus;
      out.tr_pos += lambda;
    } else if (lambda < -kZeroBand) {
      p_minus += vv;
      ++rank_minus;
      out.tr_neg -= lambda;
    }
  }
  out.p_plus = SupportProjection{0.5 * (p_plus + p_plus.adjoint()), rank_plus, kZeroBand};
  out.p_minus = SupportProjection{0.5 * (p_minus + p_minus.adjoint()), rank_minus, kZeroBand};
  const cmat p_zero = cmat::Identity(d, d) - out.p_plus.projector - out.p_minus.projector;
  out.p_zero = SupportProjection{0.5 * (p_zero + p_zero.adjoint()), d - rank_plus - rank_minus,
                                 kZeroBand};
  return out;
}

double optimal_bayes_error(const DensityMatrix& rho, const DensityMatrix& sigma, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    raise(ErrorKind::InvalidLambda, "lambda must lie in [0, 1]");
  }
  if (lambda == 1.0) return 0.0;  // reject always: the s = infinity endpoint
  const OptimalTestDecomposition t = optimal_test(rho, sigma, s_from_lambda(lambda));
  return (1.0 - lambda) * (1.0 - t.tr_pos);
}

std::vector<CurvePoint> sweep_curves(const DensityMatrix& rho, const DensityMatrix& sigma,
                                     const std::vector<double>& grid) {
  require_equal_dims(rho.dim(), sigma.dim(), "sweep_curves");
  require_grid(grid);
  std::vector<CurvePoint> out;
  out.reserve(grid.size());
  for (double s : grid) {
    out.push_back(curve_point(rho.matrix() - s * sigma.matrix(), s));
  }
  return out;
}

double deficiency_epsilon(const DensityMatrix& rho, const DensityMatrix& sigma,
                          const QuantumChannel& phi, const std::vector<double>& grid) {
  require_equal_dims(rho.dim(), phi.dim_in(), "deficiency_epsilon");
  require_equal_dims(sigma.dim(), phi.dim_in(), "deficiency_epsilon");
  require_grid(grid);
  const DensityMatrix img_rho = apply_channel(phi, rho);
  const DensityMatrix img_sigma = apply_channel(phi, sigma);
  const auto gap = [&](double s) {
    return trace_norm(rho.matrix() - s * sigma.matrix()) -
           trace_norm(img_rho.matrix() - s * img_sigma.matrix());
  };
  return std::max(0.0, refined_grid_max(gap, grid));
}

DpiReport check_dpi_pointwise(const DensityMatrix& rho, const DensityMatrix& sigma,
                              const QuantumChannel& phi, const std::vector<double>& grid) {
  require_equal_dims(rho.dim(), phi.dim_in(), "check_dpi_pointwise");
  require_equal_dims(sigma.dim(), phi.dim_in(), "check_dpi_pointwise");
  require_grid(grid);
  const DensityMatrix img_rho = apply_channel(phi, rho);
  const DensityMatrix img_sigma = apply_channel(phi, sigma);

  DpiReport report;
  report.points.reserve(grid.size());
  report.min_l1_slack = report.min_tr_neg_slack = report.min_pe_slack =
      std::numeric_limits<double>::infinity();
  for (double s : grid) {
    const CurvePoint in = curve_point(rho.matrix() - s * sigma.matrix(), s);
    const CurvePoint img = curve_point(img_rho.matrix() - s * img_sigma.matrix(), s);
    DpiSlack slack;
    slack.s = s;
    slack.l1 = in.l1 - img.l1;
    slack.tr_neg = in.tr_neg - img.tr_neg;
    slack.pe = img.pe - in.pe;
    report.min_l1_slack = std::min(report.min_l1_slack, slack.l1);
    report.min_tr_neg_slack = std::min(report.min_tr_neg_slack, slack.tr_neg);
    report.min_pe_slack = std::min(report.min_pe_slack, slack.pe);
    report.points.push_back(slack);
  }
  return report;
}

std::vector<double> default_s_grid(const DensityMatrix& rho, const DensityMatrix& sigma,
                                   int count) {
  if (count < 2) {
    raise(ErrorKind::ValidationError, "grid needs at least two points");
  }
  const double d_up = d_max(rho, sigma);
  const double d_down = d_max(sigma, rho);
  const double lo = std::isfinite(d_down) ? std::max(1e-6, std::exp(-d_down)) : 1e-6;
  const double hi = std::isfinite(d_up) ? std::max(std::exp(d_up), 2.0 * lo) : 1e6;

  std::vector<double> grid;
  grid.reserve(static_cast<size_t>(count) + 2);
  grid.push_back(0.0);
  grid.push_back(1.0);
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) {
    grid.push_back(lo * std::exp(step * i));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace qsuff
