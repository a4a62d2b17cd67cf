#include "qsuff/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace qsuff {

namespace {

void require_equal_dims(int a, int b, const char* what) {
  if (a != b) {
    raise(ErrorKind::DimensionMismatch,
          std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

// Support containment test: mass of rho outside supp(sigma).
bool support_contained(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const cmat p = sigma.support().projector;
  const double outside =
      (rho.matrix() * (cmat::Identity(rho.dim(), rho.dim()) - p)).trace().real();
  return outside <= 1e-9;
}

double negative_mass(const cmat& delta) {
  const HermitianEigen eig = hermitian_eig(delta);
  double mass = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues[i] < 0.0) mass -= eig.eigenvalues[i];
  }
  return mass;
}

void validate_spec(const QuadratureSpec& spec) {
  if (spec.max_nodes < 17) {
    raise(ErrorKind::ValidationError, "quadrature needs max_nodes >= 17");
  }
  if (!(spec.rel_tol > 0.0 && spec.rel_tol <= 1e-2)) {
    raise(ErrorKind::ValidationError, "quadrature rel_tol must lie in (0, 1e-2]");
  }
}

struct QuadBudget {
  int used = 0;
  int cap = 0;
  double eval(const std::function<double(double)>& f, double x) {
    if (++used > cap) {
      raise(ErrorKind::QuadratureBudgetExceeded,
            "node budget " + std::to_string(cap) + " exhausted");
    }
    return f(x);
  }
};

struct PanelResult {
  double value = 0.0;
  double error = 0.0;
};

double simpson(double h, double fa, double fm, double fb) {
  return (fa + 4.0 * fm + fb) * (h / 6.0);
}

// Classic adaptive Simpson on one panel; the Richardson term (sa+sb-s)/15 is
// both the acceptance test and the reported error contribution.
PanelResult adaptive_panel(const std::function<double(double)>& f, QuadBudget& budget, double a,
                           double fa, double m, double fm, double b, double fb, double whole,
                           double tol, int depth, int min_depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = budget.eval(f, lm);
  const double frm = budget.eval(f, rm);
  const double left = simpson(m - a, fa, flm, fm);
  const double right = simpson(b - m, fm, frm, fb);
  const double err = (left + right - whole) / 15.0;
  if ((depth >= min_depth && std::abs(err) <= tol) || depth >= 30) {
    return {left + right + err, std::abs(err)};
  }
  const PanelResult l =
      adaptive_panel(f, budget, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1, min_depth);
  const PanelResult r =
      adaptive_panel(f, budget, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1, min_depth);
  return {l.value + r.value, l.error + r.error};
}

QuadratureResult integrate_adaptive_simpson(const std::function<double(double)>& f, double a,
                                            double b, const QuadratureSpec& spec) {
  QuadBudget budget{0, spec.max_nodes};
  constexpr int kInitialPanels = 8;  // 17-point minimum before any acceptance
  const double h = (b - a) / kInitialPanels;

  std::vector<double> xs(2 * kInitialPanels + 1), fs(2 * kInitialPanels + 1);
  for (int i = 0; i <= 2 * kInitialPanels; ++i) {
    xs[i] = a + 0.5 * h * i;
    fs[i] = budget.eval(f, xs[i]);
  }
  double coarse = 0.0;
  for (int p = 0; p < kInitialPanels; ++p) {
    coarse += simpson(h, fs[2 * p], fs[2 * p + 1], fs[2 * p + 2]);
  }
  const double tol_total = spec.rel_tol * std::max(1.0, std::abs(coarse));

  QuadratureResult out;
  for (int p = 0; p < kInitialPanels; ++p) {
    const double whole = simpson(h, fs[2 * p], fs[2 * p + 1], fs[2 * p + 2]);
    const PanelResult r =
        adaptive_panel(f, budget, xs[2 * p], fs[2 * p], xs[2 * p + 1], fs[2 * p + 1], xs[2 * p + 2],
                       fs[2 * p + 2], whole, tol_total / kInitialPanels, 0, 2);
    out.value += r.value;
    out.error_estimate += r.error;
  }
  out.nodes_used = budget.used;
  return out;
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

double composite_gauss(const std::function<double(double)>& f, QuadBudget& budget, double a,
                       double b, int panels, const std::vector<double>& nodes,
                       const std::vector<double>& weights) {
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (size_t i = 0; i < nodes.size(); ++i) {
      total += 0.5 * h * weights[i] * budget.eval(f, mid + 0.5 * h * nodes[i]);
    }
  }
  return total;
}

QuadratureResult integrate_gauss_legendre(const std::function<double(double)>& f, double a,
                                          double b, const QuadratureSpec& spec) {
  QuadBudget budget{0, spec.max_nodes};
  std::vector<double> nodes, weights;
  gauss_legendre_rule(16, nodes, weights);

  int panels = 2;
  double prev = composite_gauss(f, budget, a, b, panels, nodes, weights);
  while (true) {
    panels *= 2;
    const double cur = composite_gauss(f, budget, a, b, panels, nodes, weights);
    const double err = std::abs(cur - prev);
    if (err <= spec.rel_tol * std::max(1.0, std::abs(cur))) {
      return {cur, err, budget.used};
    }
    if (budget.used + 32 * panels > spec.max_nodes) {
      raise(ErrorKind::QuadratureBudgetExceeded,
            "node budget " + std::to_string(spec.max_nodes) + " too small for rel_tol");
    }
    prev = cur;
  }
}

}  // namespace

double relative_entropy_spectral(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_equal_dims(rho.dim(), sigma.dim(), "relative_entropy_spectral");
  if (!support_contained(rho, sigma)) return kInfinity;

  double tr_rho_log_rho = 0.0;
  const rvec& vals = rho.eig().eigenvalues;
  const double threshold = kSupportCutoff * vals.maxCoeff();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals[i] > threshold) tr_rho_log_rho += vals[i] * std::log(vals[i]);
  }
  const cmat log_sigma = matrix_function(sigma.matrix(), [](double x) { return std::log(x); },
                                         /*support_only=*/true);
  const double tr_rho_log_sigma = (rho.matrix() * log_sigma).trace().real();
  return tr_rho_log_rho - tr_rho_log_sigma;
}

double frenkel_integrand(const DensityMatrix& rho, const DensityMatrix& sigma, double t) {
  require_equal_dims(rho.dim(), sigma.dim(), "frenkel_integrand");
  return negative_mass((1.0 - t) * rho.matrix() + t * sigma.matrix());
}

double d_max(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_equal_dims(rho.dim(), sigma.dim(), "d_max");
  if (!support_contained(rho, sigma)) return kInfinity;
  const cmat inv_sqrt = sigma.power_on_support(complexd(-0.5, 0.0));
  const cmat m = inv_sqrt * rho.matrix() * inv_sqrt;
  const double lambda = hermitian_eig(m).eigenvalues.maxCoeff();
  const double value = std::log(lambda);

  const cmat slack = (lambda + 1e-8) * sigma.matrix() - rho.matrix();
  if (hermitian_eig(slack).eigenvalues.minCoeff() < -1e-9 * std::max(1.0, lambda)) {
    raise(ErrorKind::ValidationError, "d_max certificate rho <= lambda sigma failed");
  }
  return value;
}

QuadratureResult relative_entropy_integral(const DensityMatrix& rho, const DensityMatrix& sigma,
                                           const QuadratureSpec& spec) {
  require_equal_dims(rho.dim(), sigma.dim(), "relative_entropy_integral");
  validate_spec(spec);

  const double d_up = d_max(rho, sigma);
  if (!std::isfinite(d_up)) {
    return {kInfinity, 0.0, 0};
  }
  const double d_down = d_max(sigma, rho);
  // mu may always be pushed to 0; the integrand vanishes linearly there, so a
  // floor at 1e-9 leaves truncated mass below 1e-9.
  const double x_lo = std::isfinite(d_down) ? -d_down : std::log(1e-9);
  const double x_hi = d_up;
  const double boundary = d_up + 1.0 - std::exp(d_up);

  if (x_hi <= x_lo) {
    return {boundary, 0.0, 0};
  }

  const cmat rho_m = rho.matrix();
  const cmat sigma_m = sigma.matrix();
  const auto integrand = [&](double x) { return negative_mass(rho_m - std::exp(x) * sigma_m); };

  QuadratureResult r = spec.scheme == QuadratureSpec::Scheme::AdaptiveSimpson
                           ? integrate_adaptive_simpson(integrand, x_lo, x_hi, spec)
                           : integrate_gauss_legendre(integrand, x_lo, x_hi, spec);
  r.value += boundary;
  return r;
}

DivergenceReport divergence_report(const DensityMatrix& rho, const DensityMatrix& sigma,
                                   const QuadratureSpec& spec) {
  DivergenceReport report;
  report.d_spectral = relative_entropy_spectral(rho, sigma);
  const QuadratureResult integral = relative_entropy_integral(rho, sigma, spec);
  report.d_integral = integral.value;
  report.quad_error_estimate = integral.error_estimate;
  report.d_max_rho_sigma = d_max(rho, sigma);
  report.d_max_sigma_rho = d_max(sigma, rho);
  report.d_omega = report.d_max_rho_sigma + report.d_max_sigma_rho;
  return report;
}

}  // namespace qsuff
