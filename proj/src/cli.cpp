#include "qsuff/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "qsuff/divergences.hpp"
#include "qsuff/hypothesis.hpp"
#include "qsuff/io.hpp"
#include "qsuff/recovery.hpp"

namespace qsuff {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitFiniteRequired = 3;
constexpr int kExitQuadBudget = 4;

struct LoadedFile {
  std::string path;
  std::string bytes;
};

LoadedFile load(const std::string& path) { return {path, read_file(path)}; }

void write_provenance_entry(JsonWriter& w, const char* name, const LoadedFile& file) {
  w.key(name).begin_object();
  w.key("path").value(file.path);
  w.key("fnv1a64").value(fnv1a64_hex(file.bytes));
  w.end_object();
}

std::vector<double> make_grid(const DensityMatrix& rho, const DensityMatrix& sigma,
                              const RunConfig& cfg) {
  double lo, hi;
  if (cfg.s_min && cfg.s_max) {
    lo = *cfg.s_min;
    hi = *cfg.s_max;
  } else {
    const double d_up = d_max(rho, sigma);
    const double d_down = d_max(sigma, rho);
    lo = cfg.s_min.value_or(std::isfinite(d_down) ? std::max(1e-6, std::exp(-d_down)) : 1e-6);
    hi = cfg.s_max.value_or(std::isfinite(d_up) ? std::max(std::exp(d_up), 2.0 * lo) : 1e6);
  }
  if (!(hi > lo) || (cfg.geometric_spacing && lo <= 0.0)) {
    raise(ErrorKind::ValidationError, "invalid s-grid bounds");
  }
  std::vector<double> grid;
  grid.reserve(static_cast<size_t>(cfg.s_count) + 2);
  grid.push_back(0.0);
  grid.push_back(1.0);
  for (int i = 0; i < cfg.s_count; ++i) {
    const double frac = static_cast<double>(i) / (cfg.s_count - 1);
    grid.push_back(cfg.geometric_spacing ? lo * std::exp(frac * std::log(hi / lo))
                                         : lo + frac * (hi - lo));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

void write_config_echo(JsonWriter& w, const RunConfig& cfg) {
  w.key("config").begin_object();
  if (cfg.s_min) w.key("s_min").value(*cfg.s_min);
  if (cfg.s_max) w.key("s_max").value(*cfg.s_max);
  w.key("s_count").value(cfg.s_count);
  w.key("s_spacing").value(cfg.geometric_spacing ? "geometric" : "linear");
  w.key("quad_rel_tol").value(cfg.quad_rel_tol);
  w.key("quad_max_nodes").value(cfg.quad_max_nodes);
  w.key("t_max").value(cfg.truncation_T);
  w.key("t_nodes").value(cfg.beta0_nodes);
  w.key("threshold").value(cfg.verdict_threshold);
  w.end_object();
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) {
    raise(ErrorKind::ValidationError, "cannot write to '" + cfg.out_path + "'");
  }
  file << text;
}

int cmd_entropy(const std::string& rho_path, const std::string& sigma_path,
                const std::string& method, const RunConfig& cfg, std::ostream& out) {
  const LoadedFile rho_file = load(rho_path);
  const LoadedFile sigma_file = load(sigma_path);
  const DensityMatrix rho = parse_state(rho_file.bytes);
  const DensityMatrix sigma = parse_state(sigma_file.bytes);

  const bool want_spectral = method == "spectral" || method == "both";
  const bool want_integral = method == "integral" || method == "both";

  QuadratureSpec spec;
  spec.rel_tol = cfg.quad_rel_tol;
  spec.max_nodes = cfg.quad_max_nodes;

  double d_spectral = 0.0;
  QuadratureResult integral;
  if (want_spectral) d_spectral = relative_entropy_spectral(rho, sigma);
  if (want_integral) integral = relative_entropy_integral(rho, sigma, spec);
  const double up = d_max(rho, sigma);
  const double down = d_max(sigma, rho);

  JsonWriter w;
  w.begin_object();
  w.key("tool").value("qsuff entropy");
  w.key("provenance").begin_object();
  write_provenance_entry(w, "rho", rho_file);
  write_provenance_entry(w, "sigma", sigma_file);
  w.key("method").value(method);
  write_config_echo(w, cfg);
  w.end_object();
  w.key("report").begin_object();
  if (want_spectral) w.key("d_spectral").value(d_spectral);
  if (want_integral) {
    w.key("d_integral").value(integral.value);
    w.key("quad_error_estimate").value(integral.error_estimate);
  }
  w.key("d_max_rho_sigma").value(up);
  w.key("d_max_sigma_rho").value(down);
  w.key("d_omega").value(up + down);
  w.end_object();
  w.end_object();
  emit(cfg, w.str() + "\n", out);

  const bool infinite = (want_spectral && !std::isfinite(d_spectral)) ||
                        (want_integral && !std::isfinite(integral.value));
  if (cfg.finite_required && infinite) return kExitFiniteRequired;
  return kExitOk;
}

int cmd_sweep(const std::string& rho_path, const std::string& sigma_path,
              const std::string& channel_path, const RunConfig& cfg, std::ostream& out) {
  const DensityMatrix rho = read_state(rho_path);
  const DensityMatrix sigma = read_state(sigma_path);
  const std::vector<double> grid = make_grid(rho, sigma, cfg);
  const std::vector<CurvePoint> curve = sweep_curves(rho, sigma, grid);

  std::string csv;
  if (channel_path.empty()) {
    csv = "s,l1,tr_pos,tr_neg,pe\n";
    for (const CurvePoint& p : curve) {
      csv += format_double(p.s) + "," + format_double(p.l1) + "," + format_double(p.tr_pos) + "," +
             format_double(p.tr_neg) + "," + format_double(p.pe) + "\n";
    }
  } else {
    const QuantumChannel phi = read_channel(channel_path);
    const DensityMatrix img_rho = apply_channel(phi, rho);
    const DensityMatrix img_sigma = apply_channel(phi, sigma);
    const std::vector<CurvePoint> img = sweep_curves(img_rho, img_sigma, grid);
    csv = "s,l1,tr_pos,tr_neg,pe,l1_img,tr_neg_img,gap_l1\n";
    for (size_t i = 0; i < curve.size(); ++i) {
      const CurvePoint& p = curve[i];
      const CurvePoint& q = img[i];
      csv += format_double(p.s) + "," + format_double(p.l1) + "," + format_double(p.tr_pos) + "," +
             format_double(p.tr_neg) + "," + format_double(p.pe) + "," + format_double(q.l1) + "," +
             format_double(q.tr_neg) + "," + format_double(p.l1 - q.l1) + "\n";
    }
  }
  emit(cfg, csv, out);
  return kExitOk;
}

int cmd_verify(const std::string& rho_path, const std::string& sigma_path,
               const std::string& channel_path, const RunConfig& cfg, std::ostream& out) {
  const LoadedFile rho_file = load(rho_path);
  const LoadedFile sigma_file = load(sigma_path);
  const LoadedFile channel_file = load(channel_path);
  const DensityMatrix rho = parse_state(rho_file.bytes);
  const DensityMatrix sigma = parse_state(sigma_file.bytes);
  const QuantumChannel phi = parse_channel(channel_file.bytes);

  const std::vector<double> grid = make_grid(rho, sigma, cfg);
  const std::vector<double> t_samples = {-1.0, 0.3, 2.0};
  const SufficiencyReport suff =
      sufficiency_report(rho, sigma, phi, grid, t_samples, cfg.verdict_threshold);
  const RecoveryReport rec =
      recovery_report(rho, sigma, phi, grid, cfg.truncation_T, cfg.beta0_nodes);

  JsonWriter w;
  w.begin_object();
  w.key("tool").value("qsuff verify");
  w.key("provenance").begin_object();
  write_provenance_entry(w, "rho", rho_file);
  write_provenance_entry(w, "sigma", sigma_file);
  write_provenance_entry(w, "channel", channel_file);
  write_config_echo(w, cfg);
  w.end_object();

  w.key("sufficiency").begin_object();
  w.key("max_l1_gap").value(suff.max_l1_gap);
  w.key("max_pe_gap").value(suff.max_pe_gap);
  w.key("max_trpos_gap").value(suff.max_trpos_gap);
  w.key("max_trneg_gap").value(suff.max_trneg_gap);
  w.key("entropy_gap").value(suff.entropy_gap);
  w.key("petz_recovery_error").value(suff.petz_recovery_error);
  w.key("rotated_recovery_errors").begin_array();
  for (const auto& [t, e] : suff.rotated_recovery_errors) {
    w.begin_object();
    w.key("t").value(t);
    w.key("error").value(e);
    w.end_object();
  }
  w.end_array();
  w.key("cocycle_residuals").begin_array();
  for (const auto& [t, r] : suff.cocycle_residuals) {
    w.begin_object();
    w.key("t").value(t);
    w.key("residual").value(r);
    w.end_object();
  }
  w.end_array();
  w.key("verdict").value(verdict_name(suff.verdict));
  w.key("threshold").value(suff.threshold);
  w.end_object();

  w.key("recovery").begin_object();
  w.key("entropy_gap").value(rec.entropy_gap);
  w.key("minus_2log_f").value(rec.minus_2log_f);
  w.key("quarter_l1_sq").value(rec.quarter_l1_sq);
  w.key("recovered_trace_distance").value(rec.recovered_trace_distance);
  w.key("epsilon").value(rec.epsilon);
  w.key("d_omega").value(rec.d_omega);
  w.key("bound_3_2").value(rec.bound_3_2);
  w.key("chain_slacks").begin_array();
  w.value(rec.chain_slacks[0]);
  w.value(rec.chain_slacks[1]);
  w.end_array();
  w.key("forward_max_violation").value(rec.forward_max_violation);
  w.key("kernel_state").value("sigma");
  w.end_object();
  w.end_object();
  emit(cfg, w.str() + "\n", out);
  return kExitOk;
}

int cmd_petz(const std::string& sigma_path, const std::string& channel_path,
             const std::string& variant, const RunConfig& cfg, std::ostream& out) {
  const DensityMatrix sigma = read_state(sigma_path);
  const QuantumChannel phi = read_channel(channel_path);

  std::string doc;
  if (variant == "petz") {
    const PetzMap map = petz_map(phi, sigma);
    doc = kraus_channel_to_json(map.base.kraus(), map.base.dim_in(), map.base.dim_out());
  } else if (variant.rfind("rotated:", 0) == 0) {
    double t = 0.0;
    try {
      t = std::stod(variant.substr(8));
    } catch (const std::exception&) {
      raise(ErrorKind::ValidationError, "rotated variant needs a numeric t, e.g. rotated:0.5");
    }
    const RotatedPetzMap map = rotated_petz(phi, sigma, t);
    doc = kraus_channel_to_json(map.base.kraus(), map.base.dim_in(), map.base.dim_out());
  } else if (variant == "universal") {
    const AveragedRecoveryChannel map =
        universal_recovery(phi, sigma, cfg.truncation_T, cfg.beta0_nodes);
    doc = choi_channel_to_json(map.choi);
  } else {
    raise(ErrorKind::ValidationError, "unknown variant '" + variant + "'");
  }
  emit(cfg, doc, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hypothesis-testing characterization of sufficiency and recoverability "
               "for quantum channels",
               "qsuff"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string rho_path, sigma_path, channel_path;
  std::string method = "both";
  std::string variant = "petz";
  std::string spacing = "geometric";
  double s_min_flag = -1.0, s_max_flag = -1.0;

  const auto add_common = [&](CLI::App* sub, bool with_grid) {
    sub->add_option("--out", cfg.out_path, "Write output to a file instead of stdout");
    if (with_grid) {
      sub->add_option("--s-min", s_min_flag, "Lower end of the s-grid")
          ->check(CLI::NonNegativeNumber);
      sub->add_option("--s-max", s_max_flag, "Upper end of the s-grid")
          ->check(CLI::NonNegativeNumber);
      sub->add_option("--s-count", cfg.s_count, "Number of grid points")->check(CLI::Range(2, 1 << 20));
      sub->add_option("--s-spacing", spacing, "geometric or linear")
          ->check(CLI::IsMember({"geometric", "linear"}));
    }
  };

  CLI::App* entropy = app.add_subcommand("entropy", "Relative entropy by both routes");
  entropy->add_option("--rho", rho_path)->required();
  entropy->add_option("--sigma", sigma_path)->required();
  entropy->add_option("--method", method)->check(CLI::IsMember({"spectral", "integral", "both"}));
  entropy->add_option("--quad-tol", cfg.quad_rel_tol, "Quadrature relative tolerance");
  entropy->add_option("--quad-max-nodes", cfg.quad_max_nodes, "Quadrature node budget");
  entropy->add_flag("--finite-required", cfg.finite_required,
                    "Exit with code 3 when a divergence is infinite");
  add_common(entropy, false);

  CLI::App* sweep = app.add_subcommand("sweep", "s-sweep of the L1 / error curves as CSV");
  sweep->add_option("--rho", rho_path)->required();
  sweep->add_option("--sigma", sigma_path)->required();
  sweep->add_option("--channel", channel_path);
  add_common(sweep, true);

  CLI::App* verify = app.add_subcommand("verify", "Sufficiency and recoverability reports");
  verify->add_option("--rho", rho_path)->required();
  verify->add_option("--sigma", sigma_path)->required();
  verify->add_option("--channel", channel_path)->required();
  verify->add_option("--quad-tol", cfg.quad_rel_tol);
  verify->add_option("--t-max", cfg.truncation_T, "beta0 truncation");
  verify->add_option("--t-nodes", cfg.beta0_nodes, "beta0 Simpson nodes");
  verify->add_option("--threshold", cfg.verdict_threshold, "Sufficiency verdict threshold");
  add_common(verify, true);

  CLI::App* petz = app.add_subcommand("petz", "Emit a recovery channel document");
  petz->add_option("--sigma", sigma_path)->required();
  petz->add_option("--channel", channel_path)->required();
  petz->add_option("--variant", variant, "petz, rotated:<t>, or universal");
  petz->add_option("--t-max", cfg.truncation_T);
  petz->add_option("--t-nodes", cfg.beta0_nodes);
  add_common(petz, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  cfg.geometric_spacing = spacing == "geometric";
  if (s_min_flag >= 0.0) cfg.s_min = s_min_flag;
  if (s_max_flag >= 0.0) cfg.s_max = s_max_flag;

  try {
    if (entropy->parsed()) return cmd_entropy(rho_path, sigma_path, method, cfg, out);
    if (sweep->parsed()) return cmd_sweep(rho_path, sigma_path, channel_path, cfg, out);
    if (verify->parsed()) return cmd_verify(rho_path, sigma_path, channel_path, cfg, out);
    if (petz->parsed()) return cmd_petz(sigma_path, channel_path, variant, cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::QuadratureBudgetExceeded ? kExitQuadBudget : kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace qsuff
