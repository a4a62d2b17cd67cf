#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qsuff {

struct RunConfig {
  std::optional<double> s_min;
  std::optional<double> s_max;
  int s_count = 513;
  bool geometric_spacing = true;
  double quad_rel_tol = 1e-8;
  int quad_max_nodes = 200000;
  double truncation_T = 4.0;
  int beta0_nodes = 801;
  double verdict_threshold = 1e-6;
  std::string out_path;
  bool finite_required = false;
};

/// Entry point behind the qsuff binary; returns the process exit code
/// (0 success, 2 validation/parse, 3 finite-required violation,
/// 4 quadrature budget exceeded).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsuff
