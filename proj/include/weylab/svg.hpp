#pragma once

#include <optional>
#include <string>
#include <vector>

namespace weylab {

struct SvgFitLine {
  double slope = 0.0;      // in log10 coordinates
  double intercept = 0.0;  // log10(y) at log10(x) = 0
  std::string label;
};

// Log-log scatter; writes deterministic bytes for fixed inputs.
void write_loglog_scatter_svg(const std::string& path,
                              const std::vector<double>& xs,
                              const std::vector<double>& ys,
                              const std::string& x_label,
                              const std::string& y_label,
                              const std::optional<SvgFitLine>& fit);

}  // namespace weylab
