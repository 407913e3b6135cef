#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weylab/edges.hpp"
#include "weylab/spectra.hpp"
#include "weylab/stability.hpp"

namespace weylab {

struct PowerLawFit {
  double exponent = 0.0;
  double log_c = 0.0;
  double r_squared = 0.0;
  int points_used = 0;
  double constant() const;
};

// Least squares on (log delta, log d) for d(delta) ~ C delta^nu.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points);

// Discretization floor rule: keep points whose signal is at least 10x the
// associated grid-doubling error.
std::vector<std::pair<double, double>> apply_floor_rule(
    const std::vector<std::pair<double, double>>& points,
    const std::vector<double>& doubling_errors);

enum class Mode { Hausdorff, Edges, Quasires, Gapwatch };

struct ExperimentConfig {
  Mode mode = Mode::Hausdorff;
  Symbol symbol;
  PerturbField field;
  Grid1D grid;
  std::vector<double> deltas;
  std::vector<double> kappas;
  std::vector<double> z_offsets;
  uint64_t seed = 0;
  int parallel = 1;
  std::string out_dir = "out";
  std::optional<double> gap_tol;

  static ExperimentConfig from_json_file(const std::string& path);
  static ExperimentConfig from_json_text(const std::string& text);
  void validate() const;
};

struct HausdorffRow {
  double delta = 0.0;
  double hausdorff_full = 0.0;
  double hausdorff_filtered = 0.0;
  double grid_doubling_err = 0.0;
};

struct GapwatchRow {
  double delta = 0.0;
  int gap_count = 0;
  double widest_gap = 0.0;
  std::string gap_edges;  // "lo:hi|lo:hi|..."
};

struct QuasiresRow {
  double delta = 0.0;
  double kappa = 0.0;
  double z = 0.0;
  double dist0 = 0.0;
  double defect = 0.0;
  double reverse_defect = 0.0;
  double lemma1 = 0.0;
  double commutator = 0.0;
  double snap_error = 0.0;
  double doubling_err = 0.0;
};

struct FitSummary {
  std::string quantity;
  double group_key = 0.0;  // e.g. kappa for quasires fits
  PowerLawFit fit;
};

struct SweepOutput {
  std::vector<std::string> files;
  std::vector<FitSummary> fits;
};

SweepOutput run_hausdorff_sweep(const ExperimentConfig& cfg);
SweepOutput run_gapwatch(const ExperimentConfig& cfg);
SweepOutput run_quasires_sweep(const ExperimentConfig& cfg);
SweepOutput run_edge_sweep(const ExperimentConfig& cfg);
SweepOutput run_sweep(const ExperimentConfig& cfg);

// Log-log scatter of two CSV columns with an optional fitted line; byte
// deterministic for fixed inputs.
void emit_plot(const std::string& csv_path, const std::string& x_col,
               const std::string& y_col, const std::optional<PowerLawFit>& fit,
               const std::string& svg_path);

// Minimal CSV access for the fit/plot tools.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
  const std::vector<double>& column(const std::string& name) const;
};
CsvTable read_csv(const std::string& path);

std::string format_double(double v);  // %.17g, the canonical CSV number format

// Parsing helpers shared with the CLI.
Symbol symbol_from_json_text(const std::string& text);
PerturbField field_from_json_text(const std::string& text);

}  // namespace weylab
