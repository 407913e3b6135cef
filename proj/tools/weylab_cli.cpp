#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "weylab/errors.hpp"
#include "weylab/lab.hpp"

namespace {

using namespace weylab;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string grid_spec;
  std::optional<uint64_t> seed;
  std::optional<int> parallel;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required = true) {
  auto* c = cmd->add_option("--config", opts.config_path, "experiment config (JSON)");
  if (config_required) c->required();
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--seed", opts.seed, "probe-vector seed");
  cmd->add_option("--grid", opts.grid_spec, "grid override as L,N");
  cmd->add_option("--parallel", opts.parallel, "worker count");
}

ExperimentConfig load_config(const CommonOpts& opts) {
  ExperimentConfig cfg = ExperimentConfig::from_json_file(opts.config_path);
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.parallel) cfg.parallel = *opts.parallel;
  if (!opts.grid_spec.empty()) {
    double l = 0.0;
    int n = 0;
    if (std::sscanf(opts.grid_spec.c_str(), "%lf,%d", &l, &n) != 2)
      fail(ErrorCode::ConfigError, "--grid expects L,N");
    cfg.grid = Grid1D::make(l, n);
    cfg.validate();
  }
  return cfg;
}

int run(int argc, char** argv) {
  linalg::use_single_threaded_blas();
  CLI::App app{"weylab: spectral stability experiments for 1-D Weyl operators"};
  app.require_subcommand(1);

  CommonOpts opts;
  double delta = 0.0;
  std::string mode_flag, in_path, x_col = "delta", y_col, out_path;
  bool with_fit = false;
  std::optional<double> gap_tol;

  auto* quantize_cmd =
      app.add_subcommand("quantize", "build the operator matrix and export it");
  add_common(quantize_cmd, opts);
  quantize_cmd->add_option("--delta", delta, "perturbation strength");

  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "eigenvalues, edges and gap report");
  add_common(spectrum_cmd, opts);
  spectrum_cmd->add_option("--delta", delta, "perturbation strength");
  spectrum_cmd->add_option("--gap-tol", gap_tol, "gap detection tolerance");

  auto* sweep_cmd = app.add_subcommand("sweep", "run a delta/kappa sweep");
  add_common(sweep_cmd, opts);
  sweep_cmd->add_option("--mode", mode_flag,
                        "hausdorff|edges|quasires|gapwatch (overrides config)");

  auto* fit_cmd = app.add_subcommand("fit", "refit a power law from a sweep CSV");
  fit_cmd->add_option("--in", in_path, "input CSV")->required();
  fit_cmd->add_option("--x", x_col, "x column (default delta)");
  fit_cmd->add_option("--y", y_col, "y column")->required();

  auto* plot_cmd = app.add_subcommand("plot", "log-log scatter SVG from a CSV");
  plot_cmd->add_option("--in", in_path, "input CSV")->required();
  plot_cmd->add_option("--x", x_col, "x column (default delta)");
  plot_cmd->add_option("--y", y_col, "y column")->required();
  plot_cmd->add_option("--out", out_path, "output SVG path")->required();
  plot_cmd->add_flag("--with-fit", with_fit, "overlay a fitted power law");

  CLI11_PARSE(app, argc, argv);

  if (quantize_cmd->parsed()) {
    ExperimentConfig cfg = load_config(opts);
    std::filesystem::create_directories(cfg.out_dir);
    Symbol sym = delta != 0.0 ? perturb(cfg.symbol, cfg.field, delta) : cfg.symbol;
    WeylOperator k =
        build_matrix(sym, cfg.grid, {cfg.symbol.id(), cfg.field.id(), delta});
    save_matrix_binary(k, cfg.out_dir + "/operator.bin");
    if (cfg.grid.points <= 128) save_matrix_csv(k, cfg.out_dir + "/operator.csv");
    std::cout << "wrote " << cfg.out_dir << "/operator.bin (N=" << cfg.grid.points
              << ", asymmetry residual " << k.asymmetry_residual() << ")\n";
    return 0;
  }

  if (spectrum_cmd->parsed()) {
    ExperimentConfig cfg = load_config(opts);
    std::filesystem::create_directories(cfg.out_dir);
    Symbol sym = delta != 0.0 ? perturb(cfg.symbol, cfg.field, delta) : cfg.symbol;
    WeylOperator k =
        build_matrix(sym, cfg.grid, {cfg.symbol.id(), cfg.field.id(), delta});
    auto eigs = linalg::sym_eigenvalues(k.matrix());
    double tol = gap_tol ? *gap_tol
                         : (cfg.gap_tol ? *cfg.gap_tol : default_gap_tol(eigs));
    SpectrumReport rep = spectrum(k, tol);
    save_spectrum_csv(rep, cfg.out_dir + "/eigenvalues.csv");
    save_spectrum_summary_json(rep, cfg.out_dir + "/spectrum_summary.json");
    std::cout << "edges [" << rep.edge_minus << ", " << rep.edge_plus << "], "
              << rep.gaps.size() << " gap(s), gap_tol " << rep.gap_tol << "\n";
    return 0;
  }

  if (sweep_cmd->parsed()) {
    ExperimentConfig cfg = load_config(opts);
    if (!mode_flag.empty()) {
      ExperimentConfig tmp = cfg;
      if (mode_flag == "hausdorff") tmp.mode = Mode::Hausdorff;
      else if (mode_flag == "edges") tmp.mode = Mode::Edges;
      else if (mode_flag == "quasires") tmp.mode = Mode::Quasires;
      else if (mode_flag == "gapwatch") tmp.mode = Mode::Gapwatch;
      else fail(ErrorCode::ConfigError, "unknown --mode " + mode_flag);
      tmp.validate();
      cfg = tmp;
    }
    SweepOutput res = run_sweep(cfg);
    for (const auto& f : res.files) std::cout << "wrote " << f << "\n";
    for (const auto& f : res.fits)
      std::cout << "fit " << f.quantity << " (group " << f.group_key
                << "): exponent " << f.fit.exponent << ", C " << f.fit.constant()
                << ", r2 " << f.fit.r_squared << "\n";
    return 0;
  }

  if (fit_cmd->parsed()) {
    CsvTable t = read_csv(in_path);
    const auto& xs = t.column(x_col);
    const auto& ys = t.column(y_col);
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < xs.size() && i < ys.size(); ++i)
      if (xs[i] > 0.0 && ys[i] > 0.0) pts.push_back({xs[i], ys[i]});
    PowerLawFit fit = fit_power_law(pts);
    std::cout << "{\"exponent\": " << format_double(fit.exponent)
              << ", \"constant\": " << format_double(fit.constant())
              << ", \"r_squared\": " << format_double(fit.r_squared)
              << ", \"points_used\": " << fit.points_used << "}\n";
    return 0;
  }

  if (plot_cmd->parsed()) {
    std::optional<PowerLawFit> fit;
    if (with_fit) {
      CsvTable t = read_csv(in_path);
      const auto& xs = t.column(x_col);
      const auto& ys = t.column(y_col);
      std::vector<std::pair<double, double>> pts;
      for (size_t i = 0; i < xs.size() && i < ys.size(); ++i)
        if (xs[i] > 0.0 && ys[i] > 0.0) pts.push_back({xs[i], ys[i]});
      fit = fit_power_law(pts);
    }
    emit_plot(in_path, x_col, y_col, fit, out_path);
    std::cout << "wrote " << out_path << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const weylab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_config_error() ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
