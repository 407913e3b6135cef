#include "weylab/lab.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "weylab/errors.hpp"
#include "weylab/svg.hpp"

namespace weylab {

namespace {

using nlohmann::json;

template <class F>
void parallel_for(int count, int workers, F body) {
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  int spawn = std::min(workers, count);
  for (int w = 0; w < spawn; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        body(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

Fn1 coeff_from_json(const json& j) {
  std::string kind = j.value("kind", "");
  if (kind == "const") return Fn1::constant(j.at("value").get<double>());
  if (kind == "cos")
    return Fn1::cosine(j.value("amp", 1.0), j.value("freq", 1.0), j.value("phase", 0.0));
  if (kind == "sin")
    return Fn1::sine(j.value("amp", 1.0), j.value("freq", 1.0), j.value("phase", 0.0));
  if (kind == "gauss")
    return Fn1::gaussian(j.value("amp", 1.0), j.value("center", 0.0),
                         j.at("width").get<double>());
  fail(ErrorCode::ConfigError, "unknown coefficient kind '" + kind + "'");
}

Symbol symbol_from_json(const json& j) {
  std::string family = j.value("family", "");
  if (family == "trig") {
    bool sin_parity = j.value("parity", "cos") == std::string("sin");
    return Symbol::trig(j.at("offset").get<double>(), coeff_from_json(j.at("coeff")),
                        sin_parity);
  }
  if (family == "gauss_xi")
    return Symbol::gauss_xi(j.at("sigma").get<double>(), coeff_from_json(j.at("coeff")));
  if (family == "potential") return Symbol::potential(coeff_from_json(j.at("coeff")));
  if (family == "sum") {
    std::vector<Symbol> parts;
    for (const auto& t : j.at("terms")) parts.push_back(symbol_from_json(t));
    if (parts.empty()) fail(ErrorCode::ConfigError, "sum symbol needs terms");
    return Symbol::sum(std::move(parts));
  }
  fail(ErrorCode::ConfigError, "unknown symbol family '" + family + "'");
}

PerturbField field_from_json(const json& j) {
  std::string family = j.value("family", "");
  if (family == "affine")
    return affine_field(j.value("b", 0.0), j.value("slope", 1.0));
  if (family == "sine") return sine_field(j.at("amplitude").get<double>());
  if (family == "mu") return mu_field(j.at("mu").get<double>());
  if (family == "const") return constant_field(j.at("b").get<double>());
  fail(ErrorCode::ConfigError, "unknown field family '" + family + "'");
}

Mode mode_from_string(const std::string& s) {
  if (s == "hausdorff") return Mode::Hausdorff;
  if (s == "edges") return Mode::Edges;
  if (s == "quasires") return Mode::Quasires;
  if (s == "gapwatch") return Mode::Gapwatch;
  fail(ErrorCode::ConfigError, "unknown mode '" + s + "'");
}

std::vector<double> doubles_from(const json& j, const char* key) {
  std::vector<double> out;
  if (j.contains(key))
    for (const auto& v : j.at(key)) out.push_back(v.get<double>());
  return out;
}

void write_fit_csv(const std::string& path, const std::vector<FitSummary>& fits) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path);
  out << "quantity,group,exponent,constant,log_c,r_squared,points_used\n";
  for (const auto& f : fits) {
    out << f.quantity << "," << format_double(f.group_key) << ","
        << format_double(f.fit.exponent) << "," << format_double(f.fit.constant())
        << "," << format_double(f.fit.log_c) << ","
        << format_double(f.fit.r_squared) << "," << f.fit.points_used << "\n";
  }
}

std::optional<SvgFitLine> fit_line(const std::optional<PowerLawFit>& fit) {
  if (!fit) return std::nullopt;
  SvgFitLine line;
  // log10(y) = log10(C) + nu log10(x)
  line.slope = fit->exponent;
  line.intercept = fit->log_c / std::log(10.0);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "fit: exponent %.4f, r2 %.4f", fit->exponent,
                fit->r_squared);
  line.label = buf;
  return line;
}

double edge_doubling_error(const Symbol& a, const Grid1D& grid) {
  Grid1D doubled = Grid1D::make(2.0 * grid.half_width, 2 * grid.points);
  double e_base = linalg::sym_eigenvalues(build_matrix(a, grid).matrix()).back();
  double e_doubled = linalg::sym_eigenvalues(build_matrix(a, doubled).matrix()).back();
  return std::abs(e_base - e_doubled);
}

// Representative window for the per-row lemma diagnostics: the widest-open
// cutoff furthest out on the lattice.
long pick_gamma(const CutoffFamily& fam) {
  long best = 0;
  double best_score = -1.0;
  for (size_t i = 0; i < fam.gammas.size(); ++i) {
    double mx = fam.values.col(long(i)).cwiseAbs().maxCoeff();
    if (mx < 0.5) continue;
    long g = fam.gammas[i];
    double score = double(std::labs(g)) + (g > 0 ? 0.5 : 0.0);
    if (score > best_score) {
      best_score = score;
      best = g;
    }
  }
  return best;
}

}  // namespace

double PowerLawFit::constant() const { return std::exp(log_c); }

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    fail(ErrorCode::TooFewPoints, "power-law fit needs at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, n = double(points.size());
  std::vector<double> lx(points.size()), ly(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].first > 0.0) || !(points[i].second > 0.0))
      fail(ErrorCode::NonPositiveData, "power-law fit needs positive data");
    lx[i] = std::log(points[i].first);
    ly[i] = std::log(points[i].second);
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0))
    fail(ErrorCode::NonPositiveData, "degenerate abscissae in power-law fit");
  PowerLawFit fit;
  fit.exponent = (n * sxy - sx * sy) / denom;
  fit.log_c = (sy - fit.exponent * sx) / n;
  double ss_res = 0, ss_tot = 0, mean_y = sy / n;
  for (size_t i = 0; i < points.size(); ++i) {
    double pred = fit.log_c + fit.exponent * lx[i];
    ss_res += (ly[i] - pred) * (ly[i] - pred);
    ss_tot += (ly[i] - mean_y) * (ly[i] - mean_y);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.points_used = int(points.size());
  return fit;
}

std::vector<std::pair<double, double>> apply_floor_rule(
    const std::vector<std::pair<double, double>>& points,
    const std::vector<double>& doubling_errors) {
  std::vector<std::pair<double, double>> kept;
  for (size_t i = 0; i < points.size(); ++i) {
    double floor = i < doubling_errors.size() ? doubling_errors[i] : 0.0;
    if (points[i].second >= 10.0 * floor) kept.push_back(points[i]);
  }
  return kept;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Symbol symbol_from_json_text(const std::string& text) {
  try {
    return symbol_from_json(json::parse(text));
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("bad symbol JSON: ") + e.what());
  }
}

PerturbField field_from_json_text(const std::string& text) {
  try {
    return field_from_json(json::parse(text));
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("bad field JSON: ") + e.what());
  }
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigError, "cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  try {
    cfg.mode = mode_from_string(j.at("mode").get<std::string>());
    cfg.symbol = symbol_from_json(j.at("symbol"));
    cfg.field = field_from_json(j.at("field"));
    cfg.grid = Grid1D::make(j.at("grid").at("half_width").get<double>(),
                            j.at("grid").at("points").get<int>());
    const json& sweep = j.at("sweep");
    cfg.deltas = doubles_from(sweep, "delta");
    cfg.kappas = doubles_from(sweep, "kappa");
    cfg.z_offsets = doubles_from(sweep, "z_offsets");
    if (cfg.kappas.empty()) cfg.kappas = {0.5};
    if (cfg.z_offsets.empty()) cfg.z_offsets = {0.25, 0.5, 1.0};
    cfg.seed = j.value("seed", 0ULL);
    cfg.parallel = j.value("parallel", 1);
    cfg.out_dir = j.value("out", "out");
    if (j.contains("gap_tol")) cfg.gap_tol = j.at("gap_tol").get<double>();
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("config field error: ") + e.what());
  } catch (const Error& e) {
    if (e.is_config_error()) throw;
    fail(ErrorCode::ConfigError, e.what());
  }
  cfg.validate();
  return cfg;
}

void ExperimentConfig::validate() const {
  for (double d : deltas)
    if (!(d > 0.0 && d <= 1.0))
      fail(ErrorCode::ConfigError, "sweep delta values must lie in (0,1]");
  for (size_t i = 1; i < deltas.size(); ++i)
    if (deltas[i] <= deltas[i - 1])
      fail(ErrorCode::ConfigError, "sweep delta list must be strictly ascending");
  for (double k : kappas)
    if (!(k > 0.0 && k <= 1.0))
      fail(ErrorCode::ConfigError, "sweep kappa values must lie in (0,1]");
  for (size_t i = 1; i < kappas.size(); ++i)
    if (kappas[i] <= kappas[i - 1])
      fail(ErrorCode::ConfigError, "sweep kappa list must be strictly ascending");
  // Hop offsets must be commensurate with the grid.
  double h = grid.spacing();
  for (const auto& t : symbol.terms()) {
    if (t.kind != XiKind::Trig || t.param == 0.0) continue;
    double ratio = t.param / h;
    if (std::abs(ratio - std::round(ratio)) > 1e-12)
      fail(ErrorCode::ConfigError,
           "trig offset " + std::to_string(t.param) +
               " is not a multiple of the grid spacing " + std::to_string(h));
  }
  if (mode == Mode::Edges && !field.mu() && !field.curvature_free())
    fail(ErrorCode::ConfigError, "edges mode requires a field with declared mu");
}

SweepOutput run_hausdorff_sweep(const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  const Grid1D& grid = cfg.grid;
  Grid1D doubled = Grid1D::make(2.0 * grid.half_width, 2 * grid.points);

  WeylOperator k0 = build_matrix(cfg.symbol, grid, {cfg.symbol.id(), "", 0.0});
  auto eig0 = linalg::sym_eig(k0.matrix(), true);
  std::vector<double> loc0 = localized_eigenvalues(eig0, grid);
  WeylOperator k0d = build_matrix(cfg.symbol, doubled);
  auto eig0d_vals = linalg::sym_eigenvalues(k0d.matrix());

  std::vector<HausdorffRow> rows(cfg.deltas.size());
  parallel_for(int(cfg.deltas.size()), cfg.parallel, [&](int i) {
    double delta = cfg.deltas[i];
    Symbol pert = perturb(cfg.symbol, cfg.field, delta);
    WeylOperator kd = build_matrix(pert, grid, {cfg.symbol.id(), cfg.field.id(), delta});
    auto eigd = linalg::sym_eig(kd.matrix(), true);

    HausdorffRow row;
    row.delta = delta;
    row.hausdorff_full = hausdorff(eigd.values, eig0.values);
    std::vector<double> locd = localized_eigenvalues(eigd, grid);
    row.hausdorff_filtered = (loc0.empty() || locd.empty())
                                 ? std::nan("")
                                 : hausdorff(locd, loc0);
    WeylOperator kdd = build_matrix(pert, doubled);
    double d_doubled = hausdorff(linalg::sym_eigenvalues(kdd.matrix()), eig0d_vals);
    row.grid_doubling_err = std::abs(row.hausdorff_full - d_doubled);
    rows[i] = row;
  });

  std::string csv_path = cfg.out_dir + "/hausdorff.csv";
  {
    std::ofstream out(csv_path);
    if (!out) fail(ErrorCode::IoError, "cannot open " + csv_path);
    out << "delta,hausdorff_full,hausdorff_filtered,grid_doubling_err\n";
    for (const auto& r : rows)
      out << format_double(r.delta) << "," << format_double(r.hausdorff_full) << ","
          << format_double(r.hausdorff_filtered) << ","
          << format_double(r.grid_doubling_err) << "\n";
  }

  SweepOutput out;
  out.files.push_back(csv_path);
  std::vector<std::pair<double, double>> pts;
  std::vector<double> floors;
  for (const auto& r : rows) {
    pts.push_back({r.delta, r.hausdorff_full});
    floors.push_back(r.grid_doubling_err);
  }
  std::optional<PowerLawFit> fit;
  try {
    fit = fit_power_law(apply_floor_rule(pts, floors));
    out.fits.push_back({"hausdorff_full", 0.0, *fit});
  } catch (const Error&) {
    // Degenerate sweeps still emit rows; they just carry no fit.
  }
  std::string fit_path = cfg.out_dir + "/hausdorff_fit.csv";
  write_fit_csv(fit_path, out.fits);
  out.files.push_back(fit_path);
  try {
    emit_plot(csv_path, "delta", "hausdorff_full", fit, cfg.out_dir + "/hausdorff.svg");
    out.files.push_back(cfg.out_dir + "/hausdorff.svg");
  } catch (const Error&) {
  }
  return out;
}

SweepOutput run_gapwatch(const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  WeylOperator k0 = build_matrix(cfg.symbol, cfg.grid);
  auto eig0 = linalg::sym_eigenvalues(k0.matrix());
  double tol = cfg.gap_tol ? *cfg.gap_tol : default_gap_tol(eig0);

  std::vector<GapwatchRow> rows(cfg.deltas.size());
  parallel_for(int(cfg.deltas.size()), cfg.parallel, [&](int i) {
    double delta = cfg.deltas[i];
    WeylOperator kd = build_matrix(perturb(cfg.symbol, cfg.field, delta), cfg.grid);
    SpectrumReport rep = spectrum(kd, tol);
    GapwatchRow row;
    row.delta = delta;
    row.gap_count = int(rep.gaps.size());
    for (const auto& g : rep.gaps) {
      row.widest_gap = std::max(row.widest_gap, g.width());
      if (!row.gap_edges.empty()) row.gap_edges += "|";
      row.gap_edges += format_double(g.lo) + std::string(":") + format_double(g.hi);
    }
    rows[i] = row;
  });

  std::string csv_path = cfg.out_dir + "/gapwatch.csv";
  {
    std::ofstream out(csv_path);
    if (!out) fail(ErrorCode::IoError, "cannot open " + csv_path);
    out << "delta,gap_count,widest_gap,gap_edges\n";
    for (const auto& r : rows)
      out << format_double(r.delta) << "," << r.gap_count << ","
          << format_double(r.widest_gap) << ",\"" << r.gap_edges << "\"\n";
  }
  SweepOutput out;
  out.files.push_back(csv_path);
  try {
    emit_plot(csv_path, "delta", "widest_gap", std::nullopt,
              cfg.out_dir + "/gapwatch.svg");
    out.files.push_back(cfg.out_dir + "/gapwatch.svg");
  } catch (const Error&) {
    // All-gapless sweeps have no positive data to plot.
  }
  return out;
}

SweepOutput run_quasires_sweep(const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  const Grid1D& grid = cfg.grid;
  PartitionBase base = make_partition(1.0);

  WeylOperator k0 = build_matrix(cfg.symbol, grid, {cfg.symbol.id(), "", 0.0});
  auto eig0 = linalg::sym_eigenvalues(k0.matrix());
  double e_plus = eig0.back();
  double doubling = edge_doubling_error(cfg.symbol, grid);

  // z placement: fixed distances above the top edge plus midpoints of wide gaps.
  std::vector<double> zs;
  for (double off : cfg.z_offsets) zs.push_back(e_plus + off);
  double tol = cfg.gap_tol ? *cfg.gap_tol : default_gap_tol(eig0);
  for (size_t i = 0; i + 1 < eig0.size(); ++i)
    if (eig0[i + 1] - eig0[i] > std::max(tol, 0.5))
      zs.push_back(0.5 * (eig0[i] + eig0[i + 1]));

  auto dist_to = [](const std::vector<double>& vals, double z) {
    double d = std::numeric_limits<double>::infinity();
    for (double v : vals) d = std::min(d, std::abs(v - z));
    return d;
  };

  // Phase 1: per-z resolvents of K_0; per-delta operators and resolvents.
  std::vector<linalg::Matrix> r0(zs.size());
  parallel_for(int(zs.size()), cfg.parallel, [&](int i) {
    linalg::Matrix shifted = k0.matrix();
    shifted.diagonal().array() -= zs[i];
    r0[i] = linalg::inverse(shifted);
  });
  const size_t nd = cfg.deltas.size();
  std::vector<WeylOperator> kd(nd);
  std::vector<std::vector<double>> eigd(nd);
  parallel_for(int(nd), cfg.parallel, [&](int i) {
    kd[i] = build_matrix(perturb(cfg.symbol, cfg.field, cfg.deltas[i]), grid,
                         {cfg.symbol.id(), cfg.field.id(), cfg.deltas[i]});
    eigd[i] = linalg::sym_eigenvalues(kd[i].matrix());
  });

  struct Cell { size_t di, ki, zi; };
  std::vector<Cell> cells;
  for (size_t di = 0; di < nd; ++di)
    for (size_t ki = 0; ki < cfg.kappas.size(); ++ki)
      for (size_t zi = 0; zi < zs.size(); ++zi) cells.push_back({di, ki, zi});
  std::vector<QuasiresRow> rows(cells.size());

  parallel_for(int(cells.size()), cfg.parallel, [&](int c) {
    const Cell& cell = cells[c];
    double delta = cfg.deltas[cell.di];
    double kappa = cfg.kappas[cell.ki];
    double z = zs[cell.zi];
    CutoffFamily fam = cutoffs(base, cfg.field, delta, kappa, grid);
    double dist0 = dist_to(eig0, z);

    QuasiresRow row;
    row.delta = delta;
    row.kappa = kappa;
    row.z = z;
    row.dist0 = dist0;
    QuasiResolvent qt = assemble_quasi(r0[cell.zi], +1, fam, delta, kappa, grid,
                                       dist0, base.overlap_count());
    row.defect = defect(kd[cell.di], qt.matrix, z);
    row.snap_error = qt.max_snap_error;

    double distd = dist_to(eigd[cell.di], z);
    if (distd > 1e-6) {
      linalg::Matrix shifted = kd[cell.di].matrix();
      shifted.diagonal().array() -= z;
      linalg::Matrix rd = linalg::inverse(shifted);
      QuasiResolvent qs = assemble_quasi(rd, -1, fam, delta, kappa, grid, distd,
                                         base.overlap_count());
      row.reverse_defect = defect(k0, qs.matrix, z);
    } else {
      row.reverse_defect = std::nan("");
    }

    long gamma = pick_gamma(fam);
    row.lemma1 = lemma1_defect(kd[cell.di], k0, gamma, delta, kappa, cfg.field, base);
    row.commutator = commutator_defect(k0, z, gamma, delta, kappa, cfg.field, base);
    row.doubling_err = doubling;
    rows[c] = row;
  });

  std::string csv_path = cfg.out_dir + "/quasires.csv";
  {
    std::ofstream out(csv_path);
    if (!out) fail(ErrorCode::IoError, "cannot open " + csv_path);
    out << "delta,kappa,z,dist0,defect,reverse_defect,lemma1,commutator,snap_error,"
           "doubling_err\n";
    for (const auto& r : rows)
      out << format_double(r.delta) << "," << format_double(r.kappa) << ","
          << format_double(r.z) << "," << format_double(r.dist0) << ","
          << format_double(r.defect) << "," << format_double(r.reverse_defect) << ","
          << format_double(r.lemma1) << "," << format_double(r.commutator) << ","
          << format_double(r.snap_error) << "," << format_double(r.doubling_err)
          << "\n";
  }

  SweepOutput out;
  out.files.push_back(csv_path);
  // Fits per (kappa, z) group of defect vs delta; lemma/commutator alongside.
  for (size_t ki = 0; ki < cfg.kappas.size(); ++ki) {
    for (size_t zi = 0; zi < zs.size(); ++zi) {
      std::vector<std::pair<double, double>> dpts, lpts, cpts;
      for (const auto& r : rows) {
        if (r.kappa != cfg.kappas[ki] || r.z != zs[zi]) continue;
        if (r.defect > 0.0) dpts.push_back({r.delta, r.defect});
        if (r.lemma1 > 0.0) lpts.push_back({r.delta, r.lemma1});
        if (r.commutator > 0.0) cpts.push_back({r.delta, r.commutator});
      }
      auto try_fit = [&](const char* name,
                         const std::vector<std::pair<double, double>>& pts) {
        try {
          PowerLawFit f = fit_power_law(pts);
          out.fits.push_back({name, cfg.kappas[ki], f});
        } catch (const Error&) {
        }
      };
      if (zi == 0) try_fit("lemma1", lpts);
      try_fit("defect", dpts);
      if (zi == 0) try_fit("commutator", cpts);
    }
  }
  std::string fit_path = cfg.out_dir + "/quasires_fit.csv";
  write_fit_csv(fit_path, out.fits);
  out.files.push_back(fit_path);
  try {
    emit_plot(csv_path, "delta", "defect", std::nullopt, cfg.out_dir + "/quasires.svg");
    out.files.push_back(cfg.out_dir + "/quasires.svg");
  } catch (const Error&) {
  }
  return out;
}

SweepOutput run_edge_sweep(const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);

  SweepOutput out;
  for (int sign : {+1, -1}) {
    std::vector<EdgeRow> rows =
        edge_experiment(cfg.symbol, cfg.field, cfg.deltas, cfg.grid, sign);
    Symbol probe = cfg.symbol;
    double doubling = 0.0;
    {
      // Doubling discrepancy of the relevant edge of K_0.
      Grid1D doubled = Grid1D::make(2.0 * cfg.grid.half_width, 2 * cfg.grid.points);
      auto base_vals = linalg::sym_eigenvalues(build_matrix(probe, cfg.grid).matrix());
      auto dbl_vals = linalg::sym_eigenvalues(build_matrix(probe, doubled).matrix());
      doubling = sign > 0 ? std::abs(base_vals.back() - dbl_vals.back())
                          : std::abs(base_vals.front() - dbl_vals.front());
    }
    std::string name = sign > 0 ? "edges_plus" : "edges_minus";
    std::string csv_path = cfg.out_dir + "/" + name + ".csv";
    std::ofstream fout(csv_path);
    if (!fout) fail(ErrorCode::IoError, "cannot open " + csv_path);
    fout << "delta,mu,rho,theta,kappa,E0,Edelta,Etilde,drift_abs,e1_err,e2_err,"
            "bound_delta_rho,doubling_err\n";
    for (const auto& r : rows)
      fout << format_double(r.delta) << "," << format_double(r.mu) << ","
           << format_double(r.rho) << "," << format_double(r.theta) << ","
           << format_double(r.kappa) << "," << format_double(r.e0) << ","
           << format_double(r.e_delta) << "," << format_double(r.e_tilde) << ","
           << format_double(r.drift_abs) << "," << format_double(r.e1_err) << ","
           << format_double(r.e2_err) << "," << format_double(r.bound_delta_rho)
           << "," << format_double(doubling) << "\n";
    out.files.push_back(csv_path);

    std::vector<std::pair<double, double>> pts;
    std::vector<double> floors;
    for (const auto& r : rows) {
      pts.push_back({r.delta, r.drift_abs});
      floors.push_back(doubling);
    }
    std::optional<PowerLawFit> fit;
    try {
      fit = fit_power_law(apply_floor_rule(pts, floors));
      out.fits.push_back({name + "_drift", 0.0, *fit});
    } catch (const Error&) {
    }
    if (sign > 0) {
      try {
        emit_plot(csv_path, "delta", "drift_abs", fit, cfg.out_dir + "/edges.svg");
        out.files.push_back(cfg.out_dir + "/edges.svg");
      } catch (const Error&) {
      }
    }
  }
  std::string fit_path = cfg.out_dir + "/edges_fit.csv";
  write_fit_csv(fit_path, out.fits);
  out.files.push_back(fit_path);
  return out;
}

SweepOutput run_sweep(const ExperimentConfig& cfg) {
  switch (cfg.mode) {
    case Mode::Hausdorff: return run_hausdorff_sweep(cfg);
    case Mode::Edges: return run_edge_sweep(cfg);
    case Mode::Quasires: return run_quasires_sweep(cfg);
    case Mode::Gapwatch: return run_gapwatch(cfg);
  }
  fail(ErrorCode::ConfigError, "unreachable mode");
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return columns[i];
  fail(ErrorCode::ColumnMissing, "CSV column '" + name + "' not found");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::IoError, "empty CSV " + path);
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.header.push_back(cell);
  t.columns.resize(t.header.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    size_t i = 0;
    while (std::getline(ls, cell, ',') && i < t.columns.size()) {
      char* end = nullptr;
      double v = std::strtod(cell.c_str(), &end);
      t.columns[i].push_back(end == cell.c_str() ? std::nan("") : v);
      ++i;
    }
    while (i < t.columns.size()) t.columns[i++].push_back(std::nan(""));
  }
  return t;
}

void emit_plot(const std::string& csv_path, const std::string& x_col,
               const std::string& y_col, const std::optional<PowerLawFit>& fit,
               const std::string& svg_path) {
  CsvTable t = read_csv(csv_path);
  const auto& xs_all = t.column(x_col);
  const auto& ys_all = t.column(y_col);
  std::vector<double> xs, ys;
  for (size_t i = 0; i < xs_all.size() && i < ys_all.size(); ++i) {
    if (xs_all[i] > 0.0 && ys_all[i] > 0.0) {
      xs.push_back(xs_all[i]);
      ys.push_back(ys_all[i]);
    }
  }
  write_loglog_scatter_svg(svg_path, xs, ys, x_col, y_col, fit_line(fit));
}

}  // namespace weylab
