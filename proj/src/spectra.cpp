#include "weylab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "weylab/errors.hpp"

namespace weylab {

SpectrumReport spectrum(const WeylOperator& k, double gap_tol) {
  if (!(gap_tol > 0.0)) fail(ErrorCode::InvalidParameter, "gap_tol must be > 0");
  SpectrumReport r;
  r.eigenvalues = linalg::sym_eigenvalues(k.matrix());
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end());
  r.gap_tol = gap_tol;
  r.grid = k.grid();
  r.edge_minus = r.eigenvalues.front();
  r.edge_plus = r.eigenvalues.back();
  for (size_t i = 0; i + 1 < r.eigenvalues.size(); ++i) {
    double lo = r.eigenvalues[i], hi = r.eigenvalues[i + 1];
    if (hi - lo > gap_tol) r.gaps.push_back({lo, hi});
  }
  return r;
}

double default_gap_tol(const std::vector<double>& eigenvalues) {
  if (eigenvalues.size() < 2)
    fail(ErrorCode::InvalidParameter, "need at least two eigenvalues");
  std::vector<double> spacings(eigenvalues.size() - 1);
  for (size_t i = 0; i + 1 < eigenvalues.size(); ++i)
    spacings[i] = eigenvalues[i + 1] - eigenvalues[i];
  std::sort(spacings.begin(), spacings.end());
  double median = spacings[spacings.size() / 2];
  return 10.0 * median;
}

namespace {
// sup over t in a of dist(t, b); both sorted.
double one_sided(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  size_t j = 0;
  for (double t : a) {
    while (j + 1 < b.size() && b[j + 1] < t) ++j;
    double d = std::abs(t - b[j]);
    if (j + 1 < b.size()) d = std::min(d, std::abs(b[j + 1] - t));
    worst = std::max(worst, d);
  }
  return worst;
}
}  // namespace

double hausdorff(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) fail(ErrorCode::EmptySet, "hausdorff of empty set");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return std::max(one_sided(sa, sb), one_sided(sb, sa));
}

EdgeDrift edge_drift(const SpectrumReport& unperturbed, const SpectrumReport& perturbed) {
  if (!(unperturbed.grid == perturbed.grid))
    fail(ErrorCode::GridMismatch, "edge_drift requires reports from the same grid");
  return EdgeDrift{perturbed.edge_minus - unperturbed.edge_minus,
                   perturbed.edge_plus - unperturbed.edge_plus};
}

std::vector<double> localized_eigenvalues(const linalg::EigResult& eig,
                                          const Grid1D& grid, double mass_threshold) {
  std::vector<double> kept;
  const int n = int(eig.values.size());
  if (eig.vectors.rows() != n) fail(ErrorCode::InvalidParameter, "eigenvectors required");
  int lo = 0, hi = n - 1;
  while (lo < n && std::abs(grid.node(lo)) > grid.half_width / 2.0) ++lo;
  while (hi >= 0 && std::abs(grid.node(hi)) > grid.half_width / 2.0) --hi;
  for (int c = 0; c < n; ++c) {
    double inside = 0.0, total = 0.0;
    for (int j = 0; j < n; ++j) {
      double w = eig.vectors(j, c) * eig.vectors(j, c);
      total += w;
      if (j >= lo && j <= hi) inside += w;
    }
    if (inside >= mass_threshold * total) kept.push_back(eig.values[c]);
  }
  return kept;
}

void save_spectrum_csv(const SpectrumReport& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << "eigenvalue\n";
  char buf[32];
  for (double v : r.eigenvalues) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf << "\n";
  }
}

void save_spectrum_summary_json(const SpectrumReport& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  out << "{\n  \"edge_minus\": " << num(r.edge_minus)
      << ",\n  \"edge_plus\": " << num(r.edge_plus)
      << ",\n  \"gap_tol\": " << num(r.gap_tol)
      << ",\n  \"count\": " << r.eigenvalues.size() << ",\n  \"gaps\": [";
  for (size_t i = 0; i < r.gaps.size(); ++i) {
    if (i) out << ", ";
    out << "[" << num(r.gaps[i].lo) << ", " << num(r.gaps[i].hi) << "]";
  }
  out << "]\n}\n";
}

}  // namespace weylab
