#pragma once

#include <span>
#include <string>
#include <vector>

#include "weylab/quantize.hpp"

namespace weylab {

struct GapInterval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

struct SpectrumReport {
  std::vector<double> eigenvalues;  // ascending
  double edge_minus = 0.0;
  double edge_plus = 0.0;
  std::vector<GapInterval> gaps;
  double gap_tol = 0.0;
  Grid1D grid;
};

SpectrumReport spectrum(const WeylOperator& k, double gap_tol);

// 10 x median consecutive spacing of the unperturbed spectrum.
double default_gap_tol(const std::vector<double>& eigenvalues);

double hausdorff(std::span<const double> a, std::span<const double> b);

struct EdgeDrift {
  double d_minus = 0.0;
  double d_plus = 0.0;
};

EdgeDrift edge_drift(const SpectrumReport& unperturbed, const SpectrumReport& perturbed);

// Eigenvalues whose eigenvector carries at least mass_threshold of its norm
// inside |x| <= L/2 (the central window).
std::vector<double> localized_eigenvalues(const linalg::EigResult& eig,
                                          const Grid1D& grid,
                                          double mass_threshold = 0.9);

void save_spectrum_csv(const SpectrumReport& r, const std::string& path);
void save_spectrum_summary_json(const SpectrumReport& r, const std::string& path);

}  // namespace weylab
