#include "weylab/stability.hpp"

#include <algorithm>
#include <cmath>

#include "weylab/errors.hpp"

namespace weylab {

namespace {
constexpr double kActiveThreshold = 1e-14;

double snapped_shift(double z0, double h, long* steps, double* err) {
  double s = std::round(z0 / h);
  if (steps) *steps = long(s);
  if (err) *err = std::abs(z0 - s * h);
  return s;
}
}  // namespace

PartitionBase::PartitionBase(double support_radius) : r_(support_radius) {
  if (!(r_ >= 0.6 && r_ <= 2.0))
    fail(ErrorCode::InvalidParameter, "partition support radius must lie in [0.6, 2]");
  // Coverage: the squared bumps must not vanish anywhere between lattice points.
  for (int i = 0; i <= 200; ++i) {
    double z = -0.5 + double(i) / 200.0;
    double acc = 0.0;
    for (long gamma = -3; gamma <= 3; ++gamma) {
      double b = bump(z - double(gamma));
      acc += b * b;
    }
    if (!(acc > 1e-30))
      fail(ErrorCode::CoverageFailure, "bump family does not cover the lattice");
  }
  // Overlap count: supports of width 2r at unit spacing overlap for |m| < 2r.
  int m_max = 0;
  while (double(m_max + 1) < 2.0 * r_ - 1e-15) ++m_max;
  n_g_ = 2 * m_max + 1;
}

double PartitionBase::bump(double z) const {
  double t = z / r_;
  double s = 1.0 - t * t;
  if (s <= 0.0) return 0.0;
  return std::exp(-1.0 / s);
}

double PartitionBase::g(double z) const {
  double b = bump(z);
  if (b == 0.0) return 0.0;
  double acc = 0.0;
  long lo = long(std::floor(z - r_)) - 1, hi = long(std::ceil(z + r_)) + 1;
  for (long gamma = lo; gamma <= hi; ++gamma) {
    double bb = bump(z - double(gamma));
    acc += bb * bb;
  }
  return b / std::sqrt(acc);
}

PartitionBase make_partition(double support_radius) {
  return PartitionBase(support_radius);
}

long CutoffFamily::index_of(long gamma) const {
  for (size_t i = 0; i < gammas.size(); ++i)
    if (gammas[i] == gamma) return long(i);
  return -1;
}

CutoffFamily cutoffs(const PartitionBase& base, const PerturbField& f, double delta,
                     double kappa, const Grid1D& grid) {
  const int n = grid.points;
  const double scale = delta > 0.0 ? std::pow(delta, 1.0 - kappa) : 0.0;
  std::vector<double> w(n);
  double wmin = 0.0, wmax = 0.0;
  for (int j = 0; j < n; ++j) {
    w[j] = scale * f(grid.node(j));
    wmin = std::min(wmin, w[j]);
    wmax = std::max(wmax, w[j]);
  }
  long lo = long(std::floor(wmin - base.support_radius()));
  long hi = long(std::ceil(wmax + base.support_radius()));

  CutoffFamily fam;
  std::vector<std::vector<double>> cols;
  for (long gamma = lo; gamma <= hi; ++gamma) {
    std::vector<double> col(n);
    double mx = 0.0;
    for (int j = 0; j < n; ++j) {
      col[j] = base.g(w[j] - double(gamma));
      mx = std::max(mx, col[j]);
    }
    if (mx > kActiveThreshold) {
      fam.gammas.push_back(gamma);
      cols.push_back(std::move(col));
    }
  }
  fam.values.resize(n, long(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c)
    for (int j = 0; j < n; ++j) fam.values(j, long(c)) = cols[c][j];

  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (long c = 0; c < fam.values.cols(); ++c)
      acc += fam.values(j, c) * fam.values(j, c);
    worst = std::max(worst, std::abs(acc - 1.0));
  }
  fam.identity_error = worst;
  return fam;
}

linalg::Matrix shift_both(const linalg::Matrix& m, long s) {
  const long n = m.rows();
  linalg::Matrix out = linalg::Matrix::Zero(n, n);
  long lo = std::max<long>(0, -s), hi = std::min(n, n - s);
  if (lo >= hi) return out;
  out.block(lo, lo, hi - lo, hi - lo) = m.block(lo + s, lo + s, hi - lo, hi - lo);
  return out;
}

WeylOperator translate_operator(const WeylOperator& k, double z0, double* snap_error) {
  long s = 0;
  double err = 0.0;
  snapped_shift(z0, k.grid().spacing(), &s, &err);
  if (snap_error) *snap_error = err;
  if (std::labs(s) > k.size() / 4)
    fail(ErrorCode::ShiftTooLarge, "translation exceeds a quarter of the grid");
  Provenance prov = k.provenance();
  prov.symbol_id += " [translated]";
  return WeylOperator(shift_both(k.matrix(), s), k.grid(), prov,
                      k.asymmetry_residual());
}

linalg::Matrix resolvent(const WeylOperator& k, double z, double eps_res) {
  auto vals = linalg::sym_eigenvalues(k.matrix());
  double dist = std::numeric_limits<double>::infinity();
  for (double v : vals) dist = std::min(dist, std::abs(v - z));
  if (!(dist > eps_res))
    fail(ErrorCode::TooCloseToSpectrum,
         "z is within " + std::to_string(eps_res) + " of the spectrum");
  linalg::Matrix shifted = k.matrix();
  shifted.diagonal().array() -= z;
  return linalg::inverse(shifted);
}

QuasiResolvent assemble_quasi(const linalg::Matrix& r, int dir,
                              const CutoffFamily& family, double delta, double kappa,
                              const Grid1D& grid, double dist, int overlap_count) {
  const long n = r.rows();
  const double h = grid.spacing();
  const double dk = delta > 0.0 ? std::pow(delta, kappa) : 0.0;
  QuasiResolvent out;
  out.matrix = linalg::Matrix::Zero(n, n);
  out.dist = dist;
  for (size_t idx = 0; idx < family.gammas.size(); ++idx) {
    long gamma = family.gammas[idx];
    long s = 0;
    double err = 0.0;
    snapped_shift(dk * double(gamma), h, &s, &err);
    s *= dir;
    if (std::labs(s) > n / 4)
      fail(ErrorCode::ShiftTooLarge, "lattice shift exceeds a quarter of the grid");
    out.max_snap_error = std::max(out.max_snap_error, err);
    linalg::Matrix t_gamma = shift_both(r, s);
    linalg::Vector g = family.values.col(long(idx));
    out.matrix.noalias() += g.asDiagonal() * t_gamma * g.asDiagonal();
    ++out.active_count;
  }
  out.norm = linalg::spectral_norm(out.matrix);
  out.norm_bound = std::sqrt((overlap_count + 1.0) / 2.0) / dist;
  return out;
}

namespace {
double dist_to_spectrum(const WeylOperator& k, double z, double eps_res) {
  auto vals = linalg::sym_eigenvalues(k.matrix());
  double dist = std::numeric_limits<double>::infinity();
  for (double v : vals) dist = std::min(dist, std::abs(v - z));
  if (!(dist > eps_res))
    fail(ErrorCode::TooCloseToSpectrum, "z too close to the spectrum");
  return dist;
}
}  // namespace

QuasiResolvent quasi_resolvent(const WeylOperator& k0, double z, double delta,
                               double kappa, const PerturbField& f,
                               const PartitionBase& base) {
  double dist = dist_to_spectrum(k0, z, 1e-6);
  linalg::Matrix shifted = k0.matrix();
  shifted.diagonal().array() -= z;
  linalg::Matrix r0 = linalg::inverse(shifted);
  CutoffFamily fam = cutoffs(base, f, delta, kappa, k0.grid());
  return assemble_quasi(r0, +1, fam, delta, kappa, k0.grid(), dist,
                        base.overlap_count());
}

double defect(const WeylOperator& k_delta, const linalg::Matrix& t, double z) {
  if (k_delta.matrix().rows() != t.rows())
    fail(ErrorCode::GridMismatch, "defect: shape mismatch");
  linalg::Matrix shifted = k_delta.matrix();
  shifted.diagonal().array() -= z;
  linalg::Matrix prod = linalg::matmul(shifted, t);
  prod.diagonal().array() -= 1.0;
  return linalg::spectral_norm(prod);
}

QuasiResolvent reverse_quasi_resolvent(const WeylOperator& k_delta, double z,
                                       double delta, double kappa,
                                       const PerturbField& f,
                                       const PartitionBase& base) {
  double dist = dist_to_spectrum(k_delta, z, 1e-6);
  linalg::Matrix shifted = k_delta.matrix();
  shifted.diagonal().array() -= z;
  linalg::Matrix rd = linalg::inverse(shifted);
  CutoffFamily fam = cutoffs(base, f, delta, kappa, k_delta.grid());
  return assemble_quasi(rd, -1, fam, delta, kappa, k_delta.grid(), dist,
                        base.overlap_count());
}

double lemma1_defect(const WeylOperator& k_delta, const WeylOperator& k0, long gamma,
                     double delta, double kappa, const PerturbField& f,
                     const PartitionBase& base) {
  if (!(k_delta.grid() == k0.grid()))
    fail(ErrorCode::GridMismatch, "lemma1_defect: grid mismatch");
  const Grid1D& grid = k0.grid();
  const double dk = delta > 0.0 ? std::pow(delta, kappa) : 0.0;
  long s = 0;
  snapped_shift(dk * double(gamma), grid.spacing(), &s, nullptr);
  if (std::labs(s) > k0.size() / 4)
    fail(ErrorCode::ShiftTooLarge, "lattice shift exceeds a quarter of the grid");
  CutoffFamily fam = cutoffs(base, f, delta, kappa, grid);
  long idx = fam.index_of(gamma);
  linalg::Vector g = idx >= 0 ? linalg::Vector(fam.values.col(idx))
                              : linalg::Vector(linalg::Vector::Zero(k0.size()));
  linalg::Matrix diff = k_delta.matrix() - shift_both(k0.matrix(), s);
  linalg::Matrix scaled = diff * g.asDiagonal();
  return linalg::spectral_norm(scaled);
}

double commutator_defect(const WeylOperator& k0, double z, long gamma, double delta,
                         double kappa, const PerturbField& f,
                         const PartitionBase& base) {
  const Grid1D& grid = k0.grid();
  const double dk = delta > 0.0 ? std::pow(delta, kappa) : 0.0;
  long s = 0;
  snapped_shift(dk * double(gamma), grid.spacing(), &s, nullptr);
  if (std::labs(s) > k0.size() / 4)
    fail(ErrorCode::ShiftTooLarge, "lattice shift exceeds a quarter of the grid");
  linalg::Matrix r0 = resolvent(k0, z);
  linalg::Matrix t_gamma = shift_both(r0, s);
  CutoffFamily fam = cutoffs(base, f, delta, kappa, grid);
  long idx = fam.index_of(gamma);
  linalg::Vector g = idx >= 0 ? linalg::Vector(fam.values.col(idx))
                              : linalg::Vector(linalg::Vector::Zero(k0.size()));
  linalg::Matrix comm = t_gamma * g.asDiagonal();
  comm -= g.asDiagonal() * t_gamma;
  return linalg::spectral_norm(comm);
}

}  // namespace weylab
