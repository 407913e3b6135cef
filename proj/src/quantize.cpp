#include "weylab/quantize.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "weylab/errors.hpp"

namespace weylab {

namespace {
constexpr double kTwoPi = 6.283185307179586;
constexpr double kBandTiny = 1e-18;  // regular-part band cut, relative
}  // namespace

Grid1D Grid1D::make(double half_width, int points) {
  if (!(half_width > 0.0)) fail(ErrorCode::InvalidParameter, "grid half_width must be > 0");
  if (points < 16 || points % 2 != 0)
    fail(ErrorCode::InvalidParameter, "grid points must be even and >= 16");
  if (points > 4096)
    fail(ErrorCode::InvalidParameter, "grid points > 4096 (dense eigensolve only)");
  return Grid1D{half_width, points};
}

double KernelRep::regular_eval(double z, double v) const {
  double acc = 0.0;
  for (const auto& t : regular_)
    acc += t.amp * t.coeff(z) * std::exp(-0.5 * t.sigma * t.sigma * v * v);
  return acc;
}

double KernelRep::regular_dz(int order, double z, double v) const {
  double acc = 0.0;
  for (const auto& t : regular_)
    acc += t.amp * t.coeff.deriv(order, z) * std::exp(-0.5 * t.sigma * t.sigma * v * v);
  return acc;
}

KernelRep weyl_kernel(const Symbol& a) {
  std::vector<SingularHop> sing;
  std::vector<RegularKernelTerm> reg;
  for (const auto& t : a.terms()) {
    if (t.kind == XiKind::Trig) {
      if (t.sin_parity)
        fail(ErrorCode::UnsupportedFamily,
             "sin-parity trig terms quantize to imaginary hops; only real "
             "symmetric operators are supported");
      if (t.param == 0.0) {
        sing.push_back({0.0, t.coeff});
      } else {
        Fn1 half = Fn1::lin_comb({{0.5, t.coeff}});
        sing.push_back({t.param, half});
        sing.push_back({-t.param, half});
      }
    } else {
      reg.push_back({t.param, t.param / std::sqrt(kTwoPi), t.coeff});
    }
  }
  return KernelRep(std::move(sing), std::move(reg));
}

WeylOperator build_matrix(const Symbol& a, const Grid1D& grid, const Provenance& prov) {
  KernelRep rep = weyl_kernel(a);
  const int n = grid.points;
  const double h = grid.spacing();
  const double big_l = grid.half_width;

  // Hop offsets must land on the grid.
  struct Hop { int steps; const Fn1* coeff; };
  std::vector<Hop> hops;
  for (const auto& s : rep.singular()) {
    double ratio = s.offset / h;
    double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-12)
      fail(ErrorCode::OffsetNotOnGrid,
           "singular offset " + std::to_string(s.offset) +
               " is not an integer multiple of grid spacing " + std::to_string(h));
    hops.push_back({int(rounded), &s.coeff});
  }

  // Regular part must have decayed at the largest representable |v| = 2L.
  if (rep.has_regular()) {
    double worst = 0.0;
    for (const auto& t : rep.regular()) {
      double mc = 0.0;
      for (int m = 0; m <= 2 * (n - 1); ++m)
        mc = std::max(mc, std::abs(t.coeff(grid.half_node(m))));
      worst += mc * t.amp * std::exp(-0.5 * t.sigma * t.sigma * 4.0 * big_l * big_l);
    }
    if (worst > 1e-12)
      fail(ErrorCode::GridTooSmall,
           "regular kernel part not decayed below 1e-12 at |v| = 2L");
  }

  linalg::Matrix mat = linalg::Matrix::Zero(n, n);

  // Regular part: entries factorize as b(z_jk) * gauss(v_jk); tabulate the
  // z-factor on the midpoint lattice and fill bands.
  for (const auto& t : rep.regular()) {
    std::vector<double> bz(2 * n - 1);
    for (int m = 0; m < 2 * n - 1; ++m) bz[m] = t.coeff(grid.half_node(m));
    double bmax = 0.0;
    for (double v : bz) bmax = std::max(bmax, std::abs(v));
    int band = n - 1;
    if (bmax > 0.0) {
      double vcut = std::sqrt(2.0 * std::log(bmax * t.amp / kBandTiny + 1.0)) / t.sigma;
      band = std::min(band, int(std::ceil(vcut / h)));
    }
    std::vector<double> gv(band + 1);
    for (int d = 0; d <= band; ++d)
      gv[d] = t.amp * std::exp(-0.5 * t.sigma * t.sigma * (d * h) * (d * h));
    for (int j = 0; j < n; ++j)
      for (int k = std::max(0, j - band); k <= std::min(n - 1, j + band); ++k)
        mat(j, k) += h * bz[j + k] * gv[std::abs(j - k)];
  }

  for (const auto& hop : hops) {
    int d = hop.steps;
    for (int j = std::max(0, d); j < n + std::min(0, d); ++j) {
      int k = j - d;
      mat(j, k) += (*hop.coeff)(grid.half_node(j + k));
    }
  }

  double residual = 0.5 * (mat - mat.transpose()).cwiseAbs().maxCoeff();
  mat = 0.5 * (mat + mat.transpose()).eval();
  return WeylOperator(std::move(mat), grid, prov, residual);
}

double kernel_decay_check(const KernelRep& rep, int order, const DecaySample& sample) {
  double worst = 0.0;
  for (int i = 0; i < sample.z_points; ++i) {
    double z = -sample.z_radius +
               2.0 * sample.z_radius * double(i) / double(sample.z_points - 1);
    for (int j = 0; j < sample.v_points; ++j) {
      double v = sample.v_min +
                 (sample.v_max - sample.v_min) * double(j) / double(sample.v_points - 1);
      double w = std::pow(1.0 + v * v, 0.5 * order);
      worst = std::max(worst, w * std::abs(rep.regular_eval(z, v)));
      worst = std::max(worst, w * std::abs(rep.regular_eval(z, -v)));
    }
  }
  return worst;
}

double operator_norm(const WeylOperator& k) {
  auto vals = linalg::sym_eigenvalues(k.matrix());
  if (vals.empty()) return 0.0;
  return std::max(std::abs(vals.front()), std::abs(vals.back()));
}

double cv_ratio(const WeylOperator& k, const Symbol& a, const SamplingDescriptor& sampling) {
  double nu = seminorm(a, 7, 7, sampling).value;  // 3d+4 = 7 at d = 1
  double norm = operator_norm(k);
  return nu > 0.0 ? norm / nu : 0.0;
}

void gauss_legendre_01(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  // Newton iteration on P_n over [-1,1], then map to [0,1].
  nodes.resize(order);
  weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= order; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[order - 1 - i] = 0.5 * (1.0 + x);
    weights[order - 1 - i] = 1.0 / ((1.0 - x * x) * pp * pp);
  }
}

double kernel_difference_check(const Symbol& a, const PerturbField& f, double delta,
                               double kappa, long gamma, const DiffSample& sample) {
  if (std::abs(delta) > 1.0) fail(ErrorCode::DeltaOutOfRange, "|delta| <= 1 required");
  if (!(kappa > 0.0 && kappa <= 1.0))
    fail(ErrorCode::InvalidParameter, "kappa in (0,1] required");

  std::vector<double> snodes, sweights;
  gauss_legendre_01(sample.quadrature_order, snodes, sweights);

  const double dk = std::pow(delta, kappa);
  const double d1k = delta > 0.0 ? std::pow(delta, 1.0 - kappa) : 0.0;
  const double shift = dk * double(gamma);

  double worst = 0.0;
  // The identity factorizes through each term's z-coefficient; the xi-side
  // factors are common to both sides, bounded by their value at v-argmax (=1
  // for hops at the offset, amp for Gaussian terms at v=0).
  for (const auto& term : a.terms()) {
    const Fn1& c = term.coeff;
    double vfactor = 1.0;
    if (term.kind == XiKind::Gauss) vfactor = term.param / std::sqrt(kTwoPi);
    if (term.kind == XiKind::Trig && term.param != 0.0) vfactor = 0.5;
    for (int i = 0; i < sample.z_points; ++i) {
      double z = -sample.z_radius +
                 2.0 * sample.z_radius * double(i) / double(sample.z_points - 1);
      double displaced = z + delta * f(z);
      double lhs = c(displaced) - c(z + shift);
      double integral = 0.0;
      for (int q = 0; q < sample.quadrature_order; ++q) {
        double s = snodes[q];
        double psi = z + shift + s * (delta * f(z) - shift);
        integral += sweights[q] * c.deriv(1, psi);
      }
      double rhs = dk * integral * (d1k * f(z) - double(gamma));
      worst = std::max(worst, std::abs(lhs - rhs) * vfactor);
    }
  }
  return worst;
}

namespace {
constexpr char kMagic[8] = {'W', 'E', 'Y', 'L', 'M', 'A', 'T', '1'};
}

void save_matrix_binary(const WeylOperator& k, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  out.write(kMagic, 8);
  uint64_t n = uint64_t(k.size());
  double l = k.grid().half_width;
  std::string meta = "{\"symbol\":\"" + k.provenance().symbol_id + "\",\"field\":\"" +
                     k.provenance().field_id + "\",\"delta\":" +
                     std::to_string(k.provenance().delta) + "}";
  uint64_t meta_len = meta.size();
  out.write(reinterpret_cast<const char*>(&n), 8);
  out.write(reinterpret_cast<const char*>(&l), 8);
  out.write(reinterpret_cast<const char*>(&meta_len), 8);
  out.write(meta.data(), std::streamsize(meta.size()));
  // row-major doubles
  for (int j = 0; j < k.size(); ++j)
    for (int i = 0; i < k.size(); ++i) {
      double v = k.matrix()(j, i);
      out.write(reinterpret_cast<const char*>(&v), 8);
    }
  if (!out) fail(ErrorCode::IoError, "write failed for " + path);
}

WeylOperator load_matrix_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (std::memcmp(magic, kMagic, 8) != 0)
    fail(ErrorCode::IoError, "bad magic in " + path);
  uint64_t n = 0, meta_len = 0;
  double l = 0.0;
  in.read(reinterpret_cast<char*>(&n), 8);
  in.read(reinterpret_cast<char*>(&l), 8);
  in.read(reinterpret_cast<char*>(&meta_len), 8);
  std::string meta(meta_len, '\0');
  in.read(meta.data(), std::streamsize(meta_len));
  linalg::Matrix m(n, n);
  for (uint64_t j = 0; j < n; ++j)
    for (uint64_t i = 0; i < n; ++i) {
      double v;
      in.read(reinterpret_cast<char*>(&v), 8);
      m(long(j), long(i)) = v;
    }
  if (!in) fail(ErrorCode::IoError, "truncated matrix file " + path);
  Grid1D grid = Grid1D::make(l, int(n));
  return WeylOperator(std::move(m), grid, Provenance{meta, "", 0.0}, 0.0);
}

void save_matrix_csv(const WeylOperator& k, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  char buf[32];
  for (int j = 0; j < k.size(); ++j) {
    for (int i = 0; i < k.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", k.matrix()(j, i));
      out << buf << (i + 1 < k.size() ? "," : "");
    }
    out << "\n";
  }
}

}  // namespace weylab
