#include "weylab/edges.hpp"

#include <cmath>
#include <random>

#include "weylab/errors.hpp"

namespace weylab {

namespace {
constexpr double kFourPi = 12.566370614359172;
constexpr double kTwoPi = 6.283185307179586;

double uniform01(std::mt19937_64& gen) {
  return double(gen() >> 11) * 0x1.0p-53;
}
}  // namespace

// Normalized so that the integral is exactly 1 (the resolution-of-identity
// property every estimate rests on); the scale factor is kappa^d at d = 1.
double GaussianWeight::operator()(double z) const {
  double t = kappa * z;
  return kappa * std::exp(-0.25 * t * t) / std::sqrt(kFourPi);
}

WeightIdentityReport weight_identities(double kappa, int samples, uint64_t seed) {
  if (!(kappa > 0.0 && kappa <= 1.0))
    fail(ErrorCode::InvalidParameter, "weight kappa must lie in (0,1]");
  GaussianWeight w{kappa};

  // Normalization by wide trapezoid quadrature (spectrally accurate here).
  double half = 14.0 / kappa;
  int n = 40001;
  double step = 2.0 * half / (n - 1);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double z = -half + i * step;
    double f = w(z);
    acc += (i == 0 || i == n - 1) ? 0.5 * f : f;
  }
  WeightIdentityReport rep;
  rep.normalization_err = std::abs(acc * step - 1.0);

  // Splitting identity: W_k(z-u) = [(k^2/4pi)^{-1/2} W_k(v)]^{-1/4}
  //                                * W_k(z-u+v/2)^{1/2} W_k(z-u-v/2)^{1/2}
  // (prefactor scaled to match the unit-mass normalization above).
  std::mt19937_64 gen(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    double z = -5.0 + 10.0 * uniform01(gen);
    double u = -5.0 + 10.0 * uniform01(gen);
    double v = -5.0 + 10.0 * uniform01(gen);
    double lhs = w(z - u);
    double pref = std::pow(std::pow(kappa * kappa / kFourPi, -0.5) * w(v), -0.25);
    double rhs = pref * std::sqrt(w(z - u + v / 2.0)) * std::sqrt(w(z - u - v / 2.0));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  rep.splitting_err = worst;
  return rep;
}

EdgeSchedule EdgeSchedule::make(double mu, double delta) {
  if (!(mu > 0.0)) fail(ErrorCode::InvalidParameter, "schedule requires mu > 0");
  if (!(delta > 0.0 && delta <= 1.0))
    fail(ErrorCode::InvalidParameter, "schedule requires delta in (0,1]");
  EdgeSchedule s;
  s.mu = mu;
  s.rho = (1.0 + mu) / (2.0 + mu);
  s.theta = std::pow(delta, 1.0 - s.rho);
  s.kappa = std::pow(delta, s.rho / 2.0);
  return s;
}

CutoffField::CutoffField(const PerturbField& f, double theta) : f_(f), theta_(theta) {
  if (!(theta > 0.0 && theta <= 1.0))
    fail(ErrorCode::InvalidParameter, "cutoff theta must lie in (0,1]");
}

double CutoffField::chi(double v) const {
  // Smooth plateau from the standard exp(-1/x) blend: 1 on |v|<=1, 0 on |v|>=2.
  double av = std::abs(v);
  if (av <= 1.0) return 1.0;
  if (av >= 2.0) return 0.0;
  auto blend = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  double t = 2.0 - av;  // in (0,1)
  return blend(t) / (blend(t) + blend(1.0 - t));
}

double CutoffField::f_theta(double z) const { return chi_theta(z) * f_(z); }
double CutoffField::f_theta_perp(double z) const { return (1.0 - chi_theta(z)) * f_(z); }

double variational_edge(const WeylOperator& k, int n_probes, uint64_t seed) {
  auto vals = linalg::sym_eigenvalues(k.matrix());
  double top = vals.back();
  std::mt19937_64 gen(seed);
  const int n = k.size();
  for (int p = 0; p < n_probes; ++p) {
    linalg::Vector v(n);
    for (int j = 0; j < n; ++j) v[j] = 2.0 * uniform01(gen) - 1.0;
    v.normalize();
    double rq = v.dot(k.matrix() * v);
    if (rq > top + 1e-9 * std::max(1.0, std::abs(top)))
      fail(ErrorCode::EigSolveFailure,
           "Rayleigh quotient exceeded the computed top eigenvalue");
  }
  return top;
}

WeylOperator weighted_operator(const Symbol& a, const PerturbField& f, double delta,
                               double kappa, const Grid1D& grid) {
  if (!(kappa > 0.0 && kappa <= 1.0))
    fail(ErrorCode::InvalidParameter, "weighted_operator kappa must lie in (0,1]");
  // Weight mass outside [-L, L] must be negligible: erfc(kappa L / 2) < 1e-10.
  double tail = std::erfc(kappa * grid.half_width / 2.0);
  if (tail > 1e-10)
    fail(ErrorCode::GridTooSmall,
         "Gaussian weight mass outside the grid exceeds 1e-10; enlarge L or kappa");

  KernelRep rep = weyl_kernel(a);
  const int n = grid.points;
  const double h = grid.spacing();
  GaussianWeight w{kappa};

  // u-window: beyond 14/kappa the weight is below 4e-22.
  const int halfwin = int(std::ceil(14.0 / kappa / h));

  // z-factors of every kernel term, weighted-averaged over u on the midpoint lattice.
  auto averaged = [&](const Fn1& coeff) {
    std::vector<double> out(2 * n - 1);
    for (int m = 0; m < 2 * n - 1; ++m) {
      double z = grid.half_node(m);
      long center = std::lround((z + grid.half_width) / h);
      long lo = std::max<long>(0, center - halfwin);
      long hi = std::min<long>(n - 1, center + halfwin);
      double acc = 0.0;
      for (long t = lo; t <= hi; ++t) {
        double u = grid.node(int(t));
        acc += w(z - u) * coeff(z + delta * f(u));
      }
      out[m] = h * acc;
    }
    return out;
  };

  linalg::Matrix mat = linalg::Matrix::Zero(n, n);

  struct Hop { int steps; std::vector<double> wc; };
  for (const auto& s : rep.singular()) {
    double ratio = s.offset / h;
    double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-12)
      fail(ErrorCode::OffsetNotOnGrid, "singular offset incommensurate with grid");
    int d = int(rounded);
    std::vector<double> wc = averaged(s.coeff);
    for (int j = std::max(0, d); j < n + std::min(0, d); ++j) {
      int k = j - d;
      mat(j, k) += wc[j + k];
    }
  }

  for (const auto& t : rep.regular()) {
    std::vector<double> wb = averaged(t.coeff);
    double bmax = 0.0;
    for (double v : wb) bmax = std::max(bmax, std::abs(v));
    int band = n - 1;
    if (bmax > 0.0) {
      double vcut = std::sqrt(2.0 * std::log(bmax * t.amp / 1e-18 + 1.0)) / t.sigma;
      band = std::min(band, int(std::ceil(vcut / h)));
    }
    std::vector<double> gv(band + 1);
    for (int d = 0; d <= band; ++d)
      gv[d] = t.amp * std::exp(-0.5 * t.sigma * t.sigma * (d * h) * (d * h));
    for (int j = 0; j < n; ++j)
      for (int k = std::max(0, j - band); k <= std::min(n - 1, j + band); ++k)
        mat(j, k) += h * wb[j + k] * gv[std::abs(j - k)];
  }

  double residual = 0.5 * (mat - mat.transpose()).cwiseAbs().maxCoeff();
  mat = 0.5 * (mat + mat.transpose()).eval();
  Provenance prov{a.id() + " [weighted kappa=" + std::to_string(kappa) + "]",
                  f.id(), delta};
  return WeylOperator(std::move(mat), grid, prov, residual);
}

std::vector<linalg::Vector> make_probes(const Grid1D& grid, int n_random,
                                        uint64_t seed, const WeylOperator* k0,
                                        int top_eigenvectors) {
  std::vector<linalg::Vector> probes;
  std::mt19937_64 gen(seed);
  const int n = grid.points;
  for (int p = 0; p < n_random; ++p) {
    double center = (uniform01(gen) - 0.5) * grid.half_width;  // |x| <= L/2
    double width = 0.5 + 2.0 * uniform01(gen);
    linalg::Vector v(n);
    for (int j = 0; j < n; ++j) {
      double t = (grid.node(j) - center) / width;
      v[j] = std::exp(-0.5 * t * t);
    }
    v.normalize();
    probes.push_back(std::move(v));
  }
  if (k0 && top_eigenvectors > 0) {
    auto eig = linalg::sym_eig(k0->matrix(), true);
    for (int t = 0; t < top_eigenvectors && t < n; ++t)
      probes.push_back(eig.vectors.col(n - 1 - t));
  }
  return probes;
}

double p_b1_error(const Symbol& a, const PerturbField& f, double delta, double kappa,
                  const Grid1D& grid, const std::vector<linalg::Vector>& probes) {
  WeylOperator weighted = weighted_operator(a, f, delta, kappa, grid);
  WeylOperator k0 = build_matrix(a, grid);
  double worst = 0.0;
  for (const auto& phi : probes) {
    double wq = phi.dot(weighted.matrix() * phi);
    double kq = phi.dot(k0.matrix() * phi);
    worst = std::max(worst, std::abs(wq - kq));
  }
  return worst;
}

std::vector<EdgeRow> edge_experiment(const Symbol& a, const PerturbField& f,
                                     const std::vector<double>& deltas,
                                     const Grid1D& grid, int edge_sign,
                                     bool with_weighted) {
  if (!f.mu() && !f.curvature_free())
    fail(ErrorCode::InvalidParameter,
         "edge_experiment requires a field with declared mu (or zero curvature)");
  // Curvature-free fields have arbitrarily fast decay; use a large stand-in.
  double mu = f.mu() ? *f.mu() : 1e6;

  Symbol base = a;
  if (edge_sign < 0) {
    // One code path for both edges: run +edge machinery on -a.
    std::vector<Symbol> negs;
    for (const auto& t : base.terms()) {
      Fn1 neg = Fn1::lin_comb({{-1.0, t.coeff}});
      negs.push_back(t.kind == XiKind::Trig ? Symbol::trig(t.param, neg, t.sin_parity)
                                            : Symbol::gauss_xi(t.param, neg));
    }
    base = Symbol::sum(std::move(negs));
  }

  WeylOperator k0 = build_matrix(base, grid);
  double e0 = variational_edge(k0);

  std::vector<EdgeRow> rows;
  for (double delta : deltas) {
    EdgeSchedule sched = EdgeSchedule::make(mu, delta);
    WeylOperator kd = build_matrix(perturb(base, f, delta), grid,
                                   Provenance{base.id(), f.id(), delta});
    double ed = variational_edge(kd);
    double et = std::nan("");
    if (with_weighted) {
      WeylOperator wop = weighted_operator(base, f, delta, sched.kappa, grid);
      et = variational_edge(wop);
    }
    EdgeRow row;
    row.delta = delta;
    row.mu = mu;
    row.rho = sched.rho;
    row.theta = sched.theta;
    row.kappa = sched.kappa;
    row.e0 = e0;
    row.e_delta = ed;
    row.e_tilde = et;
    row.drift_abs = std::abs(ed - e0);
    row.e1_err = std::abs(et - e0);
    row.e2_err = std::abs(et - ed);
    row.bound_delta_rho = std::pow(delta, sched.rho);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace weylab
