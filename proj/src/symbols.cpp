#include "weylab/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "weylab/errors.hpp"

namespace weylab {

namespace {
std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}
}  // namespace

double SymbolTerm::xi_deriv(int order, double xi) const {
  if (kind == XiKind::Trig) {
    double k = param;
    if (k == 0.0) return order == 0 ? 1.0 : 0.0;
    const double half_pi = 1.5707963267948966;
    double phase = sin_parity ? -half_pi : 0.0;
    return std::pow(k, order) * std::cos(k * xi + phase + order * half_pi);
  }
  // exp(-xi^2/(2 sigma^2)): reuse the Gaussian derivative chain
  double s = 1.0 / (std::sqrt(2.0) * param);
  double t = xi * s;
  double h0 = 1.0, h1 = 2.0 * t;
  double h = (order == 0) ? h0 : h1;
  for (int n = 1; n < order; ++n) {
    double next = 2.0 * t * h1 - 2.0 * n * h0;
    h0 = h1;
    h1 = next;
    h = next;
  }
  double sign = (order % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(s, order) * h * std::exp(-t * t);
}

Symbol Symbol::trig(double offset, Fn1 coeff, bool sin_parity) {
  if (offset < 0.0) fail(ErrorCode::InvalidParameter, "trig offset must be >= 0");
  Symbol s;
  SymbolTerm t{XiKind::Trig, offset, sin_parity, std::move(coeff)};
  s.id_ = std::string(sin_parity ? "sin" : "cos") + "(" + fmt_num(offset) + "xi)*" +
          t.coeff.repr();
  s.terms_.push_back(std::move(t));
  return s;
}

Symbol Symbol::gauss_xi(double sigma, Fn1 coeff) {
  if (!(sigma > 0.0)) fail(ErrorCode::InvalidParameter, "gauss_xi sigma must be > 0");
  Symbol s;
  SymbolTerm t{XiKind::Gauss, sigma, false, std::move(coeff)};
  s.id_ = "gaussxi(" + fmt_num(sigma) + ")*" + t.coeff.repr();
  s.terms_.push_back(std::move(t));
  return s;
}

Symbol Symbol::potential(Fn1 v) { return trig(0.0, std::move(v)); }

Symbol Symbol::sum(std::vector<Symbol> parts) {
  Symbol s;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s.id_ += " + ";
    s.id_ += parts[i].id_;
    for (auto& t : parts[i].terms_) s.terms_.push_back(std::move(t));
  }
  return s;
}

int Symbol::max_order() const {
  int mo = 1000;
  for (const auto& t : terms_) mo = std::min(mo, t.coeff.max_order());
  return mo;
}

double Symbol::eval(double x, double xi, int dx_order, int dxi_order) const {
  double acc = 0.0;
  for (const auto& t : terms_)
    acc += t.coeff.deriv(dx_order, x) * t.xi_deriv(dxi_order, xi);
  return acc;
}

double eval_symbol(const Symbol& a, double x, double xi, int alpha, int beta) {
  if (alpha < 0 || beta < 0 || alpha > a.max_order())
    fail(ErrorCode::OrderExceeded, "symbol derivative order out of declared range");
  return a.eval(x, xi, alpha, beta);
}

SeminormEstimate seminorm(const Symbol& a, int n, int m,
                          const SamplingDescriptor& sampling) {
  if (n < 0 || m < 0 || n > a.max_order())
    fail(ErrorCode::OrderExceeded, "seminorm order beyond declared derivative order");
  const int P = sampling.points_per_axis;
  const double R = sampling.radius;
  const auto& terms = a.terms();
  const size_t T = terms.size();

  // Tabulate the factorized parts once per derivative order.
  std::vector<std::vector<double>> xs(T * (n + 1), std::vector<double>(P));
  std::vector<std::vector<double>> xis(T * (m + 1), std::vector<double>(P));
  auto grid_at = [&](int i) { return -R + 2.0 * R * double(i) / double(P - 1); };
  for (size_t t = 0; t < T; ++t) {
    for (int al = 0; al <= n; ++al)
      for (int i = 0; i < P; ++i)
        xs[t * (n + 1) + al][i] = terms[t].coeff.deriv(al, grid_at(i));
    for (int be = 0; be <= m; ++be)
      for (int j = 0; j < P; ++j)
        xis[t * (m + 1) + be][j] = terms[t].xi_deriv(be, grid_at(j));
  }

  double best = 0.0;
  for (int al = 0; al <= n; ++al) {
    for (int be = 0; be <= m; ++be) {
      if (T == 1) {
        double mx = 0.0, mxi = 0.0;
        for (int i = 0; i < P; ++i) mx = std::max(mx, std::abs(xs[al][i]));
        for (int j = 0; j < P; ++j) mxi = std::max(mxi, std::abs(xis[be][j]));
        best = std::max(best, mx * mxi);
        continue;
      }
      double local = 0.0;
      for (int i = 0; i < P; ++i) {
        for (int j = 0; j < P; ++j) {
          double acc = 0.0;
          for (size_t t = 0; t < T; ++t)
            acc += xs[t * (n + 1) + al][i] * xis[t * (m + 1) + be][j];
          local = std::max(local, std::abs(acc));
        }
      }
      best = std::max(best, local);
    }
  }
  return SeminormEstimate{n, m, best, sampling};
}

Symbol perturb(const Symbol& a, const PerturbField& f, double delta) {
  if (std::abs(delta) > 1.0)
    fail(ErrorCode::DeltaOutOfRange, "perturb requires |delta| <= 1");
  Symbol out;
  Fn1 phi = Fn1::lin_comb({{1.0, Fn1::identity()}, {delta, f.fn()}});
  std::vector<Symbol> parts;
  for (const auto& t : a.terms()) {
    Fn1 composed = Fn1::compose(t.coeff, phi);
    if (t.kind == XiKind::Trig)
      parts.push_back(Symbol::trig(t.param, composed, t.sin_parity));
    else
      parts.push_back(Symbol::gauss_xi(t.param, composed));
  }
  return Symbol::sum(std::move(parts));
}

double perturbation_seminorm_ratio(const Symbol& a, const PerturbField& f,
                                   double delta, int n, int m,
                                   const SamplingDescriptor& sampling) {
  double base = seminorm(a, n, m, sampling).value;
  double pert = seminorm(perturb(a, f, delta), n, m, sampling).value;
  return base > 0.0 ? pert / base : 0.0;
}

PerturbField::PerturbField(Fn1 f, std::optional<double> mu, double c_bound,
                           bool curvature_free, std::string id)
    : f_(std::move(f)),
      mu_(mu),
      c_bound_(c_bound),
      curvature_free_(curvature_free),
      id_(std::move(id)) {}

double PerturbField::measured_decay_constant(double radius, int samples) const {
  if (!mu_) return 0.0;
  double p = (1.0 + *mu_) / 2.0;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    double x = -radius + 2.0 * radius * double(i) / double(samples - 1);
    worst = std::max(worst, std::abs(f_.deriv(2, x)) * std::pow(1.0 + x * x, p));
  }
  return worst;
}

PerturbField affine_field(double b, double slope) {
  return PerturbField(Fn1::affine(b, slope), std::nullopt, 0.0, true,
                      "affine(b=" + fmt_num(b) + ",slope=" + fmt_num(slope) + ")");
}

PerturbField sine_field(double amplitude) {
  return PerturbField(Fn1::sine(amplitude, 1.0), std::nullopt, std::abs(amplitude),
                      false, "sine(" + fmt_num(amplitude) + ")");
}

PerturbField mu_field(double mu) {
  if (!(mu > 0.0)) fail(ErrorCode::InvalidParameter, "mu_field requires mu > 0");
  Fn1 f = Fn1::poly_power({1.0}, (1.0 - mu) / 2.0);
  PerturbField tmp(f, mu, 0.0, false, "mu(" + fmt_num(mu) + ")");
  double c = tmp.measured_decay_constant() * (1.0 + 1e-9) + 1e-30;
  return PerturbField(f, mu, c, false, "mu(" + fmt_num(mu) + ")");
}

PerturbField constant_field(double b) {
  return PerturbField(Fn1::constant(b), std::nullopt, 0.0, true,
                      "const(" + fmt_num(b) + ")");
}

}  // namespace weylab
