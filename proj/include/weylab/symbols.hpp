#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weylab/fn1.hpp"

namespace weylab {

// One additive piece of a symbol, factorized as coeff(x) * xi_profile(xi).
// Trig: xi_profile = cos(k xi) (or sin with sin_parity); Gauss: exp(-xi^2/(2 sigma^2)).
enum class XiKind { Trig, Gauss };

struct SymbolTerm {
  XiKind kind;
  double param;             // Trig: offset k >= 0; Gauss: sigma > 0
  bool sin_parity = false;  // Trig only
  Fn1 coeff;

  double xi_deriv(int order, double xi) const;
};

// Real symbol of class S^0_{0,0}: finite sum of factorized terms with
// globally bounded coefficient functions. Immutable.
class Symbol {
 public:
  Symbol() = default;

  static Symbol trig(double offset, Fn1 coeff, bool sin_parity = false);
  static Symbol gauss_xi(double sigma, Fn1 coeff);
  static Symbol potential(Fn1 v);  // xi-independent, = trig(0, v)
  static Symbol sum(std::vector<Symbol> parts);

  const std::vector<SymbolTerm>& terms() const { return terms_; }
  int dimension() const { return 1; }
  int max_order() const;
  const std::string& id() const { return id_; }

  double eval(double x, double xi, int dx_order, int dxi_order) const;

 private:
  std::vector<SymbolTerm> terms_;
  std::string id_;
};

// Perturbing map F in C^infty_1: bounded derivatives of all positive orders.
// mu, when set, declares |F''(x)| <= c_bound * (1+x^2)^{-(1+mu)/2}.
class PerturbField {
 public:
  PerturbField() = default;
  PerturbField(Fn1 f, std::optional<double> mu, double c_bound, bool curvature_free,
               std::string id);

  const Fn1& fn() const { return f_; }
  double operator()(double x) const { return f_(x); }
  double deriv(int order, double x) const { return f_.deriv(order, x); }
  std::optional<double> mu() const { return mu_; }
  double decay_bound() const { return c_bound_; }
  bool curvature_free() const { return curvature_free_; }
  const std::string& id() const { return id_; }

  // max over samples of |F''(x)| (1+x^2)^{(1+mu)/2}; only meaningful with mu set.
  double measured_decay_constant(double radius = 1000.0, int samples = 20001) const;

 private:
  Fn1 f_;
  std::optional<double> mu_;
  double c_bound_ = 0.0;
  bool curvature_free_ = false;
  std::string id_;
};

// Builtin field families.
PerturbField affine_field(double b, double slope = 1.0);
PerturbField sine_field(double amplitude);
PerturbField mu_field(double mu);        // F(x) = (1+x^2)^{(1-mu)/2}
PerturbField constant_field(double b);   // F == b

struct SamplingDescriptor {
  double radius = 20.0;
  int points_per_axis = 4001;
  bool finite_diff = false;
};

struct SeminormEstimate {
  int n = 0;
  int m = 0;
  double value = 0.0;
  SamplingDescriptor sampling;
};

double eval_symbol(const Symbol& a, double x, double xi, int alpha, int beta);

// Grid-sampled sup over |alpha|<=n, |beta|<=m; a lower bound of the true seminorm.
SeminormEstimate seminorm(const Symbol& a, int n, int m,
                          const SamplingDescriptor& sampling = {});

Symbol perturb(const Symbol& a, const PerturbField& f, double delta);

// Measured ratio nu_{n,m}(a[F]_delta) / nu_{n,m}(a); reported, never asserted
// against a constant.
double perturbation_seminorm_ratio(const Symbol& a, const PerturbField& f,
                                   double delta, int n, int m,
                                   const SamplingDescriptor& sampling = {});

}  // namespace weylab
