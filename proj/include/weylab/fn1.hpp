#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace weylab {

// Smooth real function of one variable with closed-form derivatives.
// Instances are immutable; copies share the implementation.
class Fn1 {
 public:
  class Impl;

  Fn1() = default;

  double operator()(double x) const { return deriv(0, x); }
  double deriv(int order, double x) const;
  int max_order() const;
  const std::string& repr() const;
  bool valid() const { return impl_ != nullptr; }

  static Fn1 constant(double c);
  static Fn1 affine(double intercept, double slope);
  static Fn1 identity();
  // amp * cos(freq*x + phase)
  static Fn1 cosine(double amp, double freq, double phase = 0.0);
  static Fn1 sine(double amp, double freq, double phase = 0.0);
  // amp * exp(-(x-center)^2 / (2 width^2))
  static Fn1 gaussian(double amp, double center, double width);
  // P(x) * (1+x^2)^q with P given by coefficients (low order first)
  static Fn1 poly_power(std::vector<double> poly, double q);
  static Fn1 lin_comb(std::vector<std::pair<double, Fn1>> terms);
  static Fn1 compose(Fn1 outer, Fn1 inner);
  // Finite-difference fallback for user-supplied evaluators (central,
  // relative step eps^(1/3)); unstable beyond low orders.
  static Fn1 from_callable(std::function<double(double)> f, int max_order,
                           std::string name);

 private:
  explicit Fn1(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Partial Bell polynomial B_{n,k}(x[1..n-k+1]); xs[i] holds x_i.
double bell_partial(int n, int k, const std::vector<double>& xs);

}  // namespace weylab
