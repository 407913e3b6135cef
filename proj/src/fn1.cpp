#include "weylab/fn1.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "weylab/errors.hpp"

namespace weylab {

namespace {
constexpr int kUnlimitedOrder = 1000;

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}
}  // namespace

class Fn1::Impl {
 public:
  virtual ~Impl() = default;
  virtual double deriv(int order, double x) const = 0;
  virtual int max_order() const { return kUnlimitedOrder; }
  const std::string& repr() const { return repr_; }

 protected:
  std::string repr_;
};

double Fn1::deriv(int order, double x) const {
  if (!impl_) fail(ErrorCode::InvalidParameter, "empty Fn1");
  if (order < 0 || order > impl_->max_order())
    fail(ErrorCode::OrderExceeded,
         "derivative order " + std::to_string(order) + " beyond declared max " +
             std::to_string(impl_->max_order()) + " for " + impl_->repr());
  return impl_->deriv(order, x);
}

int Fn1::max_order() const {
  if (!impl_) fail(ErrorCode::InvalidParameter, "empty Fn1");
  return impl_->max_order();
}

const std::string& Fn1::repr() const {
  static const std::string empty = "<empty>";
  return impl_ ? impl_->repr() : empty;
}

namespace {

class ConstImpl final : public Fn1::Impl {
 public:
  explicit ConstImpl(double c) : c_(c) { repr_ = "const(" + fmt_num(c) + ")"; }
  double deriv(int order, double) const override { return order == 0 ? c_ : 0.0; }

 private:
  double c_;
};

class AffineImpl final : public Fn1::Impl {
 public:
  AffineImpl(double b, double a) : b_(b), a_(a) {
    repr_ = "affine(" + fmt_num(b) + "," + fmt_num(a) + ")";
  }
  double deriv(int order, double x) const override {
    if (order == 0) return a_ * x + b_;
    if (order == 1) return a_;
    return 0.0;
  }

 private:
  double b_, a_;
};

class CosineImpl final : public Fn1::Impl {
 public:
  CosineImpl(double amp, double freq, double phase)
      : amp_(amp), freq_(freq), phase_(phase) {
    repr_ = "cos(" + fmt_num(amp) + "," + fmt_num(freq) + "," + fmt_num(phase) + ")";
  }
  double deriv(int order, double x) const override {
    const double half_pi = 1.5707963267948966;
    double scale = amp_ * std::pow(freq_, order);
    return scale * std::cos(freq_ * x + phase_ + order * half_pi);
  }

 private:
  double amp_, freq_, phase_;
};

class GaussianImpl final : public Fn1::Impl {
 public:
  GaussianImpl(double amp, double center, double width)
      : amp_(amp), center_(center), width_(width) {
    if (!(width > 0.0)) fail(ErrorCode::InvalidParameter, "gaussian width must be > 0");
    repr_ = "gauss(" + fmt_num(amp) + "," + fmt_num(center) + "," + fmt_num(width) + ")";
  }
  // d^k/dx^k e^{-t^2} = (-1)^k H_k(t) e^{-t^2} / (sqrt(2) w)^k, t = (x-c)/(sqrt(2) w)
  double deriv(int order, double x) const override {
    double s = 1.0 / (std::sqrt(2.0) * width_);
    double t = (x - center_) * s;
    double h0 = 1.0, h1 = 2.0 * t;
    double h = (order == 0) ? h0 : h1;
    for (int n = 1; n < order; ++n) {
      double next = 2.0 * t * h1 - 2.0 * n * h0;
      h0 = h1;
      h1 = next;
      h = next;
    }
    double sign = (order % 2 == 0) ? 1.0 : -1.0;
    return amp_ * sign * std::pow(s, order) * h * std::exp(-t * t);
  }

 private:
  double amp_, center_, width_;
};

// P(x) * (1+x^2)^q; derivatives stay in the same family:
//   d/dx [P (1+x^2)^q] = [P'(1+x^2) + 2q x P] (1+x^2)^(q-1).
class PolyPowImpl final : public Fn1::Impl {
 public:
  PolyPowImpl(std::vector<double> poly, double q) {
    repr_ = "polypow(q=" + fmt_num(q) + ")";
    polys_.push_back(std::move(poly));
    qs_.push_back(q);
    for (int k = 1; k <= kMaxCached; ++k) {
      const auto& p = polys_.back();
      double qq = qs_.back();
      std::vector<double> dp(p.size() > 1 ? p.size() - 1 : 1, 0.0);
      for (size_t i = 1; i < p.size(); ++i) dp[i - 1] = p[i] * double(i);
      // dp*(1+x^2) + 2 q x p
      std::vector<double> np(std::max(dp.size() + 2, p.size() + 1), 0.0);
      for (size_t i = 0; i < dp.size(); ++i) {
        np[i] += dp[i];
        np[i + 2] += dp[i];
      }
      for (size_t i = 0; i < p.size(); ++i) np[i + 1] += 2.0 * qq * p[i];
      polys_.push_back(std::move(np));
      qs_.push_back(qq - 1.0);
    }
  }
  int max_order() const override { return kMaxCached; }
  double deriv(int order, double x) const override {
    const auto& p = polys_[order];
    double acc = 0.0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc * std::pow(1.0 + x * x, qs_[order]);
  }

 private:
  static constexpr int kMaxCached = 16;
  std::vector<std::vector<double>> polys_;
  std::vector<double> qs_;
};

class LinCombImpl final : public Fn1::Impl {
 public:
  explicit LinCombImpl(std::vector<std::pair<double, Fn1>> terms)
      : terms_(std::move(terms)) {
    repr_ = "lincomb[";
    max_order_ = kUnlimitedOrder;
    for (size_t i = 0; i < terms_.size(); ++i) {
      if (i) repr_ += " + ";
      repr_ += fmt_num(terms_[i].first) + "*" + terms_[i].second.repr();
      max_order_ = std::min(max_order_, terms_[i].second.max_order());
    }
    repr_ += "]";
  }
  int max_order() const override { return max_order_; }
  double deriv(int order, double x) const override {
    double acc = 0.0;
    for (const auto& [c, f] : terms_) acc += c * f.deriv(order, x);
    return acc;
  }

 private:
  std::vector<std::pair<double, Fn1>> terms_;
  int max_order_;
};

class ComposeImpl final : public Fn1::Impl {
 public:
  ComposeImpl(Fn1 outer, Fn1 inner) : f_(std::move(outer)), g_(std::move(inner)) {
    repr_ = f_.repr() + " o " + g_.repr();
    max_order_ = std::min(f_.max_order(), g_.max_order());
  }
  int max_order() const override { return max_order_; }
  double deriv(int order, double x) const override {
    double gx = g_(x);
    if (order == 0) return f_(gx);
    // Faa di Bruno: (f o g)^(n) = sum_k f^(k)(g) B_{n,k}(g', ..., g^(n-k+1))
    std::vector<double> gd(order + 1, 0.0);
    for (int i = 1; i <= order; ++i) gd[i] = g_.deriv(i, x);
    double acc = 0.0;
    for (int k = 1; k <= order; ++k)
      acc += f_.deriv(k, gx) * bell_partial(order, k, gd);
    return acc;
  }

 private:
  Fn1 f_, g_;
  int max_order_;
};

class CallableImpl final : public Fn1::Impl {
 public:
  CallableImpl(std::function<double(double)> f, int max_order, std::string name)
      : f_(std::move(f)), max_order_(max_order) {
    repr_ = "callable(" + name + ")";
  }
  int max_order() const override { return max_order_; }
  double deriv(int order, double x) const override { return fd(order, x); }

 private:
  double fd(int order, double x) const {
    if (order == 0) return f_(x);
    double eps = std::cbrt(std::numeric_limits<double>::epsilon());
    double h = eps * std::max(1.0, std::abs(x));
    return (fd(order - 1, x + h) - fd(order - 1, x - h)) / (2.0 * h);
  }
  std::function<double(double)> f_;
  int max_order_;
};

}  // namespace

double bell_partial(int n, int k, const std::vector<double>& xs) {
  if (n == 0 && k == 0) return 1.0;
  if (k <= 0 || k > n) return 0.0;
  // binomials up to n-1
  std::vector<std::vector<double>> C(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    C[i][0] = 1.0;
    for (int j = 1; j <= i; ++j)
      C[i][j] = C[i - 1][j - 1] + ((j <= i - 1) ? C[i - 1][j] : 0.0);
  }
  std::vector<std::vector<double>> B(n + 1, std::vector<double>(k + 1, 0.0));
  B[0][0] = 1.0;
  for (int nn = 1; nn <= n; ++nn)
    for (int kk = 1; kk <= std::min(nn, k); ++kk) {
      double acc = 0.0;
      for (int i = 1; i <= nn - kk + 1; ++i)
        acc += C[nn - 1][i - 1] * xs[i] * B[nn - i][kk - 1];
      B[nn][kk] = acc;
    }
  return B[n][k];
}

Fn1 Fn1::constant(double c) { return Fn1(std::make_shared<ConstImpl>(c)); }
Fn1 Fn1::affine(double b, double a) { return Fn1(std::make_shared<AffineImpl>(b, a)); }
Fn1 Fn1::identity() { return affine(0.0, 1.0); }
Fn1 Fn1::cosine(double amp, double freq, double phase) {
  return Fn1(std::make_shared<CosineImpl>(amp, freq, phase));
}
Fn1 Fn1::sine(double amp, double freq, double phase) {
  return cosine(amp, freq, phase - 1.5707963267948966);
}
Fn1 Fn1::gaussian(double amp, double center, double width) {
  return Fn1(std::make_shared<GaussianImpl>(amp, center, width));
}
Fn1 Fn1::poly_power(std::vector<double> poly, double q) {
  return Fn1(std::make_shared<PolyPowImpl>(std::move(poly), q));
}
Fn1 Fn1::lin_comb(std::vector<std::pair<double, Fn1>> terms) {
  return Fn1(std::make_shared<LinCombImpl>(std::move(terms)));
}
Fn1 Fn1::compose(Fn1 outer, Fn1 inner) {
  return Fn1(std::make_shared<ComposeImpl>(std::move(outer), std::move(inner)));
}
Fn1 Fn1::from_callable(std::function<double(double)> f, int max_order, std::string name) {
  return Fn1(std::make_shared<CallableImpl>(std::move(f), max_order, std::move(name)));
}

}  // namespace weylab
