#pragma once

#include <cstdint>
#include <vector>

#include "weylab/quantize.hpp"

namespace weylab {

// W_kappa(z) = kappa^{1/2} (4 pi)^{-1/2} exp(-(kappa z)^2 / 4) at d = 1.
struct GaussianWeight {
  double kappa = 1.0;
  double operator()(double z) const;
};

struct WeightIdentityReport {
  double normalization_err = 0.0;
  double splitting_err = 0.0;
};

WeightIdentityReport weight_identities(double kappa, int samples = 1000,
                                       uint64_t seed = 1);

struct EdgeSchedule {
  double mu = 0.0;
  double rho = 0.0;    // (1+mu)/(2+mu)
  double theta = 0.0;  // delta^(1-rho)
  double kappa = 0.0;  // delta^(rho/2)

  static EdgeSchedule make(double mu, double delta);
  // Exponents of the three error terms delta/theta, delta kappa^-2 theta^(1+mu),
  // delta^2 kappa^-2 as functions of delta.
  double exponent_first() const { return rho; }
  double exponent_second() const { return (2.0 + mu) * (1.0 - rho); }
  double exponent_third() const { return 2.0 - rho; }
};

// Plateau cutoff applied to the perturbing field: chi_theta(z) = chi(theta z)
// with chi = 1 on |v| <= 1 and 0 on |v| >= 2.
class CutoffField {
 public:
  CutoffField(const PerturbField& f, double theta);
  double chi(double v) const;          // the fixed plateau bump
  double chi_theta(double z) const { return chi(theta_ * z); }
  double f_theta(double z) const;      // chi_theta * F
  double f_theta_perp(double z) const; // (1 - chi_theta) * F
  double theta() const { return theta_; }
  double inner_radius() const { return 1.0; }
  double outer_radius() const { return 2.0; }

 private:
  PerturbField f_;
  double theta_;
};

double variational_edge(const WeylOperator& k, int n_probes = 64, uint64_t seed = 7);

// Matrix of the weighted kernel: entries sum_u h W_kappa(z_jk - u) K0(z_jk + delta F(u), v_jk)
// with u running over the grid nodes.
WeylOperator weighted_operator(const Symbol& a, const PerturbField& f, double delta,
                               double kappa, const Grid1D& grid);

std::vector<linalg::Vector> make_probes(const Grid1D& grid, int n_random,
                                        uint64_t seed,
                                        const WeylOperator* k0 = nullptr,
                                        int top_eigenvectors = 0);

// Max over probes of |<phi, W phi> - <phi, K0 phi>|.
double p_b1_error(const Symbol& a, const PerturbField& f, double delta, double kappa,
                  const Grid1D& grid, const std::vector<linalg::Vector>& probes);

struct EdgeRow {
  double delta = 0.0;
  double mu = 0.0;
  double rho = 0.0;
  double theta = 0.0;
  double kappa = 0.0;
  double e0 = 0.0;       // edge of K_0
  double e_delta = 0.0;  // edge of K_delta
  double e_tilde = 0.0;  // edge of the weighted operator
  double drift_abs = 0.0;
  double e1_err = 0.0;   // |e_tilde - e0|
  double e2_err = 0.0;   // |e_tilde - e_delta|
  double bound_delta_rho = 0.0;
};

// edge_sign +1 runs the upper-edge pipeline; -1 applies it to -a. The
// weighted-operator columns need erfc(kappa L/2) < 1e-10 at the scheduled
// kappa; pass with_weighted = false to emit drift-only rows (Etilde/e1/e2
// become NaN) when the grid cannot support the smallest kappa.
std::vector<EdgeRow> edge_experiment(const Symbol& a, const PerturbField& f,
                                     const std::vector<double>& deltas,
                                     const Grid1D& grid, int edge_sign = +1,
                                     bool with_weighted = true);

}  // namespace weylab
