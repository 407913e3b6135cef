#pragma once

#include <vector>

#include "weylab/quantize.hpp"

namespace weylab {

// Base bump g with the quadratic resolution of identity
// sum_gamma g(z-gamma)^2 = 1, built by normalizing a compactly supported bump.
class PartitionBase {
 public:
  explicit PartitionBase(double support_radius);

  double support_radius() const { return r_; }
  int overlap_count() const { return n_g_; }  // cardinality of V_gamma
  double bump(double z) const;                // unnormalized h
  double g(double z) const;                   // normalized: sum g(.-gamma)^2 = 1

 private:
  double r_;
  int n_g_;
};

PartitionBase make_partition(double support_radius);

// Sampled cutoffs g[F_delta]_gamma(x_j) = g(delta^(1-kappa) F(x_j) - gamma) for
// the finite set of gamma that are not identically zero on the grid.
struct CutoffFamily {
  std::vector<long> gammas;
  linalg::Matrix values;  // values(j, idx): cutoff for gammas[idx] at node j
  double identity_error = 0.0;

  linalg::Vector column(size_t idx) const { return values.col(long(idx)); }
  long index_of(long gamma) const;
};

CutoffFamily cutoffs(const PartitionBase& base, const PerturbField& f, double delta,
                     double kappa, const Grid1D& grid);

// Entries shifted by s = round(z0/h) along both indices with zero fill; the
// snap error |z0 - s h| is reported through *snap_error when non-null.
linalg::Matrix shift_both(const linalg::Matrix& m, long s);
WeylOperator translate_operator(const WeylOperator& k, double z0,
                                double* snap_error = nullptr);

linalg::Matrix resolvent(const WeylOperator& k, double z, double eps_res = 1e-6);

struct QuasiResolvent {
  linalg::Matrix matrix;
  double norm = 0.0;        // measured spectral norm
  double norm_bound = 0.0;  // sqrt((n_g+1)/2) / dist(z, spectrum)
  double dist = 0.0;
  double max_snap_error = 0.0;
  long active_count = 0;
};

QuasiResolvent quasi_resolvent(const WeylOperator& k0, double z, double delta,
                               double kappa, const PerturbField& f,
                               const PartitionBase& base);

// ||(K_delta - z) T - 1||
double defect(const WeylOperator& k_delta, const linalg::Matrix& t, double z);

QuasiResolvent reverse_quasi_resolvent(const WeylOperator& k_delta, double z,
                                       double delta, double kappa,
                                       const PerturbField& f,
                                       const PartitionBase& base);

// ||(K_delta - tau_{-z_gamma} K_0 tau_{z_gamma}) G_gamma||
double lemma1_defect(const WeylOperator& k_delta, const WeylOperator& k0, long gamma,
                     double delta, double kappa, const PerturbField& f,
                     const PartitionBase& base);

// ||[tau_{-z_gamma} R_0(z) tau_{z_gamma}, G_gamma]||
double commutator_defect(const WeylOperator& k0, double z, long gamma, double delta,
                         double kappa, const PerturbField& f,
                         const PartitionBase& base);

// Shared assembly: sum_gamma G_gamma shift(R, dir*s_gamma) G_gamma with
// s_gamma = round(delta^kappa gamma / h).
QuasiResolvent assemble_quasi(const linalg::Matrix& r, int dir,
                              const CutoffFamily& family, double delta, double kappa,
                              const Grid1D& grid, double dist, int overlap_count);

}  // namespace weylab
