#pragma once

#include <string>
#include <vector>

#include "weylab/linalg.hpp"
#include "weylab/symbols.hpp"

namespace weylab {

struct Grid1D {
  double half_width = 0.0;  // L
  int points = 0;           // N, even

  static Grid1D make(double half_width, int points);
  double spacing() const { return 2.0 * half_width / points; }
  double node(int j) const { return -half_width + j * spacing(); }
  // Midpoint lattice (x_j+x_k)/2 = -L + (j+k) h/2, index m = j+k in [0, 2N-2].
  double half_node(int m) const { return -half_width + m * spacing() / 2.0; }
  bool operator==(const Grid1D&) const = default;
};

// Midpoint/difference kernel of Op^w(a): singular point masses at v = v0 from
// trig terms plus a smooth rapidly decaying part from Gaussian xi-profiles.
struct SingularHop {
  double offset;  // v0
  Fn1 coeff;      // c(z)
};

struct RegularKernelTerm {
  double sigma;
  double amp;  // sigma / sqrt(2 pi)
  Fn1 coeff;   // b(z)
};

class KernelRep {
 public:
  KernelRep(std::vector<SingularHop> singular, std::vector<RegularKernelTerm> regular)
      : singular_(std::move(singular)), regular_(std::move(regular)) {}

  const std::vector<SingularHop>& singular() const { return singular_; }
  const std::vector<RegularKernelTerm>& regular() const { return regular_; }
  bool has_regular() const { return !regular_.empty(); }

  double regular_eval(double z, double v) const;
  double regular_dz(int order, double z, double v) const;

 private:
  std::vector<SingularHop> singular_;
  std::vector<RegularKernelTerm> regular_;
};

struct Provenance {
  std::string symbol_id;
  std::string field_id;
  double delta = 0.0;
};

class WeylOperator {
 public:
  WeylOperator() = default;
  WeylOperator(linalg::Matrix m, Grid1D grid, Provenance prov, double asym_residual)
      : mat_(std::move(m)), grid_(grid), prov_(std::move(prov)),
        asym_residual_(asym_residual) {}

  const linalg::Matrix& matrix() const { return mat_; }
  const Grid1D& grid() const { return grid_; }
  const Provenance& provenance() const { return prov_; }
  double asymmetry_residual() const { return asym_residual_; }
  int size() const { return int(mat_.rows()); }

 private:
  linalg::Matrix mat_;
  Grid1D grid_;
  Provenance prov_;
  double asym_residual_ = 0.0;
};

KernelRep weyl_kernel(const Symbol& a);

WeylOperator build_matrix(const Symbol& a, const Grid1D& grid,
                          const Provenance& prov = {});

struct DecaySample {
  double v_min = 1.0;
  double v_max = 40.0;
  int v_points = 2001;
  double z_radius = 20.0;
  int z_points = 201;
};

// sup over samples with |v| >= v_min of <v>^order |regular part|.
double kernel_decay_check(const KernelRep& rep, int order,
                          const DecaySample& sample = {});

double operator_norm(const WeylOperator& k);
double cv_ratio(const WeylOperator& k, const Symbol& a,
                const SamplingDescriptor& sampling = {});

struct DiffSample {
  double z_radius = 8.0;
  int z_points = 81;
  int quadrature_order = 64;
};

// Max discrepancy between the two sides of the Newton-Leibniz kernel
// difference identity, with the s-integral done by Gauss-Legendre quadrature.
double kernel_difference_check(const Symbol& a, const PerturbField& f, double delta,
                               double kappa, long gamma,
                               const DiffSample& sample = {});

// Gauss-Legendre nodes/weights on [0,1].
void gauss_legendre_01(int order, std::vector<double>& nodes,
                       std::vector<double>& weights);

void save_matrix_binary(const WeylOperator& k, const std::string& path);
WeylOperator load_matrix_binary(const std::string& path);
void save_matrix_csv(const WeylOperator& k, const std::string& path);

}  // namespace weylab
