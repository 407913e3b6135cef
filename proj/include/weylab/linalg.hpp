#pragma once

#include <Eigen/Dense>
#include <vector>

namespace weylab::linalg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Keeps BLAS single-threaded so sweep-level parallelism stays deterministic.
void use_single_threaded_blas();

struct EigResult {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns, empty unless requested
};

EigResult sym_eig(const Matrix& a, bool want_vectors);
std::vector<double> sym_eigenvalues(const Matrix& a);

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix inverse(const Matrix& a);

// Largest singular value, computed from the eigenvalues of A^T A.
double spectral_norm(const Matrix& a);

}  // namespace weylab::linalg
