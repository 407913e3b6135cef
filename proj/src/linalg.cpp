#include "weylab/linalg.hpp"

#include <cmath>
#include <cstdlib>

#include "weylab/errors.hpp"

#if defined(WEYLAB_HAVE_LAPACKE)
#include <cblas.h>
#include <lapacke.h>
extern "C" void openblas_set_num_threads(int);
#endif

namespace weylab::linalg {

void use_single_threaded_blas() {
#if defined(WEYLAB_HAVE_LAPACKE)
  setenv("OPENBLAS_NUM_THREADS", "1", 0);
  openblas_set_num_threads(1);
#endif
}

EigResult sym_eig(const Matrix& a, bool want_vectors) {
  EigResult out;
  const int n = int(a.rows());
#if defined(WEYLAB_HAVE_LAPACKE)
  Matrix work = a;  // column-major, overwritten with vectors for 'V'
  out.values.resize(n);
  int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'L', n,
                            work.data(), n, out.values.data());
  if (info != 0)
    fail(ErrorCode::EigSolveFailure,
         "dsyevd failed with info=" + std::to_string(info));
  if (want_vectors) out.vectors = std::move(work);
#else
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      a, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::EigSolveFailure, "SelfAdjointEigenSolver did not converge");
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  if (want_vectors) out.vectors = es.eigenvectors();
#endif
  return out;
}

std::vector<double> sym_eigenvalues(const Matrix& a) {
  return sym_eig(a, false).values;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
#if defined(WEYLAB_HAVE_LAPACKE)
  Matrix c(a.rows(), b.cols());
  cblas_dgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, int(a.rows()),
              int(b.cols()), int(a.cols()), 1.0, a.data(), int(a.rows()),
              b.data(), int(b.rows()), 0.0, c.data(), int(c.rows()));
  return c;
#else
  return a * b;
#endif
}

Matrix inverse(const Matrix& a) {
  const int n = int(a.rows());
#if defined(WEYLAB_HAVE_LAPACKE)
  Matrix work = a;
  std::vector<lapack_int> ipiv(n);
  int info = LAPACKE_dgetrf(LAPACK_COL_MAJOR, n, n, work.data(), n, ipiv.data());
  if (info != 0)
    fail(ErrorCode::EigSolveFailure, "dgetrf failed with info=" + std::to_string(info));
  info = LAPACKE_dgetri(LAPACK_COL_MAJOR, n, work.data(), n, ipiv.data());
  if (info != 0)
    fail(ErrorCode::EigSolveFailure, "dgetri failed with info=" + std::to_string(info));
  return work;
#else
  return a.inverse();
#endif
}

double spectral_norm(const Matrix& a) {
  Matrix g;
#if defined(WEYLAB_HAVE_LAPACKE)
  g.resize(a.cols(), a.cols());
  cblas_dsyrk(CblasColMajor, CblasLower, CblasTrans, int(a.cols()), int(a.rows()),
              1.0, a.data(), int(a.rows()), 0.0, g.data(), int(g.rows()));
  g = g.selfadjointView<Eigen::Lower>();
#else
  g = a.transpose() * a;
#endif
  auto vals = sym_eigenvalues(g);
  double top = vals.empty() ? 0.0 : vals.back();
  return std::sqrt(std::max(0.0, top));
}

}  // namespace weylab::linalg
