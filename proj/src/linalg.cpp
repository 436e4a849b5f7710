#include "kdvlab/linalg.hpp"

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "kdvlab/error.hpp"

namespace kdvlab::linalg {

std::vector<Complex> eigenvalues(Matrix a) {
  require(a.rows() == a.cols(), ErrorKind::InvalidArgument, "eigenvalues: matrix is not square");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  std::vector<Complex> w(static_cast<size_t>(n));
  if (n == 0) return w;
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, w.data(), nullptr, 1, nullptr, 1);
  require(info == 0, ErrorKind::Numerical, "zgeev failed with info = " + std::to_string(info));
  return w;
}

}  // namespace kdvlab::linalg
