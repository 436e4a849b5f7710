#pragma once

// Dense complex eigenvalues (LAPACK zgeev).

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace kdvlab::linalg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// All eigenvalues of a general square complex matrix. The argument is consumed.
std::vector<Complex> eigenvalues(Matrix a);

}  // namespace kdvlab::linalg
