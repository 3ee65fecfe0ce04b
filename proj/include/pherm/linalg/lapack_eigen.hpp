#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef lapack_complex_double
#define lapack_complex_double std::complex<double>
#endif
#include <lapacke.h>

#include "pherm/error.hpp"
#include "pherm/linalg/matrix.hpp"

namespace pherm::lapack {

/// Eigenvalues through zgebal + zgehrd + zhseqr (no Schur vectors).
inline std::vector<cplx> eigenvalues(const ComplexMatrix& mat) {
  if (!mat.all_finite()) throw std::invalid_argument("eigenvalues: matrix has NaN or Inf entries");
  const auto n = static_cast<lapack_int>(mat.size());
  std::vector<cplx> w(mat.size());
  if (n == 0) return w;
  ComplexMatrix h = mat;
  lapack_int ilo = 1;
  lapack_int ihi = n;
  std::vector<double> scale(mat.size());
  lapack_int info = LAPACKE_zgebal(LAPACK_COL_MAJOR, 'S', n, h.data(), n, &ilo, &ihi, scale.data());
  if (info != 0) throw NumericalError("zgebal failed with info=" + std::to_string(info));
  std::vector<cplx> tau(mat.size());
  info = LAPACKE_zgehrd(LAPACK_COL_MAJOR, n, ilo, ihi, h.data(), n, tau.data());
  if (info != 0) throw NumericalError("zgehrd failed with info=" + std::to_string(info));
  info = LAPACKE_zhseqr(LAPACK_COL_MAJOR, 'E', 'N', n, ilo, ihi, h.data(), n, w.data(), nullptr, 1);
  if (info > 0) throw ConvergenceError(static_cast<std::size_t>(info - 1), 0);
  if (info < 0) throw NumericalError("zhseqr rejected argument " + std::to_string(-info));
  return w;
}

}  // namespace pherm::lapack
