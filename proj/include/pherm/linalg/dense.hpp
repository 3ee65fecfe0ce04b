#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "pherm/error.hpp"
#include "pherm/linalg/matrix.hpp"

namespace pherm {

/// Determinant by LU with partial pivoting.
inline cplx determinant(ComplexMatrix a) {
  const std::size_t n = a.size();
  cplx det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (a(p, k) == 0.0) return 0.0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    const cplx pivot = a(k, k);
    det *= pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = a(i, k) / pivot;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

/// Lower Cholesky factor of a hermitian positive definite matrix.
class Cholesky {
 public:
  explicit Cholesky(const HermitianMatrix& m) : l_(m.size()) {
    const std::size_t n = m.size();
    for (std::size_t j = 0; j < n; ++j) {
      double d = m(j, j).real();
      for (std::size_t p = 0; p < j; ++p) d -= std::norm(l_(j, p));
      if (!(d > 0.0)) throw NumericalError("cholesky: matrix is not positive definite at column " + std::to_string(j));
      const double ljj = std::sqrt(d);
      l_(j, j) = ljj;
      for (std::size_t i = j + 1; i < n; ++i) {
        cplx s = m(i, j);
        for (std::size_t p = 0; p < j; ++p) s -= l_(i, p) * std::conj(l_(j, p));
        l_(i, j) = s / ljj;
      }
    }
  }

  /// (max L_jj / min L_jj)^2, a lower bound on the 2-norm condition number.
  double condition_estimate() const {
    double lo = INFINITY;
    double hi = 0.0;
    for (std::size_t j = 0; j < l_.size(); ++j) {
      lo = std::min(lo, l_(j, j).real());
      hi = std::max(hi, l_(j, j).real());
    }
    return (hi / lo) * (hi / lo);
  }

  /// X with M X = B, solved column by column.
  ComplexMatrix solve(const ComplexMatrix& b) const {
    const std::size_t n = l_.size();
    if (b.size() != n) throw std::invalid_argument("cholesky solve: dimension mismatch");
    ComplexMatrix x = b;
    for (std::size_t c = 0; c < n; ++c) {
      auto col = x.column(c);
      for (std::size_t i = 0; i < n; ++i) {
        cplx s = col[i];
        for (std::size_t p = 0; p < i; ++p) s -= l_(i, p) * col[p];
        col[i] = s / l_(i, i);
      }
      for (std::size_t ii = n; ii-- > 0;) {
        cplx s = col[ii];
        for (std::size_t p = ii + 1; p < n; ++p) s -= std::conj(l_(p, ii)) * col[p];
        col[ii] = s / l_(ii, ii);
      }
    }
    return x;
  }

  const ComplexMatrix& factor() const noexcept { return l_; }

 private:
  ComplexMatrix l_;
};

}  // namespace pherm
