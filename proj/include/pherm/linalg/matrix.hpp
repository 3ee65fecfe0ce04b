#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pherm {

using cplx = std::complex<double>;

/// Dense square complex matrix, column-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const cplx> d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t size() const noexcept { return n_; }

  cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i + j * n_]; }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i + j * n_]; }

  std::span<cplx> column(std::size_t j) noexcept { return {data_.data() + j * n_, n_}; }
  std::span<const cplx> column(std::size_t j) const noexcept { return {data_.data() + j * n_, n_}; }

  cplx* data() noexcept { return data_.data(); }
  const cplx* data() const noexcept { return data_.data(); }
  std::span<const cplx> values() const noexcept { return data_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix r(n_);
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t i = 0; i < n_; ++i) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  cplx trace() const noexcept {
    cplx s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
  }

  bool all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> data_;
};

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("matrix product: dimension mismatch");
  const std::size_t n = a.size();
  ComplexMatrix c(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l) {
      const cplx blj = b(l, j);
      if (blj == 0.0) continue;
      for (std::size_t i = 0; i < n; ++i) c(i, j) += a(i, l) * blj;
    }
  return c;
}

inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("matrix difference: dimension mismatch");
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t i = 0; i < a.size(); ++i) a(i, j) -= b(i, j);
  return a;
}

/// Largest entry modulus.
inline double max_norm(const ComplexMatrix& a) {
  double r = 0.0;
  for (const cplx& z : a.values()) r = std::max(r, std::abs(z));
  return r;
}

inline double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const cplx& z : a.values()) s += std::norm(z);
  return std::sqrt(s);
}

/// Hermitian matrix. Construction mirrors the upper triangle, so the
/// conjugate symmetry holds exactly rather than up to rounding.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  static HermitianMatrix from_upper(ComplexMatrix m) {
    const std::size_t n = m.size();
    for (std::size_t j = 0; j < n; ++j) {
      m(j, j) = m(j, j).real();
      for (std::size_t i = 0; i < j; ++i) m(j, i) = std::conj(m(i, j));
    }
    return HermitianMatrix(std::move(m));
  }

  std::size_t size() const noexcept { return m_.size(); }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
  const ComplexMatrix& matrix() const noexcept { return m_; }

 private:
  explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

}  // namespace pherm
