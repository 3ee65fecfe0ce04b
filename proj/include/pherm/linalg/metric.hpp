#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "pherm/linalg/matrix.hpp"

namespace pherm {

/// The deterministic metric B = diag(1,...,1, t,...,t) with k leading ones.
class MetricSpec {
 public:
  MetricSpec(std::size_t n, std::size_t k, double t) : n_(n), k_(k), t_(t) {
    if (n == 0) throw std::invalid_argument("metric: n must be positive");
    if (k > n) throw std::invalid_argument("metric: k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
    if (!(t != 0.0) || !std::isfinite(t)) throw std::invalid_argument("metric: t must be finite and nonzero");
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  double t() const noexcept { return t_; }
  double lambda() const noexcept { return static_cast<double>(k_) / static_cast<double>(n_); }

  /// Diagonal entry i of B.
  double entry(std::size_t i) const noexcept { return i < k_ ? 1.0 : t_; }

  bool indefinite() const noexcept { return t_ < 0.0 && k_ > 0 && k_ < n_; }

  /// Lower bound on the number of real eigenvalues of A*B for any hermitian A
  /// (zero when the metric is definite).
  std::size_t carlson_bound() const noexcept {
    if (t_ > 0.0) return n_;
    return k_ > n_ - k_ ? 2 * k_ - n_ : n_ - 2 * k_;
  }

  friend bool operator==(const MetricSpec&, const MetricSpec&) = default;

 private:
  std::size_t n_;
  std::size_t k_;
  double t_;
};

inline ComplexMatrix build_metric(const MetricSpec& spec) {
  ComplexMatrix b(spec.n());
  for (std::size_t i = 0; i < spec.n(); ++i) b(i, i) = spec.entry(i);
  return b;
}

/// phi = A * B. B is diagonal, so this is a column scaling of A.
inline ComplexMatrix build_phi(const HermitianMatrix& a, const MetricSpec& spec) {
  if (a.size() != spec.n())
    throw std::invalid_argument("build_phi: A is " + std::to_string(a.size()) + "x" + std::to_string(a.size()) +
                                " but metric has n=" + std::to_string(spec.n()));
  ComplexMatrix phi = a.matrix();
  for (std::size_t j = spec.k(); j < spec.n(); ++j)
    for (cplx& z : phi.column(j)) z *= spec.t();
  return phi;
}

/// max |(phi^dagger B - B phi)_ij|, the pseudo-hermiticity defect of phi.
inline double intertwining_residual(const ComplexMatrix& phi, const MetricSpec& spec) {
  const std::size_t n = phi.size();
  double r = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const cplx lhs = std::conj(phi(j, i)) * spec.entry(j);
      const cplx rhs = spec.entry(i) * phi(i, j);
      r = std::max(r, std::abs(lhs - rhs));
    }
  return r;
}

}  // namespace pherm
