#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>

#include "pherm/linalg/matrix.hpp"

namespace pherm {

/// Draw A from the GUE with density proportional to exp(-(n m^2 / 2) tr A^2).
///
/// Diagonal entries are real with variance 1/(n m^2); each upper-triangle
/// entry is complex with E|a_ij|^2 = 1/(n m^2), split evenly between real and
/// imaginary parts. The spectrum then fills the semicircle of radius 2/m.
template <class Urbg>
HermitianMatrix sample_gue(std::size_t n, double m, Urbg& rng) {
  if (n == 0) throw std::invalid_argument("sample_gue: n must be positive");
  if (!(m > 0.0)) throw std::invalid_argument("sample_gue: m must be positive");
  const double var = 1.0 / (static_cast<double>(n) * m * m);
  std::normal_distribution<double> diag(0.0, std::sqrt(var));
  std::normal_distribution<double> off(0.0, std::sqrt(0.5 * var));
  ComplexMatrix a(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const double re = off(rng);
      const double im = off(rng);
      a(i, j) = cplx(re, im);
    }
    a(j, j) = diag(rng);
  }
  return HermitianMatrix::from_upper(std::move(a));
}

}  // namespace pherm
