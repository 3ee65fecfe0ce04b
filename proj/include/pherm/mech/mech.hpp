#pragma once

// Disordered mechanical system: phi = M^{-1} K with M = C^dagger C + m0 and
// K = Ct^dagger Ct. Its metric M is positive definite, so the spectrum
// (squared frequencies) is real and nonnegative.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pherm/error.hpp"
#include "pherm/linalg/dense.hpp"
#include "pherm/linalg/eigen.hpp"
#include "pherm/linalg/matrix.hpp"
#include "pherm/linalg/spectrum.hpp"
#include "pherm/parallel.hpp"
#include "pherm/random.hpp"

namespace pherm {

struct MechParams {
  std::size_t n = 1;
  double sigma = 1.0;        ///< scale of the stiffness factor Ct
  double sigma_prime = 1.0;  ///< scale of the mass factor C
  double m0 = 1.0;           ///< mass shift
  std::uint64_t seed = 0;

  void validate() const {
    if (n == 0) throw std::invalid_argument("mech: n must be positive");
    if (!(sigma > 0.0) || !(sigma_prime > 0.0)) throw std::invalid_argument("mech: sigma and sigma_prime must be positive");
    if (!(m0 > 0.0)) throw std::invalid_argument("mech: m0 must be positive");
  }
};

inline constexpr double mech_condition_limit = 1e12;

/// n x n complex matrix with i.i.d. entries, E|c_ij|^2 = scale^2 / n.
template <class Urbg>
ComplexMatrix sample_factor(std::size_t n, double scale, Urbg& rng) {
  std::normal_distribution<double> g(0.0, scale / std::sqrt(2.0 * static_cast<double>(n)));
  ComplexMatrix c(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      c(i, j) = cplx(re, im);
    }
  return c;
}

/// C^dagger C + shift * identity, from the upper triangle.
inline HermitianMatrix gram(const ComplexMatrix& c, double shift = 0.0) {
  const std::size_t n = c.size();
  ComplexMatrix g(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto cj = c.column(j);
    for (std::size_t i = 0; i <= j; ++i) {
      const auto ci = c.column(i);
      cplx s = 0.0;
      for (std::size_t p = 0; p < n; ++p) s += std::conj(ci[p]) * cj[p];
      g(i, j) = s;
    }
    g(j, j) += shift;
  }
  return HermitianMatrix::from_upper(std::move(g));
}

struct MechPair {
  HermitianMatrix mass;
  HermitianMatrix stiffness;
};

inline MechPair sample_mech_pair(const MechParams& p, std::uint64_t sample_index = 0) {
  p.validate();
  Rng rng = make_substream(p.seed, sample_index);
  const ComplexMatrix c = sample_factor(p.n, p.sigma_prime, rng);
  const ComplexMatrix ct = sample_factor(p.n, p.sigma, rng);
  return {gram(c, p.m0), gram(ct)};
}

/// phi = M^{-1} K by a Cholesky solve. Throws NumericalError when M is not
/// positive definite or its condition estimate exceeds the limit.
inline ComplexMatrix mech_phi(const MechPair& pair) {
  const Cholesky chol(pair.mass);
  const double cond = chol.condition_estimate();
  if (!(cond <= mech_condition_limit))
    throw NumericalError("mech: mass matrix condition estimate " + std::to_string(cond) + " exceeds limit");
  return chol.solve(pair.stiffness.matrix());
}

/// max |(phi^dagger M - M phi)_ij|.
inline double mech_intertwining_residual(const ComplexMatrix& phi, const HermitianMatrix& mass) {
  const ComplexMatrix& m = mass.matrix();
  return max_norm(phi.adjoint() * m - m * phi);
}

inline Spectrum mech_spectrum(const MechParams& p, std::uint64_t sample_index = 0,
                              EigenBackend backend = default_backend(), double tol = default_classification_tol) {
  const ComplexMatrix phi = mech_phi(sample_mech_pair(p, sample_index));
  return classify_spectrum(eigenvalues(phi, backend), tol);
}

/// Spectra of `samples` independent draws, in sample order.
inline std::vector<Spectrum> run_mech(const MechParams& p, std::size_t samples, std::size_t workers = 1,
                                      EigenBackend backend = default_backend(),
                                      double tol = default_classification_tol) {
  p.validate();
  std::vector<Spectrum> out(samples);
  detail::parallel_for(samples, workers, [&](std::size_t i) { out[i] = mech_spectrum(p, i, backend, tol); });
  return out;
}

/// Largest violation of reality and nonnegativity over a set of spectra,
/// each measured relative to its spectral scale.
struct MechReality {
  std::size_t eigenvalues = 0;
  std::size_t complex_classified = 0;
  double max_relative_imag = 0.0;
  double min_relative_real = 0.0;
};

inline MechReality check_mech_reality(const std::vector<Spectrum>& spectra) {
  MechReality r;
  for (const Spectrum& s : spectra) {
    const double scale = spectral_scale(s.eigenvalues);
    r.eigenvalues += s.size();
    r.complex_classified += s.complex_count();
    for (const cplx& z : s.eigenvalues) {
      r.max_relative_imag = std::max(r.max_relative_imag, std::abs(z.imag()) / scale);
      r.min_relative_real = std::min(r.min_relative_real, z.real() / scale);
    }
  }
  return r;
}

}  // namespace pherm
