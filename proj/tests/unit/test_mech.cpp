#include <catch_amalgamated.hpp>

#include <cmath>

#include "pherm/error.hpp"
#include "pherm/linalg/eigen.hpp"
#include "pherm/mech/mech.hpp"

using namespace pherm;
using Catch::Approx;

TEST_CASE("factor entries have variance scale^2 / n", "[mech][statistical]") {
  // Over 100 samples at n = 256, tr(C^dagger C) / n averages 6.5e6 squared
  // entries; its relative spread is far below 5%.
  const std::size_t n = 256;
  for (double sigma : {0.5, 2.0}) {
    double acc = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
      Rng rng = make_substream(4, i);
      const ComplexMatrix c = sample_factor(n, sigma, rng);
      double tr = 0.0;
      for (const cplx& z : c.values()) tr += std::norm(z);
      acc += tr / n;
    }
    CHECK(acc / 100.0 == Approx(sigma * sigma).epsilon(0.05));
  }
}

TEST_CASE("mass matrix is positive definite with spectrum above m0", "[mech]") {
  const MechParams p{48, 1.0, 1.3, 0.7, 3};
  const MechPair pair = sample_mech_pair(p, 0);
  const Spectrum s = classify_spectrum(eigenvalues(pair.mass.matrix(), default_backend()));
  REQUIRE(s.real_count() == 48);
  for (double x : s.real_values()) CHECK(x >= 0.7 - 1e-10);
}

TEST_CASE("equal mass and stiffness give the identity", "[mech]") {
  const MechParams p{24, 1.0, 1.0, 1.0, 8};
  const MechPair pair = sample_mech_pair(p, 0);
  const ComplexMatrix phi = mech_phi({pair.mass, pair.mass});
  CHECK(max_norm(phi - ComplexMatrix::identity(24)) < 1e-12);
  const Spectrum s = classify_spectrum(eigenvalues(phi, default_backend()));
  for (const cplx& z : s.eigenvalues) CHECK(std::abs(z - 1.0) < 1e-10);
}

TEST_CASE("mech spectra are real and nonnegative", "[mech]") {
  const MechParams p{64, 1.0, 1.0, 1.0, 12};
  const auto spectra = run_mech(p, 8, 2);
  const MechReality r = check_mech_reality(spectra);
  CHECK(r.eigenvalues == 64u * 8u);
  CHECK(r.complex_classified == 0);
  CHECK(r.max_relative_imag <= 1e-8);
  CHECK(r.min_relative_real >= -1e-8);
}

TEST_CASE("intertwining with the mass matrix", "[mech]") {
  const MechParams p{32, 1.5, 0.8, 0.5, 2};
  const MechPair pair = sample_mech_pair(p, 1);
  const ComplexMatrix phi = mech_phi(pair);
  const double scale = max_norm(pair.mass.matrix()) * max_norm(phi);
  CHECK(mech_intertwining_residual(phi, pair.mass) <= 1e-8 * scale);
}

TEST_CASE("degenerate mass factor reduces to a Wishart spectrum", "[mech]") {
  const MechParams p{32, 1.0, 1e-9, 1.0, 6};
  const MechPair pair = sample_mech_pair(p, 0);
  CHECK(max_norm(pair.mass.matrix() - ComplexMatrix::identity(32)) < 1e-15);
  const ComplexMatrix phi = mech_phi(pair);
  CHECK(max_norm(phi - pair.stiffness.matrix()) < 1e-12);
}

TEST_CASE("mech parameter and conditioning errors", "[mech]") {
  CHECK_THROWS_AS(sample_mech_pair({4, 0.0, 1.0, 1.0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sample_mech_pair({4, 1.0, 1.0, 0.0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sample_mech_pair({0, 1.0, 1.0, 1.0, 0}), std::invalid_argument);

  ComplexMatrix m = ComplexMatrix::identity(2);
  m(1, 1) = 1e-14;
  const HermitianMatrix ill = HermitianMatrix::from_upper(m);
  CHECK_THROWS_AS(mech_phi({ill, ill}), NumericalError);
}
