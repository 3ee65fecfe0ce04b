#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "pherm/error.hpp"
#include "pherm/linalg/dense.hpp"
#include "pherm/linalg/eigen.hpp"
#include "pherm/linalg/gue.hpp"
#include "pherm/linalg/metric.hpp"
#include "pherm/linalg/spectrum.hpp"
#include "pherm/random.hpp"

using namespace pherm;

namespace {

std::vector<EigenBackend> backends() {
  std::vector<EigenBackend> b = {EigenBackend::native};
  if (lapack_available()) b.push_back(EigenBackend::lapack);
  return b;
}

cplx sum(const std::vector<cplx>& v) { return std::accumulate(v.begin(), v.end(), cplx(0.0)); }

cplx product(const std::vector<cplx>& v) {
  cplx p = 1.0;
  for (const cplx& z : v) p *= z;
  return p;
}

}  // namespace

TEST_CASE("eigenvalues are roots of the cofactor characteristic polynomial", "[eigen]") {
  std::mt19937_64 rng(21);
  for (EigenBackend be : backends()) {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (int rep = 0; rep < 5; ++rep) {
        const ComplexMatrix a = oracle::random_matrix(n, rng);
        const auto coeffs = oracle::characteristic_polynomial(a);
        const auto eig = eigenvalues(a, be);
        REQUIRE(eig.size() == n);
        const auto dk = oracle::durand_kerner(coeffs);
        CHECK(oracle::matched_distance(eig, dk) < 1e-8);
        for (const cplx& z : eig) {
          double scale = 0.0;
          for (std::size_t i = 0; i < coeffs.size(); ++i) scale += std::abs(coeffs[i]) * std::pow(std::abs(z), i);
          CHECK(std::abs(oracle::poly_eval(coeffs, z)) <= 1e-10 * scale);
        }
      }
    }
  }
}

TEST_CASE("companion matrix eigenvalues match the original matrix", "[eigen]") {
  std::mt19937_64 rng(22);
  for (EigenBackend be : backends()) {
    for (std::size_t n = 2; n <= 4; ++n) {
      const ComplexMatrix a = oracle::random_matrix(n, rng);
      const auto coeffs = oracle::characteristic_polynomial(a);
      CHECK(oracle::matched_distance(eigenvalues(oracle::companion(coeffs), be), eigenvalues(a, be)) < 1e-8);
    }
  }
}

TEST_CASE("known spectra", "[eigen]") {
  for (EigenBackend be : backends()) {
    // Rotation generator: eigenvalues +-i.
    ComplexMatrix r(2);
    r(0, 1) = -1.0;
    r(1, 0) = 1.0;
    auto e = eigenvalues(r, be);
    CHECK(oracle::matched_distance(e, {cplx(0, 1), cplx(0, -1)}) < 1e-14);

    // Triangular: eigenvalues on the diagonal.
    ComplexMatrix t(3);
    t(0, 0) = 2.0;
    t(1, 1) = cplx(0, -1);
    t(2, 2) = -5.0;
    t(0, 2) = 7.0;
    t(1, 2) = cplx(3, 3);
    e = eigenvalues(t, be);
    CHECK(oracle::matched_distance(e, {2.0, cplx(0, -1), -5.0}) < 1e-13);

    // Zero matrix and 1x1.
    e = eigenvalues(ComplexMatrix(4), be);
    CHECK(oracle::matched_distance(e, std::vector<cplx>(4, 0.0)) == 0.0);
    ComplexMatrix one(1);
    one(0, 0) = cplx(1.5, -2.0);
    CHECK(eigenvalues(one, be).front() == cplx(1.5, -2.0));
  }
}

TEST_CASE("trace and determinant identities", "[eigen]") {
  std::mt19937_64 rng(23);
  for (EigenBackend be : backends()) {
    for (std::size_t n : {8, 16, 32, 64}) {
      // Scaled so that |det| stays O(1).
      ComplexMatrix a = oracle::random_matrix(n, rng);
      const double s = 1.0 / std::sqrt(static_cast<double>(n));
      for (std::size_t j = 0; j < n; ++j)
        for (cplx& z : a.column(j)) z *= s;
      const auto e = eigenvalues(a, be);
      const cplx det = determinant(a);
      CHECK(std::abs(sum(e) - a.trace()) <= 1e-8 * std::max(1.0, std::abs(a.trace())));
      CHECK(std::abs(product(e) - det) <= 1e-8 * std::max(1.0, std::abs(det)));
    }
  }
}

TEST_CASE("backends agree on pseudo-hermitian matrices", "[eigen]") {
  if (!lapack_available()) SKIP("LAPACK backend not compiled in");
  const MetricSpec spec(96, 24, -1.0);
  Rng rng = make_substream(9, 0);
  const ComplexMatrix phi = build_phi(sample_gue(96, 1.0, rng), spec);
  const auto a = eigenvalues(phi, EigenBackend::native);
  const auto b = eigenvalues(phi, EigenBackend::lapack);
  CHECK(oracle::matched_distance(a, b) < 1e-9);
}

TEST_CASE("balancing recovers a badly scaled spectrum", "[eigen]") {
  ComplexMatrix a(3);
  a(0, 0) = 1.0;
  a(0, 1) = 1e6;
  a(1, 0) = 1e-6;
  a(1, 1) = 2.0;
  a(2, 2) = 3.0;
  a(2, 0) = 1e3;
  // The leading block has trace 3 and determinant 1.
  const std::vector<cplx> exact = {(3.0 + std::sqrt(5.0)) / 2.0, (3.0 - std::sqrt(5.0)) / 2.0, 3.0};
  CHECK(oracle::matched_distance(eigenvalues(a, EigenOptions{true, 30}), exact) < 1e-12);
  CHECK(oracle::matched_distance(eigenvalues(a, EigenOptions{false, 30}), exact) < 1e-4);
}

TEST_CASE("classification pairs conjugates and keeps reals", "[spectrum]") {
  const std::vector<cplx> eigs = {cplx(1, 0), cplx(0.5, 0.3), cplx(-2, 1e-12), cplx(0.5, -0.3), cplx(3, 0)};
  const Spectrum s = classify_spectrum(eigs, 1e-8);
  CHECK(s.real_count() == 3);
  CHECK(s.complex_count() == 2);
  REQUIRE(s.pair_indices.size() == 1);
  CHECK(s.pair_indices[0] == std::pair<std::size_t, std::size_t>{1, 3});
  CHECK(s.real_fraction() == Catch::Approx(0.6));
  const auto rv = s.real_values();
  CHECK(std::is_sorted(rv.begin(), rv.end()));
  const auto mask = s.real_mask();
  CHECK(mask == std::vector<bool>{true, false, true, false, true});
  CHECK(s.complex_values().size() == 2);
}

TEST_CASE("classification fails loudly on unpaired values", "[spectrum]") {
  CHECK_THROWS_AS(classify_spectrum({cplx(0, 1), cplx(1, 0)}), ClassificationError);
  CHECK_THROWS_AS(classify_spectrum({cplx(0, -1)}), ClassificationError);
  CHECK_THROWS_AS(classify_spectrum({cplx(0, 1), cplx(0.1, -1)}), ClassificationError);
  CHECK_THROWS_AS(classify_spectrum({1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("classification of sampled pseudo-hermitian spectra", "[spectrum]") {
  // Every spectrum of A B is closed under conjugation, and the number of
  // reals is at least |n - 2k| and has the parity of n.
  const MetricSpec spec(48, 12, -1.0);
  for (std::uint64_t i = 0; i < 40; ++i) {
    Rng rng = make_substream(77, i);
    const ComplexMatrix phi = build_phi(sample_gue(48, 1.0, rng), spec);
    const Spectrum s = classify_spectrum(eigenvalues(phi, default_backend()));
    CHECK(s.real_count() + s.complex_count() == 48);
    CHECK(s.real_count() >= spec.carlson_bound());
    CHECK(s.real_count() % 2 == 0);
  }
}

TEST_CASE("positive metric gives a real spectrum", "[spectrum]") {
  const MetricSpec spec(40, 10, 2.5);
  Rng rng = make_substream(5, 3);
  const Spectrum s = classify_spectrum(eigenvalues(build_phi(sample_gue(40, 1.0, rng), spec), default_backend()));
  CHECK(s.real_count() == 40);
}
