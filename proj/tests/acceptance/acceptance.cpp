// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails. Each criterion also has a wall-clock budget; running over
// it is a failure.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "pherm/pherm.hpp"

using namespace pherm;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> lines;

  void note(const std::string& s) { lines.push_back(s); }
  void require(bool ok, const std::string& what) {
    lines.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
    pass = pass && ok;
  }
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<void(Outcome&)> body;
};

std::string num(double x, int prec = 4) {
  std::ostringstream s;
  s << std::setprecision(prec) << x;
  return s.str();
}

std::size_t g_workers = 1;

RunConfig model_run(std::size_t n, double lambda, double t, std::size_t samples, std::uint64_t seed) {
  RunConfig c;
  const auto k = static_cast<std::size_t>(std::llround(lambda * static_cast<double>(n)));
  c.model.metric = MetricSpec(n, k, t);
  c.model.m = 1.0;
  c.model.seed = seed;
  c.samples = samples;
  c.workers = g_workers;
  return c;
}

// Fraction of real eigenvalues at t = -1 against |1 - 2 lambda|, plus the
// per-sample lower bound |n - 2k| on the real count.
void fraction_law(Outcome& out) {
  for (double lambda : {0.125, 0.25, 0.375}) {
    RunConfig c = model_run(128, lambda, -1.0, 1000, 1001);
    c.keep_spectra = false;
    RunArtifact art;
    try {
      art = run_ensemble(c);
    } catch (const SampleError& e) {
      out.require(false, "lambda=" + num(lambda) + ": " + e.what());
      continue;
    }
    const FractionEstimate f = estimate_fraction_real(art);
    const double expect = fraction_real(lambda);
    out.require(std::abs(f.mean - expect) <= 0.01, "lambda=" + num(lambda) + ": mean fraction " + num(f.mean, 6) +
                                                       " +- " + num(f.std_error, 2) + ", |1-2 lambda| = " +
                                                       num(expect) + ", tolerance 0.01");
    const std::size_t bound = c.model.metric.carlson_bound();
    const std::size_t mn = *std::min_element(art.real_counts.begin(), art.real_counts.end());
    out.require(mn >= bound, "lambda=" + num(lambda) + ": smallest real count " + std::to_string(mn) +
                                 " >= |n-2k| = " + std::to_string(bound) + " in all 1000 samples");
  }
}

// Histogram of real eigenvalues (100 bins) against the closed-form density.
void real_density(Outcome& out) {
  for (double lambda : {0.125, 0.25, 0.375}) {
    RunConfig c = model_run(2048, lambda, -1.0, 20, 2002);
    const double a = support_endpoint_a(lambda, 1.0);
    c.range_1d = Range1D{-1.05 * a, 1.05 * a};
    c.bins_1d = 100;
    c.keep_spectra = false;
    const RunArtifact art = run_ensemble(c);
    RealDensityCurve curve;
    curve.xs = art.hist1d.centers();
    for (double x : curve.xs) curve.rho.push_back(rho_real_closed_form(x, lambda, 1.0));
    const DensityComparison d = compare_density(art.hist1d, curve);
    out.require(d.l1 <= 0.05, "lambda=" + num(lambda) + ": L1 distance " + num(d.l1) + " <= 0.05");
    const double expect = rho_real_closed_form(0.0, lambda, 1.0);
    const double got = density_at_origin(art.hist1d);
    const double rel = std::abs(got - expect) / expect;
    out.require(rel <= 0.10, "lambda=" + num(lambda) + ": density at 0 " + num(got) + " vs m|1-2 lambda|/pi = " +
                                 num(expect) + " (rel. error " + num(rel, 3) + " <= 0.10)");
    out.note("lambda=" + num(lambda) + ": " + num(art.wall_seconds, 3) + " s for 20 samples");
  }
}

// Complex eigenvalues of one large sample lie in the predicted domain,
// dilated by 3 / (sqrt(N) m).
void boundary_containment(Outcome& out) {
  for (double lambda : {0.5, 0.25}) {
    const RunArtifact art = run_ensemble(model_run(2048, lambda, -1.0, 1, 3003));
    const double margin = spacing_margin(2048, 1.0, 3.0);
    const double rate = boundary_violation_rate(art.spectra, make_boundary_curve(lambda, 1.0), margin);
    out.require(rate <= 0.02, "lambda=" + num(lambda) + ": " + num(100.0 * rate, 3) + "% of " +
                                  std::to_string(art.spectra[0].complex_count()) +
                                  " complex eigenvalues outside the domain dilated by " + num(margin, 3) +
                                  " (limit 2%)");
  }
}

// Interior cells of the complex density against m^2/pi at lambda = 1/2, and
// the pooled interior density at lambda = 1/4 against lambda = 1/8.
void uniform_bulk(Outcome& out) {
  const double margin = spacing_margin(128, 1.0, 1.0);
  auto run = [&](double lambda, std::size_t samples, std::uint64_t seed) {
    RunConfig c = model_run(128, lambda, -1.0, samples, seed);
    c.window_2d = Window2D::square(1.1);
    c.bins_2d_x = 22;
    c.bins_2d_y = 22;
    c.keep_spectra = false;
    return uniformity_check(run_ensemble(c).hist2d, lambda, 1.0, margin);
  };
  const UniformityReport half = run(0.5, 5000, 4004);
  out.require(!half.interior.empty() && half.max_relative_deviation <= 0.10,
              "lambda=0.5: largest deviation over " + std::to_string(half.interior.size()) + " interior cells " +
                  num(half.max_relative_deviation, 3) + " <= 0.10 (erosion " + num(margin, 3) + ")");
  out.note("lambda=0.5: pooled interior density " + num(half.pooled_density, 5) + " +- " +
           num(half.pooled_std_error, 2) + ", m^2/pi = " + num(half.expected, 5));

  const UniformityReport q = run(0.25, 2000, 4005);
  const UniformityReport e = run(0.125, 2000, 4006);
  const double diff = std::abs(q.pooled_density - e.pooled_density);
  const double se = std::hypot(q.pooled_std_error, e.pooled_std_error);
  out.require(!q.interior.empty() && !e.interior.empty() && diff <= 2.0 * se,
              "pooled interior density " + num(q.pooled_density, 5) + " (lambda=1/4, " +
                  std::to_string(q.interior.size()) + " cells) vs " + num(e.pooled_density, 5) + " (lambda=1/8, " +
                  std::to_string(e.interior.size()) + " cells): difference " + num(diff, 3) + " <= 2 sigma = " +
                  num(2.0 * se, 3));
}

// Real support intervals and the touch-point gap across t = -2.9, -3.2, -3.5
// at lambda = 3/4.
void phase_sequence(Outcome& out) {
  const double lambda = 0.75;
  const double m = 1.0;
  const std::size_t n = 2048;
  const std::size_t samples = 8;
  const auto touch = predicted_touch_points(lambda, m);
  const double r = spacing_margin(n, m, 3.0);
  out.note("t_cr = " + num(critical_curves(lambda).t_cr) + ", t_r = " + num(*critical_curves(lambda).t_r, 6) +
           ", touch points +-" + num(touch[1]));
  std::uint64_t seed = 5005;
  for (double t : {-2.9, -3.2, -3.5}) {
    const RunArtifact art = run_ensemble(model_run(n, lambda, t, samples, seed++));
    const std::size_t predicted = support_intervals(lambda, t, m).count();
    const RealIntervalDetection det = detect_real_intervals(art.spectra);
    const double dist = complex_distance_to_points(art.spectra, touch);
    const FractionEstimate f = estimate_fraction_real(art);
    std::string found;
    for (const Interval& iv : det.intervals) found += " [" + num(iv.lo) + ", " + num(iv.hi) + "]";
    out.require(det.count() == predicted, "t=" + num(t) + ": " + std::to_string(det.count()) +
                                              " real interval(s) detected, " + std::to_string(predicted) +
                                              " predicted;" + found);
    if (t == -2.9)
      out.require(dist >= r, "t=-2.9: nearest complex eigenvalue to the touch points at distance " + num(dist, 3) +
                                 " >= " + num(r, 3));
    else
      out.note("t=" + num(t) + ": nearest complex eigenvalue to the touch points at distance " + num(dist, 3));
    if (t == -3.2)
      out.require(f.mean > 0.5, "t=-3.2: fraction real " + num(f.mean, 5) + " > 0.5");
    else
      out.note("t=" + num(t) + ": fraction real " + num(f.mean, 5));
  }
}

// Identities of the large-N solution, no sampling.
void analytic_identities(Outcome& out) {
  const std::vector<double> lambdas = {0.125, 0.25, 0.375, 0.5, 0.625, 0.8};
  double worst_sum = 0.0;
  double worst_prod = 0.0;
  for (double lambda : lambdas) {
    for (double m : {1.0, 1.5}) {
      const double t0 = theta0(lambda);
      for (int i = 0; i <= 200; ++i) {
        const double th = t0 + (std::numbers::pi - 2.0 * t0) * i / 200.0;
        const auto rr = boundary_t_minus1(th, lambda, m);
        if (!rr) {
          worst_sum = INFINITY;
          continue;
        }
        worst_sum = std::max(worst_sum, std::abs(rr->r_plus * rr->r_plus + rr->r_minus * rr->r_minus - 1.0 / (m * m)));
        const double s = std::sin(th);
        if (s > 0.0)
          worst_prod = std::max(worst_prod, std::abs(rr->r_plus * rr->r_minus -
                                                     std::abs(2.0 * lambda - 1.0) / (2.0 * m * m * s)));
      }
    }
  }
  out.require(worst_sum <= 1e-12, "r+^2 + r-^2 = 1/m^2: worst error " + num(worst_sum, 3));
  out.require(worst_prod <= 1e-12, "r+ r- = |2 lambda - 1| / (2 m^2 sin theta): worst error " + num(worst_prod, 3));

  boost::math::quadrature::tanh_sinh<double> quad;
  double worst_mass = 0.0;
  double worst_balance = 0.0;
  for (double lambda : lambdas) {
    for (double m : {1.0, 1.5}) {
      const double a = support_endpoint_a(lambda, m);
      const double mass = quad.integrate([&](double x) { return rho_real_closed_form(x, lambda, m); }, -a, a, 1e-13);
      worst_mass = std::max(worst_mass, std::abs(mass - std::abs(1.0 - 2.0 * lambda)));
      worst_balance =
          std::max(worst_balance, std::abs(domain_area(lambda, m) * rho_complex_uniform(m) + fraction_real(lambda) - 1.0));
    }
  }
  out.require(worst_mass <= 1e-6, "integral of the real density = |1 - 2 lambda|: worst error " + num(worst_mass, 3));
  out.require(worst_balance <= 1e-12, "area x density + fraction = 1: worst error " + num(worst_balance, 3));

  double worst_tc = 0.0;
  for (int i = 1; i < 100; ++i) {
    const auto c = critical_curves(i / 100.0);
    worst_tc = std::max(worst_tc, std::abs(c.t_c * c.t_cr - 1.0));
  }
  out.require(worst_tc <= 1e-12, "t_c t_cr = 1: worst error " + num(worst_tc, 3));
  const double tr = *critical_curves(0.5).t_r;
  out.require(std::abs(tr + 1.0) <= 1e-9, "t_r(1/2) = " + num(tr, 15));

  double worst_rho = 0.0;
  for (double lambda : lambdas) {
    for (double m : {1.0, 1.5}) {
      const double a = support_endpoint_a(lambda, m);
      for (int i = -100; i <= 100; ++i) {
        const double x = 1.1 * a * i / 100.0;
        worst_rho = std::max(worst_rho, std::abs(rho_real_general(x, lambda, -1.0, m) - rho_real_closed_form(x, lambda, m)));
      }
    }
  }
  out.require(worst_rho <= 1e-8, "general-t density at t=-1 equals the closed form: worst error " + num(worst_rho, 3));
}

// Eigensolver against independent polynomial oracles, and conjugate-pair
// classification of sampled spectra.
void eigensolver_oracles(Outcome& out) {
  std::mt19937_64 rng(7007);
  double worst_poly = 0.0;
  double worst_companion = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int rep = 0; rep < 25; ++rep) {
      const ComplexMatrix a = oracle::random_matrix(n, rng);
      const auto coeffs = oracle::characteristic_polynomial(a);
      const auto eig = eigenvalues(a, default_backend());
      worst_poly = std::max(worst_poly, oracle::matched_distance(eig, oracle::durand_kerner(coeffs)));
      worst_companion =
          std::max(worst_companion, oracle::matched_distance(eigenvalues(oracle::companion(coeffs), default_backend()), eig));
    }
  }
  out.require(worst_poly <= 1e-8, "eigenvalues vs roots of the cofactor characteristic polynomial (n <= 4): " +
                                      num(worst_poly, 3));
  out.require(worst_companion <= 1e-8, "eigenvalues of the companion matrix vs the matrix (n <= 4): " +
                                           num(worst_companion, 3));

  double worst_trace = 0.0;
  double worst_det = 0.0;
  for (std::size_t n : {2, 8, 16, 32, 64}) {
    for (int rep = 0; rep < 4; ++rep) {
      ComplexMatrix a = oracle::random_matrix(n, rng);
      const double s = 1.0 / std::sqrt(static_cast<double>(n));
      for (std::size_t j = 0; j < n; ++j)
        for (cplx& z : a.column(j)) z *= s;
      const auto e = eigenvalues(a, default_backend());
      cplx sum = 0.0;
      cplx prod = 1.0;
      for (const cplx& z : e) {
        sum += z;
        prod *= z;
      }
      const cplx det = determinant(a);
      worst_trace = std::max(worst_trace, std::abs(sum - a.trace()) / std::max(1.0, std::abs(a.trace())));
      worst_det = std::max(worst_det, std::abs(prod - det) / std::max(1.0, std::abs(det)));
    }
  }
  out.require(worst_trace <= 1e-8, "sum of eigenvalues = trace (n <= 64): " + num(worst_trace, 3));
  out.require(worst_det <= 1e-8, "product of eigenvalues = determinant (n <= 64): " + num(worst_det, 3));

  const std::vector<std::pair<double, double>> models = {{0.25, -1.0}, {0.125, -1.0}, {0.5, -1.0},
                                                         {0.75, -3.2}, {0.75, -2.9}, {0.25, -0.3}};
  std::size_t ok = 0;
  std::size_t total = 0;
  std::string first_failure;
  for (std::size_t i = 0; i < 1000; ++i) {
    const auto [lambda, t] = models[i % models.size()];
    ModelParams p{MetricSpec(128, static_cast<std::size_t>(lambda * 128), t), 1.0, 8008};
    ++total;
    try {
      const Spectrum s = sample_spectrum(p, i, default_backend());
      if (s.real_count() + s.complex_count() == 128 && s.real_count() >= p.metric.carlson_bound()) ++ok;
      else if (first_failure.empty()) first_failure = "sample " + std::to_string(i) + ": bookkeeping";
    } catch (const NumericalError& e) {
      if (first_failure.empty()) first_failure = "sample " + std::to_string(i) + ": " + e.what();
    }
  }
  out.require(ok == total, "conjugate-pair classification succeeded on " + std::to_string(ok) + " of " +
                               std::to_string(total) + " spectra at n=128" +
                               (first_failure.empty() ? "" : " (" + first_failure + ")"));
}

// Positive metric: every eigenvalue of M^{-1} K is real and nonnegative.
void positive_metric(Outcome& out) {
  const MechParams p{256, 1.0, 1.0, 1.0, 9009};
  const auto spectra = run_mech(p, 50, g_workers);
  const MechReality r = check_mech_reality(spectra);
  out.require(r.complex_classified == 0, std::to_string(r.eigenvalues - r.complex_classified) + " of " +
                                             std::to_string(r.eigenvalues) + " eigenvalues classified real");
  out.require(r.max_relative_imag <= 1e-8, "max |Im| / scale = " + num(r.max_relative_imag, 3) + " <= 1e-8");
  out.require(r.min_relative_real >= -1e-8, "min Re / scale = " + num(r.min_relative_real, 3) + " >= -1e-8");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  g_workers = default_workers();
  app.add_option("--only", only, "run only these criteria (1-8)");
  app.add_option("--workers", g_workers, "worker threads")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "fraction of real eigenvalues follows |1 - 2 lambda|", 300.0, fraction_law},
      {2, "real eigenvalue density matches the closed form", 600.0, real_density},
      {3, "complex eigenvalues lie in the predicted domain", 120.0, boundary_containment},
      {4, "complex density is uniform and independent of lambda", 600.0, uniform_bulk},
      {5, "phase sequence at lambda = 3/4", 600.0, phase_sequence},
      {6, "analytic identities", 60.0, analytic_identities},
      {7, "eigensolver oracles and pair classification", 120.0, eigensolver_oracles},
      {8, "positive metric gives real nonnegative spectra", 120.0, positive_metric},
  };

  std::cout << "acceptance: workers=" << g_workers << ", eigensolver=" << to_string(default_backend()) << "\n";
  int failed = 0;
  int ran = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    ++ran;
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_seconds;
    if (!in_time) out.require(false, "runtime " + num(secs, 4) + " s exceeds the budget of " + num(c.budget_seconds) + " s");
    const bool pass = out.pass;
    if (!pass) ++failed;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << std::fixed
              << std::setprecision(1) << secs << " s, budget " << c.budget_seconds << " s)\n"
              << std::defaultfloat;
    for (const auto& l : out.lines) std::cout << "       " << l << "\n";
    std::cout.flush();
  }
  std::cout << (ran - failed) << "/" << ran << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
