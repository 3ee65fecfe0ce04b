#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pherm/analytic/boundary.hpp"
#include "pherm/analytic/closed_form.hpp"
#include "pherm/analytic/green.hpp"
#include "pherm/analytic/phase.hpp"
#include "pherm/analytic/prediction.hpp"
#include "pherm/cli/options.hpp"
#include "pherm/cli/plots.hpp"
#include "pherm/ensemble/persist.hpp"
#include "pherm/ensemble/run.hpp"
#include "pherm/ensemble/serialize.hpp"
#include "pherm/ensemble/stats.hpp"
#include "pherm/io/csv.hpp"
#include "pherm/io/format.hpp"
#include "pherm/mech/mech.hpp"

namespace pherm::cli {

using nlohmann::ordered_json;

struct SpectrumOptions {
  ModelOptions model{.n = 1024, .default_lambda = 0.5};
  fs::path out = "spectrum";
};

struct RealDensityOptions {
  ModelOptions model{.n = 2048, .samples = 0};
  std::size_t points = 401;
  fs::path out = "real-density";
};

struct BoundaryOptions {
  std::vector<double> lambdas = {0.5, 15.0 / 32.0, 0.25, 0.125};
  double m = 1.0;
  std::size_t points = 512;
  fs::path out = "boundary";
};

struct FractionOptions {
  ModelOptions model{.n = 128, .samples = 0};
  std::size_t points = 101;
  std::vector<double> mc_lambdas = {0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875};
  fs::path out = "fraction";
};

struct PhaseDiagramOptions {
  std::size_t resolution = 200;
  double t_min = -5.0;
  fs::path out = "phase-diagram";
};

struct CompareOptions {
  ModelOptions model{.n = 512, .samples = 20};
  std::optional<double> reference_m;
  bool mech = false;
  double sigma = 1.0;
  double sigma_prime = 1.0;
  double m0 = 1.0;
  double l1_tol = 0.05;
  double fraction_tol = 0.01;
  double origin_tol = 0.10;
  double outside_tol = 0.02;
  double reality_tol = 1e-8;
  fs::path out = "compare";
};

struct MechCommandOptions {
  MechOptions mech;
  fs::path out = "mech";
};

inline ordered_json model_options_json(const ModelOptions& o, std::size_t k) {
  return {{"n", o.n},         {"k", k},          {"t", o.t},           {"m", o.m},
          {"seed", o.seed},   {"samples", o.samples}, {"bins", o.bins}, {"workers", o.workers},
          {"solver", o.solver}};
}

inline ordered_json mech_options_json(const MechOptions& o) {
  return {{"n", o.n},       {"sigma", o.sigma},     {"sigma-prime", o.sigma_prime},
          {"m0", o.m0},     {"seed", o.seed},       {"samples", o.samples},
          {"bins", o.bins}, {"workers", o.workers}, {"solver", o.solver}};
}

inline void write_command_json(const fs::path& dir, const std::string& command, const ordered_json& flags) {
  ordered_json j;
  j["command"] = command;
  for (const auto& [key, value] : flags.items()) j[key] = value;
  write_text_file(dir / "command.json", j.dump(2) + "\n");
}

inline std::string support_csv(const SupportIntervals& s) {
  io::CsvWriter w({"lo", "hi"});
  for (const Interval& iv : s.intervals) w.row({io::fmt(iv.lo), io::fmt(iv.hi)});
  return w.str();
}

inline std::string boundary_csv(const std::vector<BoundaryCurve>& curves) {
  io::CsvWriter w({"lambda", "blob", "theta", "r_minus", "r_plus"});
  for (const BoundaryCurve& c : curves) {
    const std::size_t p = c.points_per_blob();
    for (std::size_t i = 0; i < c.thetas.size(); ++i)
      w.row({io::fmt(c.lambda), std::to_string(i / p), io::fmt(c.thetas[i]), io::fmt(c.r_minus[i]),
             io::fmt(c.r_plus[i])});
  }
  return w.str();
}

inline std::string density_csv(const RealDensityCurve& c) {
  io::CsvWriter w({"x", "rho"});
  for (std::size_t i = 0; i < c.xs.size(); ++i) w.row({io::fmt(c.xs[i]), io::fmt(c.rho[i])});
  return w.str();
}

inline std::string model_title(const std::string& what, const MetricSpec& metric, double m) {
  return what + ": n=" + std::to_string(metric.n()) + " k=" + std::to_string(metric.k()) +
         " t=" + io::fmt_short(metric.t()) + " m=" + io::fmt_short(m);
}

/// One or more samples: eigenvalues.csv, histograms, the predicted real
/// support and (at t = -1) the predicted boundary, rendered to scatter.svg.
inline int cmd_spectrum(const SpectrumOptions& o, std::ostream& log = std::cout) {
  RunConfig cfg = make_run_config(o.model);
  const MetricSpec& metric = cfg.model.metric;
  ensure_directory(o.out);
  write_command_json(o.out, "spectrum", model_options_json(o.model, metric.k()));
  const RunArtifact art = run_ensemble(cfg);
  write_artifact(o.out, art, {{"command", "spectrum"}});
  const double lambda = metric.lambda();
  write_text_file(o.out / "support.csv", support_csv(support_intervals(lambda, metric.t(), cfg.model.m)));
  if (metric.t() == -1.0 && lambda > 0.0 && lambda < 1.0)
    write_text_file(o.out / "boundary.csv", boundary_csv({make_boundary_curve(lambda, cfg.model.m, 512)}));
  else
    std::filesystem::remove(o.out / "boundary.csv");
  render_spectrum(o.out, model_title("spectrum", metric, cfg.model.m));
  const FractionEstimate f = estimate_fraction_real(art);
  log << "wrote " << (o.out / "scatter.svg").string() << " (" << art.samples() << " sample(s), fraction real "
      << f.mean << ")\n";
  return exit_ok;
}

/// Predicted real density on a grid; with --samples > 0 also a Monte Carlo
/// histogram on the same axis.
inline int cmd_real_density(const RealDensityOptions& o, std::ostream& log = std::cout) {
  if (o.points < 2) throw UsageError("--points must be at least 2");
  const ModelOptions& mo = o.model;
  double lambda = mo.lambda.value_or(mo.default_lambda);
  std::optional<RunConfig> cfg;
  if (mo.samples > 0) {
    cfg = make_run_config(mo);
    lambda = cfg->model.metric.lambda();
  } else if (mo.k) {
    lambda = static_cast<double>(resolve_k(mo)) / static_cast<double>(mo.n);
  }
  try {
    pherm::detail::check_model(lambda, mo.t, mo.m);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  ensure_directory(o.out);
  ordered_json flags = {{"lambda", lambda}, {"t", mo.t}, {"m", mo.m}, {"points", o.points}};
  if (cfg) {
    for (const auto& [key, value] : model_options_json(mo, cfg->model.metric.k()).items()) flags[key] = value;
  }
  write_command_json(o.out, "real-density", flags);

  const SupportIntervals support = support_intervals(lambda, mo.t, mo.m);
  write_text_file(o.out / "support.csv", support_csv(support));
  std::filesystem::remove(o.out / "hist1d.csv");
  if (cfg) {
    const RunArtifact art = run_ensemble(*cfg);
    write_artifact(o.out, art, {{"command", "real-density"}});
    const double lo = art.hist1d.edges.front();
    const double hi = art.hist1d.edges.back();
    std::vector<double> xs(o.points);
    for (std::size_t i = 0; i < o.points; ++i)
      xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(o.points - 1);
    write_text_file(o.out / "density.csv", density_csv(real_density_curve(std::move(xs), lambda, mo.t, mo.m)));
    const DensityComparison d = compare_density(art.hist1d, lambda, mo.t, mo.m);
    log << "L1 distance " << d.l1 << ", KS distance " << d.ks << '\n';
  } else {
    write_text_file(o.out / "density.csv", density_csv(real_density_curve(lambda, mo.t, mo.m, o.points)));
  }
  render_density(o.out, "real density: lambda=" + io::fmt_short(lambda) + " t=" + io::fmt_short(mo.t) +
                            " m=" + io::fmt_short(mo.m));
  log << "wrote " << (o.out / "density.svg").string() << " (" << support.count() << " support interval(s))\n";
  return exit_ok;
}

/// Boundary of the complex domain at t = -1 for each lambda.
inline int cmd_boundary(const BoundaryOptions& o, std::ostream& log = std::cout) {
  if (o.lambdas.empty()) throw UsageError("boundary: need at least one --lambda");
  if (o.points < 2) throw UsageError("--points must be at least 2");
  std::vector<BoundaryCurve> curves;
  for (double lambda : o.lambdas) {
    if (!(lambda > 0.0 && lambda < 1.0))
      throw UsageError("boundary: lambda=" + io::fmt_short(lambda) + " outside (0, 1) has no complex domain");
    if (!(o.m > 0.0)) throw UsageError("--m must be positive");
    curves.push_back(make_boundary_curve(lambda, o.m, o.points));
  }
  ensure_directory(o.out);
  write_command_json(o.out, "boundary", {{"lambda", o.lambdas}, {"m", o.m}, {"points", o.points}});
  write_text_file(o.out / "boundary.csv", boundary_csv(curves));
  render_boundary(o.out, "complex domain at t=-1, m=" + io::fmt_short(o.m));
  log << "wrote " << (o.out / "boundary.svg").string() << '\n';
  return exit_ok;
}

/// Predicted fraction of real eigenvalues over a lambda grid; with
/// --samples > 0 also Monte Carlo estimates at the --mc-lambda values.
inline int cmd_fraction(const FractionOptions& o, std::ostream& log = std::cout) {
  const ModelOptions& mo = o.model;
  if (o.points < 2) throw UsageError("--points must be at least 2");
  try {
    pherm::detail::check_model(0.5, mo.t, mo.m);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  ensure_directory(o.out);
  ordered_json flags = {{"t", mo.t}, {"m", mo.m}, {"points", o.points}};
  if (mo.samples > 0) {
    flags["mc-lambda"] = o.mc_lambdas;
    for (const auto& [key, value] : model_options_json(mo, 0).items())
      if (key != "k") flags[key] = value;
  }
  write_command_json(o.out, "fraction", flags);

  io::CsvWriter w({"lambda", "fraction", "carlson_bound"});
  for (std::size_t i = 0; i < o.points; ++i) {
    const double lambda = static_cast<double>(i) / static_cast<double>(o.points - 1);
    const double f = mo.t == -1.0 ? fraction_real(lambda) : fraction_real_general(lambda, mo.t, mo.m);
    w.row({io::fmt(lambda), io::fmt(f), io::fmt(fraction_real(lambda))});
  }
  write_text_file(o.out / "fraction.csv", w.str());

  std::filesystem::remove(o.out / "fraction_mc.csv");
  if (mo.samples > 0) {
    io::CsvWriter mc({"lambda", "k", "n", "samples", "mean", "std_error", "min_fraction"});
    for (double lambda : o.mc_lambdas) {
      ModelOptions one = mo;
      one.k.reset();
      one.lambda = lambda;
      const RunConfig cfg = make_run_config(one);
      RunConfig lean = cfg;
      lean.keep_spectra = false;
      const RunArtifact art = run_ensemble(lean);
      const FractionEstimate f = estimate_fraction_real(art);
      mc.row({io::fmt(cfg.model.metric.lambda()), std::to_string(cfg.model.metric.k()), std::to_string(mo.n),
              std::to_string(cfg.samples), io::fmt(f.mean), io::fmt(f.std_error), io::fmt(f.min())});
      log << "lambda " << cfg.model.metric.lambda() << ": fraction real " << f.mean << " +- " << f.std_error << '\n';
    }
    write_text_file(o.out / "fraction_mc.csv", mc.str());
  }
  render_fraction(o.out, "fraction of real eigenvalues: t=" + io::fmt_short(mo.t));
  log << "wrote " << (o.out / "fraction.svg").string() << '\n';
  return exit_ok;
}

/// Critical curves, shaded phase regions and a labelled grid of the
/// (lambda, t < 0) plane.
inline int cmd_phase_diagram(const PhaseDiagramOptions& o, std::ostream& log = std::cout) {
  if (o.resolution < 4) throw UsageError("--resolution must be at least 4");
  if (!(o.t_min < -1.0)) throw UsageError("--t-min must be below -1");
  ensure_directory(o.out);
  write_command_json(o.out, "phase-diagram", {{"resolution", o.resolution}, {"t-min", o.t_min}});
  const std::size_t r = o.resolution;
  auto lambda_at = [r](std::size_t i) { return (static_cast<double>(i) + 0.5) / static_cast<double>(r); };

  io::CsvWriter curves({"lambda", "t_cr", "t_c", "t_r"});
  std::vector<CriticalCurves> cc;
  for (std::size_t i = 0; i < r; ++i) {
    cc.push_back(critical_curves(lambda_at(i)));
    const CriticalCurves& c = cc.back();
    curves.row({io::fmt(c.lambda), io::fmt(c.t_cr), io::fmt(c.t_c), c.t_r ? io::fmt(*c.t_r) : "nan"});
  }
  write_text_file(o.out / "curves.csv", curves.str());

  io::CsvWriter regions({"region", "lambda", "t"});
  auto add_region = [&](const std::string& name, auto lower, auto upper, auto defined) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < r; ++i)
      if (defined(cc[i])) idx.push_back(i);
    for (std::size_t i : idx) regions.row({name, io::fmt(cc[i].lambda), io::fmt(upper(cc[i]))});
    for (auto it = idx.rbegin(); it != idx.rend(); ++it)
      regions.row({name, io::fmt(cc[*it].lambda), io::fmt(lower(cc[*it]))});
  };
  add_region(
      "disconnected_complex", [](const CriticalCurves& c) { return std::min(c.t_c, c.t_cr); },
      [](const CriticalCurves& c) { return std::max(c.t_c, c.t_cr); }, [](const CriticalCurves&) { return true; });
  add_region(
      "three_real_intervals", [](const CriticalCurves& c) { return std::min(*c.t_r, c.t_cr); },
      [](const CriticalCurves& c) { return std::max(*c.t_r, c.t_cr); },
      [](const CriticalCurves& c) { return c.t_r.has_value(); });
  write_text_file(o.out / "regions.csv", regions.str());

  io::CsvWriter grid({"lambda", "t", "phase", "on_boundary"});
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const double t = o.t_min * (static_cast<double>(j) + 0.5) / static_cast<double>(r);
      const PhaseResult p = phase_classify(lambda_at(i), t);
      grid.row({io::fmt(lambda_at(i)), io::fmt(t), std::string(to_string(p.label)), p.on_boundary ? "1" : "0"});
    }
  }
  write_text_file(o.out / "phase_grid.csv", grid.str());
  render_phase(o.out, "phase diagram", o.t_min);
  log << "wrote " << (o.out / "phase.svg").string() << '\n';
  return exit_ok;
}

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  ///< "<=", ">=" or "==", value against threshold
  bool pass = false;
};

inline Check make_check(std::string name, double value, std::string relation, double threshold) {
  bool pass = false;
  if (relation == "<=") pass = value <= threshold;
  else if (relation == ">=") pass = value >= threshold;
  else pass = value == threshold;
  return {std::move(name), value, threshold, std::move(relation), pass};
}

inline ordered_json checks_json(const std::vector<Check>& checks) {
  ordered_json arr = ordered_json::array();
  ordered_json failures = ordered_json::array();
  for (const Check& c : checks) {
    arr.push_back({{"name", c.name}, {"value", c.value}, {"relation", c.relation}, {"threshold", c.threshold},
                   {"pass", c.pass}});
    if (!c.pass) failures.push_back(c.name);
  }
  const bool pass = failures.empty();
  return {{"pass", pass}, {"checks", arr}, {"failures", failures}};
}

inline int report_checks(const std::vector<Check>& checks, std::ostream& log) {
  bool all = true;
  for (const Check& c : checks) {
    log << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.value << ' ' << c.relation << ' ' << c.threshold
        << '\n';
    all = all && c.pass;
  }
  return all ? exit_ok : exit_acceptance;
}

/// Checks of one ensemble run against the analytic predictions evaluated at
/// `reference_m`.
inline std::vector<Check> compare_run(const RunArtifact& art, double reference_m, const CompareOptions& o) {
  const MetricSpec& metric = art.config.model.metric;
  const double lambda = metric.lambda();
  const double t = metric.t();
  std::vector<Check> checks;
  const FractionEstimate f = estimate_fraction_real(art);
  if (t < 0.0) {
    const auto mn = *std::min_element(art.real_counts.begin(), art.real_counts.end());
    checks.push_back(make_check("carlson_min_real_count", static_cast<double>(mn), ">=",
                                static_cast<double>(metric.carlson_bound())));
  }
  const double predicted = t == -1.0 ? fraction_real(lambda) : fraction_real_general(lambda, t, reference_m);
  checks.push_back(make_check("fraction_real_abs_error", std::abs(f.mean - predicted), "<=", o.fraction_tol));
  const DensityComparison d = compare_density(art.hist1d, lambda, t, reference_m);
  checks.push_back(make_check("density_l1", d.l1, "<=", o.l1_tol));
  if (t == -1.0 && lambda > 0.0 && lambda < 1.0) {
    if (lambda != 0.5) {
      const double expect = rho_real_closed_form(0.0, lambda, reference_m);
      checks.push_back(make_check("density_at_origin_rel_error",
                                  std::abs(density_at_origin(art.hist1d) - expect) / expect, "<=", o.origin_tol));
    }
    const double rate = boundary_violation_rate(art.spectra, make_boundary_curve(lambda, reference_m),
                                                spacing_margin(metric.n(), reference_m));
    checks.push_back(make_check("complex_outside_dilated_domain", rate, "<=", o.outside_tol));
  }
  return checks;
}

inline std::vector<Check> compare_mech(const std::vector<Spectrum>& spectra, double tol) {
  const MechReality r = check_mech_reality(spectra);
  const double frac =
      r.eigenvalues == 0 ? 0.0 : 1.0 - static_cast<double>(r.complex_classified) / static_cast<double>(r.eigenvalues);
  return {make_check("fraction_real", frac, "==", 1.0), make_check("max_relative_imag", r.max_relative_imag, "<=", tol),
          make_check("min_relative_real", r.min_relative_real, ">=", -tol)};
}

/// Ensemble run plus threshold checks; exit code 1 when any check fails.
inline int cmd_compare(const CompareOptions& o, std::ostream& log = std::cout) {
  ensure_directory(o.out);
  std::vector<Check> checks;
  if (o.mech) {
    MechOptions mo{o.model.n, o.sigma, o.sigma_prime, o.m0, o.model.seed, o.model.samples, o.model.bins,
                   o.model.workers, o.model.solver};
    const MechParams p = make_mech_params(mo);
    ordered_json flags = mech_options_json(mo);
    flags["mech"] = true;
    write_command_json(o.out, "compare", flags);
    const auto spectra = run_mech(p, mo.samples, mo.workers, parse_backend(mo.solver));
    write_text_file(o.out / "eigenvalues.csv", eigenvalues_csv(spectra));
    checks = compare_mech(spectra, o.reality_tol);
    ordered_json summary = checks_json(checks);
    summary["command"] = "compare";
    write_text_file(o.out / "summary.json", summary.dump(2) + "\n");
  } else {
    RunConfig cfg = make_run_config(o.model);
    const double ref_m = o.reference_m.value_or(cfg.model.m);
    if (!(ref_m > 0.0)) throw UsageError("--reference-m must be positive");
    ordered_json flags = model_options_json(o.model, cfg.model.metric.k());
    if (o.reference_m) flags["reference-m"] = *o.reference_m;
    write_command_json(o.out, "compare", flags);
    const RunArtifact art = run_ensemble(cfg);
    checks = compare_run(art, ref_m, o);
    ordered_json extra = checks_json(checks);
    extra["command"] = "compare";
    extra["reference_m"] = ref_m;
    write_artifact(o.out, art, extra);
  }
  return report_checks(checks, log);
}

/// Spectra of the positive-metric mechanical model.
inline int cmd_mech(const MechCommandOptions& o, std::ostream& log = std::cout) {
  const MechParams p = make_mech_params(o.mech);
  if (o.mech.bins < 2) throw UsageError("--bins must be at least 2");
  ensure_directory(o.out);
  write_command_json(o.out, "mech", mech_options_json(o.mech));
  const auto spectra = run_mech(p, o.mech.samples, o.mech.workers, parse_backend(o.mech.solver));
  write_text_file(o.out / "eigenvalues.csv", eigenvalues_csv(spectra));
  double hi = 0.0;
  std::uint64_t total = 0;
  for (const Spectrum& s : spectra) {
    total += s.size();
    for (const cplx& z : s.eigenvalues) hi = std::max(hi, z.real());
  }
  Histogram1D h(Range1D{0.0, hi > 0.0 ? 1.05 * hi : 1.0}, o.mech.bins);
  for (const Spectrum& s : spectra)
    for (const cplx& z : s.eigenvalues) h.add(z.real());
  h.normalize(total);
  write_text_file(o.out / "hist1d.csv", hist1d_csv(h));
  const MechReality r = check_mech_reality(spectra);
  ordered_json summary = {{"command", "mech"},
                          {"samples", spectra.size()},
                          {"eigenvalues", r.eigenvalues},
                          {"complex_classified", r.complex_classified},
                          {"fraction_real", r.eigenvalues == 0 ? 0.0
                                                               : 1.0 - static_cast<double>(r.complex_classified) /
                                                                           static_cast<double>(r.eigenvalues)},
                          {"max_relative_imag", r.max_relative_imag},
                          {"min_relative_real", r.min_relative_real},
                          {"hist1d_out_of_range", h.out_of_range}};
  write_text_file(o.out / "summary.json", summary.dump(2) + "\n");
  render_mech(o.out, "mechanical model: n=" + std::to_string(p.n) + " sigma=" + io::fmt_short(p.sigma) +
                         " sigma'=" + io::fmt_short(p.sigma_prime) + " m0=" + io::fmt_short(p.m0));
  log << "wrote " << (o.out / "spectrum.svg").string() << " (" << r.complex_classified << " complex of "
      << r.eigenvalues << ")\n";
  return exit_ok;
}

}  // namespace pherm::cli
