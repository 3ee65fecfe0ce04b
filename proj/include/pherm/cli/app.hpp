#pragma once

#include <exception>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pherm/cli/commands.hpp"
#include "pherm/cli/options.hpp"
#include "pherm/ensemble/persist.hpp"
#include "pherm/error.hpp"

namespace pherm::cli {

/// Parse the command line and run the selected subcommand. Returns the
/// process exit code.
inline int run(int argc, const char* const* argv, std::ostream& log = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Pseudo-hermitian random matrix ensembles: spectra, large-N predictions and checks", "pherm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "pherm 1.0.0");

  std::string spectrum_config, density_config, boundary_config, fraction_config, phase_config, compare_config,
      mech_config;

  SpectrumOptions spectrum;
  auto* sp = app.add_subcommand("spectrum", "sample spectra and plot them in the complex plane");
  add_model_flags(*sp, spectrum.model);
  sp->add_option("--out", spectrum.out, "output directory")->capture_default_str();
  sp->add_option("--config", spectrum_config, "JSON file with flag values (flags override it)");

  RealDensityOptions density;
  auto* rd = app.add_subcommand("real-density", "predicted density of real eigenvalues, optional Monte Carlo overlay");
  add_model_flags(*rd, density.model);
  rd->add_option("--points", density.points, "grid points of the predicted curve")->capture_default_str();
  rd->add_option("--out", density.out, "output directory")->capture_default_str();
  rd->add_option("--config", density_config, "JSON file with flag values (flags override it)");

  BoundaryOptions boundary;
  auto* bd = app.add_subcommand("boundary", "boundary of the complex domain at t = -1");
  bd->add_option("--lambda", boundary.lambdas, "one or more lambda values")->capture_default_str();
  bd->add_option("--m", boundary.m, "mass scale")->capture_default_str();
  bd->add_option("--points", boundary.points, "points per blob")->capture_default_str();
  bd->add_option("--out", boundary.out, "output directory")->capture_default_str();
  bd->add_option("--config", boundary_config, "JSON file with flag values (flags override it)");

  FractionOptions fraction;
  auto* fr = app.add_subcommand("fraction", "fraction of real eigenvalues against lambda");
  add_model_flags(*fr, fraction.model);
  fr->add_option("--points", fraction.points, "lambda grid points of the predicted curve")->capture_default_str();
  fr->add_option("--mc-lambda", fraction.mc_lambdas, "lambda values sampled when --samples > 0")
      ->capture_default_str();
  fr->add_option("--out", fraction.out, "output directory")->capture_default_str();
  fr->add_option("--config", fraction_config, "JSON file with flag values (flags override it)");

  PhaseDiagramOptions phase;
  auto* ph = app.add_subcommand("phase-diagram", "critical curves and phases of the (lambda, t) plane");
  ph->add_option("--resolution", phase.resolution, "grid points per axis")->capture_default_str();
  ph->add_option("--t-min", phase.t_min, "lower end of the t axis")->capture_default_str();
  ph->add_option("--out", phase.out, "output directory")->capture_default_str();
  ph->add_option("--config", phase_config, "JSON file with flag values (flags override it)");

  CompareOptions compare;
  auto* cp = app.add_subcommand("compare", "run an ensemble and check it against the predictions");
  add_model_flags(*cp, compare.model);
  cp->add_option("--reference-m", compare.reference_m, "mass scale of the prediction (default: --m)");
  cp->add_flag("--mech", compare.mech, "check the positive-metric mechanical model instead");
  cp->add_option("--sigma", compare.sigma, "mechanical model: stiffness factor scale")->capture_default_str();
  cp->add_option("--sigma-prime", compare.sigma_prime, "mechanical model: mass factor scale")->capture_default_str();
  cp->add_option("--m0", compare.m0, "mechanical model: mass shift")->capture_default_str();
  cp->add_option("--l1-tol", compare.l1_tol, "largest accepted L1 density distance")->capture_default_str();
  cp->add_option("--fraction-tol", compare.fraction_tol, "largest accepted fraction error")->capture_default_str();
  cp->add_option("--origin-tol", compare.origin_tol, "largest accepted relative error of the density at 0")
      ->capture_default_str();
  cp->add_option("--outside-tol", compare.outside_tol, "largest accepted share outside the dilated domain")
      ->capture_default_str();
  cp->add_option("--out", compare.out, "output directory")->capture_default_str();
  cp->add_option("--config", compare_config, "JSON file with flag values (flags override it)");

  MechCommandOptions mech;
  auto* mc = app.add_subcommand("mech", "spectra of the positive-metric mechanical model");
  add_mech_flags(*mc, mech.mech);
  mc->add_option("--out", mech.out, "output directory")->capture_default_str();
  mc->add_option("--config", mech_config, "JSON file with flag values (flags override it)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, log, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  struct Entry {
    CLI::App* sub;
    const std::string* config;
    std::function<int()> body;
  };
  const std::vector<Entry> entries = {
      {sp, &spectrum_config, [&] { return cmd_spectrum(spectrum, log); }},
      {rd, &density_config, [&] { return cmd_real_density(density, log); }},
      {bd, &boundary_config, [&] { return cmd_boundary(boundary, log); }},
      {fr, &fraction_config, [&] { return cmd_fraction(fraction, log); }},
      {ph, &phase_config, [&] { return cmd_phase_diagram(phase, log); }},
      {cp, &compare_config, [&] { return cmd_compare(compare, log); }},
      {mc, &mech_config, [&] { return cmd_mech(mech, log); }},
  };

  try {
    for (const Entry& e : entries) {
      if (!e.sub->parsed()) continue;
      if (!e.config->empty()) apply_config_file(*e.sub, *e.config);
      return e.body();
    }
    return exit_usage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  }
}

}  // namespace pherm::cli
