#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pherm/ensemble/config.hpp"
#include "pherm/mech/mech.hpp"

namespace pherm::cli {

enum ExitCode : int { exit_ok = 0, exit_acceptance = 1, exit_usage = 2, exit_numerical = 3 };

/// Bad flags, bad config files or parameters outside the model's domain.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Flags shared by the sampling commands. `k` wins over `lambda`.
struct ModelOptions {
  std::size_t n = 512;
  std::optional<std::size_t> k{};
  std::optional<double> lambda{};
  double default_lambda = 0.25;
  double t = -1.0;
  double m = 1.0;
  std::uint64_t seed = 1;
  std::size_t samples = 1;
  std::size_t bins = 100;
  std::size_t workers = default_workers();
  std::string solver = to_string(default_backend());
};

/// k from the flags: explicit k, else the nearest integer to lambda * n.
/// Warnings go to `warn`.
inline std::size_t resolve_k(const ModelOptions& o, std::ostream& warn = std::cerr) {
  if (o.n == 0) throw UsageError("--n must be positive");
  if (o.k) {
    if (*o.k > o.n) throw UsageError("--k=" + std::to_string(*o.k) + " exceeds --n=" + std::to_string(o.n));
    const double lk = static_cast<double>(*o.k) / static_cast<double>(o.n);
    if (o.lambda && std::abs(*o.lambda - lk) > 1e-12)
      warn << "warning: --k=" << *o.k << " takes precedence over --lambda=" << *o.lambda << " (lambda = " << lk
           << ")\n";
    return *o.k;
  }
  const double lambda = o.lambda.value_or(o.default_lambda);
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw UsageError("--lambda must lie in [0, 1]");
  const double exact = lambda * static_cast<double>(o.n);
  const auto k = static_cast<std::size_t>(std::llround(exact));
  if (std::abs(exact - static_cast<double>(k)) > 1e-9)
    warn << "warning: lambda=" << lambda << " is not a multiple of 1/" << o.n << "; using k=" << k
         << " (lambda = " << static_cast<double>(k) / static_cast<double>(o.n) << ")\n";
  return k;
}

inline RunConfig make_run_config(const ModelOptions& o, std::ostream& warn = std::cerr) {
  const std::size_t k = resolve_k(o, warn);
  if (!(o.t != 0.0) || !std::isfinite(o.t)) throw UsageError("--t must be finite and nonzero");
  if (!(o.m > 0.0)) throw UsageError("--m must be positive");
  if (o.samples < 1) throw UsageError("--samples must be at least 1");
  if (o.bins < 2) throw UsageError("--bins must be at least 2");
  if (o.workers < 1) throw UsageError("--workers must be at least 1");
  RunConfig c;
  c.model.metric = MetricSpec(o.n, k, o.t);
  c.model.m = o.m;
  c.model.seed = o.seed;
  c.samples = o.samples;
  c.bins_1d = o.bins;
  c.workers = o.workers;
  try {
    c.backend = parse_backend(o.solver);
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

struct MechOptions {
  std::size_t n = 256;
  double sigma = 1.0;
  double sigma_prime = 1.0;
  double m0 = 1.0;
  std::uint64_t seed = 1;
  std::size_t samples = 50;
  std::size_t bins = 100;
  std::size_t workers = default_workers();
  std::string solver = to_string(default_backend());
};

inline MechParams make_mech_params(const MechOptions& o) {
  MechParams p{o.n, o.sigma, o.sigma_prime, o.m0, o.seed};
  try {
    p.validate();
    if (o.samples < 1) throw std::invalid_argument("--samples must be at least 1");
    if (o.workers < 1) throw std::invalid_argument("--workers must be at least 1");
    if (parse_backend(o.solver) == EigenBackend::lapack && !lapack_available())
      throw std::invalid_argument("LAPACK backend requested but not compiled in");
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return p;
}

inline void add_model_flags(CLI::App& app, ModelOptions& o) {
  app.add_option("--n", o.n, "matrix dimension")->capture_default_str();
  app.add_option("--k", o.k, "number of +1 entries of the metric (takes precedence over --lambda)");
  app.add_option("--lambda", o.lambda, "fraction k/n of +1 entries")->default_str(std::to_string(o.default_lambda));
  app.add_option("--t", o.t, "metric entry of the last n-k diagonal positions")->capture_default_str();
  app.add_option("--m", o.m, "mass scale of the random matrix")->capture_default_str();
  app.add_option("--seed", o.seed, "master seed")->capture_default_str();
  app.add_option("--samples", o.samples, "number of independent samples")->capture_default_str();
  app.add_option("--bins", o.bins, "bins of the real-eigenvalue histogram")->capture_default_str();
  app.add_option("--workers", o.workers, "worker threads")->capture_default_str();
  app.add_option("--solver", o.solver, "eigensolver backend: lapack or native")->capture_default_str();
}

inline void add_mech_flags(CLI::App& app, MechOptions& o) {
  app.add_option("--n", o.n, "matrix dimension")->capture_default_str();
  app.add_option("--sigma", o.sigma, "scale of the stiffness factor")->capture_default_str();
  app.add_option("--sigma-prime", o.sigma_prime, "scale of the mass factor")->capture_default_str();
  app.add_option("--m0", o.m0, "mass shift")->capture_default_str();
  app.add_option("--seed", o.seed, "master seed")->capture_default_str();
  app.add_option("--samples", o.samples, "number of independent samples")->capture_default_str();
  app.add_option("--bins", o.bins, "bins of the eigenvalue histogram")->capture_default_str();
  app.add_option("--workers", o.workers, "worker threads")->capture_default_str();
  app.add_option("--solver", o.solver, "eigensolver backend: lapack or native")->capture_default_str();
}

namespace detail {

inline std::string json_scalar_text(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  throw UsageError("config key '" + key + "' must be a string, number, boolean or array of those");
}

}  // namespace detail

/// Fill every option of `app` that was not given on the command line from
/// the JSON object in `path`. Keys are flag names without the leading dashes,
/// with '_' and '-' interchangeable. A "command" key (as in command.json) is
/// ignored.
inline void apply_config_file(CLI::App& app, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError(path + ": top level must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    if (name == "config" || name == "command") continue;
    CLI::Option* opt = app.get_option_no_throw("--" + name);
    if (opt == nullptr) throw UsageError(path + ": unknown key '" + key + "' for command " + app.get_name());
    if (opt->count() > 0) continue;
    if (value.is_array()) {
      for (const auto& v : value) opt->add_result(detail::json_scalar_text(v, key));
    } else {
      opt->add_result(detail::json_scalar_text(value, key));
    }
    try {
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError(path + ": key '" + key + "': " + e.what());
    }
  }
}

}  // namespace pherm::cli
