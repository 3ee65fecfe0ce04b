#pragma once

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <system_error>

#include "json.hpp"
#include "pherm/ensemble/run.hpp"
#include "pherm/ensemble/serialize.hpp"
#include "pherm/ensemble/stats.hpp"

namespace pherm {

/// Error while reading or writing an output file; the message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

inline void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

/// Summary record with fractions, hashes and runtime. `extra` is merged in.
inline nlohmann::ordered_json artifact_summary(const RunArtifact& art, const nlohmann::ordered_json& extra = {}) {
  const FractionEstimate f = estimate_fraction_real(art);
  nlohmann::ordered_json j;
  j["input_hash"] = art.input_hash;
  j["content_hash"] = art.content_hash;
  j["samples"] = art.samples();
  j["fraction_real"] = {{"mean", f.mean}, {"std_error", f.std_error}, {"min", f.min()}};
  j["carlson_bound"] = art.config.model.metric.carlson_bound();
  j["carlson_violations"] = art.carlson_violations;
  j["hist1d_out_of_range"] = art.hist1d.out_of_range;
  j["hist2d_out_of_range"] = art.hist2d.out_of_range;
  j["wall_seconds"] = art.wall_seconds;
  for (const auto& [key, value] : extra.items()) j[key] = value;
  return j;
}

/// Persist a run as config.json, eigenvalues.csv (when spectra were kept),
/// hist1d.csv, hist2d.csv and summary.json.
inline void write_artifact(const std::filesystem::path& dir, const RunArtifact& art,
                           const nlohmann::ordered_json& extra_summary = {}) {
  ensure_directory(dir);
  auto cfg = config_to_json(art.config);
  write_text_file(dir / "config.json", cfg.dump(2) + "\n");
  if (!art.spectra.empty()) write_text_file(dir / "eigenvalues.csv", eigenvalues_csv(art.spectra));
  write_text_file(dir / "hist1d.csv", hist1d_csv(art.hist1d));
  write_text_file(dir / "hist2d.csv", hist2d_csv(art.hist2d));
  write_text_file(dir / "summary.json", artifact_summary(art, extra_summary).dump(2) + "\n");
}

}  // namespace pherm
