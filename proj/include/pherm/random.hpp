#pragma once

#include <cstdint>
#include <random>

namespace pherm {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the substream owned by one sample. The mapping is part of the
/// reproducibility contract: changing it changes every persisted run.
constexpr std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t sample_index) noexcept {
  return mix64(mix64(master_seed) ^ mix64(sample_index + 0x632be59bd9b4e019ULL));
}

using Rng = std::mt19937_64;

inline Rng make_substream(std::uint64_t master_seed, std::uint64_t sample_index) {
  return Rng(substream_seed(master_seed, sample_index));
}

}  // namespace pherm
