#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace plcp {

/// Identifies one replication of an experiment. Every random stream used by a
/// replication is a pure function of these two numbers.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t replication_index = 0;

  friend constexpr bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

using Engine = std::mt19937_64;

/// Recorded in artifact metadata.
inline constexpr std::string_view kGeneratorName = "mt19937_64/splitmix64-derived";

/// Independent random streams of a replication.
enum class Stream : std::uint64_t {
  kLines = 1,        // the line process
  kLinePoints = 2,   // Poisson points on one stationary line (keyed by line index)
  kTypicalLine = 3,  // Palm typical line: angle and points
  kIncrement = 4,    // densification increments (keyed by line, level)
};

/// SplitMix64 finalizer (Steele, Lea & Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of a stream: the master seed, replication index, stream tag, key and
/// level and side are folded in that order through splitmix64(h ^ value).
constexpr std::uint64_t derive_seed(SeedSpec seed, Stream stream, std::uint64_t key = 0,
                                    std::uint64_t level = 0, std::uint64_t side = 0) {
  std::uint64_t h = splitmix64(seed.master_seed);
  h = splitmix64(h ^ seed.replication_index);
  h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
  h = splitmix64(h ^ key);
  h = splitmix64(h ^ level);
  h = splitmix64(h ^ side);
  return h;
}

/// Points on the two halves of a line come from separate streams, so the
/// points of a shorter chord are always a subset of those of a longer one.
enum class Side : std::uint64_t { kNone = 0, kNegative = 1, kPositive = 2 };

inline Engine make_engine(SeedSpec seed, Stream stream, std::uint64_t key = 0,
                          std::uint64_t level = 0, Side side = Side::kNone) {
  return Engine(derive_seed(seed, stream, key, level, static_cast<std::uint64_t>(side)));
}

}  // namespace plcp
