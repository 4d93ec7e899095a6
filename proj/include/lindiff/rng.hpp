#pragma once

// Counter-based random streams. Every stream is addressed by
// (seed, purpose, index, sub-index), so draws do not depend on the order or the
// thread in which streams are consumed.

#include <cstdint>
#include <limits>
#include <random>

#include <Eigen/Core>

namespace lindiff {

enum class StreamTag : std::uint64_t {
  Basis = 1,
  Latent = 2,
  Noise = 3,
  TrainNoise = 4,
  Inject = 5,
  Trial = 6,
  PowerStart = 7,
  Probe = 8,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Hashes a stream address into a single 64-bit key.
constexpr std::uint64_t streamKey(std::uint64_t seed, StreamTag tag, std::uint64_t index = 0,
                                  std::uint64_t sub = 0) {
  std::uint64_t k = mix64(seed);
  k = mix64(k ^ static_cast<std::uint64_t>(tag));
  k = mix64(k ^ index);
  return mix64(k ^ (sub * 0xd1b54a32d192ed03ULL));
}

/// UniformRandomBitGenerator whose i-th output is a hash of (key, i).
class StreamEngine {
 public:
  using result_type = std::uint64_t;

  explicit StreamEngine(std::uint64_t key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix64(key_ ^ mix64(counter_++)); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

inline StreamEngine makeStream(std::uint64_t seed, StreamTag tag, std::uint64_t index = 0,
                               std::uint64_t sub = 0) {
  return StreamEngine(streamKey(seed, tag, index, sub));
}

/// Seed for a nested experiment (e.g. one Monte Carlo trial).
inline std::uint64_t deriveSeed(std::uint64_t seed, StreamTag tag, std::uint64_t index,
                                std::uint64_t sub = 0) {
  return streamKey(seed, tag, index, sub);
}

/// Fills `out` with i.i.d. N(0, stddev^2) draws from one stream.
template <typename Derived>
void fillGaussian(Derived&& out, StreamEngine& engine, double stddev = 1.0) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = stddev * normal(engine);
}

}  // namespace lindiff
