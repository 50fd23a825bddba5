// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace measurekit {

/// xoshiro256** seeded through splitmix64.
///
/// The stream produced for a given seed is fixed and platform independent:
/// state words are the first four splitmix64 outputs starting from `seed`,
/// and uniform() takes the top 53 bits of next() scaled by 2^-53.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  /// Independent stream `stream` derived from `seed`:
  /// Rng(splitmix64(seed ^ splitmix64(stream + 1))).
  static Rng for_stream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  result_type operator()() { return next(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  /// Uniform double in [0, 1).
  double uniform();

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t x);

/// Inverse-CDF sampler over a probability vector in stored point order.
///
/// A draw u in [0,1) selects the first index whose cumulative probability
/// exceeds u. Draws that land past the final cumulative sum (rounding) go
/// to the last point with positive probability.
class CategoricalSampler {
 public:
  explicit CategoricalSampler(std::span<const double> probabilities);

  std::size_t operator()(Rng& rng) const { return pick(rng.uniform()); }
  std::size_t pick(double u) const;
  std::size_t size() const { return cdf_.size(); }

 private:
  std::vector<double> cdf_;
  std::size_t last_positive_ = 0;
};

}  // namespace measurekit
