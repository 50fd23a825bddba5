// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "measurekit/instrument.hpp"
#include "measurekit/measure.hpp"
#include "measurekit/observable.hpp"

namespace measurekit {

/// Trials are drawn in fixed blocks of this size. Block b always uses
/// Rng::for_stream(seed, b), so counts do not depend on how blocks are
/// spread over workers.
inline constexpr std::size_t kSamplingBlock = std::size_t{1} << 16;

struct SamplingOptions {
  unsigned workers = 1;
  bool keep_records = false;
};

/// One simulated trial. theta_out is set for non-destructive experiments.
struct TrialRecord {
  std::size_t trial = 0;
  std::size_t theta_in = 0;
  std::size_t omega = 0;
  std::optional<std::size_t> theta_out;
};

struct ExperimentSample {
  FiniteSpace outcome_space;
  std::size_t trials = 0;
  std::vector<std::uint64_t> counts;
  std::vector<TrialRecord> records;

  std::vector<double> frequencies() const;
};

struct InstrumentSample {
  FiniteSpace outcome_space;
  FiniteSpace out_info_space;
  std::size_t trials = 0;
  /// joint_counts[omega * |out| + out]
  std::vector<std::uint64_t> joint_counts;
  std::vector<std::uint64_t> outcome_counts;
  std::vector<TrialRecord> records;

  std::vector<double> outcome_frequencies() const;
  std::vector<double> joint_frequencies() const;
  /// Empirical posterior given omega; empty when omega never occurred.
  std::optional<std::vector<double>> conditional_posterior(std::size_t omega) const;
};

/// Two-stage sampling: theta ~ pi, then omega ~ Phi(.; theta).
ExperimentSample sample_experiment(const GeneralizedObservable& obs,
                                   const InformationState& state, std::size_t n,
                                   std::uint64_t seed, const SamplingOptions& options = {});

/// Direct sampling of omega from the outcome distribution.
ExperimentSample sample_outcomes(const GeneralizedObservable& obs,
                                 const InformationState& state, std::size_t n,
                                 std::uint64_t seed, const SamplingOptions& options = {});

/// theta_in ~ pi, then (omega, theta_out) ~ Y(. x .)(theta_in).
InstrumentSample sample_instrument(const ExtendedObservable& y, const InformationState& state,
                                   std::size_t n, std::uint64_t seed,
                                   const SamplingOptions& options = {});

/// Sequential trials of `first` then `second` on the posterior point. The
/// sample lives on Omega_1 x Omega_2 and second's output space.
InstrumentSample sample_consecutive(const ExtendedObservable& first,
                                    const ExtendedObservable& second,
                                    const InformationState& state, std::size_t n,
                                    std::uint64_t seed, const SamplingOptions& options = {});

/// Experiment oracle answering mu_E(B; [pi]) by two-stage sampling of
/// `n` trials. The sample for a state is drawn once, from a stream keyed
/// by `seed` and the state's probability bits, and cached, so repeated
/// queries at one state see one consistent empirical measure.
ExperimentOracle monte_carlo_oracle(const GeneralizedObservable& obs, std::size_t n,
                                    std::uint64_t seed, const SamplingOptions& options = {});

/// Analytic-vs-empirical comparison of one probability.
struct Comparison {
  std::string label;
  double analytic = 0.0;
  double empirical = 0.0;
  std::size_t trials = 0;
  double sigma = 0.0;
  double z = 0.0;
  bool passed = false;
};

/// Binomial comparison: sigma = sqrt(p (1 - p) / n), z = (f - p) / sigma.
/// A degenerate p (0 or 1) passes only on an exact match.
Comparison compare_probability(std::string label, double analytic, std::uint64_t count,
                               std::size_t trials, double bound = 4.0);

double total_variation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace measurekit
