// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#include "measurekit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "measurekit/error.hpp"
#include "measurekit/rng.hpp"

namespace measurekit {
namespace {

/// Runs `trial(rng, index, counts, record)` for every trial, block by block,
/// spreading blocks over workers and summing the per-worker counts.
template <class Trial>
std::vector<std::uint64_t> run_blocks(std::size_t n, std::uint64_t seed,
                                      const SamplingOptions& options, std::size_t bins,
                                      std::vector<TrialRecord>* records, const Trial& trial) {
  if (n == 0) throw InvalidArgument("trial count must be at least 1");
  if (records != nullptr) records->assign(n, TrialRecord{});
  const std::size_t blocks = (n + kSamplingBlock - 1) / kSamplingBlock;
  const std::size_t workers =
      std::clamp<std::size_t>(options.workers == 0 ? 1 : options.workers, 1, blocks);
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(bins, 0));

  auto work = [&](std::size_t w) {
    auto& counts = partial[w];
    for (std::size_t b = w; b < blocks; b += workers) {
      Rng rng = Rng::for_stream(seed, b);
      const std::size_t end = std::min(n, (b + 1) * kSamplingBlock);
      for (std::size_t i = b * kSamplingBlock; i < end; ++i) {
        TrialRecord* rec = records != nullptr ? &(*records)[i] : nullptr;
        trial(rng, i, counts, rec);
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  std::vector<std::uint64_t> total(bins, 0);
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < bins; ++i) total[i] += p[i];
  }
  return total;
}

std::vector<CategoricalSampler> column_samplers(const GeneralizedObservable& obs) {
  std::vector<CategoricalSampler> out;
  out.reserve(obs.infos());
  for (std::size_t t = 0; t < obs.infos(); ++t) out.emplace_back(obs.column(t));
  return out;
}

/// Samplers over the flattened (omega, out) pairs for each input point.
std::vector<CategoricalSampler> joint_samplers(const ExtendedObservable& y) {
  std::vector<CategoricalSampler> out;
  out.reserve(y.ins());
  std::vector<double> column(y.outcomes() * y.outs());
  for (std::size_t t = 0; t < y.ins(); ++t) {
    for (std::size_t o = 0; o < y.outcomes(); ++o) {
      for (std::size_t q = 0; q < y.outs(); ++q) column[o * y.outs() + q] = y.at(o, q, t);
    }
    out.emplace_back(column);
  }
  return out;
}

std::vector<double> to_frequencies(const std::vector<std::uint64_t>& counts, std::size_t n) {
  std::vector<double> f(counts.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  }
  return f;
}

InstrumentSample finish(FiniteSpace omega, FiniteSpace out, std::size_t n,
                        std::vector<std::uint64_t> joint, std::vector<TrialRecord> records) {
  InstrumentSample s{std::move(omega), std::move(out), n, std::move(joint), {},
                     std::move(records)};
  const std::size_t nq = s.out_info_space.size();
  s.outcome_counts.assign(s.outcome_space.size(), 0);
  for (std::size_t i = 0; i < s.joint_counts.size(); ++i) {
    s.outcome_counts[i / nq] += s.joint_counts[i];
  }
  return s;
}

}  // namespace

std::vector<double> ExperimentSample::frequencies() const { return to_frequencies(counts, trials); }

std::vector<double> InstrumentSample::outcome_frequencies() const {
  return to_frequencies(outcome_counts, trials);
}

std::vector<double> InstrumentSample::joint_frequencies() const {
  return to_frequencies(joint_counts, trials);
}

std::optional<std::vector<double>> InstrumentSample::conditional_posterior(
    std::size_t omega) const {
  const std::uint64_t c = outcome_counts.at(omega);
  if (c == 0) return std::nullopt;
  const std::size_t nq = out_info_space.size();
  std::vector<double> p(nq);
  for (std::size_t q = 0; q < nq; ++q) {
    p[q] = static_cast<double>(joint_counts[omega * nq + q]) / static_cast<double>(c);
  }
  return p;
}

ExperimentSample sample_experiment(const GeneralizedObservable& obs,
                                   const InformationState& state, std::size_t n,
                                   std::uint64_t seed, const SamplingOptions& options) {
  require_same_space(obs.info_space(), state.space(), "sample_experiment");
  const CategoricalSampler prior(state.probabilities());
  const auto columns = column_samplers(obs);
  ExperimentSample s{obs.outcome_space(), n, {}, {}};
  s.counts = run_blocks(n, seed, options, obs.outcomes(),
                        options.keep_records ? &s.records : nullptr,
                        [&](Rng& rng, std::size_t i, auto& counts, TrialRecord* rec) {
                          const std::size_t t = prior(rng);
                          const std::size_t o = columns[t](rng);
                          ++counts[o];
                          if (rec != nullptr) *rec = TrialRecord{i, t, o, std::nullopt};
                        });
  return s;
}

ExperimentSample sample_outcomes(const GeneralizedObservable& obs,
                                 const InformationState& state, std::size_t n,
                                 std::uint64_t seed, const SamplingOptions& options) {
  const CategoricalSampler direct(outcome_distribution(obs, state).probabilities());
  ExperimentSample s{obs.outcome_space(), n, {}, {}};
  s.counts = run_blocks(n, seed, options, obs.outcomes(), nullptr,
                        [&](Rng& rng, std::size_t, auto& counts, TrialRecord*) {
                          ++counts[direct(rng)];
                        });
  return s;
}

InstrumentSample sample_instrument(const ExtendedObservable& y, const InformationState& state,
                                   std::size_t n, std::uint64_t seed,
                                   const SamplingOptions& options) {
  require_same_space(y.in_info_space(), state.space(), "sample_instrument");
  const CategoricalSampler prior(state.probabilities());
  const auto joint = joint_samplers(y);
  const std::size_t nq = y.outs();
  std::vector<TrialRecord> records;
  auto counts = run_blocks(n, seed, options, y.outcomes() * nq,
                           options.keep_records ? &records : nullptr,
                           [&](Rng& rng, std::size_t i, auto& c, TrialRecord* rec) {
                             const std::size_t t = prior(rng);
                             const std::size_t pair = joint[t](rng);
                             ++c[pair];
                             if (rec != nullptr) *rec = TrialRecord{i, t, pair / nq, pair % nq};
                           });
  return finish(y.outcome_space(), y.out_info_space(), n, std::move(counts), std::move(records));
}

InstrumentSample sample_consecutive(const ExtendedObservable& first,
                                    const ExtendedObservable& second,
                                    const InformationState& state, std::size_t n,
                                    std::uint64_t seed, const SamplingOptions& options) {
  require_same_space(first.in_info_space(), state.space(), "sample_consecutive");
  require_same_space(first.out_info_space(), second.in_info_space(), "sample_consecutive");
  FiniteSpace joint_space = FiniteSpace::product(first.outcome_space(), second.outcome_space());
  const CategoricalSampler prior(state.probabilities());
  const auto stage1 = joint_samplers(first);
  const auto stage2 = joint_samplers(second);
  const std::size_t nmid = first.outs();
  const std::size_t n2 = second.outcomes();
  const std::size_t nq = second.outs();
  std::vector<TrialRecord> records;
  auto counts = run_blocks(n, seed, options, joint_space.size() * nq,
                           options.keep_records ? &records : nullptr,
                           [&](Rng& rng, std::size_t i, auto& c, TrialRecord* rec) {
                             const std::size_t t = prior(rng);
                             const std::size_t a = stage1[t](rng);
                             const std::size_t b = stage2[a % nmid](rng);
                             const std::size_t omega = (a / nmid) * n2 + b / nq;
                             ++c[omega * nq + b % nq];
                             if (rec != nullptr) *rec = TrialRecord{i, t, omega, b % nq};
                           });
  return finish(std::move(joint_space), second.out_info_space(), n, std::move(counts),
                std::move(records));
}

ExperimentOracle monte_carlo_oracle(const GeneralizedObservable& obs, std::size_t n,
                                    std::uint64_t seed, const SamplingOptions& options) {
  struct Cache {
    std::mutex mutex;
    std::map<std::vector<double>, std::vector<double>> frequencies;
  };
  auto cache = std::make_shared<Cache>();
  auto probability = [obs, n, seed, options, cache](const Event& event,
                                                    const InformationState& state) {
    std::vector<double> freq;
    {
      std::lock_guard lock(cache->mutex);
      auto it = cache->frequencies.find(state.probabilities());
      if (it != cache->frequencies.end()) freq = it->second;
    }
    if (freq.empty()) {
      std::uint64_t key = seed;
      for (double p : state.probabilities()) {
        std::uint64_t bits;
        std::memcpy(&bits, &p, sizeof bits);
        key = splitmix64(key ^ bits);
      }
      freq = sample_experiment(obs, state, n, key, options).frequencies();
      std::lock_guard lock(cache->mutex);
      cache->frequencies.emplace(state.probabilities(), freq);
    }
    require_same_space(obs.outcome_space(), event.space(), "monte_carlo_oracle");
    double s = 0.0;
    for (std::size_t o = 0; o < freq.size(); ++o) {
      if (event.contains(o)) s += freq[o];
    }
    return s;
  };
  return ExperimentOracle{obs.outcome_space(), obs.info_space(), std::move(probability)};
}

Comparison compare_probability(std::string label, double analytic, std::uint64_t count,
                               std::size_t trials, double bound) {
  Comparison c;
  c.label = std::move(label);
  c.analytic = analytic;
  c.trials = trials;
  c.empirical = trials == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(trials);
  const double var = analytic * (1.0 - analytic);
  if (trials == 0) {
    c.passed = true;
  } else if (var <= 0.0) {
    c.z = (c.empirical == analytic) ? 0.0 : INFINITY;
    c.passed = c.empirical == analytic;
  } else {
    c.sigma = std::sqrt(var / static_cast<double>(trials));
    c.z = (c.empirical - analytic) / c.sigma;
    c.passed = std::abs(c.z) <= bound;
  }
  return c;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("distributions differ in length");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

}  // namespace measurekit
