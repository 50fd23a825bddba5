// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "measurekit/instrument.hpp"
#include "measurekit/rng.hpp"
#include "measurekit/sampling.hpp"
#include "oracles.hpp"

namespace mk = measurekit;

namespace {

const mk::FiniteSpace kTheta({"t1", "t2"});
const mk::FiniteSpace kOmega({"w1", "w2"});

mk::GeneralizedObservable Worked() {
  return mk::GeneralizedObservable::from_rows(kOmega, kTheta, {{0.7, 0.2}, {0.3, 0.8}});
}

mk::ExtendedObservable WorkedExtended() {
  return mk::ExtendedObservable(kOmega, kTheta, kTheta, {0.7, 0, 0, 0.2, 0.3, 0, 0, 0.8});
}

TEST(Rng, ReferenceStream) {
  // splitmix64 from state 0 yields 0xe220a8397b1dcdaf first.
  EXPECT_EQ(mk::splitmix64(0), 0xe220a8397b1dcdafULL);
  mk::Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    if (i == 0) {
      EXPECT_NE(x, c.next());
    }
  }
  mk::Rng u(7);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
}

TEST(CategoricalSampler, InverseCdfOrder) {
  std::vector<double> p = {0.25, 0.0, 0.5, 0.25};
  mk::CategoricalSampler s(p);
  EXPECT_EQ(s.pick(0.0), 0u);
  EXPECT_EQ(s.pick(0.2499), 0u);
  EXPECT_EQ(s.pick(0.25), 2u);
  EXPECT_EQ(s.pick(0.7499), 2u);
  EXPECT_EQ(s.pick(0.75), 3u);
  EXPECT_EQ(s.pick(0.9999999999), 3u);

  std::vector<double> short_sum = {0.5, 0.5 - 1e-13, 0.0};
  EXPECT_EQ(mk::CategoricalSampler(short_sum).pick(0.99999999999999), 1u);
}

TEST(SampleExperiment, DeterministicAndWorkerIndependent) {
  auto k = Worked();
  mk::InformationState pi(kTheta, {0.5, 0.5});
  const std::size_t n = 3 * mk::kSamplingBlock + 17;
  auto one = mk::sample_experiment(k, pi, n, 5, {1, false});
  auto again = mk::sample_experiment(k, pi, n, 5, {1, false});
  auto four = mk::sample_experiment(k, pi, n, 5, {4, false});
  EXPECT_EQ(one.counts, again.counts);
  EXPECT_EQ(one.counts, four.counts);
  EXPECT_NE(one.counts, mk::sample_experiment(k, pi, n, 6).counts);

  auto y = WorkedExtended();
  auto i1 = mk::sample_instrument(y, pi, n, 9, {1, false});
  auto i3 = mk::sample_instrument(y, pi, n, 9, {3, false});
  EXPECT_EQ(i1.joint_counts, i3.joint_counts);
}

TEST(SampleExperiment, RecordsAreValidAndConsistent) {
  auto y = WorkedExtended();
  mk::InformationState pi(kTheta, {0.3, 0.7});
  auto s = mk::sample_instrument(y, pi, 5000, 3, {2, true});
  ASSERT_EQ(s.records.size(), 5000u);
  std::vector<std::uint64_t> joint(4, 0);
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    const auto& r = s.records[i];
    EXPECT_EQ(r.trial, i);
    ASSERT_TRUE(r.theta_out.has_value());
    EXPECT_LT(r.omega, 2u);
    // This instrument never moves the system.
    EXPECT_EQ(*r.theta_out, r.theta_in);
    ++joint[r.omega * 2 + *r.theta_out];
  }
  EXPECT_EQ(joint, s.joint_counts);
}

TEST(SampleExperiment, WorkedKernelWithinFourSigma) {
  auto k = Worked();
  const std::size_t n = 1000000;
  auto s = mk::sample_experiment(k, mk::InformationState(kTheta, {0.5, 0.5}), n, 2026, {4, false});
  EXPECT_LE(std::abs(oracle::binomial_z(0.45, s.counts[0], n)), 4.0);
}

TEST(SampleExperiment, TrivialAndIdentityObservables) {
  oracle::Gen gen(71);
  const std::size_t n = 1000000;
  mk::InformationState nu(mk::FiniteSpace::indexed(5, "w"), oracle::probability_vector(gen, 5));
  mk::InformationState pi(mk::FiniteSpace::indexed(4, "t"), oracle::probability_vector(gen, 4));
  auto triv = mk::sample_experiment(mk::trivial_observable(pi.space(), nu), pi, n, 1, {4, false});
  for (std::size_t o = 0; o < 5; ++o) EXPECT_LE(std::abs(oracle::binomial_z(nu[o], triv.counts[o], n)), 4.0);
  auto id = mk::image_observable(pi.space(), pi.space(), {0, 1, 2, 3});
  auto ids = mk::sample_experiment(id, pi, n, 2, {4, false});
  for (std::size_t t = 0; t < 4; ++t) EXPECT_LE(std::abs(oracle::binomial_z(pi[t], ids.counts[t], n)), 4.0);
}

TEST(SampleExperiment, TwoStageMatchesCollapsed) {
  oracle::Gen gen(72);
  for (int rep = 0; rep < 5; ++rep) {
    const std::size_t outs = oracle::pick_size(gen, 2, 12);
    auto k = mk::GeneralizedObservable::from_rows(mk::FiniteSpace::indexed(outs, "w"),
                                                  mk::FiniteSpace::indexed(8, "t"),
                                                  oracle::stochastic_rows(gen, outs, 8));
    mk::InformationState pi(k.info_space(), oracle::probability_vector(gen, 8));
    const std::size_t n = 200000;
    auto two = mk::sample_experiment(k, pi, n, 10 + rep, {2, false});
    auto direct = mk::sample_outcomes(k, pi, n, 100 + rep, {2, false});
    EXPECT_LE(mk::total_variation(two.frequencies(), direct.frequencies()),
              4 * std::sqrt(static_cast<double>(outs) / n));
  }
}

TEST(SampleInstrument, WorkedPosteriorWithinFourSigma) {
  auto y = WorkedExtended();
  const std::size_t n = 1000000;
  auto s = mk::sample_instrument(y, mk::InformationState(kTheta, {0.5, 0.5}), n, 77, {4, false});
  ASSERT_TRUE(s.conditional_posterior(0).has_value());
  const double m = static_cast<double>(s.outcome_counts[0]);
  EXPECT_LE(std::abs(oracle::binomial_z(7.0 / 9.0, s.joint_counts[0], s.outcome_counts[0])), 4.0)
      << "conditional frequency " << s.joint_counts[0] / m;
}

TEST(SampleInstrument, DeterministicReadoutGivesSharpPosteriors) {
  mk::ExtendedObservable readout(kTheta, kTheta, kTheta, {1, 0, 0, 0, 0, 0, 0, 1});
  auto s = mk::sample_instrument(readout, mk::InformationState(kTheta, {0.4, 0.6}), 10000, 4);
  EXPECT_EQ(s.conditional_posterior(0), (std::vector<double>{1, 0}));
  EXPECT_EQ(s.conditional_posterior(1), (std::vector<double>{0, 1}));
}

TEST(SampleInstrument, ProductFormDiracPriorSharesPosterior) {
  oracle::Gen gen(73);
  auto m = mk::GeneralizedObservable::from_rows(mk::FiniteSpace::indexed(3, "w"), kTheta,
                                                oracle::stochastic_rows(gen, 3, 2));
  auto sys = mk::GeneralizedObservable::from_rows(mk::FiniteSpace::indexed(3, "q"), kTheta,
                                                  oracle::stochastic_rows(gen, 3, 2));
  auto y = mk::product_extended(m, sys);
  const std::size_t n = 1000000;
  auto s = mk::sample_instrument(y, mk::dirac(kTheta, 1), n, 8, {4, false});
  for (std::size_t o = 0; o < 3; ++o) {
    if (s.outcome_counts[o] == 0) continue;
    for (std::size_t q = 0; q < 3; ++q) {
      EXPECT_LE(std::abs(oracle::binomial_z(sys.at(q, 1), s.joint_counts[o * 3 + q], s.outcome_counts[o])),
                4.0);
    }
  }
}

TEST(SampleConsecutive, MatchesComposedJoint) {
  mk::ExtendedObservable y2(mk::FiniteSpace({"v1", "v2"}), kTheta, kTheta,
                            {0.9, 0.1, 0, 0, 0, 0, 0.1, 0.9});
  auto y1 = WorkedExtended();
  mk::InformationState pi(kTheta, {0.4, 0.6});
  const std::size_t n = 1000000;
  auto s = mk::sample_consecutive(y1, y2, pi, n, 12, {4, false});
  auto analytic = mk::outcome_distribution(mk::outcome_marginal(mk::compose(y1, y2)), pi);
  ASSERT_EQ(s.outcome_space, analytic.space());
  for (std::size_t o = 0; o < 4; ++o) {
    EXPECT_LE(std::abs(oracle::binomial_z(analytic[o], s.outcome_counts[o], n)), 4.0);
  }
}

TEST(Compare, DegenerateProbabilities) {
  EXPECT_TRUE(mk::compare_probability("zero", 0.0, 0, 100).passed);
  EXPECT_FALSE(mk::compare_probability("zero", 0.0, 1, 100).passed);
  EXPECT_TRUE(mk::compare_probability("one", 1.0, 100, 100).passed);
  auto c = mk::compare_probability("half", 0.5, 520, 1000);
  EXPECT_NEAR(c.z, (0.52 - 0.5) / std::sqrt(0.25 / 1000), 1e-12);
  EXPECT_TRUE(c.passed);
  EXPECT_FALSE(mk::compare_probability("half", 0.5, 600, 1000).passed);
}

}  // namespace
