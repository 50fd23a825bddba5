// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <vector>

#include "measurekit/measure.hpp"
#include "measurekit/tolerance.hpp"
#include "oracles.hpp"

namespace mk = measurekit;

namespace {

void ExpectProbs(const mk::InformationState& s, const std::vector<double>& want,
                 double tol = 1e-15) {
  ASSERT_EQ(s.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(s[i], want[i], tol) << "index " << i;
}

TEST(FiniteSpace, RejectsEmptyAndDuplicateLabels) {
  EXPECT_THROW(mk::FiniteSpace(std::vector<std::string>{}), mk::InvalidArgument);
  EXPECT_THROW(mk::FiniteSpace({"a", "a"}), mk::InvalidArgument);
}

TEST(FiniteSpace, ProductLabelsAreRowMajorPairs) {
  mk::FiniteSpace a({"x", "y"});
  mk::FiniteSpace b({"0", "1", "2"});
  auto p = mk::FiniteSpace::product(a, b);
  ASSERT_EQ(p.size(), 6u);
  EXPECT_EQ(p.label(0), "(x,0)");
  EXPECT_EQ(p.label(5), "(y,2)");
  EXPECT_EQ(p.pair_index(1, 1), 4u);
  EXPECT_TRUE(p.is_product());
  EXPECT_EQ(p.factor(2), b);
  EXPECT_THROW(a.factor(1), mk::NotProductSpace);
}

TEST(Event, SetAlgebra) {
  mk::FiniteSpace s = mk::FiniteSpace::indexed(4, "t");
  auto e1 = mk::Event::of(s, {0, 2});
  auto e2 = mk::Event::of(s, {2, 3});
  EXPECT_EQ((e1 | e2).members(), (std::vector<std::size_t>{0, 2, 3}));
  EXPECT_EQ((e1 & e2).members(), (std::vector<std::size_t>{2}));
  EXPECT_TRUE(mk::Event::none(s).empty());
  EXPECT_THROW(mk::Event::single(s, 4), mk::IndexOutOfRange);
}

TEST(Normalize, WorkedValues) {
  mk::FiniteSpace two({"t1", "t2"});
  ExpectProbs(mk::normalize(mk::FiniteMeasure(two, {2, 2})), {0.5, 0.5});
  ExpectProbs(mk::normalize(mk::FiniteMeasure(mk::FiniteSpace::indexed(3, "t"), {1, 0, 0})),
              {1, 0, 0});
  ExpectProbs(mk::normalize(mk::FiniteMeasure(two, {3, 1})), {3.0 / 4.0, 1.0 / 4.0});
}

TEST(Normalize, ZeroMeasureHasNoState) {
  EXPECT_THROW(mk::normalize(mk::FiniteMeasure::zero(mk::FiniteSpace({"a", "b"}))),
               mk::ZeroTotalMeasure);
}

TEST(Normalize, ScaleInvariantProperty) {
  oracle::Gen gen(11);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = oracle::pick_size(gen, 1, 30);
    auto w = oracle::probability_vector(gen, n, true);
    for (auto& x : w) x *= 7.0;
    mk::FiniteMeasure m(mk::FiniteSpace::indexed(n, "t"), w);
    const double c = scale(gen);
    const auto a = mk::normalize(m);
    const auto b = mk::normalize(m.scaled(c));
    EXPECT_TRUE(mk::same_state(a, b));
    EXPECT_LE(oracle::max_abs_diff(a.probabilities(), b.probabilities()), mk::tolerance());
    // Power-of-two scalings are exact in floating point.
    EXPECT_EQ(mk::normalize(m.scaled(0.125)).probabilities(), a.probabilities());
  }
}

TEST(Measure, RejectsNegativeAndNonFiniteWeights) {
  mk::FiniteSpace two({"a", "b"});
  EXPECT_THROW(mk::FiniteMeasure(two, {0.5, -0.1}), mk::InvalidArgument);
  EXPECT_THROW(mk::FiniteMeasure(two, {0.5, NAN}), mk::InvalidArgument);
  EXPECT_THROW(mk::FiniteMeasure(two, {1.0}), mk::InvalidArgument);
  EXPECT_THROW(mk::InformationState(two, {0.5, 0.6}), mk::InvalidArgument);
}

TEST(Dirac, WorkedValuesAndIndicator) {
  ExpectProbs(mk::dirac(mk::FiniteSpace::indexed(3, "t"), 1), {0, 1, 0});
  ExpectProbs(mk::dirac(mk::FiniteSpace({"only"}), 0), {1});
  EXPECT_THROW(mk::dirac(mk::FiniteSpace::indexed(3, "t"), 3), mk::IndexOutOfRange);

  mk::FiniteSpace s = mk::FiniteSpace::indexed(5, "t");
  auto f = mk::Event::of(s, {1, 3});
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_EQ(mk::measure_of(mk::dirac(s, k), f), f.contains(k) ? 1.0 : 0.0);
  }
}

TEST(Mix, WorkedValues) {
  mk::FiniteSpace two({"t1", "t2"});
  std::vector<mk::InformationState> deltas = {mk::dirac(two, 0), mk::dirac(two, 1)};
  std::vector<double> half = {0.5, 0.5};
  ExpectProbs(mk::mix(deltas, half), {0.5, 0.5});

  mk::InformationState pi(two, {0.3, 0.7});
  std::vector<mk::InformationState> one = {pi};
  std::vector<double> unit = {1.0};
  ExpectProbs(mk::mix(one, unit), {0.3, 0.7});

  std::vector<mk::InformationState> pair = {mk::InformationState(two, {1, 0}),
                                            mk::InformationState(two, {0.2, 0.8})};
  std::vector<double> w = {0.25, 0.75};
  ExpectProbs(mk::mix(pair, w), {0.25 * 1 + 0.75 * 0.2, 0.75 * 0.8});
}

TEST(Mix, Errors) {
  mk::FiniteSpace two({"t1", "t2"});
  mk::FiniteSpace other({"u1", "u2"});
  std::vector<mk::InformationState> mixed = {mk::dirac(two, 0), mk::dirac(other, 0)};
  std::vector<double> half = {0.5, 0.5};
  EXPECT_THROW(mk::mix(mixed, half), mk::SpaceMismatch);

  std::vector<mk::InformationState> same = {mk::dirac(two, 0), mk::dirac(two, 1)};
  std::vector<double> bad = {0.7, 0.7};
  EXPECT_THROW(mk::mix(same, bad), mk::BadConvexWeights);
  std::vector<double> negative = {1.5, -0.5};
  EXPECT_THROW(mk::mix(same, negative), mk::BadConvexWeights);
}

TEST(MeasureOf, WorkedValues) {
  mk::FiniteSpace two({"t1", "t2"});
  mk::InformationState pi(two, {0.75, 0.25});
  EXPECT_DOUBLE_EQ(mk::measure_of(pi, mk::Event::all(two)), 1.0);
  EXPECT_EQ(mk::measure_of(pi, mk::Event::none(two)), 0.0);
  EXPECT_EQ(mk::measure_of(pi, mk::Event::single(two, 1)), 0.25);
  EXPECT_THROW(mk::measure_of(pi, mk::Event::all(mk::FiniteSpace({"a", "b"}))),
               mk::SpaceMismatch);
}

TEST(MeasureOf, AdditiveOverDisjointEvents) {
  oracle::Gen gen(5);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = oracle::pick_size(gen, 2, 20);
    mk::FiniteSpace s = mk::FiniteSpace::indexed(n, "t");
    mk::InformationState pi(s, oracle::probability_vector(gen, n));
    std::vector<bool> mask(n);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < n; ++i) mask[i] = coin(gen);
    mk::Event e(s, mask);
    std::vector<bool> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i] = !mask[i];
    EXPECT_NEAR(mk::measure_of(pi, e) + mk::measure_of(pi, mk::Event(s, inv)), 1.0, 1e-12);
  }
}

}  // namespace
