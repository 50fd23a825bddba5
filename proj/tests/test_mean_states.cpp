// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "measurekit/instrument.hpp"
#include "measurekit/mean_state.hpp"
#include "measurekit/quantum.hpp"
#include "oracles.hpp"

namespace mk = measurekit;

namespace {

const mk::FiniteSpace kTheta({"t1", "t2"});
const mk::FiniteSpace kOmega({"w1", "w2"});

mk::EmbeddedSpace StandardBasis(const mk::FiniteSpace& s) {
  std::vector<std::vector<double>> payloads(s.size(), std::vector<double>(s.size(), 0.0));
  for (std::size_t i = 0; i < s.size(); ++i) payloads[i][i] = 1.0;
  return mk::EmbeddedSpace(s, payloads, std::vector<double>(s.size(), 1.0), 1.0);
}

mk::ExtendedObservable Worked() {
  return mk::ExtendedObservable(kOmega, kTheta, kTheta, {0.7, 0, 0, 0.2, 0.3, 0, 0, 0.8});
}

// Points (1,0,0), (0,1,0) and their midpoint, all on the plane x + y + z = 1
// after adding a constant third coordinate.
mk::EmbeddedSpace DegenerateFrame() {
  return mk::EmbeddedSpace(mk::FiniteSpace({"a", "b", "mid"}),
                           {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.5, 0.5, 0.0}}, {1.0, 1.0, 1.0}, 1.0);
}

TEST(EmbeddedSpace, RejectsBadPayloads) {
  EXPECT_THROW(mk::EmbeddedSpace(kTheta, {{1.0, 0.0}, {0.5, 0.0}}, {1.0, 1.0}, 1.0),
               mk::InvalidArgument);
  EXPECT_THROW(mk::EmbeddedSpace(kTheta, {{1.0, 0.0}, {0.0, 1.0}}, {1.0, 1.0}, 0.5),
               mk::InvalidArgument);
  EXPECT_THROW(mk::EmbeddedSpace(kTheta, {{1.0}, {0.0, 1.0}}, {1.0, 1.0}, 1.0),
               mk::InvalidArgument);
}

TEST(MeanState, WorkedValues) {
  auto e = StandardBasis(kTheta);
  auto m = mk::mean_state(e, mk::InformationState(kTheta, {0.3, 0.7}));
  EXPECT_EQ(m.vector, (std::vector<double>{0.3, 0.7}));
  EXPECT_EQ(mk::mean_state(e, mk::dirac(kTheta, 1)).vector, e.payload(1));
}

TEST(MeanState, MixingStatesMixesMeans) {
  oracle::Gen gen(51);
  auto e = DegenerateFrame();
  std::uniform_real_distribution<double> unit(0, 1);
  for (int rep = 0; rep < 50; ++rep) {
    mk::InformationState p1(e.base(), oracle::probability_vector(gen, 3));
    mk::InformationState p2(e.base(), oracle::probability_vector(gen, 3));
    const double a = unit(gen);
    std::vector<mk::InformationState> s = {p1, p2};
    std::vector<double> w = {a, 1 - a};
    auto mixed = mk::mean_state(e, mk::mix(s, w)).vector;
    auto m1 = mk::mean_state(e, p1).vector, m2 = mk::mean_state(e, p2).vector;
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(mixed[k], a * m1[k] + (1 - a) * m2[k], 1e-15);
  }
}

TEST(StatisticalMap, WorkedValuesAgainstTripleSum) {
  mk::EmbeddedExtendedObservable ey(Worked(), StandardBasis(kTheta), StandardBasis(kTheta));
  auto b = mk::Event::single(kOmega, 0);
  auto v = mk::statistical_map(ey, b);
  for (std::size_t t = 0; t < 2; ++t) {
    std::vector<double> want(2, 0.0);
    for (std::size_t q = 0; q < 2; ++q)
      for (std::size_t k = 0; k < 2; ++k) want[k] += ey.out.payload(q)[k] * ey.y.at(0, q, t);
    EXPECT_EQ(v[t], want);
  }
  EXPECT_EQ(v[0], (std::vector<double>{0.7, 0.0}));
  auto none = mk::statistical_map(ey, mk::Event::none(kOmega));
  EXPECT_EQ(none[1], (std::vector<double>{0.0, 0.0}));
}

TEST(StatisticalMap, UnperturbedSystemKeepsPayloads) {
  auto m = mk::GeneralizedObservable::from_rows(kOmega, kTheta, {{0.7, 0.2}, {0.3, 0.8}});
  auto s = mk::image_observable(kTheta, kTheta, {0, 1});
  mk::EmbeddedExtendedObservable ey(mk::product_extended(m, s), StandardBasis(kTheta),
                                    StandardBasis(kTheta));
  auto v = mk::statistical_map(ey, mk::Event::all(kOmega));
  EXPECT_EQ(v[0], ey.in.payload(0));
  EXPECT_EQ(v[1], ey.in.payload(1));
}

TEST(PosteriorMean, WorkedValue) {
  mk::EmbeddedExtendedObservable ey(Worked(), StandardBasis(kTheta), StandardBasis(kTheta));
  auto m = mk::posterior_mean(ey, mk::Event::single(kOmega, 0), mk::InformationState(kTheta, {0.5, 0.5}));
  EXPECT_NEAR(m.vector[0], 7.0 / 9.0, 1e-15);
  EXPECT_NEAR(m.vector[1], 2.0 / 9.0, 1e-15);
}

TEST(PosteriorMean, TwoRoutesAgree) {
  oracle::Gen gen(52);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = oracle::pick_size(gen, 1, 4), ins = oracle::pick_size(gen, 1, 6);
    const std::size_t outs = oracle::pick_size(gen, 1, 6);
    auto y = mk::ExtendedObservable(mk::FiniteSpace::indexed(n, "w"), mk::FiniteSpace::indexed(outs, "q"),
                                    mk::FiniteSpace::indexed(ins, "t"),
                                    oracle::extended_kernel(gen, n, outs, ins));
    // Payloads: random probability vectors in R^3, functional = sum.
    std::vector<std::vector<double>> pin, pout;
    for (std::size_t i = 0; i < ins; ++i) pin.push_back(oracle::probability_vector(gen, 3));
    for (std::size_t i = 0; i < outs; ++i) pout.push_back(oracle::probability_vector(gen, 3));
    mk::EmbeddedExtendedObservable ey(
        y, mk::EmbeddedSpace(y.in_info_space(), pin, {1, 1, 1}, 1.0),
        mk::EmbeddedSpace(y.out_info_space(), pout, {1, 1, 1}, 1.0));
    mk::InformationState pi(y.in_info_space(), oracle::probability_vector(gen, ins));
    auto b = mk::Event::single(y.outcome_space(), 0);
    if (mk::outcome_probability(y, b, pi) < 1e-6) continue;
    auto route1 = mk::posterior_mean(ey, b, pi).vector;
    auto v = mk::statistical_map(ey, b);
    std::vector<long double> num(3, 0.0L);
    for (std::size_t t = 0; t < ins; ++t)
      for (std::size_t k = 0; k < 3; ++k) num[k] += static_cast<long double>(pi[t]) * v[t][k];
    const long double mu = num[0] + num[1] + num[2];
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_NEAR(route1[k], static_cast<double>(num[k] / mu), 1e-12);
    }
  }
}

TEST(PosteriorMean, ProductFormWithDiracPriorIgnoresTheEvent) {
  oracle::Gen gen(53);
  auto m = mk::GeneralizedObservable::from_rows(kOmega, kTheta, oracle::stochastic_rows(gen, 2, 2));
  auto s = mk::GeneralizedObservable::from_rows(kTheta, kTheta, oracle::stochastic_rows(gen, 2, 2));
  mk::EmbeddedExtendedObservable ey(mk::product_extended(m, s), StandardBasis(kTheta),
                                    StandardBasis(kTheta));
  for (std::size_t a = 0; a < 2; ++a) {
    auto m1 = mk::posterior_mean(ey, mk::Event::single(kOmega, 0), mk::dirac(kTheta, a)).vector;
    auto m2 = mk::posterior_mean(ey, mk::Event::single(kOmega, 1), mk::dirac(kTheta, a)).vector;
    EXPECT_LE(oracle::max_abs_diff(m1, s.column(a)), 1e-15);
    EXPECT_LE(oracle::max_abs_diff(m2, s.column(a)), 1e-15);
  }
}

TEST(Prelinear, EmptyRelationsAreVacuous) {
  mk::EmbeddedExtendedObservable ey(Worked(), StandardBasis(kTheta), StandardBasis(kTheta));
  EXPECT_TRUE(mk::check_prelinear(ey, {}));
}

TEST(Prelinear, BadRelationIsRejected) {
  mk::EmbeddedExtendedObservable ey(
      mk::ExtendedObservable(kOmega, kTheta, DegenerateFrame().base(),
                             {1, 0, 0.5, 0, 0, 0, 0, 0, 0, 0, 1, 0.5}),
      DegenerateFrame(), StandardBasis(kTheta));
  EXPECT_THROW(mk::check_prelinear(ey, {mk::ConvexRelation::point(2, {{0, 0.3}, {1, 0.7}})}),
               mk::BadRelation);
  EXPECT_THROW(mk::check_prelinear(ey, {mk::ConvexRelation::point(2, {{0, 0.5}, {1, 0.6}})}),
               mk::BadRelation);
}

class DegenerateFrameTest : public ::testing::Test {
 protected:
  // Y maps a -> (w1, t1), b -> (w2, t2), and mid either to the exact average
  // of the two (pre-linear) or with its w1 branch nudged by `nudge`.
  static mk::EmbeddedExtendedObservable Build(double nudge) {
    // kernel[(omega * 2 + out) * 3 + in]
    std::vector<double> k = {1, 0, 0.5 + nudge, 0, 0, 0,  //
                             0, 0, 0, 0, 1, 0.5 - nudge};
    return mk::EmbeddedExtendedObservable(mk::ExtendedObservable(kOmega, kTheta, DegenerateFrame().base(), k),
                                          DegenerateFrame(), StandardBasis(kTheta));
  }
  const std::vector<mk::ConvexRelation> relations = {
      mk::ConvexRelation::point(2, {{0, 0.5}, {1, 0.5}})};
};

TEST_F(DegenerateFrameTest, ExactAverageIsPrelinear) {
  EXPECT_TRUE(mk::check_prelinear(Build(0.0), relations));
}

TEST_F(DegenerateFrameTest, PerturbedKernelIsNotPrelinear) {
  EXPECT_FALSE(mk::check_prelinear(Build(1e-3), relations));
}

TEST_F(DegenerateFrameTest, EqualMeansGiveEqualResultsWhenPrelinear) {
  auto ey = Build(0.0);
  mk::InformationState on_mid(ey.in.base(), {0, 0, 1});
  mk::InformationState split(ey.in.base(), {0.5, 0.5, 0});
  ASSERT_EQ(mk::mean_state(ey.in, on_mid).vector, mk::mean_state(ey.in, split).vector);
  auto b = mk::Event::single(kOmega, 0);
  EXPECT_NEAR(mk::outcome_probability(ey.y, b, on_mid), mk::outcome_probability(ey.y, b, split), 1e-9);
  EXPECT_LE(oracle::max_abs_diff(mk::posterior_mean(ey, b, on_mid).vector,
                                 mk::posterior_mean(ey, b, split).vector),
            1e-9);

  auto eta = mk::mean_state(ey.in, split);
  auto via_mid = mk::mean_instrument_apply(ey, b, eta, {{2, 1.0}}, relations);
  auto via_split = mk::mean_instrument_apply(ey, b, eta, {{0, 0.5}, {1, 0.5}}, relations);
  EXPECT_NEAR(via_mid.probability, via_split.probability, 1e-9);
  EXPECT_LE(oracle::max_abs_diff(via_mid.mean.vector, via_split.mean.vector), 1e-9);
  EXPECT_NEAR(mk::mean_instrument_apply(ey, mk::Event::all(kOmega), eta, {{2, 1.0}}, relations).probability,
              1.0, 1e-12);
}

TEST_F(DegenerateFrameTest, WitnessEqualMeansDifferentPosteriorMeans) {
  // A strongly non-pre-linear kernel: mid reports w1 and jumps to t2.
  std::vector<double> k = {1, 0, 0, 0, 0, 1,  //
                           0, 0, 0, 0, 1, 0};
  mk::EmbeddedExtendedObservable ey(mk::ExtendedObservable(kOmega, kTheta, DegenerateFrame().base(), k),
                                    DegenerateFrame(), StandardBasis(kTheta));
  EXPECT_FALSE(mk::check_prelinear(ey, relations));
  mk::InformationState on_mid(ey.in.base(), {0, 0, 1});
  mk::InformationState split(ey.in.base(), {0.5, 0.5, 0});
  auto b = mk::Event::single(kOmega, 0);
  auto a = mk::posterior_mean(ey, b, on_mid).vector;
  auto c = mk::posterior_mean(ey, b, split).vector;
  EXPECT_EQ(a, (std::vector<double>{0, 1}));
  EXPECT_EQ(c, (std::vector<double>{1, 0}));
  EXPECT_THROW(mk::mean_instrument_apply(ey, b, mk::mean_state(ey.in, split), {{2, 1.0}}, relations),
               mk::NotPrelinear);
}

TEST_F(DegenerateFrameTest, DecompositionMustReproduceTheMean) {
  auto ey = Build(0.0);
  auto eta = mk::mean_state(ey.in, mk::dirac(ey.in.base(), 0));
  EXPECT_THROW(mk::mean_instrument_apply(ey, mk::Event::all(kOmega), eta, {{1, 1.0}}, relations),
               mk::BadRelation);
}

TEST(Prelinear, LuedersObservableOverQubitFrame) {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<mk::CVector> v(6, mk::CVector(2));
  v[0] << 1, 0;
  v[1] << 0, 1;
  v[2] << s, s;
  v[3] << s, -s;
  v[4] << s, std::complex<double>(0, s);
  v[5] << s, std::complex<double>(0, -s);
  mk::PureStateFrame frame(mk::FiniteSpace({"0", "1", "+", "-", "+i", "-i"}), v);
  mk::CMatrix a0 = mk::CMatrix::Zero(2, 2), a1 = mk::CMatrix::Zero(2, 2);
  a0(0, 0) = std::sqrt(0.8);
  a0(1, 1) = std::sqrt(0.3);
  a1(0, 0) = std::sqrt(0.2);
  a1(1, 1) = std::sqrt(0.7);
  mk::KrausInstrument instr(mk::FiniteSpace({"up", "down"}), {{a0}, {a1}});
  auto ey = mk::embedded_lueders(instr, frame);
  auto rel = mk::basis_relations(frame);
  ASSERT_EQ(rel.size(), 2u);
  EXPECT_TRUE(mk::check_prelinear(ey, rel));

  // Mean-level update agrees across two decompositions of I/2.
  auto eta = mk::mean_state(ey.in, mk::InformationState(frame.space(), {0.5, 0.5, 0, 0, 0, 0}));
  auto b = mk::Event::single(instr.outcome_space(), 0);
  auto r1 = mk::mean_instrument_apply(ey, b, eta, {{0, 0.5}, {1, 0.5}}, rel);
  auto r2 = mk::mean_instrument_apply(ey, b, eta, {{4, 0.5}, {5, 0.5}}, rel);
  EXPECT_NEAR(r1.probability, 0.5 * 0.8 + 0.5 * 0.3, 1e-12);
  EXPECT_NEAR(r1.probability, r2.probability, 1e-9);
  EXPECT_LE(oracle::max_abs_diff(r1.mean.vector, r2.mean.vector), 1e-9);
}

}  // namespace
