// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#include "measurekit/mean_state.hpp"

#include <cmath>
#include <string>

#include "measurekit/error.hpp"
#include "measurekit/tolerance.hpp"

namespace measurekit {
namespace {

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void check_convex(const EmbeddedSpace& space, const ConvexCombination& c, const char* side) {
  if (c.empty()) throw BadRelation(std::string(side) + " of relation is empty");
  double sum = 0.0;
  for (const auto& [point, w] : c) {
    if (point >= space.base().size()) {
      throw BadRelation(std::string(side) + " refers to point " + std::to_string(point) +
                        " outside the frame");
    }
    if (!(w >= -kRelationTolerance)) throw BadRelation(std::string(side) + " has a negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kRelationTolerance) {
    throw BadRelation(std::string(side) + " weights sum to " + std::to_string(sum));
  }
}

}  // namespace

EmbeddedSpace::EmbeddedSpace(FiniteSpace base, std::vector<std::vector<double>> payloads,
                             std::vector<double> functional, double bound)
    : base_(std::move(base)),
      payloads_(std::move(payloads)),
      functional_(std::move(functional)),
      bound_(bound) {
  if (payloads_.size() != base_.size()) {
    throw InvalidArgument("embedded space needs one payload per point");
  }
  if (functional_.empty()) throw InvalidArgument("payload dimension must be positive");
  if (!(bound_ > 0.0) || !std::isfinite(bound_)) {
    throw InvalidArgument("payload bound must be positive and finite");
  }
  const double tol = tolerance();
  for (std::size_t i = 0; i < payloads_.size(); ++i) {
    const auto& p = payloads_[i];
    if (p.size() != functional_.size()) {
      throw InvalidArgument("payload of " + base_.label(i) + " has the wrong dimension");
    }
    if (norm2(p) > bound_ * (1.0 + tol) + tol) {
      throw InvalidArgument("payload of " + base_.label(i) + " exceeds the norm bound");
    }
    if (std::abs(apply_functional(p) - 1.0) > tol) {
      throw InvalidArgument("functional does not evaluate to 1 on payload of " + base_.label(i));
    }
  }
}

double EmbeddedSpace::apply_functional(const std::vector<double>& v) const {
  if (v.size() != functional_.size()) throw DimensionMismatch("payload dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += functional_[i] * v[i];
  return s;
}

EmbeddedExtendedObservable::EmbeddedExtendedObservable(ExtendedObservable y_, EmbeddedSpace in_,
                                                       EmbeddedSpace out_)
    : y(std::move(y_)), in(std::move(in_)), out(std::move(out_)) {
  require_same_space(y.in_info_space(), in.base(), "embedded input space");
  require_same_space(y.out_info_space(), out.base(), "embedded output space");
}

MeanState mean_state(const EmbeddedSpace& space, const InformationState& state) {
  require_same_space(space.base(), state.space(), "mean_state");
  std::vector<double> v(space.dimension(), 0.0);
  for (std::size_t t = 0; t < state.size(); ++t) axpy(state[t], space.payload(t), v);
  return MeanState{std::move(v), state};
}

std::vector<double> combine(const EmbeddedSpace& space, const ConvexCombination& weights) {
  std::vector<double> v(space.dimension(), 0.0);
  for (const auto& [point, w] : weights) axpy(w, space.payload(point), v);
  return v;
}

std::vector<std::vector<double>> statistical_map(const EmbeddedExtendedObservable& ey,
                                                 const Event& event) {
  const auto& y = ey.y;
  require_same_space(y.outcome_space(), event.space(), "statistical_map");
  std::vector<std::vector<double>> v(y.ins(), std::vector<double>(ey.out.dimension(), 0.0));
  for (std::size_t o = 0; o < y.outcomes(); ++o) {
    if (!event.contains(o)) continue;
    for (std::size_t q = 0; q < y.outs(); ++q) {
      for (std::size_t t = 0; t < y.ins(); ++t) {
        const double k = y.at(o, q, t);
        if (k != 0.0) axpy(k, ey.out.payload(q), v[t]);
      }
    }
  }
  return v;
}

MeanState posterior_mean(const EmbeddedExtendedObservable& ey, const Event& event,
                         const InformationState& state) {
  return mean_state(ey.out, posterior_state(ey.y, event, state));
}

void validate_relation(const EmbeddedSpace& space, const ConvexRelation& relation) {
  check_convex(space, relation.lhs, "left side");
  check_convex(space, relation.rhs, "right side");
  const double gap = max_abs_diff(combine(space, relation.lhs), combine(space, relation.rhs));
  if (gap > kRelationTolerance) {
    throw BadRelation("relation payloads differ by " + std::to_string(gap));
  }
}

bool check_prelinear(const EmbeddedExtendedObservable& ey,
                     const std::vector<ConvexRelation>& relations) {
  for (const auto& r : relations) validate_relation(ey.in, r);
  if (relations.empty()) return true;
  const auto& omega = ey.y.outcome_space();
  for (std::size_t o = 0; o < omega.size(); ++o) {
    const auto v = statistical_map(ey, Event::single(omega, o));
    for (const auto& r : relations) {
      std::vector<double> lhs(ey.out.dimension(), 0.0);
      std::vector<double> rhs(ey.out.dimension(), 0.0);
      for (const auto& [point, w] : r.lhs) axpy(w, v[point], lhs);
      for (const auto& [point, w] : r.rhs) axpy(w, v[point], rhs);
      if (max_abs_diff(lhs, rhs) > kRelationTolerance) return false;
    }
  }
  return true;
}

MeanInstrumentResult mean_instrument_apply(const EmbeddedExtendedObservable& ey,
                                           const Event& event, const MeanState& eta_in,
                                           const ConvexCombination& decomposition,
                                           const std::vector<ConvexRelation>& relations) {
  check_convex(ey.in, decomposition, "mean-state decomposition");
  if (eta_in.vector.size() != ey.in.dimension()) {
    throw DimensionMismatch("input mean state has the wrong dimension");
  }
  if (max_abs_diff(combine(ey.in, decomposition), eta_in.vector) > kRelationTolerance) {
    throw BadRelation("decomposition does not reproduce the input mean state");
  }
  if (!check_prelinear(ey, relations)) {
    throw NotPrelinear("statistical map violates a supplied convex relation");
  }
  const auto v = statistical_map(ey, event);
  std::vector<double> acc(ey.out.dimension(), 0.0);
  for (const auto& [point, w] : decomposition) axpy(w, v[point], acc);
  const double probability = ey.out.apply_functional(acc);
  if (probability <= kZeroProbability) {
    throw ZeroProbabilityEvent("event has probability " + std::to_string(probability) +
                               " under the input mean state");
  }
  for (double& x : acc) x /= probability;
  return MeanInstrumentResult{probability, MeanState{std::move(acc), std::nullopt}};
}

}  // namespace measurekit
