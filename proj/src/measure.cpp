// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#include "measurekit/measure.hpp"

#include <cmath>
#include <string>

#include "measurekit/error.hpp"
#include "measurekit/tolerance.hpp"

namespace measurekit {
namespace {

void check_weights(const FiniteSpace& space, std::vector<double>& w, const char* what) {
  if (w.size() != space.size()) {
    throw InvalidArgument(std::string(what) + ": expected " + std::to_string(space.size()) +
                          " entries, got " + std::to_string(w.size()));
  }
  const double tol = tolerance();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i])) {
      throw InvalidArgument(std::string(what) + ": non-finite entry at point " +
                            space.label(i));
    }
    if (w[i] < -tol) {
      throw InvalidArgument(std::string(what) + ": negative entry at point " + space.label(i));
    }
    if (w[i] < 0.0) w[i] = 0.0;
  }
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

FiniteMeasure::FiniteMeasure(FiniteSpace space, std::vector<double> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  check_weights(space_, weights_, "finite measure");
  total_ = sum(weights_);
}

FiniteMeasure FiniteMeasure::zero(const FiniteSpace& space) {
  return FiniteMeasure(space, std::vector<double>(space.size(), 0.0));
}

FiniteMeasure FiniteMeasure::scaled(double c) const {
  if (!(c >= 0.0) || !std::isfinite(c)) throw InvalidArgument("measure scale must be finite and >= 0");
  std::vector<double> w = weights_;
  for (double& x : w) x *= c;
  return FiniteMeasure(space_, std::move(w));
}

InformationState::InformationState(FiniteSpace space, std::vector<double> probabilities)
    : space_(std::move(space)), probabilities_(std::move(probabilities)) {
  check_weights(space_, probabilities_, "information state");
  const double s = sum(probabilities_);
  if (std::abs(s - 1.0) > tolerance()) {
    throw InvalidArgument("information state probabilities sum to " + std::to_string(s) +
                          ", not 1");
  }
}

InformationState InformationState::uniform(const FiniteSpace& space) {
  return InformationState(space, std::vector<double>(space.size(), 1.0 / space.size()));
}

InformationState normalize(const FiniteMeasure& m) {
  if (!(m.total() > 0.0)) throw ZeroTotalMeasure("cannot normalize a measure with zero total");
  std::vector<double> p = m.weights();
  for (double& x : p) x /= m.total();
  return InformationState(m.space(), std::move(p));
}

InformationState dirac(const FiniteSpace& space, std::size_t point) {
  if (point >= space.size()) {
    throw IndexOutOfRange("dirac point " + std::to_string(point) + " out of range");
  }
  std::vector<double> p(space.size(), 0.0);
  p[point] = 1.0;
  return InformationState(space, std::move(p));
}

InformationState mix(std::span<const InformationState> states,
                     std::span<const double> coefficients) {
  if (states.empty() || states.size() != coefficients.size()) {
    throw BadConvexWeights("mix needs one coefficient per state");
  }
  const double tol = tolerance();
  double csum = 0.0;
  for (double c : coefficients) {
    if (!std::isfinite(c) || c < -tol) throw BadConvexWeights("mix coefficients must be >= 0");
    csum += c;
  }
  if (std::abs(csum - 1.0) > tol) throw BadConvexWeights("mix coefficients must sum to 1");
  const FiniteSpace& space = states.front().space();
  std::vector<double> p(space.size(), 0.0);
  for (std::size_t k = 0; k < states.size(); ++k) {
    require_same_space(space, states[k].space(), "mix");
    const double c = std::max(coefficients[k], 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += c * states[k][i];
  }
  return InformationState(space, std::move(p));
}

double measure_of(const InformationState& state, const Event& event) {
  require_same_space(state.space(), event.space(), "measure_of");
  double s = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (event.contains(i)) s += state[i];
  }
  return s;
}

double measure_of(const FiniteMeasure& measure, const Event& event) {
  require_same_space(measure.space(), event.space(), "measure_of");
  double s = 0.0;
  for (std::size_t i = 0; i < measure.weights().size(); ++i) {
    if (event.contains(i)) s += measure.weight(i);
  }
  return s;
}

bool same_state(const InformationState& a, const InformationState& b) {
  if (!(a.space() == b.space())) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tolerance()) return false;
  }
  return true;
}

}  // namespace measurekit
