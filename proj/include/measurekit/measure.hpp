// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "measurekit/space.hpp"

namespace measurekit {

/// A finite positive measure: one nonnegative weight per point.
///
/// Weights below -tolerance() are rejected; smaller negatives are clamped
/// to zero. Non-finite weights are rejected.
class FiniteMeasure {
 public:
  FiniteMeasure(FiniteSpace space, std::vector<double> weights);

  static FiniteMeasure zero(const FiniteSpace& space);

  const FiniteSpace& space() const { return space_; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t i) const { return weights_.at(i); }
  double total() const { return total_; }

  /// The measure c * this, for c >= 0.
  FiniteMeasure scaled(double c) const;

 private:
  FiniteSpace space_;
  std::vector<double> weights_;
  double total_ = 0.0;
};

/// An information state: the normalization class of a finite measure,
/// stored as its probability representative.
class InformationState {
 public:
  /// Throws InvalidArgument unless entries are nonnegative and sum to one
  /// within tolerance().
  InformationState(FiniteSpace space, std::vector<double> probabilities);

  static InformationState uniform(const FiniteSpace& space);

  const FiniteSpace& space() const { return space_; }
  const std::vector<double>& probabilities() const { return probabilities_; }
  double operator[](std::size_t i) const { return probabilities_.at(i); }
  std::size_t size() const { return probabilities_.size(); }

  /// The state viewed as a unit-mass measure.
  FiniteMeasure as_measure() const { return FiniteMeasure(space_, probabilities_); }

 private:
  FiniteSpace space_;
  std::vector<double> probabilities_;
};

/// Canonical representative of [m]. Throws ZeroTotalMeasure when the total is 0.
InformationState normalize(const FiniteMeasure& m);

/// Point mass at `point`. Throws IndexOutOfRange.
InformationState dirac(const FiniteSpace& space, std::size_t point);

/// Convex combination of states on one space.
/// Throws SpaceMismatch or BadConvexWeights.
InformationState mix(std::span<const InformationState> states,
                     std::span<const double> coefficients);

double measure_of(const InformationState& state, const Event& event);
double measure_of(const FiniteMeasure& measure, const Event& event);

/// Class equality: probability vectors agree within tolerance().
bool same_state(const InformationState& a, const InformationState& b);

}  // namespace measurekit
