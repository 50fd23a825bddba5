// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "measurekit/instrument.hpp"
#include "measurekit/measure.hpp"
#include "measurekit/space.hpp"

namespace measurekit {

/// A finite information space whose points carry vectors in a real
/// payload space V, together with a covector l with l[payload] = 1 at
/// every point and a norm bound C on the payloads.
class EmbeddedSpace {
 public:
  /// Throws InvalidArgument when a payload has the wrong dimension, breaks
  /// the norm bound, or has l[payload] != 1 within tolerance().
  EmbeddedSpace(FiniteSpace base, std::vector<std::vector<double>> payloads,
                std::vector<double> functional, double bound);

  const FiniteSpace& base() const { return base_; }
  std::size_t dimension() const { return functional_.size(); }
  const std::vector<double>& payload(std::size_t i) const { return payloads_.at(i); }
  const std::vector<std::vector<double>>& payloads() const { return payloads_; }
  const std::vector<double>& functional() const { return functional_; }
  double bound() const { return bound_; }

  /// l[v].
  double apply_functional(const std::vector<double>& v) const;

 private:
  FiniteSpace base_;
  std::vector<std::vector<double>> payloads_;
  std::vector<double> functional_;
  double bound_;
};

/// Barycenter of an information state in the payload space.
struct MeanState {
  std::vector<double> vector;
  std::optional<InformationState> provenance;
};

/// Convex combination of frame points: (point index, weight) pairs.
using ConvexCombination = std::vector<std::pair<std::size_t, double>>;

/// An affine dependency between payloads: sum(lhs) = sum(rhs) in V.
///
/// The usual case expresses one target payload through other points;
/// see point(). Two-sided relations cover frames whose points are all
/// extreme, such as pure-state projectors.
struct ConvexRelation {
  ConvexCombination lhs;
  ConvexCombination rhs;

  /// payload(target) = sum_i w_i payload(point_i).
  static ConvexRelation point(std::size_t target, ConvexCombination weights) {
    return {{{target, 1.0}}, std::move(weights)};
  }
};

/// An extended observable whose input and output spaces are embedded.
struct EmbeddedExtendedObservable {
  /// Throws SpaceMismatch unless the embedded bases match y's spaces.
  EmbeddedExtendedObservable(ExtendedObservable y, EmbeddedSpace in, EmbeddedSpace out);

  ExtendedObservable y;
  EmbeddedSpace in;
  EmbeddedSpace out;
};

/// sum_theta pi[theta] payload(theta).
MeanState mean_state(const EmbeddedSpace& space, const InformationState& state);

/// Barycenter of a convex combination of frame points.
std::vector<double> combine(const EmbeddedSpace& space, const ConvexCombination& weights);

/// v(theta_in) = sum_out payload(out) * Y(event x {out})(theta_in), one
/// vector per input point.
std::vector<std::vector<double>> statistical_map(const EmbeddedExtendedObservable& ey,
                                                 const Event& event);

/// Conditional posterior mean computed from the posterior state.
/// Throws ZeroProbabilityEvent.
MeanState posterior_mean(const EmbeddedExtendedObservable& ey, const Event& event,
                         const InformationState& state);

/// Throws BadRelation unless both sides are convex weights over valid
/// points and their barycenters agree within 1e-9.
void validate_relation(const EmbeddedSpace& space, const ConvexRelation& relation);

/// True iff for every outcome atom the statistical map respects every
/// supplied relation within 1e-9. Relations are validated first.
bool check_prelinear(const EmbeddedExtendedObservable& ey,
                     const std::vector<ConvexRelation>& relations);

struct MeanInstrumentResult {
  double probability;
  MeanState mean;
};

/// Outcome probability and posterior mean as functions of the input mean
/// state alone. `decomposition` expresses eta_in over input frame points.
/// Throws BadRelation when the decomposition does not reproduce eta_in,
/// NotPrelinear when the relations are violated, ZeroProbabilityEvent.
MeanInstrumentResult mean_instrument_apply(const EmbeddedExtendedObservable& ey,
                                           const Event& event, const MeanState& eta_in,
                                           const ConvexCombination& decomposition,
                                           const std::vector<ConvexRelation>& relations);

}  // namespace measurekit
