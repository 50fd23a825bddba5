// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "measurekit/measure.hpp"
#include "measurekit/observable.hpp"
#include "measurekit/space.hpp"

namespace measurekit {

/// Generalized observable of a non-destructive experiment: a kernel on the
/// compound outcome space Omega x Theta_out, indexed Y[omega][out][in].
/// For every input point the kernel sums to 1 over (omega, out).
class ExtendedObservable {
 public:
  /// `kernel` is flat: kernel[(omega * |out| + out) * |in| + in].
  /// Throws InvalidArgument naming the offending input column.
  ExtendedObservable(FiniteSpace outcome_space, FiniteSpace out_info_space,
                     FiniteSpace in_info_space, std::vector<double> kernel);

  const FiniteSpace& outcome_space() const { return outcome_space_; }
  const FiniteSpace& out_info_space() const { return out_space_; }
  const FiniteSpace& in_info_space() const { return in_space_; }
  std::size_t outcomes() const { return outcome_space_.size(); }
  std::size_t outs() const { return out_space_.size(); }
  std::size_t ins() const { return in_space_.size(); }

  double at(std::size_t omega, std::size_t out, std::size_t in) const {
    return kernel_[(omega * outs() + out) * ins() + in];
  }
  const std::vector<double>& kernel() const { return kernel_; }

  /// The same kernel as an observable on Theta_in with outcome space
  /// Omega x Theta_out.
  GeneralizedObservable as_observable() const;

 private:
  FiniteSpace outcome_space_;
  FiniteSpace out_space_;
  FiniteSpace in_space_;
  std::vector<double> kernel_;
};

/// M_Y(B) = Y(B x Theta_out).
GeneralizedObservable outcome_marginal(const ExtendedObservable& y);

/// S_Y(F) = Y(Omega x F).
GeneralizedObservable system_marginal(const ExtendedObservable& y);

/// Information state instrument: out[q] = sum_{omega in B, t} Y[omega][q][t] m[t].
FiniteMeasure instrument_apply(const ExtendedObservable& y, const Event& event,
                               const FiniteMeasure& m);

/// mu_E(B; [pi]) = (M_Y(B) pi)(Theta_out).
double outcome_probability(const ExtendedObservable& y, const Event& event,
                           const InformationState& state);

/// Conditional posterior state given that the outcome fell in `event`.
/// Throws ZeroProbabilityEvent when mu_E(event) <= 1e-15.
InformationState posterior_state(const ExtendedObservable& y, const Event& event,
                                 const InformationState& state);

/// Consecutive experiment: y1 then y2 on y1's posterior space. The result
/// has outcome space Omega_1 x Omega_2 and kernel
/// sum_{t1} Y2[w2][out][t1] * Y1[w1][t1][in].
ExtendedObservable compose(const ExtendedObservable& first, const ExtendedObservable& second);

/// Product form Y[omega][out][in] = M[omega][in] * S[out][in].
ExtendedObservable product_extended(const GeneralizedObservable& m,
                                    const GeneralizedObservable& s);

/// True iff Y factorizes into its outcome and system marginals within tolerance().
bool is_non_perturbing(const ExtendedObservable& y);

double max_abs_difference(const ExtendedObservable& a, const ExtendedObservable& b);

}  // namespace measurekit
