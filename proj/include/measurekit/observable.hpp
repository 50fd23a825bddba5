// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "measurekit/measure.hpp"
#include "measurekit/space.hpp"

namespace measurekit {

/// Index map between finite spaces: f[i] is the image of point i.
using PointMap = std::vector<std::size_t>;

/// A generalized observable on a finite information space: a Markov kernel
/// K[omega][theta] = Phi({omega}; theta), column-stochastic in omega.
///
/// Only atoms are stored; the value on an event is always a sum over its
/// atoms. Entries within tolerance() outside [0,1] are clamped.
class GeneralizedObservable {
 public:
  enum class Normalization {
    strict,       // column sums must be 1 within tolerance()
    renormalize,  // positive columns are rescaled to sum to 1
  };

  /// `kernel` is row-major: kernel[omega * |Theta| + theta].
  /// Throws InvalidArgument naming the offending column.
  GeneralizedObservable(FiniteSpace outcome_space, FiniteSpace info_space,
                        std::vector<double> kernel,
                        Normalization mode = Normalization::strict);

  static GeneralizedObservable from_rows(FiniteSpace outcome_space, FiniteSpace info_space,
                                         const std::vector<std::vector<double>>& rows,
                                         Normalization mode = Normalization::strict);

  const FiniteSpace& outcome_space() const { return outcome_space_; }
  const FiniteSpace& info_space() const { return info_space_; }
  std::size_t outcomes() const { return outcome_space_.size(); }
  std::size_t infos() const { return info_space_.size(); }

  double at(std::size_t omega, std::size_t theta) const {
    return kernel_[omega * info_space_.size() + theta];
  }
  std::vector<double> column(std::size_t theta) const;
  const std::vector<double>& kernel() const { return kernel_; }

 private:
  FiniteSpace outcome_space_;
  FiniteSpace info_space_;
  std::vector<double> kernel_;
};

/// Black-box experiment: returns mu_E(B; [pi]) for an event B on the
/// outcome space and a state on the information space.
struct ExperimentOracle {
  FiniteSpace outcome_space;
  FiniteSpace info_space;
  std::function<double(const Event&, const InformationState&)> probability;
};

/// Checks that B -> oracle(B, state) is a probability measure at `state`:
/// atoms in [0,1], atoms summing to the value on Omega, Omega mapped to 1,
/// the empty event to 0. Throws OracleNotNormalized.
void check_oracle_at(const ExperimentOracle& oracle, const InformationState& state,
                     double tol = 1e-9);

struct FromExperimentOptions {
  /// Allowed residual of the affine-mixture identity on validation mixtures.
  double affinity_tolerance = 1e-9;
  /// Allowed deviation of a Dirac column sum from 1.
  double normalization_tolerance = 1e-9;
  int validation_mixtures = 20;
  /// Rescale estimated columns instead of rejecting small sum errors.
  bool renormalize = false;
  std::uint64_t seed = 0x5EEDULL;
};

/// Builds the kernel K[omega][theta] = oracle({omega}, delta_theta) and
/// validates it: the oracle must be normalized at every Dirac state and
/// affine on random mixtures, where it must also agree with the kernel
/// average. Throws OracleNotNormalized or OracleNotAffine.
GeneralizedObservable observable_from_experiment(const ExperimentOracle& oracle,
                                                 const FromExperimentOptions& options = {});

/// Oracle backed by an exact kernel.
ExperimentOracle oracle_from_observable(const GeneralizedObservable& obs);

/// v[theta] = Phi(event; theta).
std::vector<double> value(const GeneralizedObservable& obs, const Event& event);

/// p[omega] = sum_theta K[omega][theta] pi[theta].
InformationState outcome_distribution(const GeneralizedObservable& obs,
                                      const InformationState& state);

/// Deterministic kernel of the point map f: Theta -> Omega.
/// Throws InvalidMap when f is not total or leaves Omega.
GeneralizedObservable image_observable(const FiniteSpace& space_in, const FiniteSpace& space_out,
                                       const PointMap& f);

/// The point map behind an image observable, or nothing if some column is
/// not a 0/1 indicator within tolerance().
std::optional<PointMap> is_image(const GeneralizedObservable& obs);

/// Every column equals nu.
GeneralizedObservable trivial_observable(const FiniteSpace& info_space,
                                         const InformationState& nu);

bool is_trivial(const GeneralizedObservable& obs);

/// Kernel summed over the other factor of a product outcome space.
/// `which` is 1 or 2. Throws NotProductSpace.
GeneralizedObservable marginal(const GeneralizedObservable& obs, int which);

/// K[(a,b)][theta] = K1[a][theta] * K2[b][theta]. Throws SpaceMismatch.
GeneralizedObservable product(const GeneralizedObservable& first,
                              const GeneralizedObservable& second);

/// State on Theta induced by a state on Theta' through S: Theta' -> Theta.
InformationState induce_state(const GeneralizedObservable& s_obs,
                              const InformationState& state);

/// The observable on Theta' representing `obs` once Theta is induced from
/// Theta' by `s_obs`: the kernel product K * K_S.
GeneralizedObservable pull_back(const GeneralizedObservable& obs,
                                const GeneralizedObservable& s_obs);

/// Re-expresses `obs` on an isomorphic space through the bijection
/// f: Theta' -> Theta, K'[omega][theta'] = K[omega][f(theta')].
/// Throws NotBijective.
GeneralizedObservable push_forward(const GeneralizedObservable& obs,
                                   const FiniteSpace& new_info_space, const PointMap& f);

double max_abs_difference(const GeneralizedObservable& a, const GeneralizedObservable& b);

/// Same spaces and kernels within `tol` (tolerance() when negative).
bool same_observable(const GeneralizedObservable& a, const GeneralizedObservable& b,
                     double tol = -1.0);

}  // namespace measurekit
