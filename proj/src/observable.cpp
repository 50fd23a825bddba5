// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#include "measurekit/observable.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "measurekit/error.hpp"
#include "measurekit/rng.hpp"
#include "measurekit/tolerance.hpp"

namespace measurekit {
namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

InformationState random_state(const FiniteSpace& space, Rng& rng) {
  std::vector<double> w(space.size());
  double total = 0.0;
  for (double& x : w) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  for (double& x : w) x /= total;
  return InformationState(space, std::move(w));
}

}  // namespace

GeneralizedObservable::GeneralizedObservable(FiniteSpace outcome_space, FiniteSpace info_space,
                                             std::vector<double> kernel, Normalization mode)
    : outcome_space_(std::move(outcome_space)),
      info_space_(std::move(info_space)),
      kernel_(std::move(kernel)) {
  const std::size_t no = outcome_space_.size();
  const std::size_t ni = info_space_.size();
  if (kernel_.size() != no * ni) {
    throw InvalidArgument("kernel has " + std::to_string(kernel_.size()) + " entries, expected " +
                          std::to_string(no * ni));
  }
  const double tol = tolerance();
  for (std::size_t t = 0; t < ni; ++t) {
    double sum = 0.0;
    for (std::size_t o = 0; o < no; ++o) {
      double& k = kernel_[o * ni + t];
      if (!std::isfinite(k) || k < -tol || (mode == Normalization::strict && k > 1.0 + tol)) {
        throw InvalidArgument("kernel column " + info_space_.label(t) + ": entry for outcome " +
                              outcome_space_.label(o) + " is " + fmt(k) + ", outside [0,1]");
      }
      k = std::max(k, 0.0);
      sum += k;
    }
    if (mode == Normalization::renormalize) {
      if (!(sum > 0.0)) {
        throw InvalidArgument("kernel column " + info_space_.label(t) + " is identically zero");
      }
      for (std::size_t o = 0; o < no; ++o) kernel_[o * ni + t] /= sum;
    } else if (std::abs(sum - 1.0) > tol) {
      throw InvalidArgument("kernel column " + info_space_.label(t) + " sums to " + fmt(sum) +
                            ", not 1");
    }
    for (std::size_t o = 0; o < no; ++o) kernel_[o * ni + t] = std::min(kernel_[o * ni + t], 1.0);
  }
}

GeneralizedObservable GeneralizedObservable::from_rows(
    FiniteSpace outcome_space, FiniteSpace info_space,
    const std::vector<std::vector<double>>& rows, Normalization mode) {
  if (rows.size() != outcome_space.size()) {
    throw InvalidArgument("kernel needs one row per outcome");
  }
  std::vector<double> flat;
  flat.reserve(outcome_space.size() * info_space.size());
  for (const auto& row : rows) {
    if (row.size() != info_space.size()) {
      throw InvalidArgument("kernel row length must equal the information space size");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return GeneralizedObservable(std::move(outcome_space), std::move(info_space), std::move(flat),
                               mode);
}

std::vector<double> GeneralizedObservable::column(std::size_t theta) const {
  if (theta >= infos()) throw IndexOutOfRange("column index out of range");
  std::vector<double> c(outcomes());
  for (std::size_t o = 0; o < c.size(); ++o) c[o] = at(o, theta);
  return c;
}

void check_oracle_at(const ExperimentOracle& oracle, const InformationState& state, double tol) {
  require_same_space(oracle.info_space, state.space(), "check_oracle_at");
  const auto& omega = oracle.outcome_space;
  const double whole = oracle.probability(Event::all(omega), state);
  const double nothing = oracle.probability(Event::none(omega), state);
  if (std::abs(whole - 1.0) > tol) {
    throw OracleNotNormalized("oracle assigns " + fmt(whole) + " to the full outcome space");
  }
  if (std::abs(nothing) > tol) {
    throw OracleNotNormalized("oracle assigns " + fmt(nothing) + " to the empty event");
  }
  double atoms = 0.0;
  for (std::size_t o = 0; o < omega.size(); ++o) {
    const double p = oracle.probability(Event::single(omega, o), state);
    if (!(p >= -tol && p <= 1.0 + tol)) {
      throw OracleNotNormalized("oracle probability " + fmt(p) + " for outcome " +
                                omega.label(o) + " is outside [0,1]");
    }
    atoms += p;
  }
  if (std::abs(atoms - whole) > tol) {
    throw OracleNotNormalized("oracle atoms sum to " + fmt(atoms) +
                              " but the full event has probability " + fmt(whole));
  }
}

GeneralizedObservable observable_from_experiment(const ExperimentOracle& oracle,
                                                 const FromExperimentOptions& options) {
  const auto& omega = oracle.outcome_space;
  const auto& theta = oracle.info_space;
  const std::size_t no = omega.size();
  const std::size_t ni = theta.size();

  std::vector<Event> atoms;
  atoms.reserve(no);
  for (std::size_t o = 0; o < no; ++o) atoms.push_back(Event::single(omega, o));

  std::vector<double> kernel(no * ni);
  for (std::size_t t = 0; t < ni; ++t) {
    const InformationState delta = dirac(theta, t);
    check_oracle_at(oracle, delta, options.normalization_tolerance);
    for (std::size_t o = 0; o < no; ++o) {
      kernel[o * ni + t] = std::clamp(oracle.probability(atoms[o], delta), 0.0, 1.0);
    }
  }
  if (!options.renormalize) {
    for (std::size_t t = 0; t < ni; ++t) {
      double sum = 0.0;
      for (std::size_t o = 0; o < no; ++o) sum += kernel[o * ni + t];
      if (std::abs(sum - 1.0) > tolerance()) {
        throw OracleNotNormalized("oracle column " + theta.label(t) + " sums to " + fmt(sum) +
                                  "; enable renormalize for estimated oracles");
      }
    }
  }
  GeneralizedObservable obs(omega, theta, std::move(kernel),
                            options.renormalize
                                ? GeneralizedObservable::Normalization::renormalize
                                : GeneralizedObservable::Normalization::strict);

  Rng rng(options.seed);
  for (int m = 0; m < options.validation_mixtures; ++m) {
    const InformationState pi1 = random_state(theta, rng);
    const InformationState pi2 = random_state(theta, rng);
    const double alpha = 0.05 + 0.9 * rng.uniform();
    const InformationState states[] = {pi1, pi2};
    const double coeffs[] = {alpha, 1.0 - alpha};
    const InformationState pi = mix(states, coeffs);
    const InformationState predicted = outcome_distribution(obs, pi);
    for (std::size_t o = 0; o < no; ++o) {
      const double lhs = oracle.probability(atoms[o], pi);
      const double rhs = alpha * oracle.probability(atoms[o], pi1) +
                         (1.0 - alpha) * oracle.probability(atoms[o], pi2);
      if (std::abs(lhs - rhs) > options.affinity_tolerance) {
        throw OracleNotAffine("oracle violates the mixture identity at outcome " +
                              omega.label(o) + ": residual " + fmt(std::abs(lhs - rhs)));
      }
      if (std::abs(lhs - predicted[o]) > options.affinity_tolerance) {
        throw OracleNotAffine("oracle disagrees with its Dirac kernel at outcome " +
                              omega.label(o) + ": residual " + fmt(std::abs(lhs - predicted[o])));
      }
    }
  }
  return obs;
}

ExperimentOracle oracle_from_observable(const GeneralizedObservable& obs) {
  return ExperimentOracle{obs.outcome_space(), obs.info_space(),
                          [obs](const Event& event, const InformationState& state) {
                            return measure_of(outcome_distribution(obs, state), event);
                          }};
}

std::vector<double> value(const GeneralizedObservable& obs, const Event& event) {
  require_same_space(obs.outcome_space(), event.space(), "value");
  std::vector<double> v(obs.infos(), 0.0);
  for (std::size_t o = 0; o < obs.outcomes(); ++o) {
    if (!event.contains(o)) continue;
    for (std::size_t t = 0; t < v.size(); ++t) v[t] += obs.at(o, t);
  }
  for (double& x : v) x = std::min(x, 1.0);
  return v;
}

InformationState outcome_distribution(const GeneralizedObservable& obs,
                                      const InformationState& state) {
  require_same_space(obs.info_space(), state.space(), "outcome_distribution");
  std::vector<double> p(obs.outcomes(), 0.0);
  for (std::size_t o = 0; o < p.size(); ++o) {
    double s = 0.0;
    for (std::size_t t = 0; t < obs.infos(); ++t) s += obs.at(o, t) * state[t];
    p[o] = s;
  }
  return InformationState(obs.outcome_space(), std::move(p));
}

GeneralizedObservable image_observable(const FiniteSpace& space_in, const FiniteSpace& space_out,
                                       const PointMap& f) {
  if (f.size() != space_in.size()) {
    throw InvalidMap("point map must assign an image to each of the " +
                     std::to_string(space_in.size()) + " points");
  }
  const std::size_t ni = space_in.size();
  std::vector<double> kernel(space_out.size() * ni, 0.0);
  for (std::size_t t = 0; t < ni; ++t) {
    if (f[t] >= space_out.size()) {
      throw InvalidMap("image of " + space_in.label(t) + " is not a point of the outcome space");
    }
    kernel[f[t] * ni + t] = 1.0;
  }
  return GeneralizedObservable(space_out, space_in, std::move(kernel));
}

std::optional<PointMap> is_image(const GeneralizedObservable& obs) {
  const double tol = tolerance();
  PointMap f(obs.infos());
  for (std::size_t t = 0; t < obs.infos(); ++t) {
    std::optional<std::size_t> hit;
    for (std::size_t o = 0; o < obs.outcomes(); ++o) {
      const double k = obs.at(o, t);
      if (k >= 1.0 - tol && !hit) {
        hit = o;
      } else if (k > tol) {
        return std::nullopt;
      }
    }
    if (!hit) return std::nullopt;
    f[t] = *hit;
  }
  return f;
}

GeneralizedObservable trivial_observable(const FiniteSpace& info_space,
                                         const InformationState& nu) {
  const std::size_t no = nu.size();
  const std::size_t ni = info_space.size();
  std::vector<double> kernel(no * ni);
  for (std::size_t o = 0; o < no; ++o) {
    for (std::size_t t = 0; t < ni; ++t) kernel[o * ni + t] = nu[o];
  }
  return GeneralizedObservable(nu.space(), info_space, std::move(kernel));
}

bool is_trivial(const GeneralizedObservable& obs) {
  const double tol = tolerance();
  for (std::size_t o = 0; o < obs.outcomes(); ++o) {
    const double ref = obs.at(o, 0);
    for (std::size_t t = 1; t < obs.infos(); ++t) {
      if (std::abs(obs.at(o, t) - ref) > tol) return false;
    }
  }
  return true;
}

GeneralizedObservable marginal(const GeneralizedObservable& obs, int which) {
  const FiniteSpace& joint = obs.outcome_space();
  const FiniteSpace& a = joint.factor(1);
  const FiniteSpace& b = joint.factor(2);
  const FiniteSpace& kept = joint.factor(which);
  const std::size_t ni = obs.infos();
  std::vector<double> kernel(kept.size() * ni, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::size_t row = (which == 1) ? i : j;
      const std::size_t src = joint.pair_index(i, j);
      for (std::size_t t = 0; t < ni; ++t) kernel[row * ni + t] += obs.at(src, t);
    }
  }
  return GeneralizedObservable(kept, obs.info_space(), std::move(kernel));
}

GeneralizedObservable product(const GeneralizedObservable& first,
                              const GeneralizedObservable& second) {
  require_same_space(first.info_space(), second.info_space(), "product");
  FiniteSpace joint = FiniteSpace::product(first.outcome_space(), second.outcome_space());
  const std::size_t ni = first.infos();
  std::vector<double> kernel(joint.size() * ni);
  for (std::size_t i = 0; i < first.outcomes(); ++i) {
    for (std::size_t j = 0; j < second.outcomes(); ++j) {
      const std::size_t row = joint.pair_index(i, j);
      for (std::size_t t = 0; t < ni; ++t) {
        kernel[row * ni + t] = first.at(i, t) * second.at(j, t);
      }
    }
  }
  return GeneralizedObservable(std::move(joint), first.info_space(), std::move(kernel));
}

InformationState induce_state(const GeneralizedObservable& s_obs, const InformationState& state) {
  return outcome_distribution(s_obs, state);
}

GeneralizedObservable pull_back(const GeneralizedObservable& obs,
                                const GeneralizedObservable& s_obs) {
  require_same_space(obs.info_space(), s_obs.outcome_space(), "pull_back");
  const std::size_t no = obs.outcomes();
  const std::size_t nmid = obs.infos();
  const std::size_t ni = s_obs.infos();
  std::vector<double> kernel(no * ni, 0.0);
  for (std::size_t o = 0; o < no; ++o) {
    for (std::size_t m = 0; m < nmid; ++m) {
      const double k = obs.at(o, m);
      if (k == 0.0) continue;
      for (std::size_t t = 0; t < ni; ++t) kernel[o * ni + t] += k * s_obs.at(m, t);
    }
  }
  return GeneralizedObservable(obs.outcome_space(), s_obs.info_space(), std::move(kernel));
}

GeneralizedObservable push_forward(const GeneralizedObservable& obs,
                                   const FiniteSpace& new_info_space, const PointMap& f) {
  const std::size_t ni = obs.infos();
  if (new_info_space.size() != ni || f.size() != ni) {
    throw NotBijective("bijection must map " + std::to_string(ni) + " points onto " +
                       std::to_string(ni) + " points");
  }
  std::vector<bool> hit(ni, false);
  for (auto x : f) {
    if (x >= ni || hit[x]) throw NotBijective("point map is not a bijection");
    hit[x] = true;
  }
  std::vector<double> kernel(obs.outcomes() * ni);
  for (std::size_t o = 0; o < obs.outcomes(); ++o) {
    for (std::size_t t = 0; t < ni; ++t) kernel[o * ni + t] = obs.at(o, f[t]);
  }
  return GeneralizedObservable(obs.outcome_space(), new_info_space, std::move(kernel));
}

double max_abs_difference(const GeneralizedObservable& a, const GeneralizedObservable& b) {
  if (a.kernel().size() != b.kernel().size()) throw SpaceMismatch("kernels differ in shape");
  double d = 0.0;
  for (std::size_t i = 0; i < a.kernel().size(); ++i) {
    d = std::max(d, std::abs(a.kernel()[i] - b.kernel()[i]));
  }
  return d;
}

bool same_observable(const GeneralizedObservable& a, const GeneralizedObservable& b, double tol) {
  if (!(a.outcome_space() == b.outcome_space()) || !(a.info_space() == b.info_space())) {
    return false;
  }
  return max_abs_difference(a, b) <= (tol < 0.0 ? tolerance() : tol);
}

}  // namespace measurekit
