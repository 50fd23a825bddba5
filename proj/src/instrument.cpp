// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#include "measurekit/instrument.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "measurekit/error.hpp"
#include "measurekit/tolerance.hpp"

namespace measurekit {

ExtendedObservable::ExtendedObservable(FiniteSpace outcome_space, FiniteSpace out_info_space,
                                       FiniteSpace in_info_space, std::vector<double> kernel)
    : outcome_space_(std::move(outcome_space)),
      out_space_(std::move(out_info_space)),
      in_space_(std::move(in_info_space)),
      kernel_(std::move(kernel)) {
  const std::size_t expected = outcomes() * outs() * ins();
  if (kernel_.size() != expected) {
    throw InvalidArgument("extended kernel has " + std::to_string(kernel_.size()) +
                          " entries, expected " + std::to_string(expected));
  }
  const double tol = tolerance();
  std::vector<double> sums(ins(), 0.0);
  for (std::size_t i = 0; i < kernel_.size(); ++i) {
    double& k = kernel_[i];
    if (!std::isfinite(k) || k < -tol || k > 1.0 + tol) {
      throw InvalidArgument("extended kernel column " + in_space_.label(i % ins()) +
                            " has an entry outside [0,1]");
    }
    k = std::clamp(k, 0.0, 1.0);
    sums[i % ins()] += k;
  }
  for (std::size_t t = 0; t < ins(); ++t) {
    if (std::abs(sums[t] - 1.0) > tol) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", sums[t]);
      throw InvalidArgument("extended kernel column " + in_space_.label(t) + " sums to " + buf +
                            ", not 1");
    }
  }
}

GeneralizedObservable ExtendedObservable::as_observable() const {
  return GeneralizedObservable(FiniteSpace::product(outcome_space_, out_space_), in_space_,
                               kernel_);
}

GeneralizedObservable outcome_marginal(const ExtendedObservable& y) {
  const std::size_t ni = y.ins();
  std::vector<double> kernel(y.outcomes() * ni, 0.0);
  for (std::size_t o = 0; o < y.outcomes(); ++o) {
    for (std::size_t q = 0; q < y.outs(); ++q) {
      for (std::size_t t = 0; t < ni; ++t) kernel[o * ni + t] += y.at(o, q, t);
    }
  }
  return GeneralizedObservable(y.outcome_space(), y.in_info_space(), std::move(kernel));
}

GeneralizedObservable system_marginal(const ExtendedObservable& y) {
  const std::size_t ni = y.ins();
  std::vector<double> kernel(y.outs() * ni, 0.0);
  for (std::size_t o = 0; o < y.outcomes(); ++o) {
    for (std::size_t q = 0; q < y.outs(); ++q) {
      for (std::size_t t = 0; t < ni; ++t) kernel[q * ni + t] += y.at(o, q, t);
    }
  }
  return GeneralizedObservable(y.out_info_space(), y.in_info_space(), std::move(kernel));
}

FiniteMeasure instrument_apply(const ExtendedObservable& y, const Event& event,
                               const FiniteMeasure& m) {
  require_same_space(y.outcome_space(), event.space(), "instrument_apply");
  require_same_space(y.in_info_space(), m.space(), "instrument_apply");
  std::vector<double> out(y.outs(), 0.0);
  for (std::size_t o = 0; o < y.outcomes(); ++o) {
    if (!event.contains(o)) continue;
    for (std::size_t q = 0; q < y.outs(); ++q) {
      double s = 0.0;
      for (std::size_t t = 0; t < y.ins(); ++t) s += y.at(o, q, t) * m.weight(t);
      out[q] += s;
    }
  }
  return FiniteMeasure(y.out_info_space(), std::move(out));
}

double outcome_probability(const ExtendedObservable& y, const Event& event,
                           const InformationState& state) {
  return instrument_apply(y, event, state.as_measure()).total();
}

InformationState posterior_state(const ExtendedObservable& y, const Event& event,
                                 const InformationState& state) {
  const FiniteMeasure numerator = instrument_apply(y, event, state.as_measure());
  if (numerator.total() <= kZeroProbability) {
    throw ZeroProbabilityEvent("conditioning event has probability " +
                               std::to_string(numerator.total()));
  }
  return normalize(numerator);
}

ExtendedObservable compose(const ExtendedObservable& first, const ExtendedObservable& second) {
  require_same_space(first.out_info_space(), second.in_info_space(), "compose");
  FiniteSpace joint = FiniteSpace::product(first.outcome_space(), second.outcome_space());
  const std::size_t n1 = first.outcomes();
  const std::size_t n2 = second.outcomes();
  const std::size_t nmid = first.outs();
  const std::size_t nout = second.outs();
  const std::size_t nin = first.ins();
  std::vector<double> kernel(joint.size() * nout * nin, 0.0);
  for (std::size_t w1 = 0; w1 < n1; ++w1) {
    for (std::size_t w2 = 0; w2 < n2; ++w2) {
      const std::size_t row = joint.pair_index(w1, w2);
      for (std::size_t q = 0; q < nout; ++q) {
        double* dst = &kernel[(row * nout + q) * nin];
        for (std::size_t m = 0; m < nmid; ++m) {
          const double k2 = second.at(w2, q, m);
          if (k2 == 0.0) continue;
          for (std::size_t t = 0; t < nin; ++t) dst[t] += k2 * first.at(w1, m, t);
        }
      }
    }
  }
  return ExtendedObservable(std::move(joint), second.out_info_space(), first.in_info_space(),
                            std::move(kernel));
}

ExtendedObservable product_extended(const GeneralizedObservable& m,
                                    const GeneralizedObservable& s) {
  require_same_space(m.info_space(), s.info_space(), "product_extended");
  const std::size_t no = m.outcomes();
  const std::size_t nq = s.outcomes();
  const std::size_t ni = m.infos();
  std::vector<double> kernel(no * nq * ni);
  for (std::size_t o = 0; o < no; ++o) {
    for (std::size_t q = 0; q < nq; ++q) {
      for (std::size_t t = 0; t < ni; ++t) kernel[(o * nq + q) * ni + t] = m.at(o, t) * s.at(q, t);
    }
  }
  return ExtendedObservable(m.outcome_space(), s.outcome_space(), m.info_space(),
                            std::move(kernel));
}

bool is_non_perturbing(const ExtendedObservable& y) {
  const GeneralizedObservable m = outcome_marginal(y);
  const GeneralizedObservable s = system_marginal(y);
  const double tol = tolerance();
  for (std::size_t o = 0; o < y.outcomes(); ++o) {
    for (std::size_t q = 0; q < y.outs(); ++q) {
      for (std::size_t t = 0; t < y.ins(); ++t) {
        if (std::abs(y.at(o, q, t) - m.at(o, t) * s.at(q, t)) > tol) return false;
      }
    }
  }
  return true;
}

double max_abs_difference(const ExtendedObservable& a, const ExtendedObservable& b) {
  if (a.kernel().size() != b.kernel().size()) throw SpaceMismatch("kernels differ in shape");
  double d = 0.0;
  for (std::size_t i = 0; i < a.kernel().size(); ++i) {
    d = std::max(d, std::abs(a.kernel()[i] - b.kernel()[i]));
  }
  return d;
}

}  // namespace measurekit
