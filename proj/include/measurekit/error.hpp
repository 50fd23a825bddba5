// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace measurekit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MEASUREKIT_DEFINE_ERROR(Name)      \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

// measure_core
MEASUREKIT_DEFINE_ERROR(ZeroTotalMeasure);
MEASUREKIT_DEFINE_ERROR(IndexOutOfRange);
MEASUREKIT_DEFINE_ERROR(SpaceMismatch);
MEASUREKIT_DEFINE_ERROR(BadConvexWeights);
// Rejected constructor input: bad weights, non-stochastic kernels, duplicate labels.
MEASUREKIT_DEFINE_ERROR(InvalidArgument);

// observables
MEASUREKIT_DEFINE_ERROR(InvalidMap);
MEASUREKIT_DEFINE_ERROR(NotBijective);
MEASUREKIT_DEFINE_ERROR(NotProductSpace);
MEASUREKIT_DEFINE_ERROR(OracleNotAffine);
MEASUREKIT_DEFINE_ERROR(OracleNotNormalized);

// instruments / mean states
MEASUREKIT_DEFINE_ERROR(ZeroProbabilityEvent);
MEASUREKIT_DEFINE_ERROR(BadRelation);
MEASUREKIT_DEFINE_ERROR(NotPrelinear);

// quantum
MEASUREKIT_DEFINE_ERROR(DimensionMismatch);
MEASUREKIT_DEFINE_ERROR(MultiKrausUnsupported);

#undef MEASUREKIT_DEFINE_ERROR

}  // namespace measurekit
