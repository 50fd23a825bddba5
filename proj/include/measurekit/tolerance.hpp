// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace measurekit {

/// Library-wide absolute tolerance for normalization and equality checks.
/// Defaults to 1e-12; the MEASUREKIT_TOLERANCE environment variable
/// overrides the default the first time it is read.
double tolerance();

/// Replaces the library-wide tolerance. Intended for program start-up;
/// not synchronized with concurrent readers.
void set_tolerance(double value);

/// Tolerance for eigenvalue nonnegativity (PSD and Choi checks).
inline constexpr double kEigenTolerance = 1e-10;

/// Tolerance for convex relations and pre-linearity certificates.
inline constexpr double kRelationTolerance = 1e-9;

/// Conditioning events at or below this probability are rejected.
inline constexpr double kZeroProbability = 1e-15;

}  // namespace measurekit
