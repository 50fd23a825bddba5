// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#include "measurekit/tolerance.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

namespace measurekit {
namespace {

double initial_tolerance() {
  constexpr double kDefault = 1e-12;
  const char* env = std::getenv("MEASUREKIT_TOLERANCE");
  if (env == nullptr || *env == '\0') return kDefault;
  try {
    std::size_t used = 0;
    double value = std::stod(env, &used);
    if (used == std::string(env).size() && std::isfinite(value) && value > 0) {
      return value;
    }
  } catch (const std::exception&) {
  }
  return kDefault;
}

std::atomic<double>& storage() {
  static std::atomic<double> value{initial_tolerance()};
  return value;
}

}  // namespace

double tolerance() { return storage().load(std::memory_order_relaxed); }

void set_tolerance(double value) {
  storage().store(value, std::memory_order_relaxed);
}

}  // namespace measurekit
