// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "measurekit/error.hpp"
#include "measurekit/json_io.hpp"

namespace measurekit {

/// The config file is not valid JSON or has the wrong shape. Exit code 2.
class ConfigParseError : public Error {
 public:
  using Error::Error;
};

/// A declared object breaks its invariants or a reference does not
/// resolve. Exit code 3.
class ValidationError : public Error {
 public:
  using Error::Error;
};

struct RunOptions {
  std::optional<std::uint64_t> seed;    // replaces the config's "seed"
  std::optional<std::size_t> trials;    // replaces every sampling step's trial count
  unsigned workers = 1;                 // sampling threads; never affects results
};

struct Report {
  json_io::json document;
  bool passed = true;

  std::string to_json_text() const;
  std::string to_table() const;
};

/// Reads and parses a config file. Throws ConfigParseError.
json_io::json load_config(const std::string& path);

/// Builds every declared object and resolves every pipeline reference
/// without running the pipeline. Throws ConfigParseError or ValidationError.
void validate_config(const json_io::json& config);

/// Validates, then runs the pipeline in order. Step failures are recorded
/// as failed checks; the report passes iff every check and sampling
/// comparison passes.
Report run_config(const json_io::json& config, const RunOptions& options = {});
Report run_config_file(const std::string& path, const RunOptions& options = {});

/// Built-in example configs.
std::vector<std::string> demo_names();
/// Throws InvalidArgument for an unknown name.
json_io::json demo_config(const std::string& name);

}  // namespace measurekit
