// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

// measurekit: run, validate, and print experiment configs.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "measurekit/config.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;

int report_error(const measurekit::Error& e) {
  if (dynamic_cast<const measurekit::ConfigParseError*>(&e)) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  }
  std::cerr << "validation error: " << e.what() << "\n";
  return kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-space experiment calculus: observables, instruments, mean states."};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::string format = "json";
  std::string out_path;
  unsigned workers = 1;

  auto* run = app.add_subcommand("run", "Run a config's pipeline and emit a report");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--trials", trials, "Override every sampling step's trial count");
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "table"}));
  run->add_option("--out", out_path, "Write the report here instead of stdout");
  run->add_option("--workers", workers, "Sampling threads; results do not depend on it")
      ->check(CLI::Range(1u, 256u));

  auto* validate = app.add_subcommand("validate", "Load and check a config without running it");
  validate->add_option("config", config_path, "Config file")->required();

  std::string demo_name;
  auto* demo = app.add_subcommand("demo", "Print a built-in example config");
  demo->add_option("name", demo_name, "Demo name")
      ->required()
      ->check(CLI::IsMember(measurekit::demo_names()));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*demo) {
      std::cout << measurekit::demo_config(demo_name).dump(2) << "\n";
      return kExitPass;
    }
    if (*validate) {
      measurekit::validate_config(measurekit::load_config(config_path));
      std::cout << "ok\n";
      return kExitPass;
    }
    measurekit::RunOptions options{seed, trials, workers};
    const measurekit::Report report = measurekit::run_config_file(config_path, options);
    const std::string text = format == "table" ? report.to_table() : report.to_json_text();
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "cannot write '" << out_path << "'\n";
        return kExitParse;
      }
      out << text;
    }
    return report.passed ? kExitPass : kExitCheckFailure;
  } catch (const measurekit::ConfigParseError& e) {
    return report_error(e);
  } catch (const measurekit::ValidationError& e) {
    return report_error(e);
  } catch (const measurekit::Error& e) {
    // Library errors raised while loading count as validation failures.
    return report_error(e);
  }
}
