// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "measurekit/config.hpp"

namespace mk = measurekit;
using json = mk::json_io::json;

namespace {

json Parse(const char* text) { return json::parse(text); }

const json* FindCheck(const json& report, const std::string& name) {
  for (const auto& c : report["checks"])
    if (c["name"] == name) return &c;
  return nullptr;
}

TEST(Config, WorkedPipelineReproducesValues) {
  auto cfg = mk::demo_config("classical-2x2");
  auto report = mk::run_config(cfg, {std::nullopt, 20000, 1});
  EXPECT_TRUE(report.passed) << report.to_table();
  const json& d = report.document;
  EXPECT_NEAR(d["steps"][0]["result"]["probabilities"]["w1"].get<double>(), 0.45, 1e-12);
  EXPECT_NEAR(d["steps"][2]["result"]["posterior"]["t1"].get<double>(), 7.0 / 9.0, 1e-12);
  EXPECT_NEAR(d["steps"][2]["result"]["posterior"]["t2"].get<double>(), 2.0 / 9.0, 1e-12);
  EXPECT_EQ(d["status"], "pass");
}

TEST(Config, AllDemosPass) {
  for (const auto& name : mk::demo_names()) {
    auto report = mk::run_config(mk::demo_config(name), {std::nullopt, 20000, 2});
    EXPECT_TRUE(report.passed) << name << "\n" << report.to_table();
  }
  EXPECT_THROW(mk::demo_config("nope"), mk::InvalidArgument);
}

TEST(Config, ColumnSumErrorNamesObservableAndColumn) {
  auto cfg = Parse(R"({"observables": {"K": {"outcome_space": ["w1", "w2"],
      "info_space": ["t1", "t2"], "kernel": [[0.6, 0.2], [0.3, 0.8]]}}})");
  try {
    mk::validate_config(cfg);
    FAIL() << "expected ValidationError";
  } catch (const mk::ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("observable 'K'"), std::string::npos) << msg;
    EXPECT_NE(msg.find("column t1"), std::string::npos) << msg;
    EXPECT_NE(msg.find("0.9"), std::string::npos) << msg;
  }
}

TEST(Config, DeclarationsOnlyPasses) {
  auto cfg = Parse(R"({"states": {"pi": {"space": ["a", "b"], "weights": [1, 3]}}})");
  auto report = mk::run_config(cfg);
  EXPECT_TRUE(report.passed);
  EXPECT_TRUE(report.document["steps"].empty());
  EXPECT_TRUE(report.document["checks"].empty());
}

TEST(Config, ParseErrors) {
  EXPECT_THROW(mk::validate_config(Parse(R"({"bogus": 1})")), mk::ConfigParseError);
  EXPECT_THROW(mk::validate_config(Parse(R"({"pipeline": [{"op": "teleport"}]})")),
               mk::ConfigParseError);
  EXPECT_THROW(mk::validate_config(Parse(R"({"states": {"pi": {"space": ["a"]}}})")),
               mk::ConfigParseError);
  EXPECT_THROW(mk::load_config("/nonexistent/config.json"), mk::ConfigParseError);
}

TEST(Config, UnresolvedAndMistypedReferences) {
  auto unknown = Parse(R"({"states": {"pi": {"space": ["a"], "weights": [1]}},
      "pipeline": [{"op": "distribution", "observable": "K", "state": "pi"}]})");
  EXPECT_THROW(mk::validate_config(unknown), mk::ValidationError);
  auto mistyped = Parse(R"({"states": {"pi": {"space": ["a"], "weights": [1]}},
      "pipeline": [{"op": "distribution", "observable": "pi", "state": "pi"}]})");
  EXPECT_THROW(mk::validate_config(mistyped), mk::ValidationError);
  auto later = mk::demo_config("consecutive");
  later["pipeline"].insert(later["pipeline"].begin(),
                           json{{"op", "check"}, {"invariant", "non_perturbing"},
                                {"extended", "Y21"}, {"expect", true}});
  EXPECT_THROW(mk::validate_config(later), mk::ValidationError);
}

TEST(Config, FailedExpectationFailsTheReport) {
  auto cfg = mk::demo_config("classical-2x2");
  cfg["pipeline"] = json::array({json{{"op", "distribution"}, {"observable", "K"},
                                      {"state", "pi"}, {"expect", {0.5, 0.5}}}});
  auto report = mk::run_config(cfg);
  EXPECT_FALSE(report.passed);
  const json* c = FindCheck(report.document, "distribution values");
  ASSERT_NE(c, nullptr);
  EXPECT_NEAR((*c)["residual"].get<double>(), 0.05, 1e-12);
  EXPECT_EQ(report.document["status"], "fail");
}

TEST(Config, RuntimeErrorBecomesFailedCheck) {
  auto cfg = Parse(R"({
    "states": {"pi": {"space": ["t1", "t2"], "weights": [0, 1]}},
    "extended": {"R": {"outcome_space": ["w1", "w2"], "out_info_space": ["t1", "t2"],
                       "in_info_space": ["t1", "t2"],
                       "kernel": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]}},
    "pipeline": [{"op": "posterior", "extended": "R", "state": "pi", "event": ["w1"]}]})");
  auto report = mk::run_config(cfg);
  EXPECT_FALSE(report.passed);
  ASSERT_EQ(report.document["checks"].size(), 1u);
  EXPECT_NE(report.document["checks"][0]["detail"].get<std::string>().find("probability"),
            std::string::npos);
}

TEST(Config, DeterministicAcrossRunsAndWorkers) {
  for (const auto& name : mk::demo_names()) {
    auto cfg = mk::demo_config(name);
    auto a = mk::run_config(cfg, {std::nullopt, 150000, 1}).to_json_text();
    auto b = mk::run_config(cfg, {std::nullopt, 150000, 1}).to_json_text();
    auto c = mk::run_config(cfg, {std::nullopt, 150000, 4}).to_json_text();
    EXPECT_EQ(a, b) << name;
    EXPECT_EQ(a, c) << name;
    auto other_seed = mk::run_config(cfg, {12345, 150000, 1}).to_json_text();
    if (cfg["pipeline"].dump().find("sample") != std::string::npos) {
      EXPECT_NE(a, other_seed) << name;
    }
  }
}

TEST(Config, TableListsEveryComparison) {
  auto report = mk::run_config(mk::demo_config("classical-2x2"), {std::nullopt, 10000, 1});
  const std::string table = report.to_table();
  EXPECT_NE(table.find("P(t1 | w1)"), std::string::npos);
  EXPECT_NE(table.find("status: PASS"), std::string::npos);
}

}  // namespace
