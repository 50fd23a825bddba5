// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#include <map>

#include "measurekit/config.hpp"

namespace measurekit {
namespace {

constexpr const char* kClassical = R"json({
  "name": "classical-2x2",
  "description": "Two-point system read by a noisy detector that leaves the system alone.",
  "seed": 2026,
  "trials": 200000,
  "states": {
    "pi": {"space": ["t1", "t2"], "weights": [0.5, 0.5]},
    "skewed": {"space": ["t1", "t2"], "weights": [0.9, 0.1]}
  },
  "observables": {
    "K": {"outcome_space": ["w1", "w2"], "info_space": ["t1", "t2"],
          "kernel": [[0.7, 0.2], [0.3, 0.8]]}
  },
  "extended": {
    "Y": {"outcome_space": ["w1", "w2"], "out_info_space": ["t1", "t2"],
          "in_info_space": ["t1", "t2"],
          "kernel": [[[0.7, 0.0], [0.0, 0.2]], [[0.3, 0.0], [0.0, 0.8]]]}
  },
  "embedded": {
    "E": {"space": ["t1", "t2"], "payloads": [[1.0, 0.0], [0.0, 1.0]],
          "functional": [1.0, 1.0], "bound": 1.0}
  },
  "pipeline": [
    {"op": "distribution", "observable": "K", "state": "pi", "expect": [0.45, 0.55]},
    {"op": "instrument", "extended": "Y", "state": "pi", "event": ["w1"], "expect": [0.35, 0.1]},
    {"op": "posterior", "extended": "Y", "state": "pi", "event": ["w1"],
     "expect": [0.7777777777777778, 0.2222222222222222], "as": "post"},
    {"op": "marginal", "extended": "Y", "which": "outcome", "as": "Ymarg"},
    {"op": "check", "invariant": "affinity", "observable": "K", "states": ["pi", "skewed"],
     "alpha": 0.3},
    {"op": "check", "invariant": "outcome_consistency", "extended": "Y", "state": "skewed",
     "event": ["w2"]},
    {"op": "check", "invariant": "non_perturbing", "extended": "Y", "expect": true},
    {"op": "check", "invariant": "trivial", "observable": "K", "expect": false},
    {"op": "posterior_mean", "extended": "Y", "in": "E", "out": "E", "state": "pi",
     "event": ["w1"], "expect": [0.7777777777777778, 0.2222222222222222]},
    {"op": "sample", "observable": "K", "state": "pi"},
    {"op": "sample", "extended": "Y", "state": "skewed"}
  ]
})json";

constexpr const char* kLueders = R"json({
  "name": "lueders-qubit",
  "description": "Unsharp qubit measurement along z, seen as a Kraus instrument and as a finite-frame extended observable.",
  "seed": 7,
  "trials": 200000,
  "density_matrices": {
    "plus": [[0.5, 0.5], [0.5, 0.5]]
  },
  "instruments": {
    "Z": {"outcomes": ["up", "down"],
          "kraus": [[[[0.9486832980505138, 0.0], [0.0, 0.31622776601683794]]],
                    [[[0.31622776601683794, 0.0], [0.0, 0.9486832980505138]]]]}
  },
  "frames": {
    "F": {"labels": ["0", "1", "+", "-", "+i", "-i"],
          "vectors": [[1, 0], [0, 1],
                      [0.7071067811865476, 0.7071067811865476],
                      [0.7071067811865476, -0.7071067811865476],
                      [[0.7071067811865476, 0], [0, 0.7071067811865476]],
                      [[0.7071067811865476, 0], [0, -0.7071067811865476]]]}
  },
  "states": {
    "on_plus": {"space": ["0", "1", "+", "-", "+i", "-i"], "weights": [0, 0, 1, 0, 0, 0]},
    "spread": {"space": ["0", "1", "+", "-", "+i", "-i"],
               "weights": [0.1, 0.2, 0.3, 0.1, 0.2, 0.1]}
  },
  "pipeline": [
    {"op": "born", "instrument": "Z", "rho": "plus", "expect": [0.5, 0.5]},
    {"op": "state_update", "instrument": "Z", "rho": "plus", "event": ["up"],
     "expect": {"probability": 0.5, "state": [[0.9, 0.3], [0.3, 0.1]]}},
    {"op": "choi", "instrument": "Z"},
    {"op": "lueders", "instrument": "Z", "frame": "F", "as": "L"},
    {"op": "posterior_mean", "extended": "L", "in": "L.in", "out": "L.out", "state": "on_plus",
     "event": ["up"], "expect": [0.9, 0.3, 0.3, 0.1, 0, 0, 0, 0]},
    {"op": "check", "invariant": "cross_formalism", "instrument": "Z", "frame": "F",
     "state": "spread", "event": ["down"]},
    {"op": "sample", "extended": "L", "state": "spread"}
  ]
})json";

constexpr const char* kConsecutive = R"json({
  "name": "consecutive",
  "description": "A non-perturbing detector followed by a resetting one.",
  "seed": 11,
  "trials": 200000,
  "states": {
    "pi": {"space": ["t1", "t2"], "weights": [0.4, 0.6]}
  },
  "extended": {
    "Y1": {"outcome_space": ["w1", "w2"], "out_info_space": ["t1", "t2"],
           "in_info_space": ["t1", "t2"],
           "kernel": [[[0.7, 0.0], [0.0, 0.2]], [[0.3, 0.0], [0.0, 0.8]]]},
    "Y2": {"outcome_space": ["v1", "v2"], "out_info_space": ["t1", "t2"],
           "in_info_space": ["t1", "t2"],
           "kernel": [[[0.9, 0.1], [0.0, 0.0]], [[0.0, 0.0], [0.1, 0.9]]]}
  },
  "pipeline": [
    {"op": "compose", "first": "Y1", "second": "Y2", "as": "Y21"},
    {"op": "check", "invariant": "non_perturbing", "extended": "Y2", "expect": false},
    {"op": "check", "invariant": "outcome_consistency", "extended": "Y21", "state": "pi",
     "event": ["(w1,v1)", "(w2,v2)"]},
    {"op": "instrument", "extended": "Y21", "state": "pi", "event": ["(w1,v1)"],
     "expect": [0.264, 0.0]},
    {"op": "sample_consecutive", "first": "Y1", "second": "Y2", "state": "pi"}
  ]
})json";

const std::map<std::string, const char*>& demos() {
  static const std::map<std::string, const char*> table = {
      {"classical-2x2", kClassical},
      {"consecutive", kConsecutive},
      {"lueders-qubit", kLueders},
  };
  return table;
}

}  // namespace

std::vector<std::string> demo_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : demos()) names.push_back(name);
  return names;
}

json_io::json demo_config(const std::string& name) {
  auto it = demos().find(name);
  if (it == demos().end()) throw InvalidArgument("unknown demo '" + name + "'");
  return json_io::json::parse(it->second);
}

}  // namespace measurekit
