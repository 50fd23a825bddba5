// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#include "measurekit/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "measurekit/instrument.hpp"
#include "measurekit/mean_state.hpp"
#include "measurekit/observable.hpp"
#include "measurekit/quantum.hpp"
#include "measurekit/rng.hpp"
#include "measurekit/sampling.hpp"
#include "measurekit/tolerance.hpp"

namespace measurekit {
namespace {

using json = json_io::json;

constexpr std::size_t kDefaultTrials = 100000;
constexpr std::uint64_t kDefaultSeed = 1;
constexpr double kDefaultSigmaBound = 4.0;

enum class Kind { state, observable, extended, embedded, density, povm, instrument, frame };

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::state: return "state";
    case Kind::observable: return "observable";
    case Kind::extended: return "extended observable";
    case Kind::embedded: return "embedded space";
    case Kind::density: return "density matrix";
    case Kind::povm: return "POVM";
    case Kind::instrument: return "instrument";
    case Kind::frame: return "frame";
  }
  return "object";
}

struct Section {
  const char* key;
  Kind kind;
};

constexpr Section kSections[] = {
    {"states", Kind::state},         {"observables", Kind::observable},
    {"extended", Kind::extended},    {"embedded", Kind::embedded},
    {"density_matrices", Kind::density}, {"povms", Kind::povm},
    {"instruments", Kind::instrument},   {"frames", Kind::frame},
};

const std::set<std::string> kTopLevel = {"name", "description", "seed", "trials", "sigma_bound",
                                         "pipeline"};

// ---------------------------------------------------------------------------
// Pipeline step signatures, shared by validation and execution.

struct Ref {
  const char* field;
  Kind kind;
  bool list = false;
};

struct OpSpec {
  std::vector<Ref> refs;
  std::vector<Ref> one_of;  // exactly one of these fields must be present
  std::optional<Kind> produces;
  bool as_required = false;
};

const std::map<std::string, OpSpec>& op_specs() {
  static const std::map<std::string, OpSpec> specs = {
      {"distribution", {{{"observable", Kind::observable}, {"state", Kind::state}}, {}, Kind::state}},
      {"induce", {{{"observable", Kind::observable}, {"state", Kind::state}}, {}, Kind::state}},
      {"instrument", {{{"extended", Kind::extended}, {"state", Kind::state}}, {}, std::nullopt}},
      {"posterior", {{{"extended", Kind::extended}, {"state", Kind::state}}, {}, Kind::state}},
      {"compose", {{{"first", Kind::extended}, {"second", Kind::extended}}, {}, Kind::extended, true}},
      {"marginal", {{{"extended", Kind::extended}}, {}, Kind::observable, true}},
      {"sample",
       {{{"state", Kind::state}},
        {{"observable", Kind::observable}, {"extended", Kind::extended}},
        std::nullopt}},
      {"sample_consecutive",
       {{{"first", Kind::extended}, {"second", Kind::extended}, {"state", Kind::state}},
        {},
        std::nullopt}},
      {"mean", {{{"embedded", Kind::embedded}, {"state", Kind::state}}, {}, std::nullopt}},
      {"posterior_mean",
       {{{"extended", Kind::extended},
         {"in", Kind::embedded},
         {"out", Kind::embedded},
         {"state", Kind::state}},
        {},
        std::nullopt}},
      {"born", {{{"rho", Kind::density}}, {{"povm", Kind::povm}, {"instrument", Kind::instrument}},
                std::nullopt}},
      {"state_update", {{{"instrument", Kind::instrument}, {"rho", Kind::density}}, {}, Kind::density}},
      {"choi", {{{"instrument", Kind::instrument}}, {}, std::nullopt}},
      {"lueders", {{{"instrument", Kind::instrument}, {"frame", Kind::frame}}, {}, Kind::extended,
                   true}},
      {"check:affinity",
       {{{"observable", Kind::observable}, {"states", Kind::state, true}}, {}, std::nullopt}},
      {"check:outcome_consistency",
       {{{"extended", Kind::extended}, {"state", Kind::state}}, {}, std::nullopt}},
      {"check:non_perturbing", {{{"extended", Kind::extended}}, {}, std::nullopt}},
      {"check:trivial", {{{"observable", Kind::observable}}, {}, std::nullopt}},
      {"check:image", {{{"observable", Kind::observable}}, {}, std::nullopt}},
      {"check:cross_formalism",
       {{{"instrument", Kind::instrument}, {"frame", Kind::frame}, {"state", Kind::state}},
        {},
        std::nullopt}},
  };
  return specs;
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigParseError(where + ": missing field '" + key + "'");
  return *it;
}

std::string name_of(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_string()) throw ConfigParseError(where + ": field '" + key + "' must be a name");
  return v.get<std::string>();
}

std::string where_step(std::size_t i) { return "pipeline step " + std::to_string(i); }

std::string op_key(const json& step, const std::string& where) {
  if (!step.is_object()) throw ConfigParseError(where + ": steps must be objects");
  std::string op = name_of(step, "op", where);
  if (op == "check") op += ":" + name_of(step, "invariant", where);
  if (!op_specs().count(op)) throw ConfigParseError(where + ": unknown operation '" + op + "'");
  return op;
}

/// Static pass over the pipeline: every referenced name resolves to an
/// object of the right kind declared earlier.
void check_references(const json& pipeline, std::map<std::string, Kind> names) {
  auto resolve = [&](const std::string& name, Kind kind, const std::string& where) {
    auto it = names.find(name);
    if (it == names.end()) throw ValidationError(where + ": unknown name '" + name + "'");
    if (it->second != kind) {
      throw ValidationError(where + ": '" + name + "' is a " + kind_name(it->second) +
                            ", expected a " + kind_name(kind));
    }
  };
  auto declare = [&](const std::string& name, Kind kind, const std::string& where) {
    if (names.count(name)) throw ValidationError(where + ": name '" + name + "' already in use");
    names.emplace(name, kind);
  };
  for (std::size_t i = 0; i < pipeline.size(); ++i) {
    const json& step = pipeline[i];
    const std::string where = where_step(i);
    const std::string op = op_key(step, where);
    const OpSpec& spec = op_specs().at(op);
    for (const Ref& r : spec.refs) {
      if (r.list) {
        const json& v = require(step, r.field, where);
        if (!v.is_array() || v.size() != 2) {
          throw ConfigParseError(where + ": '" + r.field + "' must list two names");
        }
        for (const auto& n : v) {
          if (!n.is_string()) throw ConfigParseError(where + ": names must be strings");
          resolve(n.get<std::string>(), r.kind, where);
        }
      } else {
        resolve(name_of(step, r.field, where), r.kind, where);
      }
    }
    if (!spec.one_of.empty()) {
      int present = 0;
      for (const Ref& r : spec.one_of) {
        if (step.contains(r.field)) {
          ++present;
          resolve(name_of(step, r.field, where), r.kind, where);
        }
      }
      if (present != 1) {
        throw ConfigParseError(where + ": exactly one of '" + spec.one_of[0].field + "' or '" +
                               spec.one_of[1].field + "' is required");
      }
    }
    if (spec.produces && (spec.as_required || step.contains("as"))) {
      const std::string as = name_of(step, "as", where);
      declare(as, *spec.produces, where);
      if (op == "lueders") {
        declare(as + ".frame_out", Kind::frame, where);
        declare(as + ".in", Kind::embedded, where);
        declare(as + ".out", Kind::embedded, where);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Object store.

struct Store {
  std::map<std::string, Kind> names;
  std::map<std::string, InformationState> states;
  std::map<std::string, GeneralizedObservable> observables;
  std::map<std::string, ExtendedObservable> extended;
  std::map<std::string, EmbeddedSpace> embedded;
  std::map<std::string, DensityMatrix> densities;
  std::map<std::string, POVM> povms;
  std::map<std::string, KrausInstrument> instruments;
  std::map<std::string, PureStateFrame> frames;

  template <class T>
  void put(std::map<std::string, T>& m, Kind kind, const std::string& name, T value) {
    names.insert_or_assign(name, kind);
    m.insert_or_assign(name, std::move(value));
  }
};

template <class T>
const T& get(const std::map<std::string, T>& m, const std::string& name) {
  auto it = m.find(name);
  if (it == m.end()) throw ValidationError("unknown name '" + name + "'");
  return it->second;
}

void load_entry(Store& store, Kind kind, const std::string& name, const json& j) {
  switch (kind) {
    case Kind::state:
      store.put(store.states, kind, name, json_io::state_from_json(j));
      break;
    case Kind::observable:
      store.put(store.observables, kind, name, json_io::observable_from_json(j));
      break;
    case Kind::extended:
      store.put(store.extended, kind, name, json_io::extended_from_json(j));
      break;
    case Kind::embedded:
      store.put(store.embedded, kind, name, json_io::embedded_from_json(j));
      break;
    case Kind::density:
      store.put(store.densities, kind, name, DensityMatrix(json_io::matrix_from_json(j)));
      break;
    case Kind::povm:
      store.put(store.povms, kind, name, json_io::povm_from_json(j));
      break;
    case Kind::instrument:
      store.put(store.instruments, kind, name, json_io::instrument_from_json(j));
      break;
    case Kind::frame:
      store.put(store.frames, kind, name, json_io::frame_from_json(j));
      break;
  }
}

Store load_declarations(const json& config) {
  if (!config.is_object()) throw ConfigParseError("config must be a JSON object");
  for (const auto& [key, value] : config.items()) {
    bool known = kTopLevel.count(key) > 0;
    for (const auto& s : kSections) known = known || key == s.key;
    if (!known) throw ConfigParseError("unknown top-level field '" + key + "'");
  }
  Store store;
  for (const auto& section : kSections) {
    auto it = config.find(section.key);
    if (it == config.end()) continue;
    if (!it->is_object()) {
      throw ConfigParseError(std::string("'") + section.key + "' must map names to objects");
    }
    for (const auto& [name, value] : it->items()) {
      const std::string where = std::string(kind_name(section.kind)) + " '" + name + "'";
      if (store.names.count(name)) throw ValidationError(where + ": name already in use");
      try {
        load_entry(store, section.kind, name, value);
      } catch (const json_io::ParseError& e) {
        throw ConfigParseError(where + ": " + e.what());
      } catch (const nlohmann::json::exception& e) {
        throw ConfigParseError(where + ": " + e.what());
      } catch (const Error& e) {
        throw ValidationError(where + ": " + e.what());
      }
    }
  }
  for (const char* key : {"seed", "trials"}) {
    if (config.contains(key) && !config[key].is_number_unsigned()) {
      throw ConfigParseError(std::string("'") + key + "' must be a nonnegative integer");
    }
  }
  if (config.contains("sigma_bound") && !config["sigma_bound"].is_number()) {
    throw ConfigParseError("'sigma_bound' must be a number");
  }
  if (config.contains("pipeline") && !config["pipeline"].is_array()) {
    throw ConfigParseError("'pipeline' must be an array of steps");
  }
  return store;
}

// ---------------------------------------------------------------------------
// Execution.

struct Runner {
  Store store;
  std::uint64_t seed = kDefaultSeed;
  std::size_t default_trials = kDefaultTrials;
  std::optional<std::size_t> forced_trials;
  double sigma_bound = kDefaultSigmaBound;
  unsigned workers = 1;

  json steps = json::array();
  json checks = json::array();
  json samples = json::array();
  bool passed = true;

  void add_check(std::size_t step, const std::string& name, bool ok, double residual,
                 double tol, const std::string& detail = {}) {
    json c{{"step", step}, {"name", name}, {"passed", ok}, {"residual", residual},
           {"tolerance", tol}};
    if (!detail.empty()) c["detail"] = detail;
    checks.push_back(std::move(c));
    passed = passed && ok;
  }

  void add_sample(std::size_t step, const Comparison& c) {
    samples.push_back(json{{"step", step},
                           {"label", c.label},
                           {"analytic", c.analytic},
                           {"empirical", c.empirical},
                           {"trials", c.trials},
                           {"sigma", c.sigma},
                           {"z", std::isfinite(c.z) ? json(c.z) : json("inf")},
                           {"passed", c.passed}});
    passed = passed && c.passed;
  }

  double step_tolerance(const json& step) const {
    if (step.contains("tolerance")) {
      if (!step["tolerance"].is_number()) throw ConfigParseError("'tolerance' must be a number");
      return step["tolerance"].get<double>();
    }
    return tolerance();
  }

  void expect_values(std::size_t i, const json& step, const std::string& label,
                     const std::vector<double>& got, const json& expected) {
    std::vector<double> want;
    if (expected.is_number()) {
      want.push_back(expected.get<double>());
    } else if (expected.is_array()) {
      for (const auto& x : expected) {
        if (!x.is_number()) throw ConfigParseError(where_step(i) + ": expected values must be numbers");
        want.push_back(x.get<double>());
      }
    } else {
      throw ConfigParseError(where_step(i) + ": 'expect' must be a number or an array");
    }
    const double tol = step_tolerance(step);
    if (want.size() != got.size()) {
      add_check(i, label, false, INFINITY, tol, "expected " + std::to_string(want.size()) +
                                                   " values, computed " + std::to_string(got.size()));
      return;
    }
    double r = 0.0;
    for (std::size_t k = 0; k < want.size(); ++k) r = std::max(r, std::abs(want[k] - got[k]));
    add_check(i, label, r <= tol, r, tol);
  }

  std::size_t trials_for(const json& step) const {
    if (forced_trials) return *forced_trials;
    if (step.contains("trials")) {
      if (!step["trials"].is_number_unsigned()) throw ConfigParseError("'trials' must be an integer");
      return step["trials"].get<std::size_t>();
    }
    return default_trials;
  }

  std::uint64_t seed_for(const json& step, std::size_t i) const {
    if (step.contains("seed")) {
      if (!step["seed"].is_number_unsigned()) throw ConfigParseError("'seed' must be an integer");
      return step["seed"].get<std::uint64_t>();
    }
    return splitmix64(seed + i);
  }

  double bound_for(const json& step) const {
    if (step.contains("bound")) {
      if (!step["bound"].is_number()) throw ConfigParseError("'bound' must be a number");
      return step["bound"].get<double>();
    }
    return sigma_bound;
  }

  Event event_for(const json& step, const FiniteSpace& space, std::size_t i) const {
    const json& e = require(step, "event", where_step(i));
    try {
      return json_io::event_from_json(e, space);
    } catch (const json_io::ParseError& err) {
      throw ConfigParseError(where_step(i) + ": " + err.what());
    } catch (const Error& err) {
      throw ValidationError(where_step(i) + ": " + err.what());
    }
  }

  void run_step(std::size_t i, const json& step);
  void sample_comparisons(std::size_t i, const std::string& prefix, const InstrumentSample& s,
                          const std::vector<double>& outcome_analytic,
                          const std::function<std::optional<InformationState>(std::size_t)>&
                              posterior,
                          double bound);
};

json labelled(const FiniteSpace& space, const std::vector<double>& values) {
  json out = json::object();
  for (std::size_t k = 0; k < values.size(); ++k) out[space.label(k)] = values[k];
  return out;
}

std::vector<double> real_flat(const CMatrix& m) { return flatten(m); }

void Runner::sample_comparisons(
    std::size_t i, const std::string& prefix, const InstrumentSample& s,
    const std::vector<double>& outcome_analytic,
    const std::function<std::optional<InformationState>(std::size_t)>& posterior, double bound) {
  for (std::size_t o = 0; o < s.outcome_space.size(); ++o) {
    add_sample(i, compare_probability(prefix + "P(" + s.outcome_space.label(o) + ")",
                                      outcome_analytic[o], s.outcome_counts[o], s.trials, bound));
  }
  for (std::size_t o = 0; o < s.outcome_space.size(); ++o) {
    if (s.outcome_counts[o] == 0) continue;
    auto post = posterior(o);
    if (!post) continue;
    const std::size_t nq = s.out_info_space.size();
    for (std::size_t q = 0; q < nq; ++q) {
      add_sample(i, compare_probability(prefix + "P(" + s.out_info_space.label(q) + " | " +
                                            s.outcome_space.label(o) + ")",
                                        (*post)[q], s.joint_counts[o * nq + q],
                                        s.outcome_counts[o], bound));
    }
  }
}

void Runner::run_step(std::size_t i, const json& step) {
  const std::string where = where_step(i);
  const std::string op = op_key(step, where);
  json result = json::object();
  auto as_name = [&]() -> std::optional<std::string> {
    if (step.contains("as")) return name_of(step, "as", where);
    return std::nullopt;
  };

  if (op == "distribution" || op == "induce") {
    const auto& obs = get(store.observables, name_of(step, "observable", where));
    const auto& pi = get(store.states, name_of(step, "state", where));
    InformationState out = op == "distribution" ? outcome_distribution(obs, pi)
                                                : induce_state(obs, pi);
    result["probabilities"] = labelled(out.space(), out.probabilities());
    if (step.contains("expect")) expect_values(i, step, op + " values", out.probabilities(), step["expect"]);
    if (auto as = as_name()) store.put(store.states, Kind::state, *as, out);
  } else if (op == "instrument") {
    const auto& y = get(store.extended, name_of(step, "extended", where));
    const auto& pi = get(store.states, name_of(step, "state", where));
    const Event event = event_for(step, y.outcome_space(), i);
    const FiniteMeasure m = instrument_apply(y, event, pi.as_measure());
    result["measure"] = labelled(m.space(), m.weights());
    result["probability"] = m.total();
    if (step.contains("expect")) expect_values(i, step, "instrument measure", m.weights(), step["expect"]);
  } else if (op == "posterior") {
    const auto& y = get(store.extended, name_of(step, "extended", where));
    const auto& pi = get(store.states, name_of(step, "state", where));
    const Event event = event_for(step, y.outcome_space(), i);
    result["probability"] = outcome_probability(y, event, pi);
    const InformationState post = posterior_state(y, event, pi);
    result["posterior"] = labelled(post.space(), post.probabilities());
    if (step.contains("expect")) expect_values(i, step, "posterior state", post.probabilities(), step["expect"]);
    if (auto as = as_name()) store.put(store.states, Kind::state, *as, post);
  } else if (op == "compose") {
    const auto& y1 = get(store.extended, name_of(step, "first", where));
    const auto& y2 = get(store.extended, name_of(step, "second", where));
    ExtendedObservable y = compose(y1, y2);
    result["outcome_space"] = json_io::to_json(y.outcome_space());
    store.put(store.extended, Kind::extended, *as_name(), std::move(y));
  } else if (op == "marginal") {
    const auto& y = get(store.extended, name_of(step, "extended", where));
    const std::string which = step.value("which", std::string("outcome"));
    if (which != "outcome" && which != "system") {
      throw ConfigParseError(where + ": 'which' must be \"outcome\" or \"system\"");
    }
    GeneralizedObservable m = which == "outcome" ? outcome_marginal(y) : system_marginal(y);
    result["observable"] = json_io::to_json(m);
    store.put(store.observables, Kind::observable, *as_name(), std::move(m));
  } else if (op == "sample") {
    const auto& pi = get(store.states, name_of(step, "state", where));
    const std::size_t n = trials_for(step);
    const std::uint64_t s = seed_for(step, i);
    const double bound = bound_for(step);
    SamplingOptions opts{workers, false};
    result["trials"] = n;
    result["seed"] = s;
    if (step.contains("observable")) {
      const auto& obs = get(store.observables, name_of(step, "observable", where));
      const ExperimentSample sample = sample_experiment(obs, pi, n, s, opts);
      const InformationState analytic = outcome_distribution(obs, pi);
      result["counts"] = sample.counts;
      for (std::size_t o = 0; o < obs.outcomes(); ++o) {
        add_sample(i, compare_probability("P(" + obs.outcome_space().label(o) + ")", analytic[o],
                                          sample.counts[o], n, bound));
      }
    } else {
      const auto& y = get(store.extended, name_of(step, "extended", where));
      const InstrumentSample sample = sample_instrument(y, pi, n, s, opts);
      result["joint_counts"] = sample.joint_counts;
      const auto analytic = outcome_distribution(outcome_marginal(y), pi).probabilities();
      sample_comparisons(i, "", sample, analytic,
                         [&](std::size_t o) -> std::optional<InformationState> {
                           if (analytic[o] <= kZeroProbability) return std::nullopt;
                           return posterior_state(y, Event::single(y.outcome_space(), o), pi);
                         },
                         bound);
    }
  } else if (op == "sample_consecutive") {
    const auto& y1 = get(store.extended, name_of(step, "first", where));
    const auto& y2 = get(store.extended, name_of(step, "second", where));
    const auto& pi = get(store.states, name_of(step, "state", where));
    const std::size_t n = trials_for(step);
    const std::uint64_t s = seed_for(step, i);
    const InstrumentSample sample =
        sample_consecutive(y1, y2, pi, n, s, SamplingOptions{workers, false});
    const ExtendedObservable joint = compose(y1, y2);
    const auto analytic = outcome_distribution(outcome_marginal(joint), pi).probabilities();
    result["trials"] = n;
    result["seed"] = s;
    result["joint_counts"] = sample.joint_counts;
    sample_comparisons(i, "", sample, analytic,
                       [&](std::size_t o) -> std::optional<InformationState> {
                         if (analytic[o] <= kZeroProbability) return std::nullopt;
                         return posterior_state(joint, Event::single(joint.outcome_space(), o), pi);
                       },
                       bound_for(step));
  } else if (op == "mean") {
    const auto& e = get(store.embedded, name_of(step, "embedded", where));
    const auto& pi = get(store.states, name_of(step, "state", where));
    const MeanState m = mean_state(e, pi);
    result["mean"] = m.vector;
    result["functional"] = e.apply_functional(m.vector);
    if (step.contains("expect")) expect_values(i, step, "mean state", m.vector, step["expect"]);
  } else if (op == "posterior_mean") {
    EmbeddedExtendedObservable ey(get(store.extended, name_of(step, "extended", where)),
                                  get(store.embedded, name_of(step, "in", where)),
                                  get(store.embedded, name_of(step, "out", where)));
    const auto& pi = get(store.states, name_of(step, "state", where));
    const Event event = event_for(step, ey.y.outcome_space(), i);
    const MeanState m = posterior_mean(ey, event, pi);
    result["mean"] = m.vector;
    // Ratio route through the statistical map.
    const auto v = statistical_map(ey, event);
    std::vector<double> ratio(ey.out.dimension(), 0.0);
    for (std::size_t t = 0; t < pi.size(); ++t) {
      for (std::size_t k = 0; k < ratio.size(); ++k) ratio[k] += pi[t] * v[t][k];
    }
    const double mu = ey.out.apply_functional(ratio);
    double r = 0.0;
    for (std::size_t k = 0; k < ratio.size(); ++k) r = std::max(r, std::abs(ratio[k] / mu - m.vector[k]));
    add_check(i, "posterior mean two-route agreement", r <= tolerance(), r, tolerance());
    if (step.contains("expect")) expect_values(i, step, "posterior mean", m.vector, step["expect"]);
  } else if (op == "born") {
    const auto& rho = get(store.densities, name_of(step, "rho", where));
    const POVM povm = step.contains("povm")
                          ? get(store.povms, name_of(step, "povm", where))
                          : get(store.instruments, name_of(step, "instrument", where)).induced_povm();
    const InformationState p = born_distribution(povm, rho);
    result["probabilities"] = labelled(p.space(), p.probabilities());
    if (step.contains("expect")) expect_values(i, step, "Born probabilities", p.probabilities(), step["expect"]);
  } else if (op == "state_update") {
    const auto& instr = get(store.instruments, name_of(step, "instrument", where));
    const auto& rho = get(store.densities, name_of(step, "rho", where));
    const Event event = event_for(step, instr.outcome_space(), i);
    const StateUpdate u = instrument_state_update(instr, event, rho);
    result["probability"] = u.probability;
    result["state"] = json_io::to_json(u.state.matrix());
    if (step.contains("expect")) {
      const json& ex = step["expect"];
      if (!ex.is_object()) throw ConfigParseError(where + ": 'expect' must be an object");
      if (ex.contains("probability")) {
        expect_values(i, step, "update probability", {u.probability}, ex["probability"]);
      }
      if (ex.contains("state")) {
        CMatrix want;
        try {
          want = json_io::matrix_from_json(ex["state"]);
        } catch (const json_io::ParseError& e) {
          throw ConfigParseError(where + ": " + e.what());
        }
        json flat = real_flat(want);
        expect_values(i, step, "updated state", real_flat(u.state.matrix()), flat);
      }
    }
    if (auto as = as_name()) store.put(store.densities, Kind::density, *as, u.state);
  } else if (op == "choi") {
    const auto& instr = get(store.instruments, name_of(step, "instrument", where));
    json mins = json::object();
    for (std::size_t o = 0; o < instr.outcome_space().size(); ++o) {
      const double lo = min_eigenvalue(choi_matrix(instr, o));
      mins[instr.outcome_space().label(o)] = lo;
      add_check(i, "Choi positivity of " + instr.outcome_space().label(o), lo >= -kEigenTolerance,
                std::max(0.0, -lo), kEigenTolerance);
    }
    result["min_eigenvalues"] = std::move(mins);
  } else if (op == "lueders") {
    const auto& instr = get(store.instruments, name_of(step, "instrument", where));
    const auto& frame = get(store.frames, name_of(step, "frame", where));
    LuedersObservable lo = lueders_extended_observable(instr, frame);
    const std::string as = *as_name();
    result["extended"] = json_io::to_json(lo.observable);
    result["frame_out"] = json_io::to_json(lo.frame_out);
    store.put(store.embedded, Kind::embedded, as + ".in", to_embedded_space(frame));
    store.put(store.embedded, Kind::embedded, as + ".out", to_embedded_space(lo.frame_out));
    store.put(store.frames, Kind::frame, as + ".frame_out", lo.frame_out);
    store.put(store.extended, Kind::extended, as, std::move(lo.observable));
  } else if (op == "check:affinity") {
    const auto& obs = get(store.observables, name_of(step, "observable", where));
    const json& names = step["states"];
    const auto& p1 = get(store.states, names[0].get<std::string>());
    const auto& p2 = get(store.states, names[1].get<std::string>());
    const double alpha = require(step, "alpha", where).get<double>();
    const InformationState both[] = {p1, p2};
    const double coeffs[] = {alpha, 1.0 - alpha};
    const auto lhs = outcome_distribution(obs, mix(both, coeffs));
    const auto r1 = outcome_distribution(obs, p1);
    const auto r2 = outcome_distribution(obs, p2);
    double r = 0.0;
    for (std::size_t o = 0; o < obs.outcomes(); ++o) {
      r = std::max(r, std::abs(lhs[o] - alpha * r1[o] - (1.0 - alpha) * r2[o]));
    }
    add_check(i, "affinity", r <= step_tolerance(step), r, step_tolerance(step));
  } else if (op == "check:outcome_consistency") {
    const auto& y = get(store.extended, name_of(step, "extended", where));
    const auto& pi = get(store.states, name_of(step, "state", where));
    const Event event = event_for(step, y.outcome_space(), i);
    const double a = measure_of(outcome_distribution(outcome_marginal(y), pi), event);
    const double b = instrument_apply(y, event, pi.as_measure()).total();
    add_check(i, "outcome consistency", std::abs(a - b) <= step_tolerance(step), std::abs(a - b),
              step_tolerance(step));
  } else if (op == "check:non_perturbing" || op == "check:trivial" || op == "check:image") {
    bool got = false;
    if (op == "check:non_perturbing") {
      got = is_non_perturbing(get(store.extended, name_of(step, "extended", where)));
    } else if (op == "check:trivial") {
      got = is_trivial(get(store.observables, name_of(step, "observable", where)));
    } else {
      got = is_image(get(store.observables, name_of(step, "observable", where))).has_value();
    }
    const json& expect = require(step, "expect", where);
    if (!expect.is_boolean()) throw ConfigParseError(where + ": 'expect' must be true or false");
    result["value"] = got;
    add_check(i, op.substr(6), got == expect.get<bool>(), got == expect.get<bool>() ? 0.0 : 1.0,
              0.0);
  } else if (op == "check:cross_formalism") {
    const auto& instr = get(store.instruments, name_of(step, "instrument", where));
    const auto& frame = get(store.frames, name_of(step, "frame", where));
    const auto& pi = get(store.states, name_of(step, "state", where));
    const EmbeddedExtendedObservable ey = embedded_lueders(instr, frame);
    const Event event = event_for(step, instr.outcome_space(), i);
    const DensityMatrix rho = to_density(mean_state(ey.in, pi), frame.dimension());
    const StateUpdate u = instrument_state_update(instr, event, rho);
    const MeanState m = posterior_mean(ey, event, pi);
    const double p = outcome_probability(ey.y, event, pi);
    const double r = std::max(std::abs(p - u.probability),
                              (unflatten(m.vector, instr.output_dimension()) - u.state.matrix())
                                  .cwiseAbs()
                                  .maxCoeff());
    const double tol = step.contains("tolerance") ? step_tolerance(step) : kEigenTolerance;
    add_check(i, "cross-formalism agreement", r <= tol, r, tol);
  }
  steps.push_back(json{{"step", i}, {"op", op}, {"result", std::move(result)}});
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string pad(std::string s, std::size_t w) {
  s.append(s.size() < w ? w - s.size() : 1, ' ');
  return s;
}

}  // namespace

std::string Report::to_json_text() const { return document.dump(2) + "\n"; }

std::string Report::to_table() const {
  std::ostringstream out;
  const json& d = document;
  out << "config: " << d.value("name", std::string("(unnamed)")) << "\n";
  out << "seed:   " << d["seed"].get<std::uint64_t>() << "\n\n";
  out << "steps\n";
  for (const auto& s : d["steps"]) {
    out << "  [" << s["step"].get<std::size_t>() << "] " << pad(s["op"].get<std::string>(), 22)
        << s["result"].dump() << "\n";
  }
  if (!d["samples"].empty()) {
    std::size_t w = 5;
    for (const auto& s : d["samples"]) w = std::max(w, s["label"].get<std::string>().size());
    out << "\nsampling comparisons\n";
    out << "  " << pad("step", 6) << pad("label", w + 2) << pad("analytic", 16) << pad("empirical", 16)
        << pad("trials", 10) << pad("z", 12) << "status\n";
    for (const auto& s : d["samples"]) {
      const std::string z = s["z"].is_number() ? fmt(s["z"].get<double>()) : "inf";
      out << "  " << pad(std::to_string(s["step"].get<std::size_t>()), 6)
          << pad(s["label"].get<std::string>(), w + 2) << pad(fmt(s["analytic"].get<double>()), 16)
          << pad(fmt(s["empirical"].get<double>()), 16)
          << pad(std::to_string(s["trials"].get<std::size_t>()), 10) << pad(z, 12)
          << (s["passed"].get<bool>() ? "pass" : "FAIL") << "\n";
    }
  }
  if (!d["checks"].empty()) {
    std::size_t w = 5;
    for (const auto& c : d["checks"]) w = std::max(w, c["name"].get<std::string>().size());
    out << "\nchecks\n";
    out << "  " << pad("step", 6) << pad("name", w + 2) << pad("residual", 16) << pad("tolerance", 16)
        << "status\n";
    for (const auto& c : d["checks"]) {
      const std::string r = c["residual"].is_number() ? fmt(c["residual"].get<double>()) : "inf";
      out << "  " << pad(std::to_string(c["step"].get<std::size_t>()), 6)
          << pad(c["name"].get<std::string>(), w + 2) << pad(r, 16)
          << pad(fmt(c["tolerance"].get<double>()), 16)
          << (c["passed"].get<bool>() ? "pass" : "FAIL");
      if (c.contains("detail")) out << "  (" << c["detail"].get<std::string>() << ")";
      out << "\n";
    }
  }
  out << "\nstatus: " << (passed ? "PASS" : "FAIL") << "\n";
  return out.str();
}

json_io::json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParseError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void validate_config(const json_io::json& config) {
  Store store = load_declarations(config);
  if (config.contains("pipeline")) check_references(config["pipeline"], store.names);
}

Report run_config(const json_io::json& config, const RunOptions& options) {
  Runner run;
  run.store = load_declarations(config);
  const json pipeline = config.value("pipeline", json::array());
  check_references(pipeline, run.store.names);

  run.seed = options.seed.value_or(config.value("seed", kDefaultSeed));
  run.default_trials = config.value("trials", kDefaultTrials);
  run.forced_trials = options.trials;
  run.sigma_bound = config.value("sigma_bound", kDefaultSigmaBound);
  run.workers = options.workers;

  for (std::size_t i = 0; i < pipeline.size(); ++i) {
    try {
      run.run_step(i, pipeline[i]);
    } catch (const ConfigParseError&) {
      throw;
    } catch (const ValidationError&) {
      throw;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigParseError(where_step(i) + ": " + e.what());
    } catch (const Error& e) {
      run.add_check(i, pipeline[i].value("op", std::string("step")) + " failed", false, INFINITY,
                    0.0, e.what());
      run.steps.push_back(json{{"step", i},
                               {"op", pipeline[i].value("op", std::string())},
                               {"error", e.what()}});
    }
  }

  Report report;
  report.passed = run.passed;
  report.document = json{{"name", config.value("name", std::string())},
                         {"seed", run.seed},
                         {"trials", options.trials.value_or(run.default_trials)},
                         {"sigma_bound", run.sigma_bound},
                         {"tolerance", tolerance()},
                         {"steps", std::move(run.steps)},
                         {"samples", std::move(run.samples)},
                         {"checks", std::move(run.checks)},
                         {"status", run.passed ? "pass" : "fail"}};
  return report;
}

Report run_config_file(const std::string& path, const RunOptions& options) {
  return run_config(load_config(path), options);
}

}  // namespace measurekit
