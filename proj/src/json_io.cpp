// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#include "measurekit/json_io.hpp"

#include <string>

namespace measurekit::json_io {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of numbers");
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(number(x, what));
  return v;
}

std::vector<std::string> strings(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of strings");
  std::vector<std::string> v;
  for (const auto& x : j) {
    if (!x.is_string()) throw ParseError(std::string(what) + " must contain only strings");
    v.push_back(x.get<std::string>());
  }
  return v;
}

std::complex<double> complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ParseError("complex entries are [re, im] pairs");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

}  // namespace

FiniteSpace space_from_json(const json& j) {
  if (j.is_object()) {
    const json& f = field(j, "factors");
    if (!f.is_array() || f.size() != 2) throw ParseError("'factors' must list exactly two spaces");
    return FiniteSpace::product(space_from_json(f[0]), space_from_json(f[1]));
  }
  return FiniteSpace(strings(j, "space"));
}

json to_json(const FiniteSpace& space) {
  if (space.is_product()) {
    return json{{"factors", json::array({to_json(space.factor(1)), to_json(space.factor(2))})}};
  }
  return json(space.labels());
}

Event event_from_json(const json& j, const FiniteSpace& space) {
  if (j.is_string() && j.get<std::string>() == "all") return Event::all(space);
  std::vector<std::size_t> members;
  for (const auto& label : strings(j, "event")) {
    auto idx = space.index_of(label);
    if (!idx) throw InvalidArgument("event label '" + label + "' is not a point of the space");
    members.push_back(*idx);
  }
  return Event::of(space, members);
}

FiniteMeasure measure_from_json(const json& j) {
  return FiniteMeasure(space_from_json(field(j, "space")), numbers(field(j, "weights"), "weights"));
}

InformationState state_from_json(const json& j) { return normalize(measure_from_json(j)); }

json to_json(const FiniteMeasure& m) {
  return json{{"space", to_json(m.space())}, {"weights", m.weights()}};
}

json to_json(const InformationState& s) {
  return json{{"space", to_json(s.space())}, {"weights", s.probabilities()}};
}

GeneralizedObservable observable_from_json(const json& j) {
  FiniteSpace omega = space_from_json(field(j, "outcome_space"));
  FiniteSpace theta = space_from_json(field(j, "info_space"));
  const json& k = field(j, "kernel");
  if (!k.is_array()) throw ParseError("'kernel' must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto& row : k) rows.push_back(numbers(row, "kernel row"));
  return GeneralizedObservable::from_rows(std::move(omega), std::move(theta), rows);
}

json to_json(const GeneralizedObservable& obs) {
  json rows = json::array();
  for (std::size_t o = 0; o < obs.outcomes(); ++o) {
    json row = json::array();
    for (std::size_t t = 0; t < obs.infos(); ++t) row.push_back(obs.at(o, t));
    rows.push_back(std::move(row));
  }
  return json{{"outcome_space", to_json(obs.outcome_space())},
              {"info_space", to_json(obs.info_space())},
              {"kernel", std::move(rows)}};
}

ExtendedObservable extended_from_json(const json& j) {
  FiniteSpace omega = space_from_json(field(j, "outcome_space"));
  FiniteSpace out = space_from_json(field(j, "out_info_space"));
  FiniteSpace in = space_from_json(field(j, "in_info_space"));
  const json& k = field(j, "kernel");
  if (!k.is_array() || k.size() != omega.size()) {
    throw InvalidArgument("extended kernel needs one block per outcome");
  }
  std::vector<double> flat;
  flat.reserve(omega.size() * out.size() * in.size());
  for (const auto& block : k) {
    if (!block.is_array() || block.size() != out.size()) {
      throw InvalidArgument("extended kernel block needs one row per output point");
    }
    for (const auto& row : block) {
      auto v = numbers(row, "extended kernel row");
      if (v.size() != in.size()) {
        throw InvalidArgument("extended kernel row length must equal the input space size");
      }
      flat.insert(flat.end(), v.begin(), v.end());
    }
  }
  return ExtendedObservable(std::move(omega), std::move(out), std::move(in), std::move(flat));
}

json to_json(const ExtendedObservable& y) {
  json blocks = json::array();
  for (std::size_t o = 0; o < y.outcomes(); ++o) {
    json block = json::array();
    for (std::size_t q = 0; q < y.outs(); ++q) {
      json row = json::array();
      for (std::size_t t = 0; t < y.ins(); ++t) row.push_back(y.at(o, q, t));
      block.push_back(std::move(row));
    }
    blocks.push_back(std::move(block));
  }
  return json{{"outcome_space", to_json(y.outcome_space())},
              {"out_info_space", to_json(y.out_info_space())},
              {"in_info_space", to_json(y.in_info_space())},
              {"kernel", std::move(blocks)}};
}

EmbeddedSpace embedded_from_json(const json& j) {
  const json& p = field(j, "payloads");
  if (!p.is_array()) throw ParseError("'payloads' must be an array of vectors");
  std::vector<std::vector<double>> payloads;
  for (const auto& v : p) payloads.push_back(numbers(v, "payload"));
  return EmbeddedSpace(space_from_json(field(j, "space")), std::move(payloads),
                       numbers(field(j, "functional"), "functional"),
                       number(field(j, "bound"), "bound"));
}

json to_json(const EmbeddedSpace& e) {
  return json{{"space", to_json(e.base())},
              {"payloads", e.payloads()},
              {"functional", e.functional()},
              {"bound", e.bound()}};
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) throw ParseError("matrix rows must be arrays");
  const std::size_t cols = j[0].size();
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError("matrix rows differ in length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

json to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CVector vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("vector must be a nonempty array");
  CVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

json to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

POVM povm_from_json(const json& j) {
  const json& e = field(j, "effects");
  if (!e.is_array()) throw ParseError("'effects' must be an array of matrices");
  std::vector<CMatrix> effects;
  for (const auto& m : e) effects.push_back(matrix_from_json(m));
  return POVM(FiniteSpace(strings(field(j, "outcomes"), "outcomes")), std::move(effects));
}

json to_json(const POVM& povm) {
  json effects = json::array();
  for (const auto& e : povm.effects()) effects.push_back(to_json(e));
  return json{{"outcomes", povm.outcome_space().labels()}, {"effects", std::move(effects)}};
}

KrausInstrument instrument_from_json(const json& j) {
  const json& k = field(j, "kraus");
  if (!k.is_array()) throw ParseError("'kraus' must list operators per outcome");
  std::vector<std::vector<CMatrix>> kraus;
  for (const auto& list : k) {
    if (!list.is_array()) throw ParseError("each outcome needs an array of Kraus matrices");
    std::vector<CMatrix> ops;
    for (const auto& m : list) ops.push_back(matrix_from_json(m));
    kraus.push_back(std::move(ops));
  }
  return KrausInstrument(FiniteSpace(strings(field(j, "outcomes"), "outcomes")), std::move(kraus));
}

json to_json(const KrausInstrument& instr) {
  json kraus = json::array();
  for (std::size_t o = 0; o < instr.outcome_space().size(); ++o) {
    json list = json::array();
    for (const auto& a : instr.kraus(o)) list.push_back(to_json(a));
    kraus.push_back(std::move(list));
  }
  return json{{"outcomes", instr.outcome_space().labels()}, {"kraus", std::move(kraus)}};
}

PureStateFrame frame_from_json(const json& j) {
  const json& v = field(j, "vectors");
  if (!v.is_array()) throw ParseError("'vectors' must be an array");
  std::vector<CVector> vectors;
  for (const auto& x : v) vectors.push_back(vector_from_json(x));
  return PureStateFrame(FiniteSpace(strings(field(j, "labels"), "labels")), std::move(vectors));
}

json to_json(const PureStateFrame& frame) {
  json vectors = json::array();
  for (std::size_t k = 0; k < frame.size(); ++k) vectors.push_back(to_json(frame.vector(k)));
  return json{{"labels", frame.space().labels()}, {"vectors", std::move(vectors)}};
}

}  // namespace measurekit::json_io
