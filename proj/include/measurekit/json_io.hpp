// Copyright 2026 The MeasureKit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include "measurekit/error.hpp"
#include "measurekit/instrument.hpp"
#include "measurekit/mean_state.hpp"
#include "measurekit/measure.hpp"
#include "measurekit/observable.hpp"
#include "measurekit/quantum.hpp"
#include "measurekit/space.hpp"

namespace measurekit::json_io {

using json = nlohmann::ordered_json;

/// Malformed document: wrong JSON type, missing or unknown field.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Spaces are label lists; product spaces are {"factors": [a, b]}.
FiniteSpace space_from_json(const json& j);
json to_json(const FiniteSpace& space);

/// Event as a list of labels, or the string "all".
Event event_from_json(const json& j, const FiniteSpace& space);

// {"space": ..., "weights": [...]}; states are normalized on load.
FiniteMeasure measure_from_json(const json& j);
InformationState state_from_json(const json& j);
json to_json(const FiniteMeasure& m);
json to_json(const InformationState& s);

// {"outcome_space", "info_space", "kernel": rows indexed [omega][theta]}
GeneralizedObservable observable_from_json(const json& j);
json to_json(const GeneralizedObservable& obs);

// {"outcome_space", "out_info_space", "in_info_space", "kernel": [omega][out][in]}
ExtendedObservable extended_from_json(const json& j);
json to_json(const ExtendedObservable& y);

// base space plus {"payloads", "functional", "bound"}
EmbeddedSpace embedded_from_json(const json& j);
json to_json(const EmbeddedSpace& e);

// Complex matrices: row-major [[ [re, im], ... ], ...]
CMatrix matrix_from_json(const json& j);
json to_json(const CMatrix& m);
CVector vector_from_json(const json& j);
json to_json(const CVector& v);

// {"outcomes": [...], "effects": [matrix...]}
POVM povm_from_json(const json& j);
json to_json(const POVM& povm);

// {"outcomes": [...], "kraus": [[matrix...] per outcome]}
KrausInstrument instrument_from_json(const json& j);
json to_json(const KrausInstrument& instr);

// {"labels": [...], "vectors": [vector...]}
PureStateFrame frame_from_json(const json& j);
json to_json(const PureStateFrame& frame);

}  // namespace measurekit::json_io
