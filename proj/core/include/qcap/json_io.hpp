#pragma once

#include <ostream>

#include <nlohmann/json.hpp>

#include "qcap/capacity.hpp"
#include "qcap/channels.hpp"
#include "qcap/repeater.hpp"
#include "qcap/zero_error.hpp"

// JSON (de)serialization. Loaders throw ParseError on malformed documents and
// the usual validation errors on well-formed but invalid content.
namespace qcap::json {

using nlohmann::json;

json matrix_to_json(const Matrix& m);            // {"re": [[...]], "im": [[...]]}
Matrix matrix_from_json(const json& j);

json to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const json& j);  // strict validation
json to_json(const PureState& psi);
PureState pure_from_json(const json& j);

json to_json(const QuantumChannel& channel);
// Kraus form or {"kind": ..., "p": ..., "q": ..., "dim": ...}; CPTP checked strictly.
QuantumChannel channel_from_json(const json& j);
ChannelKind kind_from_json(const json& j);

json to_json(const CapacityReport& report);
// Scalar fields, label, optimizer stats and notes.
CapacityReport report_from_json(const json& j);

json to_json(const ConfusabilityGraph& g);
ConfusabilityGraph graph_from_json(const json& j);
json to_json(const ZeroErrorReport& r);

json to_json(const RepeaterConfig& cfg);
RepeaterConfig repeater_config_from_json(const json& j);
json to_json(const RateReport& r);
json to_json(const ScheduleEvent& e);
json summary_to_json(const ScheduleTrace& t);
// One event object per line.
void write_trace_lines(std::ostream& out, const ScheduleTrace& t);

}  // namespace qcap::json
