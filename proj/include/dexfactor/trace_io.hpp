#pragma once

// Serialization of stepper traces: one record per k, decimal only.
//
// Param columns:  k, x, y, delta_x, eps, delta_y
// Unit columns:   k, x, y, delta, eps_x, eps_y, contrib
//
// TSV and CSV carry a header line with those names. JSON documents look like
//   {"n": 35, "algorithm": "param", "columns": [...], "rows": [[0,5,5,-10,2,0]],
//    "outcome": {"kind": "CompositePair", "p": 5, "q": 7, "steps": 1}}
// Values that do not fit in 64 bits are written as decimal strings; the
// parsers accept either form.

#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dexfactor/steppers.hpp"

namespace dexfactor {

enum class TraceFormat { TSV, CSV, JSON };

std::optional<TraceFormat> parse_trace_format(std::string_view name);

// Row-at-a-time TSV/CSV output for streaming runs.
void write_param_header(std::ostream& os, TraceFormat fmt);
void write_param_row(std::ostream& os, TraceFormat fmt, const ParamTraceRow& r);
void write_unit_header(std::ostream& os, TraceFormat fmt);
void write_unit_row(std::ostream& os, TraceFormat fmt, const UnitTraceRow& r);

void write_param_trace(std::ostream& os, TraceFormat fmt, const Natural& n,
                       std::span<const ParamTraceRow> rows, const FactorOutcome& outcome);
void write_unit_trace(std::ostream& os, TraceFormat fmt, const Natural& n, std::string_view algorithm,
                      std::span<const UnitTraceRow> rows, const FactorOutcome& outcome);

nlohmann::json param_trace_json(const Natural& n, std::span<const ParamTraceRow> rows,
                                const FactorOutcome& outcome);
nlohmann::json unit_trace_json(const Natural& n, std::string_view algorithm,
                               std::span<const UnitTraceRow> rows, const FactorOutcome& outcome);

// Inverse of the emitters; throw ParseError on malformed input.
std::vector<ParamTraceRow> param_rows_from_json(const nlohmann::json& doc);
std::vector<UnitTraceRow> unit_rows_from_json(const nlohmann::json& doc);
std::vector<ParamTraceRow> read_param_table(std::istream& is, TraceFormat fmt);
std::vector<UnitTraceRow> read_unit_table(std::istream& is, TraceFormat fmt);

}  // namespace dexfactor
