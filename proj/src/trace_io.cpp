#include "dexfactor/trace_io.hpp"

#include <array>
#include <sstream>
#include <string>

namespace dexfactor {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 6> kParamColumns{"k", "x", "y", "delta_x", "eps", "delta_y"};
constexpr std::array<std::string_view, 7> kUnitColumns{"k",     "x",     "y",      "delta",
                                                       "eps_x", "eps_y", "contrib"};

json number(const SignedInt& v) {
  if (auto i = v.to_i64()) return *i;
  return v.to_string();
}

json number(const Natural& v) { return number(SignedInt(v)); }

std::string text_of(const json& j) {
  if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
  if (j.is_string()) return j.get<std::string>();
  throw ParseError("expected an integer, got " + j.dump());
}

Natural natural_of(const json& j) { return Natural::parse(text_of(j)); }
SignedInt signed_of(const json& j) { return SignedInt::parse(text_of(j)); }

std::uint64_t index_of(const json& j) {
  auto v = natural_of(j).to_u64();
  if (!v) throw ParseError("row index out of range");
  return *v;
}

json outcome_json(const FactorOutcome& o) {
  return {{"kind", to_string(o.kind)}, {"p", number(o.p)}, {"q", number(o.q)}, {"steps", o.steps}};
}

template <std::size_t N>
void write_header(std::ostream& os, char sep, const std::array<std::string_view, N>& cols) {
  for (std::size_t i = 0; i < N; ++i) os << (i ? std::string(1, sep) : "") << cols[i];
  os << '\n';
}

char separator(TraceFormat fmt) { return fmt == TraceFormat::CSV ? ',' : '\t'; }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <std::size_t N, class RowFn>
void read_table(std::istream& is, TraceFormat fmt, const std::array<std::string_view, N>& cols,
                RowFn on_row) {
  if (fmt == TraceFormat::JSON) throw ParseError("read_*_table handles TSV/CSV only");
  const char sep = separator(fmt);
  std::string line;
  if (!std::getline(is, line)) throw ParseError("missing header");
  auto header = split(line, sep);
  if (header.size() != N) throw ParseError("unexpected header: " + line);
  for (std::size_t i = 0; i < N; ++i)
    if (header[i] != cols[i]) throw ParseError("unexpected header: " + line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto fields = split(line, sep);
    if (fields.size() != N) throw ParseError("wrong field count: " + line);
    on_row(fields);
  }
}

}  // namespace

std::optional<TraceFormat> parse_trace_format(std::string_view name) {
  if (name == "tsv") return TraceFormat::TSV;
  if (name == "csv") return TraceFormat::CSV;
  if (name == "json") return TraceFormat::JSON;
  return std::nullopt;
}

void write_param_header(std::ostream& os, TraceFormat fmt) {
  write_header(os, separator(fmt), kParamColumns);
}

void write_param_row(std::ostream& os, TraceFormat fmt, const ParamTraceRow& r) {
  const char sep = separator(fmt);
  os << r.k << sep << r.x << sep << r.y << sep << r.delta_x << sep << r.eps << sep << r.delta_y
     << '\n';
}

void write_unit_header(std::ostream& os, TraceFormat fmt) {
  write_header(os, separator(fmt), kUnitColumns);
}

void write_unit_row(std::ostream& os, TraceFormat fmt, const UnitTraceRow& r) {
  const char sep = separator(fmt);
  os << r.k << sep << r.x << sep << r.y << sep << r.delta << sep << r.eps_x << sep << r.eps_y
     << sep << r.contrib << '\n';
}

json param_trace_json(const Natural& n, std::span<const ParamTraceRow> rows,
                      const FactorOutcome& outcome) {
  json jrows = json::array();
  for (const auto& r : rows) {
    jrows.push_back(json::array({r.k, number(r.x), number(r.y), number(r.delta_x), number(r.eps),
                                 number(r.delta_y)}));
  }
  return {{"n", number(n)},
          {"algorithm", "param"},
          {"columns", kParamColumns},
          {"rows", std::move(jrows)},
          {"outcome", outcome_json(outcome)}};
}

json unit_trace_json(const Natural& n, std::string_view algorithm,
                     std::span<const UnitTraceRow> rows, const FactorOutcome& outcome) {
  json jrows = json::array();
  for (const auto& r : rows) {
    jrows.push_back(json::array({r.k, number(r.x), number(r.y), number(r.delta), number(r.eps_x),
                                 number(r.eps_y), number(r.contrib)}));
  }
  return {{"n", number(n)},
          {"algorithm", algorithm},
          {"columns", kUnitColumns},
          {"rows", std::move(jrows)},
          {"outcome", outcome_json(outcome)}};
}

void write_param_trace(std::ostream& os, TraceFormat fmt, const Natural& n,
                       std::span<const ParamTraceRow> rows, const FactorOutcome& outcome) {
  if (fmt == TraceFormat::JSON) {
    os << param_trace_json(n, rows, outcome).dump(1) << '\n';
    return;
  }
  write_param_header(os, fmt);
  for (const auto& r : rows) write_param_row(os, fmt, r);
}

void write_unit_trace(std::ostream& os, TraceFormat fmt, const Natural& n, std::string_view algorithm,
                      std::span<const UnitTraceRow> rows, const FactorOutcome& outcome) {
  if (fmt == TraceFormat::JSON) {
    os << unit_trace_json(n, algorithm, rows, outcome).dump(1) << '\n';
    return;
  }
  write_unit_header(os, fmt);
  for (const auto& r : rows) write_unit_row(os, fmt, r);
}

std::vector<ParamTraceRow> param_rows_from_json(const json& doc) {
  std::vector<ParamTraceRow> rows;
  try {
    if (doc.at("columns") != json(kParamColumns)) throw ParseError("unexpected param columns");
    for (const auto& r : doc.at("rows")) {
      if (!r.is_array() || r.size() != kParamColumns.size()) throw ParseError("bad param row " + r.dump());
      rows.push_back({index_of(r[0]), natural_of(r[1]), natural_of(r[2]), signed_of(r[3]),
                      natural_of(r[4]), signed_of(r[5])});
    }
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  return rows;
}

std::vector<UnitTraceRow> unit_rows_from_json(const json& doc) {
  std::vector<UnitTraceRow> rows;
  try {
    if (doc.at("columns") != json(kUnitColumns)) throw ParseError("unexpected unit columns");
    for (const auto& r : doc.at("rows")) {
      if (!r.is_array() || r.size() != kUnitColumns.size()) throw ParseError("bad unit row " + r.dump());
      rows.push_back({index_of(r[0]), natural_of(r[1]), natural_of(r[2]), signed_of(r[3]),
                      signed_of(r[4]), signed_of(r[5]), signed_of(r[6])});
    }
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  return rows;
}

std::vector<ParamTraceRow> read_param_table(std::istream& is, TraceFormat fmt) {
  std::vector<ParamTraceRow> rows;
  read_table(is, fmt, kParamColumns, [&](const std::vector<std::string>& f) {
    auto k = Natural::parse(f[0]).to_u64();
    if (!k) throw ParseError("row index out of range");
    rows.push_back({*k, Natural::parse(f[1]), Natural::parse(f[2]), SignedInt::parse(f[3]),
                    Natural::parse(f[4]), SignedInt::parse(f[5])});
  });
  return rows;
}

std::vector<UnitTraceRow> read_unit_table(std::istream& is, TraceFormat fmt) {
  std::vector<UnitTraceRow> rows;
  read_table(is, fmt, kUnitColumns, [&](const std::vector<std::string>& f) {
    auto k = Natural::parse(f[0]).to_u64();
    if (!k) throw ParseError("row index out of range");
    rows.push_back({*k, Natural::parse(f[1]), Natural::parse(f[2]), SignedInt::parse(f[3]),
                    SignedInt::parse(f[4]), SignedInt::parse(f[5]), SignedInt::parse(f[6])});
  });
  return rows;
}

}  // namespace dexfactor
