// Copyright 2026 The modcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "modcert/log_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace modcert {

namespace {

// Line-oriented json preserving object key order: indicator order in a JSONL
// log is meaningful (factors are position-dependent downstream).
using OrderedJson = nlohmann::ordered_json;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

// getline with CRLF tolerance; returns false at EOF.
bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) {
    return false;
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  return true;
}

IndicatorLog ingest_csv(std::istream& source) {
  std::string line;
  if (!next_line(source, line)) {
    throw ParseError("empty log", 1);
  }
  std::vector<std::string> header = split_csv(line);
  if (header.size() < 2 || header[0] != "example_id") {
    throw ParseError("malformed header: expected example_id,<name>,...", 1);
  }
  std::vector<std::string> names(header.begin() + 1, header.end());
  for (const std::string& name : names) {
    if (name.empty()) {
      throw ParseError("empty indicator name in header", 1);
    }
  }

  std::vector<std::uint8_t> bits;
  std::size_t line_no = 1;
  while (next_line(source, line)) {
    ++line_no;
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw ParseError("row has " + std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(header.size()), line_no);
    }
    if (cells[0].empty()) {
      throw ParseError("empty example_id", line_no);
    }
    for (std::size_t i = 1; i < cells.size(); ++i) {
      if (cells[i] == "0") {
        bits.push_back(0);
      } else if (cells[i] == "1") {
        bits.push_back(1);
      } else {
        throw ParseError("indicator cell must be 0 or 1, got \"" + cells[i] + "\"", line_no);
      }
    }
  }
  if (bits.empty()) {
    throw ParseError("log has a header but no data rows", line_no + 1);
  }
  return IndicatorLog(std::move(names), std::move(bits));
}

IndicatorLog ingest_jsonl(std::istream& source) {
  std::vector<std::string> names;
  std::vector<std::uint8_t> bits;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(source, line)) {
    ++line_no;
    OrderedJson record;
    try {
      record = OrderedJson::parse(line);
    } catch (const OrderedJson::parse_error& err) {
      throw ParseError(std::string("invalid json: ") + err.what(), line_no);
    }
    if (!record.is_object() || !record.contains("id") || !record.contains("indicators") ||
        record.size() != 2) {
      throw ParseError("record must be {\"id\": ..., \"indicators\": {...}}", line_no);
    }
    if (!record["id"].is_string()) {
      throw ParseError("id must be a string", line_no);
    }
    const OrderedJson& indicators = record["indicators"];
    if (!indicators.is_object() || indicators.empty()) {
      throw ParseError("indicators must be a nonempty object", line_no);
    }
    if (names.empty()) {
      for (const auto& [key, unused] : indicators.items()) {
        names.push_back(key);
      }
    }
    if (indicators.size() != names.size()) {
      throw ParseError("record has " + std::to_string(indicators.size()) +
                       " indicators, expected " + std::to_string(names.size()), line_no);
    }
    for (const std::string& name : names) {
      if (!indicators.contains(name)) {
        throw ParseError("missing indicator \"" + name + "\"", line_no);
      }
      const OrderedJson& value = indicators[name];
      if (!value.is_number_integer() || (value != 0 && value != 1)) {
        throw ParseError("indicator \"" + name + "\" must be 0 or 1", line_no);
      }
      bits.push_back(static_cast<std::uint8_t>(value.get<int>()));
    }
  }
  if (names.empty()) {
    throw ParseError("empty log", 1);
  }
  return IndicatorLog(std::move(names), std::move(bits));
}

}  // namespace

IndicatorLog ingest_log(std::istream& source, LogFormat format) {
  return format == LogFormat::kCsv ? ingest_csv(source) : ingest_jsonl(source);
}

LogFormat log_format_from_extension(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".csv") return LogFormat::kCsv;
  if (ext == ".jsonl") return LogFormat::kJsonl;
  throw ValidationError("cannot infer log format from \"" + path.string() +
                        "\": expected a .csv or .jsonl extension");
}

IndicatorLog ingest_log_file(const std::filesystem::path& path) {
  const LogFormat format = log_format_from_extension(path);
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open log file \"" + path.string() + "\"");
  }
  return ingest_log(in, format);
}

void write_log(std::ostream& sink, const IndicatorLog& log, LogFormat format) {
  if (format == LogFormat::kCsv) {
    sink << "example_id";
    for (const std::string& name : log.indicator_names()) {
      sink << ',' << name;
    }
    sink << '\n';
    for (std::int64_t row = 0; row < log.row_count(); ++row) {
      sink << row + 1;
      for (std::size_t t = 0; t < log.indicator_count(); ++t) {
        sink << ',' << log.bit(row, t);
      }
      sink << '\n';
    }
  } else {
    for (std::int64_t row = 0; row < log.row_count(); ++row) {
      OrderedJson indicators = OrderedJson::object();
      for (std::size_t t = 0; t < log.indicator_count(); ++t) {
        indicators[log.indicator_names()[t]] = log.bit(row, t);
      }
      OrderedJson record = OrderedJson::object();
      record["id"] = std::to_string(row + 1);
      record["indicators"] = std::move(indicators);
      sink << record.dump() << '\n';
    }
  }
}

}  // namespace modcert
