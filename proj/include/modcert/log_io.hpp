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

#ifndef MODCERT_LOG_IO_HPP_
#define MODCERT_LOG_IO_HPP_

#include <filesystem>
#include <iosfwd>

#include "modcert/indicator_log.hpp"

namespace modcert {

enum class LogFormat { kCsv, kJsonl };

/**
 * Parse an indicator log.
 *
 * CSV: header `example_id,<name>,...`, then one row per example whose first
 * cell is the example id and whose remaining cells are exactly "0" or "1".
 * JSONL: one `{"id": <string>, "indicators": {<name>: 0|1, ...}}` object per
 * line; the first line fixes the indicator names (in their written order)
 * and every later line must carry exactly the same set.
 *
 * Malformed headers or rows, non-binary cells, inconsistent widths and empty
 * inputs raise ParseError carrying the offending 1-based line number.
 * Missing values are rejected, never imputed: an absent indicator cannot be
 * assumed non-failing.
 */
IndicatorLog ingest_log(std::istream& source, LogFormat format);

/// ingest_log over a file; the format is inferred from the extension
/// (".csv" or ".jsonl").
IndicatorLog ingest_log_file(const std::filesystem::path& path);

/// Serialize in either grammar; row ids are the 1-based row numbers.
void write_log(std::ostream& sink, const IndicatorLog& log, LogFormat format);

LogFormat log_format_from_extension(const std::filesystem::path& path);

}  // namespace modcert

#endif  // MODCERT_LOG_IO_HPP_
