// Copyright 2026 The entwalk Authors
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

#ifndef ENTWALK_TOOLS_QWALK_TABLE_H
#define ENTWALK_TOOLS_QWALK_TABLE_H

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace entwalk::cli {

enum class OutputFormat { Csv, Json };

/// A JSON fragment stored verbatim; only emitted in JSON output.
struct RawJson {
    std::string text;
};

using Cell = std::variant<std::monostate, std::int64_t, double, std::string,
                          bool, RawJson>;

/// Long-format result table.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

/// Shortest text with exactly 17 significant digits.
std::string format_double(double value);

/// Comma-separated with a header row and LF endings. Missing cells are empty,
/// booleans are 1/0.
std::string to_csv(const Table& table);

/// Array of row objects with sorted keys; missing cells are null.
std::string to_json(const Table& table);

std::string serialize(const Table& table, OutputFormat format);

/// Stages several files and commits them by rename only after every one was
/// written. Uncommitted staging files are removed on destruction.
class AtomicWriter {
   public:
    AtomicWriter() = default;
    AtomicWriter(const AtomicWriter&) = delete;
    AtomicWriter& operator=(const AtomicWriter&) = delete;
    ~AtomicWriter();

    void stage(const std::filesystem::path& target, const std::string& content);
    std::vector<std::filesystem::path> commit();

   private:
    std::vector<std::pair<std::filesystem::path, std::filesystem::path>> staged_;
};

}  // namespace entwalk::cli

#endif  // ENTWALK_TOOLS_QWALK_TABLE_H
