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

#include "qwalk/table.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace entwalk::cli {
namespace {

struct CsvCell {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(bool v) const { return v ? "1" : "0"; }
    std::string operator()(const RawJson& v) const { return v.text; }
};

nlohmann::json json_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, RawJson>) {
                return nlohmann::json::parse(v.text);
            } else if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
                return v;
            } else {
                return v;
            }
        },
        cell);
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("table row width does not match header");
    }
    rows.push_back(std::move(row));
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value,
                             std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += std::visit(CsvCell{}, row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            obj[table.columns[c]] = json_cell(row[c]);
        }
        rows.push_back(std::move(obj));
    }
    return rows.dump(1) + "\n";
}

std::string serialize(const Table& table, OutputFormat format) {
    return format == OutputFormat::Csv ? to_csv(table) : to_json(table);
}

AtomicWriter::~AtomicWriter() {
    std::error_code ec;
    for (const auto& [tmp, target] : staged_) std::filesystem::remove(tmp, ec);
}

void AtomicWriter::stage(const std::filesystem::path& target,
                         const std::string& content) {
    std::filesystem::path tmp = target;
    tmp += ".partial";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string());
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
    }
    staged_.emplace_back(tmp, target);
}

std::vector<std::filesystem::path> AtomicWriter::commit() {
    std::vector<std::filesystem::path> done;
    for (const auto& [tmp, target] : staged_) {
        std::filesystem::rename(tmp, target);
        done.push_back(target);
    }
    staged_.clear();
    return done;
}

}  // namespace entwalk::cli
