/*
 * Copyright 2026 The webspam authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Corpus file I/O: line-delimited {"url","html","label"} records, and the
// CSV feature-matrix format with full round-trip numeric precision.

#pragma once

#include <charconv>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "webspam/errors.hpp"
#include "webspam/net.hpp"
#include "webspam/text.hpp"

namespace webspam {

struct PageRecord {
    std::string url;
    std::string html;
    Label label = Label::Ham;
};

struct CorpusError {
    std::size_t line = 0;
    std::string message;
};

struct Corpus {
    std::vector<PageRecord> records;
    std::vector<CorpusError> errors;  // malformed lines, by line number

    std::size_t spam_count() const {
        std::size_t n = 0;
        for (const auto& r : records)
            if (r.label == Label::Spam) ++n;
        return n;
    }
};

/// Load a line-delimited corpus. Malformed lines are reported, not fatal;
/// an unreadable file or zero valid records throws.
inline Corpus load_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file: " + path);

    Corpus corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            corpus.errors.push_back({line_no, "not a JSON object"});
            continue;
        }
        if (!j.contains("url") || !j["url"].is_string() || !j.contains("html") ||
            !j["html"].is_string() || !j.contains("label") || !j["label"].is_string()) {
            corpus.errors.push_back({line_no, "missing url/html/label string fields"});
            continue;
        }
        std::string label = j["label"].get<std::string>();
        if (label != "spam" && label != "ham") {
            corpus.errors.push_back({line_no, "label must be \"spam\" or \"ham\", got \"" + label + "\""});
            continue;
        }
        PageRecord rec;
        rec.url = j["url"].get<std::string>();
        rec.html = j["html"].get<std::string>();
        rec.label = label == "spam" ? Label::Spam : Label::Ham;
        corpus.records.push_back(std::move(rec));
    }
    if (corpus.records.empty()) throw ParseError("corpus file " + path + " has no valid records");
    return corpus;
}

inline void save_corpus(const std::vector<PageRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write corpus file: " + path);
    for (const auto& rec : records) {
        nlohmann::json j{{"url", rec.url},
                         {"html", rec.html},
                         {"label", rec.label == Label::Spam ? "spam" : "ham"}};
        out << j.dump() << '\n';
    }
    if (!out) throw IoError("failed writing corpus file: " + path);
}

struct FeatureMatrix {
    std::vector<std::string> feature_names;       // column order
    std::vector<std::vector<double>> rows;        // one per page
    std::vector<int> labels;                      // 1 = spam, 0 = ham

    std::size_t width() const { return feature_names.size(); }
    std::size_t height() const { return rows.size(); }
};

namespace detail {

/// Shortest decimal form that parses back to the identical double.
inline void append_double(std::string& out, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
    (void)ec;  // 64 bytes always suffice for a double
}

}  // namespace detail

/// CSV with a header of feature names plus "label"; label cells are
/// "spam"/"ham"; numbers carry full round-trip precision.
inline void write_matrix_csv(const FeatureMatrix& matrix, const std::string& path) {
    if (matrix.rows.size() != matrix.labels.size())
        throw DimensionError(matrix.rows.size(), matrix.labels.size());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write matrix file: " + path);
    std::string buf;
    for (const auto& name : matrix.feature_names) {
        buf += name;
        buf += ',';
    }
    buf += "label\n";
    for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
        if (matrix.rows[r].size() != matrix.width())
            throw DimensionError(matrix.width(), matrix.rows[r].size());
        for (double v : matrix.rows[r]) {
            detail::append_double(buf, v);
            buf += ',';
        }
        buf += matrix.labels[r] ? "spam" : "ham";
        buf += '\n';
    }
    out << buf;
    if (!out) throw IoError("failed writing matrix file: " + path);
}

inline FeatureMatrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open matrix file: " + path);

    auto split = [](std::string_view line) {
        std::vector<std::string_view> cells;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string_view::npos) {
                cells.push_back(line.substr(pos));
                break;
            }
            cells.push_back(line.substr(pos, comma - pos));
            pos = comma + 1;
        }
        return cells;
    };

    FeatureMatrix matrix;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (text::trim(line).empty()) continue;
        auto cells = split(line);
        if (line_no == 1 || matrix.feature_names.empty()) {
            if (cells.size() < 2 || cells.back() != "label")
                throw ParseError("matrix file " + path + ": header must end with 'label'");
            for (std::size_t i = 0; i + 1 < cells.size(); ++i)
                matrix.feature_names.emplace_back(cells[i]);
            continue;
        }
        if (cells.size() != matrix.width() + 1)
            throw ParseError("matrix file " + path + " line " + std::to_string(line_no) + ": expected " +
                             std::to_string(matrix.width() + 1) + " cells, got " +
                             std::to_string(cells.size()));
        std::vector<double> row(matrix.width());
        for (std::size_t i = 0; i < matrix.width(); ++i) {
            std::string_view cell = cells[i];
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), row[i]);
            if (ec != std::errc{} || ptr != cell.data() + cell.size())
                throw ParseError("matrix file " + path + " line " + std::to_string(line_no) +
                                 ": bad number '" + std::string(cell) + "'");
        }
        std::string_view label = cells.back();
        if (label != "spam" && label != "ham")
            throw ParseError("matrix file " + path + " line " + std::to_string(line_no) +
                             ": bad label '" + std::string(label) + "'");
        matrix.rows.push_back(std::move(row));
        matrix.labels.push_back(label == "spam" ? 1 : 0);
    }
    if (matrix.feature_names.empty()) throw ParseError("matrix file " + path + " has no header");
    if (matrix.rows.empty()) throw ParseError("matrix file " + path + " has no data rows");
    return matrix;
}

}  // namespace webspam
