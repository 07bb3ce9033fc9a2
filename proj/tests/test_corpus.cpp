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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <webspam/corpus.hpp>

using webspam::Corpus;
using webspam::FeatureMatrix;
using webspam::Label;
using webspam::PageRecord;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content) : path(name) {
        std::ofstream(path, std::ios::binary) << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("load_corpus reads jsonl and skips blank lines") {
    const TempFile f("corpus_ok.jsonl",
                     R"({"url":"http://a.com/","html":"<p>a</p>","label":"spam"})"
                     "\n\n"
                     R"({"url":"http://b.com/","html":"<p>b</p>","label":"ham"})"
                     "\n");
    const Corpus c = webspam::load_corpus(f.path);
    REQUIRE(c.records.size() == 2);
    CHECK(c.errors.empty());
    CHECK(c.records[0].url == "http://a.com/");
    CHECK(c.records[0].label == Label::Spam);
    CHECK(c.records[1].html == "<p>b</p>");
    CHECK(c.records[1].label == Label::Ham);
    CHECK(c.spam_count() == 1);
}

TEST_CASE("load_corpus collects malformed lines with line numbers") {
    const TempFile f("corpus_mixed.jsonl",
                     R"({"url":"http://a.com/","html":"x","label":"spam"})"
                     "\n"
                     "not json at all\n"
                     R"(["an","array"])"
                     "\n"
                     R"({"url":"http://b.com/","label":"ham"})"
                     "\n"
                     R"({"url":"http://c.com/","html":"y","label":"maybe"})"
                     "\n"
                     R"({"url":"http://d.com/","html":"z","label":"ham"})"
                     "\n");
    const Corpus c = webspam::load_corpus(f.path);
    REQUIRE(c.records.size() == 2);
    REQUIRE(c.errors.size() == 4);
    CHECK(c.errors[0].line == 2);
    CHECK(c.errors[1].line == 3);
    CHECK(c.errors[2].line == 4);  // missing html
    CHECK(c.errors[3].line == 5);  // bad label value
    CHECK(c.errors[3].message.find("maybe") != std::string::npos);
}

TEST_CASE("load_corpus throws when nothing is usable") {
    CHECK_THROWS_AS(webspam::load_corpus("no_such_corpus.jsonl"), webspam::IoError);

    const TempFile empty("corpus_empty.jsonl", "\n\n");
    CHECK_THROWS_AS(webspam::load_corpus(empty.path), webspam::ParseError);

    const TempFile junk("corpus_junk.jsonl", "garbage\nmore garbage\n");
    CHECK_THROWS_AS(webspam::load_corpus(junk.path), webspam::ParseError);
}

TEST_CASE("corpus round trip preserves records including tricky strings") {
    const std::vector<PageRecord> records = {
        {"http://a.com/x?q=\"1\"", "<p>line\nbreak \xE2\x82\xAC</p>", Label::Spam},
        {"http://b.com/", "", Label::Ham},
    };
    const std::string path = "corpus_round.jsonl";
    webspam::save_corpus(records, path);
    const Corpus c = webspam::load_corpus(path);
    std::remove(path.c_str());

    REQUIRE(c.records.size() == 2);
    CHECK(c.errors.empty());
    CHECK(c.records[0].url == records[0].url);
    CHECK(c.records[0].html == records[0].html);
    CHECK(c.records[0].label == Label::Spam);
    CHECK(c.records[1].html.empty());
}

TEST_CASE("matrix csv round trip is bit exact") {
    FeatureMatrix m;
    m.feature_names = {"alpha", "beta", "gamma"};
    m.rows = {
        {1.0, -0.3333333333333333, 1e-17},
        {0.1 + 0.2, 123456789.123456789, -0.0},
        {5e-324, 1.7976931348623157e308, 42.0},  // denormal min and double max
    };
    m.labels = {1, 0, 1};

    const std::string path = "matrix_round.csv";
    webspam::write_matrix_csv(m, path);
    const FeatureMatrix r = webspam::read_matrix_csv(path);
    std::remove(path.c_str());

    CHECK(r.feature_names == m.feature_names);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.labels == m.labels);
    for (std::size_t i = 0; i < m.rows.size(); ++i)
        for (std::size_t j = 0; j < m.rows[i].size(); ++j) {
            INFO("cell " << i << "," << j);
            // Bit-for-bit: shortest round-trip formatting must reparse exactly.
            CHECK(std::memcmp(&r.rows[i][j], &m.rows[i][j], sizeof(double)) == 0);
        }
}

TEST_CASE("matrix csv layout has a label-terminated header") {
    FeatureMatrix m;
    m.feature_names = {"one", "two"};
    m.rows = {{1.5, 2.5}};
    m.labels = {0};
    const std::string path = "matrix_layout.csv";
    webspam::write_matrix_csv(m, path);

    std::ifstream in(path);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    in.close();
    std::remove(path.c_str());

    CHECK(header == "one,two,label");
    CHECK(row == "1.5,2.5,ham");
}

TEST_CASE("matrix csv write validates shape") {
    FeatureMatrix bad;
    bad.feature_names = {"a"};
    bad.rows = {{1.0}};
    bad.labels = {};  // rows vs labels mismatch
    CHECK_THROWS_AS(webspam::write_matrix_csv(bad, "never_written.csv"),
                    webspam::DimensionError);

    FeatureMatrix ragged;
    ragged.feature_names = {"a", "b"};
    ragged.rows = {{1.0, 2.0}, {3.0}};
    ragged.labels = {0, 1};
    CHECK_THROWS_AS(webspam::write_matrix_csv(ragged, "never_written.csv"),
                    webspam::DimensionError);
    std::remove("never_written.csv");
}

TEST_CASE("matrix csv read rejects malformed files with line numbers") {
    CHECK_THROWS_AS(webspam::read_matrix_csv("no_such_matrix.csv"), webspam::IoError);

    const TempFile no_label("matrix_bad_header.csv", "a,b\n1,2\n");
    CHECK_THROWS_AS(webspam::read_matrix_csv(no_label.path), webspam::ParseError);

    const TempFile bad_cell("matrix_bad_cell.csv", "a,label\nnot_a_number,spam\n");
    try {
        webspam::read_matrix_csv(bad_cell.path);
        FAIL("expected ParseError");
    } catch (const webspam::ParseError& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }

    const TempFile bad_label("matrix_bad_label.csv", "a,label\n1.0,unknown\n");
    CHECK_THROWS_AS(webspam::read_matrix_csv(bad_label.path), webspam::ParseError);

    const TempFile short_row("matrix_short_row.csv", "a,b,label\n1.0,spam\n");
    CHECK_THROWS_AS(webspam::read_matrix_csv(short_row.path), webspam::ParseError);

    // Trailing partial cell ("1.0x") must not silently parse as 1.0.
    const TempFile partial("matrix_partial.csv", "a,label\n1.0x,ham\n");
    CHECK_THROWS_AS(webspam::read_matrix_csv(partial.path), webspam::ParseError);
}

TEST_CASE("matrix csv read tolerates windows line endings") {
    const TempFile crlf("matrix_crlf.csv", "a,b,label\r\n1.5,2.5,spam\r\n");
    const FeatureMatrix m = webspam::read_matrix_csv(crlf.path);
    CHECK(m.feature_names == std::vector<std::string>{"a", "b"});
    REQUIRE(m.rows.size() == 1);
    CHECK(m.rows[0] == std::vector<double>{1.5, 2.5});
    CHECK(m.labels == std::vector<int>{1});
}

TEST_CASE("the committed corpus fixture loads cleanly") {
    const char* env = std::getenv("WEBSPAM_DATA");
    REQUIRE(env != nullptr);
    const Corpus corpus = webspam::load_corpus(std::string(env) + "/corpus.jsonl");
    CHECK(corpus.errors.empty());
    CHECK(corpus.records.size() == 22);
    CHECK(corpus.spam_count() == 11);
    for (const auto& rec : corpus.records) {
        CHECK(!rec.url.empty());
        CHECK(rec.html.find("<title>") != std::string::npos);
    }
}
