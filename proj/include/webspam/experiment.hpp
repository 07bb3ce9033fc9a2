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

// The evaluation protocol: random train/test splits, per-family-combination
// training and scoring over repeated runs, table reporting, and a synthetic
// corpus generator that plants the documented spam signals.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "webspam/corpus.hpp"
#include "webspam/errors.hpp"
#include "webspam/features.hpp"
#include "webspam/metrics.hpp"
#include "webspam/net.hpp"
#include "webspam/rng.hpp"

namespace webspam {

struct ComboSpec {
    const char* name;
    FamilySelection selection;
};

/// The seven family combinations, in canonical table order.
inline const std::array<ComboSpec, 7>& table_combos() {
    static const std::array<ComboSpec, 7> kCombos = {{
        {"URL", {true, false, false}},
        {"Content", {false, true, false}},
        {"Link", {false, false, true}},
        {"URL+Content", {true, true, false}},
        {"URL+Link", {true, false, true}},
        {"Content+Link", {false, true, true}},
        {"URL+Content+Link", {true, true, true}},
    }};
    return kCombos;
}

struct ExperimentPlan {
    std::size_t runs = 20;
    std::size_t train_count = 0;  // 0: round(corpus * 300/370)
    std::uint64_t seed = 0;
    bool shared_splits = false;  // reuse one split per run across combos
    TrainingConfig training;
};

struct ComboResult {
    std::string name;
    FamilySelection selection;
    MetricsReport mean;
    MetricsReport stddev;
    std::vector<MetricsReport> per_run;
};

struct ExperimentTable {
    std::vector<ComboResult> combos;
    std::size_t runs = 0;
    std::size_t corpus_size = 0;
    std::size_t train_count = 0;
    std::uint64_t seed = 0;
    bool shared_splits = false;
    std::vector<std::string> notes;  // single-class redraw log
};

/// Deterministic permutation split: first train_count shuffled indices train,
/// the rest test.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t n, std::size_t train_count, std::uint64_t seed) {
    if (train_count == 0 || train_count >= n)
        throw TrainingError("train_count must satisfy 0 < train_count < corpus size");
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::mt19937_64 gen(seed);
    rng::shuffle(gen, order);
    std::vector<std::size_t> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(train_count));
    std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(train_count), order.end());
    return {std::move(train), std::move(test)};
}

inline std::pair<std::vector<PageRecord>, std::vector<PageRecord>> split(
    const std::vector<PageRecord>& records, std::size_t train_count, std::uint64_t seed) {
    auto [train_idx, test_idx] = split_indices(records.size(), train_count, seed);
    std::pair<std::vector<PageRecord>, std::vector<PageRecord>> out;
    out.first.reserve(train_idx.size());
    out.second.reserve(test_idx.size());
    for (std::size_t i : train_idx) out.first.push_back(records[i]);
    for (std::size_t i : test_idx) out.second.push_back(records[i]);
    return out;
}

/// Extract the full 32-column feature matrix for a corpus.
inline FeatureMatrix extract_matrix(const std::vector<PageRecord>& records, const LexiconSet& lex,
                                    const SuffixTable& suffixes) {
    FeatureMatrix matrix;
    matrix.feature_names.assign(FeatureVector::names().begin(), FeatureVector::names().end());
    matrix.rows.reserve(records.size());
    matrix.labels.reserve(records.size());
    for (const auto& rec : records) {
        FeatureVector vec = extract_features(rec.url, rec.html, lex, suffixes);
        matrix.rows.emplace_back(vec.values.begin(), vec.values.end());
        matrix.labels.push_back(rec.label == Label::Spam ? 1 : 0);
    }
    return matrix;
}

/// Column-slice a matrix, keeping labels.
inline FeatureMatrix select_columns(const FeatureMatrix& matrix, const std::vector<std::size_t>& cols) {
    FeatureMatrix out;
    out.labels = matrix.labels;
    out.feature_names.reserve(cols.size());
    for (std::size_t c : cols) out.feature_names.push_back(matrix.feature_names.at(c));
    out.rows.reserve(matrix.rows.size());
    for (const auto& row : matrix.rows) {
        std::vector<double> slim;
        slim.reserve(cols.size());
        for (std::size_t c : cols) slim.push_back(row.at(c));
        out.rows.push_back(std::move(slim));
    }
    return out;
}

namespace detail {

struct RunOutcome {
    MetricsReport metrics;
    std::uint64_t seed_used = 0;
    std::size_t redraws = 0;
};

inline bool both_classes(const std::vector<int>& labels, const std::vector<std::size_t>& idx) {
    bool spam = false, ham = false;
    for (std::size_t i : idx) (labels[i] ? spam : ham) = true;
    return spam && ham;
}

/// One split+train+evaluate cycle on pre-sliced columns. Redraws the split
/// with consecutive seeds when the training half is single-class.
inline RunOutcome run_once(const FeatureMatrix& sliced, std::uint64_t seed, std::size_t train_count,
                           const TrainingConfig& base_training) {
    constexpr std::size_t kMaxAttempts = 10;
    for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::uint64_t seed_used = seed + attempt;
        auto [train_idx, test_idx] = split_indices(sliced.height(), train_count, seed_used);
        if (!both_classes(sliced.labels, train_idx)) continue;  // redraw, training would degenerate

        std::vector<std::vector<double>> train_rows;
        std::vector<int> train_labels;
        train_rows.reserve(train_idx.size());
        for (std::size_t i : train_idx) {
            train_rows.push_back(sliced.rows[i]);
            train_labels.push_back(sliced.labels[i]);
        }

        MlpModel bounds;
        bounds.input_dim = sliced.width();
        fit_bounds(bounds, train_rows);

        std::vector<std::vector<double>> normalized;
        normalized.reserve(train_rows.size());
        for (const auto& row : train_rows) normalized.push_back(normalize(row, bounds));

        TrainingConfig cfg = base_training;
        cfg.seed = seed_used;
        TrainResult trained = train_rprop(normalized, train_labels, cfg);
        trained.model.norm_min = bounds.norm_min;
        trained.model.norm_max = bounds.norm_max;
        trained.model.feature_names = sliced.feature_names;

        std::vector<std::pair<Label, Label>> pairs;
        pairs.reserve(test_idx.size());
        for (std::size_t i : test_idx) {
            Verdict v = classify(trained.model, sliced.rows[i]);
            pairs.emplace_back(v.label, sliced.labels[i] ? Label::Spam : Label::Ham);
        }
        RunOutcome outcome;
        outcome.metrics = report(confusion(pairs));
        outcome.seed_used = seed_used;
        outcome.redraws = attempt;
        return outcome;
    }
    throw TrainingError("split stayed single-class after " + std::to_string(kMaxAttempts) +
                        " redraw attempts from seed " + std::to_string(seed));
}

inline MetricsReport mean_of(const std::vector<MetricsReport>& reports) {
    MetricsReport m;
    for (const auto& r : reports) {
        m.sensitivity += r.sensitivity;
        m.specificity += r.specificity;
        m.efficiency += r.efficiency;
        m.precision += r.precision;
        m.f1 += r.f1;
        m.accuracy += r.accuracy;
        m.degenerate = m.degenerate || r.degenerate;
    }
    double n = static_cast<double>(reports.size());
    m.sensitivity /= n;
    m.specificity /= n;
    m.efficiency /= n;
    m.precision /= n;
    m.f1 /= n;
    m.accuracy /= n;
    return m;
}

inline MetricsReport stddev_of(const std::vector<MetricsReport>& reports, const MetricsReport& mean) {
    MetricsReport s;
    if (reports.size() < 2) return s;
    for (const auto& r : reports) {
        auto acc = [](double& slot, double v, double mu) { slot += (v - mu) * (v - mu); };
        acc(s.sensitivity, r.sensitivity, mean.sensitivity);
        acc(s.specificity, r.specificity, mean.specificity);
        acc(s.efficiency, r.efficiency, mean.efficiency);
        acc(s.precision, r.precision, mean.precision);
        acc(s.f1, r.f1, mean.f1);
        acc(s.accuracy, r.accuracy, mean.accuracy);
    }
    double n1 = static_cast<double>(reports.size() - 1);
    s.sensitivity = std::sqrt(s.sensitivity / n1);
    s.specificity = std::sqrt(s.specificity / n1);
    s.efficiency = std::sqrt(s.efficiency / n1);
    s.precision = std::sqrt(s.precision / n1);
    s.f1 = std::sqrt(s.f1 / n1);
    s.accuracy = std::sqrt(s.accuracy / n1);
    return s;
}

}  // namespace detail

inline std::size_t default_train_count(std::size_t corpus_size) {
    double scaled = static_cast<double>(corpus_size) * 300.0 / 370.0;
    auto count = static_cast<std::size_t>(std::llround(scaled));
    if (count == 0) count = 1;
    if (count >= corpus_size) count = corpus_size - 1;
    return count;
}

/// Full protocol: for each family combination and run, split, fit bounds on
/// the training half only, train, score the held-out half, then average.
/// Run r of combo c splits with seed = base + c*runs + r (a global run
/// counter), or base + r for every combo when shared_splits is set.
inline ExperimentTable run_experiment(const std::vector<PageRecord>& records, const ExperimentPlan& plan,
                                      const LexiconSet& lex, const SuffixTable& suffixes) {
    if (plan.runs < 1) throw TrainingError("experiment needs at least one run");
    FeatureMatrix full = extract_matrix(records, lex, suffixes);

    bool spam = false, ham = false;
    for (int label : full.labels) (label ? spam : ham) = true;
    if (!spam || !ham) throw TrainingError("corpus contains a single class");

    ExperimentTable table;
    table.runs = plan.runs;
    table.corpus_size = records.size();
    table.train_count = plan.train_count ? plan.train_count : default_train_count(records.size());
    table.seed = plan.seed;
    table.shared_splits = plan.shared_splits;

    const auto& combos = table_combos();
    for (std::size_t c = 0; c < combos.size(); ++c) {
        FeatureMatrix sliced = select_columns(full, selected_indices(combos[c].selection));
        ComboResult result;
        result.name = combos[c].name;
        result.selection = combos[c].selection;
        result.per_run.reserve(plan.runs);
        for (std::size_t r = 0; r < plan.runs; ++r) {
            std::uint64_t seed = plan.shared_splits ? plan.seed + r : plan.seed + c * plan.runs + r;
            detail::RunOutcome outcome = detail::run_once(sliced, seed, table.train_count, plan.training);
            if (outcome.redraws > 0)
                table.notes.push_back(result.name + " run " + std::to_string(r) + ": redrew split " +
                                      std::to_string(outcome.redraws) + " time(s), used seed " +
                                      std::to_string(outcome.seed_used));
            result.per_run.push_back(outcome.metrics);
        }
        result.mean = detail::mean_of(result.per_run);
        result.stddev = detail::stddev_of(result.per_run, result.mean);
        table.combos.push_back(std::move(result));
    }
    return table;
}

inline std::string format_table_text(const ExperimentTable& table) {
    auto pad_right = [](std::string s, std::size_t w) {
        while (s.size() < w) s.push_back(' ');
        return s;
    };
    auto pad_left = [](std::string s, std::size_t w) {
        while (s.size() < w) s.insert(s.begin(), ' ');
        return s;
    };
    constexpr std::size_t kNameWidth = 18;
    constexpr std::size_t kColWidth = 12;
    static const char* kCols[] = {"Sensitivity", "Specificity", "Efficiency",
                                  "Precision",   "F1Score",     "Accuracy"};

    std::string out = "Classifier performance (mean of " + std::to_string(table.runs) + " runs, " +
                      std::to_string(table.corpus_size) + " pages, " +
                      std::to_string(table.train_count) + " train / " +
                      std::to_string(table.corpus_size - table.train_count) + " test, seed " +
                      std::to_string(table.seed) + ")\n\n";

    auto emit_block = [&](const char* heading, bool use_stddev) {
        out += heading;
        out += '\n';
        out += pad_right("Features", kNameWidth);
        for (const char* col : kCols) out += pad_left(col, kColWidth);
        out += '\n';
        for (const auto& combo : table.combos) {
            const MetricsReport& r = use_stddev ? combo.stddev : combo.mean;
            out += pad_right(combo.name, kNameWidth);
            out += pad_left(format_metric(r.sensitivity), kColWidth);
            out += pad_left(format_metric(r.specificity), kColWidth);
            out += pad_left(format_metric(r.efficiency), kColWidth);
            out += pad_left(format_metric(r.precision), kColWidth);
            out += pad_left(format_metric(r.f1), kColWidth);
            out += pad_left(format_metric(r.accuracy), kColWidth);
            out += '\n';
        }
    };
    emit_block("Means", false);
    out += '\n';
    emit_block("Standard deviations", true);

    if (!table.notes.empty()) {
        out += "\nNotes\n";
        for (const auto& note : table.notes) {
            out += "  " + note + "\n";
        }
    }
    return out;
}

inline nlohmann::json table_to_json(const ExperimentTable& table) {
    nlohmann::json combos = nlohmann::json::array();
    for (const auto& combo : table.combos) {
        nlohmann::json families = nlohmann::json::array();
        if (combo.selection.url) families.push_back("url");
        if (combo.selection.content) families.push_back("content");
        if (combo.selection.link) families.push_back("link");
        combos.push_back({{"name", combo.name},
                          {"families", families},
                          {"mean", metrics_to_json(combo.mean)},
                          {"stddev", metrics_to_json(combo.stddev)}});
    }
    return nlohmann::json{{"runs", table.runs},
                          {"corpus_pages", table.corpus_size},
                          {"train_count", table.train_count},
                          {"seed", table.seed},
                          {"shared_splits", table.shared_splits},
                          {"combos", combos},
                          {"notes", table.notes}};
}

// ---------------------------------------------------------------------------
// Synthetic corpus generator.
//
// Spam pages plant the documented signals: keyword-stuffed deep-subdomain
// URLs over plain http, repetitive high-compression bodies with call-to-action
// blocks and few stop words, obfuscated/ad scripts, anchor-stuffed link farms.
// Ham pages do the opposite. To keep single-family classifiers imperfect
// while the combined view stays separable, every twelfth page per class swaps
// exactly one family's traits with the opposite class (indices 5, 8, 11 mod
// 12 swap URL, content, links respectively), so each page keeps at least two
// honest families.
// ---------------------------------------------------------------------------

namespace synth {

inline const std::vector<std::string>& spam_words() {
    static const std::vector<std::string> kWords = {
        "cheap",    "pills",  "casino",   "poker", "loans",  "credit", "free",     "winner",
        "prize",    "bonus",  "cash",     "offer", "deal",   "discount", "sale",   "luxury",
        "replica",  "watches", "pharmacy", "meds", "weight", "miracle",  "cure",   "rich",
        "money",    "fast",   "guaranteed", "instant", "exclusive", "secret",
    };
    return kWords;
}

inline const std::vector<std::string>& ham_words() {
    static const std::vector<std::string> kWords = {
        "research", "library", "garden",     "recipe",  "museum",  "history",    "science",
        "weather",  "community", "school",   "travel",  "music",   "photography", "cooking",
        "hiking",   "astronomy", "literature", "economics", "health", "volunteer",
    };
    return kWords;
}

inline std::string pick(std::mt19937_64& gen, const std::vector<std::string>& pool) {
    return pool[static_cast<std::size_t>(rng::below(gen, pool.size()))];
}

inline std::string spam_url(std::mt19937_64& gen) {
    std::uint64_t variant = rng::below(gen, 6);
    std::string path = "/" + pick(gen, spam_words()) + "-" + pick(gen, spam_words()) + "-" +
                       pick(gen, spam_words()) + "-" + pick(gen, spam_words()) + "-online-now-" +
                       std::to_string(100 + rng::below(gen, 900)) + ".html";
    if (variant == 0) {
        // bare IP host
        std::string host = std::to_string(100 + rng::below(gen, 120)) + "." +
                           std::to_string(1 + rng::below(gen, 250)) + "." +
                           std::to_string(1 + rng::below(gen, 250)) + "." +
                           std::to_string(1 + rng::below(gen, 250));
        return "http://" + host + path;
    }
    static const std::vector<std::string> kTlds = {"biz", "info", "xyz", "top", "icu", "club", "online", "site"};
    std::string domain;
    if (variant == 1) {
        domain = pick(gen, spam_words()) + "zzz";  // consecutive-letter signal
    } else {
        domain = pick(gen, spam_words()) + "-" + pick(gen, spam_words()) + "-" + pick(gen, spam_words());
    }
    std::string sub1 = pick(gen, spam_words()) + std::to_string(10 + rng::below(gen, 90));
    std::string sub2 = pick(gen, spam_words()) + std::to_string(1 + rng::below(gen, 9));
    return "http://" + sub1 + "." + sub2 + "." + domain + "." + pick(gen, kTlds) + path;
}

inline std::string ham_url(std::mt19937_64& gen) {
    static const std::vector<std::string> kTails = {"society", "journal", "press", "guild", "institute", "archive"};
    static const std::vector<std::string> kTlds = {"org", "com", "net", "edu"};
    std::string topic = pick(gen, ham_words());
    std::string host = "www." + topic + pick(gen, kTails) + "." + pick(gen, kTlds);
    return "https://" + host + "/" + pick(gen, ham_words()) + "/" + pick(gen, ham_words()) + "-notes.html";
}

struct ContentParts {
    std::string title;
    std::string description;  // empty: no meta tag
    std::string body;         // headings, paragraphs, images, scripts
};

inline ContentParts spam_content(std::mt19937_64& gen) {
    ContentParts parts;
    for (int i = 0; i < 10; ++i) parts.title += (i ? " " : "") + pick(gen, spam_words());

    std::string phrase;
    for (int i = 0; i < 4; ++i) phrase += (i ? " " : "") + pick(gen, spam_words());
    std::string paragraph;
    std::size_t reps = 120 + rng::below(gen, 120);
    for (std::size_t i = 0; i < reps; ++i) {
        paragraph += phrase;
        paragraph += ' ';
    }
    std::string& body = parts.body;
    body += "<p>" + paragraph + "</p>\n";
    std::size_t cta_blocks = 2 + rng::below(gen, 4);
    for (std::size_t i = 0; i < cta_blocks; ++i)
        body += "<p>Buy now! Act now! Limited offer! Last chance!</p>\n";
    body += "<p>" + paragraph + "</p>\n";

    std::size_t banners = rng::below(gen, 3);
    for (std::size_t i = 0; i < banners; ++i)
        body += "<img src=\"banner" + std::to_string(rng::below(gen, 50)) + ".gif\">\n";

    if (rng::below(gen, 10) < 6)
        body += "<script>eval(unescape('%70%61%79%6c%6f%61%64'));</script>\n";
    std::size_t ads = 2 + rng::below(gen, 3);
    for (std::size_t i = 0; i < ads; ++i)
        body += "<script src=\"https://ads.doubleclick.net/tag" + std::to_string(rng::below(gen, 100)) +
                ".js\"></script>\n";
    if (rng::below(gen, 10) < 3)
        parts.description = pick(gen, spam_words()) + " " + pick(gen, spam_words());
    return parts;
}

/// Sentences are composed from short clause pools with fresh random words and
/// numbers so ham prose stays varied: long repeated literals would push the
/// deflate ratio into spam territory. The optional middle clause leans on
/// function words, keeping the stop-word share of ham text well above the
/// documented threshold without adding compressible boilerplate.
inline std::string ham_sentence(std::mt19937_64& gen) {
    const auto& w = ham_words();
    std::string subject;
    switch (rng::below(gen, 8)) {
        case 0: subject = "The " + pick(gen, w) + " team"; break;
        case 1: subject = "Our local " + pick(gen, w) + " circle"; break;
        case 2: subject = "A recent " + pick(gen, w) + " survey"; break;
        case 3: subject = "The " + pick(gen, w) + " archive"; break;
        case 4: subject = "One " + pick(gen, w) + " project"; break;
        case 5: subject = "A friend of the " + pick(gen, w) + " desk"; break;
        case 6: subject = "Each of our " + pick(gen, w) + " groups"; break;
        default: subject = "This " + pick(gen, w) + " journal"; break;
    }
    std::string verb;
    switch (rng::below(gen, 8)) {
        case 0: verb = "has shared"; break;
        case 1: verb = "will publish"; break;
        case 2: verb = "reviewed"; break;
        case 3: verb = "gathered notes on"; break;
        case 4: verb = "met to discuss"; break;
        case 5: verb = "is working through"; break;
        case 6: verb = "was asked about"; break;
        default: verb = "wrote about"; break;
    }
    std::string object;
    switch (rng::below(gen, 8)) {
        case 0: object = "a new " + pick(gen, w) + " exhibit"; break;
        case 1: object = "the spring " + pick(gen, w) + " program"; break;
        case 2: object = "several " + pick(gen, w) + " studies"; break;
        case 3: object = "an open " + pick(gen, w) + " workshop"; break;
        case 4: object = "its own " + pick(gen, w) + " newsletter"; break;
        case 5: object = "some of the " + pick(gen, w) + " talks"; break;
        case 6: object = "the next " + pick(gen, w) + " meeting"; break;
        default: object = "two short " + pick(gen, w) + " lectures"; break;
    }
    std::string sentence = subject + " " + verb + " " + object;
    if (rng::below(gen, 4) < 3) {
        std::string middle;
        switch (rng::below(gen, 9)) {
            case 0: middle = "which had been on our list for " + std::to_string(2 + rng::below(gen, 50)) + " weeks"; break;
            case 1: middle = "because it was the most useful of them all"; break;
            case 2: middle = "so that more of us could take part"; break;
            case 3: middle = "when most of those who came had questions"; break;
            case 4: middle = "and there were about " + std::to_string(5 + rng::below(gen, 200)) + " replies to it"; break;
            case 5: middle = "though only a few of them had seen it before"; break;
            case 6: middle = "while the rest of the group looked on"; break;
            case 7: middle = "after it had been put off once again"; break;
            default: middle = "if there is more to do than we had hoped"; break;
        }
        sentence += ", " + middle + ",";
    }
    std::string tail;
    switch (rng::below(gen, 8)) {
        case 0: tail = "earlier this year."; break;
        case 1: tail = "for members and visitors alike."; break;
        case 2: tail = "with help from nearby schools."; break;
        case 3: tail = "over the past " + std::to_string(2 + rng::below(gen, 40)) + " weeks."; break;
        case 4: tail = "and it was well received."; break;
        case 5: tail = "in room " + std::to_string(1 + rng::below(gen, 400)) + " of the main hall."; break;
        case 6: tail = "at the close of a long term."; break;
        default: tail = "despite such a busy season."; break;
    }
    return sentence + " " + tail;
}

inline ContentParts ham_content(std::mt19937_64& gen) {
    ContentParts parts;
    std::string topic = pick(gen, ham_words());
    parts.title = topic + " notes and guides";
    parts.description = ham_sentence(gen);

    std::string& body = parts.body;
    body += "<h1>" + topic + " overview</h1>\n";
    std::size_t sections = 2 + rng::below(gen, 3);
    for (std::size_t s = 0; s < sections; ++s) {
        body += "<h2>" + pick(gen, ham_words()) + " section</h2>\n<p>";
        std::size_t sentences = 4 + rng::below(gen, 5);
        for (std::size_t i = 0; i < sentences; ++i) {
            body += ham_sentence(gen);
            body += ' ';
        }
        body += "</p>\n";
    }
    std::size_t images = 2 + rng::below(gen, 5);
    for (std::size_t i = 0; i < images; ++i) {
        std::string word = pick(gen, ham_words());
        body += "<img src=\"/img/" + word + std::to_string(i) + ".jpg\" alt=\"" + word + " photo\">\n";
    }
    if (rng::below(gen, 10) < 4)
        body += "<iframe src=\"https://www.youtube.com/embed/clip" + std::to_string(rng::below(gen, 1000)) +
                "\"></iframe>\n";
    return parts;
}

inline std::string spam_links(std::mt19937_64& gen, const std::string& page_url) {
    std::string out;
    std::size_t self_links = 3 + rng::below(gen, 4);
    for (std::size_t i = 0; i < self_links; ++i) {
        std::string text = pick(gen, spam_words()) + " " + pick(gen, spam_words()) + " " +
                           pick(gen, spam_words()) + " now";
        out += "<a href=\"" + (i % 2 ? std::string("#top") : page_url) + "\">" + text + "</a>\n";
    }
    std::size_t farm_links = 15 + rng::below(gen, 16);
    for (std::size_t i = 0; i < farm_links; ++i) {
        std::string host = "farm" + std::to_string(rng::below(gen, 400)) + "-" + pick(gen, spam_words()) +
                           "-offers.biz";
        std::string text;
        std::size_t words = 5 + rng::below(gen, 4);
        for (std::size_t k = 0; k < words; ++k) text += (k ? " " : "") + pick(gen, spam_words());
        out += "<a href=\"http://" + host + "/p" + std::to_string(i) + ".html\">" + text + "</a>\n";
    }
    return out;
}

inline std::string ham_links(std::mt19937_64& gen) {
    std::string out;
    std::size_t internal = 3 + rng::below(gen, 5);
    for (std::size_t i = 0; i < internal; ++i) {
        std::string word = pick(gen, ham_words());
        out += "<a href=\"/articles/" + word + "-" + std::to_string(i) + ".html\">" + word + " guide</a>\n";
    }
    if (rng::below(gen, 10) < 4)
        out += "<a href=\"https://www.wikipedia.org/wiki/" + pick(gen, ham_words()) + "\">reference</a>\n";
    return out;
}

inline std::string assemble_page(const std::string& title, const std::string& description,
                                 const std::string& body, const std::string& links) {
    std::string html = "<html><head><title>" + title + "</title>\n";
    if (!description.empty()) html += "<meta name=\"description\" content=\"" + description + "\">\n";
    html += "</head><body>\n" + body + links + "</body></html>\n";
    return html;
}

inline std::mt19937_64 page_rng(std::uint64_t seed, std::uint64_t class_tag, std::uint64_t index) {
    return std::mt19937_64(seed ^ (class_tag * 0x9E3779B97F4A7C15ULL) ^
                           ((index + 1) * 0xBF58476D1CE4E5B9ULL));
}

}  // namespace synth

/// Deterministic labeled corpus with planted spam/ham signals. round(n *
/// spam_fraction) spam pages come first, ham pages after.
inline std::vector<PageRecord> generate_synthetic_corpus(std::size_t n, double spam_fraction,
                                                         std::uint64_t seed) {
    if (n < 10) throw TrainingError("synthetic corpus needs at least 10 pages");
    if (!(spam_fraction > 0.0 && spam_fraction < 1.0))
        throw TrainingError("spam_fraction must lie strictly between 0 and 1");
    auto spam_n = static_cast<std::size_t>(std::llround(static_cast<double>(n) * spam_fraction));
    if (spam_n == 0) spam_n = 1;
    if (spam_n >= n) spam_n = n - 1;

    std::vector<PageRecord> records;
    records.reserve(n);
    for (std::size_t cls = 0; cls < 2; ++cls) {
        bool spam_page = cls == 0;
        std::size_t count = spam_page ? spam_n : n - spam_n;
        for (std::size_t i = 0; i < count; ++i) {
            std::mt19937_64 gen = synth::page_rng(seed, spam_page ? 1 : 2, i);
            // One family per twelfth page swaps sides; the other two stay honest.
            bool swap_url = i % 12 == 5;
            bool swap_content = i % 12 == 8;
            bool swap_links = i % 12 == 11;

            bool url_spammy = spam_page != swap_url;
            bool content_spammy = spam_page != swap_content;
            bool links_spammy = spam_page != swap_links;

            std::string url = url_spammy ? synth::spam_url(gen) : synth::ham_url(gen);
            synth::ContentParts content =
                content_spammy ? synth::spam_content(gen) : synth::ham_content(gen);
            std::string links = links_spammy ? synth::spam_links(gen, url) : synth::ham_links(gen);

            PageRecord rec;
            rec.url = std::move(url);
            rec.html = synth::assemble_page(content.title, content.description, content.body, links);
            rec.label = spam_page ? Label::Spam : Label::Ham;
            records.push_back(std::move(rec));
        }
    }
    return records;
}

}  // namespace webspam
