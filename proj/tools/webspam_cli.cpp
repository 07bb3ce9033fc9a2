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

// Command-line driver. Exit codes: 0 success (score: ham), 10 score: spam,
// 2 file/corpus errors, 3 single-class training data, 4 feature mismatch,
// 5 fetch failures.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "webspam/webspam.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSpam = 10;
constexpr int kExitFile = 2;
constexpr int kExitSingleClass = 3;
constexpr int kExitFeatureMismatch = 4;
constexpr int kExitFetch = 5;

struct CommonFlags {
    std::uint64_t seed = 0;
    std::string lexicon_dir;
    std::string suffix_file;
    bool quiet = false;
};

webspam::LexiconSet load_lexicons(const CommonFlags& common) {
    if (common.lexicon_dir.empty()) return webspam::LexiconSet::builtin();
    return webspam::LexiconSet::from_dir(common.lexicon_dir);
}

webspam::SuffixTable load_suffixes(const CommonFlags& common) {
    if (common.suffix_file.empty()) return webspam::SuffixTable::builtin();
    return webspam::SuffixTable::from_file(common.suffix_file);
}

webspam::FamilySelection parse_families(const std::string& spec) {
    webspam::FamilySelection sel;
    std::stringstream ss(spec);
    std::string name;
    while (std::getline(ss, name, ',')) {
        std::string trimmed(webspam::text::trim(name));
        if (trimmed == "url") sel.url = true;
        else if (trimmed == "content") sel.content = true;
        else if (trimmed == "link") sel.link = true;
        else if (!trimmed.empty())
            throw CLI::ValidationError("--families", "unknown family '" + trimmed + "'");
    }
    if (!sel.any()) throw CLI::ValidationError("--families", "no families selected");
    return sel;
}

void report_corpus_errors(const webspam::Corpus& corpus, bool quiet) {
    if (quiet) return;
    for (const auto& err : corpus.errors)
        std::cerr << "corpus line " << err.line << ": " << err.message << "\n";
}

int cmd_extract(const CommonFlags& common, const std::string& corpus_path, const std::string& families,
                const std::string& out_path) {
    webspam::FamilySelection sel = parse_families(families);
    webspam::LexiconSet lex = load_lexicons(common);
    webspam::SuffixTable suffixes = load_suffixes(common);

    webspam::Corpus corpus = webspam::load_corpus(corpus_path);
    report_corpus_errors(corpus, common.quiet);

    webspam::FeatureMatrix full = webspam::extract_matrix(corpus.records, lex, suffixes);
    webspam::FeatureMatrix out = webspam::select_columns(full, webspam::selected_indices(sel));
    webspam::write_matrix_csv(out, out_path);
    if (!common.quiet)
        std::cout << out.height() << " rows, " << out.width() << " feature columns -> " << out_path
                  << "\n";
    return kExitOk;
}

int cmd_train(const CommonFlags& common, const std::string& matrix_path, const std::string& model_path,
              std::size_t epochs, std::size_t hidden, double alpha) {
    webspam::FeatureMatrix matrix = webspam::read_matrix_csv(matrix_path);

    webspam::TrainingConfig config;
    config.epochs = epochs;
    config.hidden_dim = hidden;
    config.alpha = alpha;
    config.seed = common.seed;

    webspam::MlpModel bounds;
    bounds.input_dim = matrix.width();
    webspam::fit_bounds(bounds, matrix.rows);
    std::vector<std::vector<double>> normalized;
    normalized.reserve(matrix.height());
    for (const auto& row : matrix.rows) normalized.push_back(webspam::normalize(row, bounds));

    webspam::TrainResult result = webspam::train_rprop(normalized, matrix.labels, config);
    result.model.norm_min = bounds.norm_min;
    result.model.norm_max = bounds.norm_max;
    result.model.feature_names = matrix.feature_names;
    webspam::save_model(result.model, model_path);
    if (!common.quiet)
        std::cout << "trained " << matrix.height() << " rows x " << matrix.width() << " features, final SSE "
                  << result.sse_trace.back() << " -> " << model_path << "\n";
    return kExitOk;
}

/// Reorder matrix columns to the model's feature order, or report the
/// symmetric difference of the two name sets.
webspam::FeatureMatrix align_columns(const webspam::MlpModel& model, const webspam::FeatureMatrix& matrix) {
    std::set<std::string> model_names(model.feature_names.begin(), model.feature_names.end());
    std::set<std::string> matrix_names(matrix.feature_names.begin(), matrix.feature_names.end());
    if (model_names != matrix_names) {
        std::string missing, extra;
        for (const auto& n : model_names)
            if (!matrix_names.count(n)) missing += " " + n;
        for (const auto& n : matrix_names)
            if (!model_names.count(n)) extra += " " + n;
        std::string message = "feature names differ between model and matrix;";
        if (!missing.empty()) message += " matrix lacks:" + missing + ";";
        if (!extra.empty()) message += " matrix adds:" + extra + ";";
        throw webspam::DimensionError(model.feature_names.size(), matrix.feature_names.size(), message);
    }
    std::vector<std::size_t> cols;
    cols.reserve(model.feature_names.size());
    for (const auto& name : model.feature_names) {
        for (std::size_t c = 0; c < matrix.feature_names.size(); ++c) {
            if (matrix.feature_names[c] == name) {
                cols.push_back(c);
                break;
            }
        }
    }
    return webspam::select_columns(matrix, cols);
}

int cmd_evaluate(const CommonFlags& common, const std::string& model_path, const std::string& matrix_path) {
    webspam::MlpModel model = webspam::load_model(model_path);
    webspam::FeatureMatrix matrix = align_columns(model, webspam::read_matrix_csv(matrix_path));

    std::vector<std::pair<webspam::Label, webspam::Label>> pairs;
    pairs.reserve(matrix.height());
    for (std::size_t r = 0; r < matrix.height(); ++r) {
        webspam::Verdict verdict = webspam::classify(model, matrix.rows[r]);
        pairs.emplace_back(verdict.label,
                           matrix.labels[r] ? webspam::Label::Spam : webspam::Label::Ham);
    }
    webspam::MetricsReport report = webspam::report(webspam::confusion(pairs));
    std::cout << webspam::metrics_to_text(report);
    if (report.degenerate && !common.quiet)
        std::cerr << "warning: some ratios were 0/0 and reported as 0\n";
    return kExitOk;
}

int cmd_experiment(const CommonFlags& common, const std::string& corpus_path, std::size_t runs,
                   std::size_t train_count, bool shared_splits, std::size_t epochs, std::size_t hidden,
                   double alpha, const std::string& out_text, const std::string& out_json) {
    webspam::LexiconSet lex = load_lexicons(common);
    webspam::SuffixTable suffixes = load_suffixes(common);
    webspam::Corpus corpus = webspam::load_corpus(corpus_path);
    report_corpus_errors(corpus, common.quiet);

    webspam::ExperimentPlan plan;
    plan.runs = runs;
    plan.train_count = train_count;
    plan.seed = common.seed;
    plan.shared_splits = shared_splits;
    plan.training.epochs = epochs;
    plan.training.hidden_dim = hidden;
    plan.training.alpha = alpha;

    webspam::ExperimentTable table = webspam::run_experiment(corpus.records, plan, lex, suffixes);
    std::string text = webspam::format_table_text(table);
    std::cout << text;
    if (!out_text.empty()) {
        std::ofstream out(out_text, std::ios::binary);
        if (!out) throw webspam::IoError("cannot write table file: " + out_text);
        out << text;
    }
    if (!out_json.empty()) {
        std::ofstream out(out_json, std::ios::binary);
        if (!out) throw webspam::IoError("cannot write JSON file: " + out_json);
        out << webspam::table_to_json(table).dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_score(const CommonFlags& common, const std::string& model_path, const std::string& url,
              const std::string& html_path, const webspam::FetchOptions& fetch_opts) {
    webspam::MlpModel model = webspam::load_model(model_path);
    webspam::LexiconSet lex = load_lexicons(common);
    webspam::SuffixTable suffixes = load_suffixes(common);

    std::string page_url;
    std::string html;
    if (!url.empty()) {
        webspam::FetchResult fetched = webspam::fetch(url, fetch_opts);
        page_url = fetched.url;
        html = std::move(fetched.html);
        if (!common.quiet)
            std::cout << "fetched " << page_url << " (HTTP " << fetched.status << ", " << html.size()
                      << " bytes, " << fetched.elapsed_ms << " ms)\n";
    } else {
        std::ifstream in(html_path, std::ios::binary);
        if (!in) throw webspam::IoError("cannot open HTML file: " + html_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        html = buf.str();
        page_url = "http://local.invalid/" + html_path;
    }

    webspam::FeatureVector vec = webspam::extract_features(page_url, html, lex, suffixes);

    // Slice the canonical vector down to the model's features.
    const auto& names = webspam::FeatureVector::names();
    std::vector<double> input;
    std::string unknown;
    input.reserve(model.feature_names.size());
    for (const auto& name : model.feature_names) {
        bool found = false;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == name) {
                input.push_back(vec.values[i]);
                found = true;
                break;
            }
        }
        if (!found) unknown += " " + name;
    }
    if (!unknown.empty())
        throw webspam::DimensionError(model.feature_names.size(), input.size(),
                                      "model expects unknown features:" + unknown);

    webspam::Verdict verdict = webspam::classify(model, input);
    std::cout << (verdict.label == webspam::Label::Spam ? "spam" : "ham") << " score "
              << webspam::format_metric(verdict.score) << "\n";

    if (!common.quiet) {
        const auto& families = webspam::FeatureVector::families();
        auto print_family = [&](webspam::Family family, const char* title) {
            std::cout << title << "\n";
            for (std::size_t i = 0; i < names.size(); ++i)
                if (families[i] == family)
                    std::printf("  %-28s %g\n", std::string(names[i]).c_str(), vec.values[i]);
        };
        print_family(webspam::Family::URL, "url features");
        print_family(webspam::Family::CONTENT, "content features");
        print_family(webspam::Family::LINK, "link features");
    }
    return verdict.label == webspam::Label::Spam ? kExitSpam : kExitOk;
}

int cmd_synth(const CommonFlags& common, std::size_t n, double spam_fraction, const std::string& out_path) {
    std::vector<webspam::PageRecord> records =
        webspam::generate_synthetic_corpus(n, spam_fraction, common.seed);
    webspam::save_corpus(records, out_path);
    if (!common.quiet) {
        std::size_t spam = 0;
        for (const auto& r : records)
            if (r.label == webspam::Label::Spam) ++spam;
        std::cout << records.size() << " pages (" << spam << " spam) -> " << out_path << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-cost web page spam classifier"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonFlags common;
    app.add_option("--seed", common.seed, "base RNG seed")->capture_default_str();
    app.add_option("--lexicon-dir", common.lexicon_dir, "directory overriding embedded lexicons");
    app.add_option("--suffix-file", common.suffix_file, "file overriding the embedded suffix table");
    app.add_flag("--quiet", common.quiet, "suppress informational output");

    // extract
    auto* extract = app.add_subcommand("extract", "corpus -> feature matrix CSV");
    std::string ex_corpus, ex_out, ex_families = "url,content,link";
    extract->add_option("corpus", ex_corpus, "corpus JSONL path")->required();
    extract->add_option("--out", ex_out, "output CSV path")->required();
    extract->add_option("--families", ex_families, "comma list of url,content,link")
        ->capture_default_str();

    // train
    auto* train = app.add_subcommand("train", "feature matrix -> model file");
    std::string tr_matrix, tr_out;
    std::size_t tr_epochs = 200, tr_hidden = 10;
    double tr_alpha = 2.0;
    train->add_option("matrix", tr_matrix, "feature matrix CSV path")->required();
    train->add_option("--out", tr_out, "output model path")->required();
    train->add_option("--epochs", tr_epochs, "training iterations")->capture_default_str();
    train->add_option("--hidden", tr_hidden, "hidden neurons")->capture_default_str();
    train->add_option("--alpha", tr_alpha, "sigmoid steepness")->capture_default_str();

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "score a matrix against a model");
    std::string ev_model, ev_matrix;
    evaluate->add_option("--model", ev_model, "model file")->required();
    evaluate->add_option("--matrix", ev_matrix, "feature matrix CSV")->required();

    // experiment
    auto* experiment = app.add_subcommand("experiment", "full multi-run family-combination table");
    std::string xp_corpus, xp_out, xp_json;
    std::size_t xp_runs = 20, xp_train_count = 0, xp_epochs = 200, xp_hidden = 10;
    double xp_alpha = 2.0;
    bool xp_shared = false;
    experiment->add_option("corpus", xp_corpus, "corpus JSONL path")->required();
    experiment->add_option("--runs", xp_runs, "number of repeated runs")->capture_default_str();
    experiment->add_option("--train-count", xp_train_count, "training rows (0 = auto)")
        ->capture_default_str();
    experiment->add_flag("--shared-splits", xp_shared, "reuse one split per run across combos");
    experiment->add_option("--epochs", xp_epochs, "training iterations")->capture_default_str();
    experiment->add_option("--hidden", xp_hidden, "hidden neurons")->capture_default_str();
    experiment->add_option("--alpha", xp_alpha, "sigmoid steepness")->capture_default_str();
    experiment->add_option("--out", xp_out, "write the text table here too");
    experiment->add_option("--json", xp_json, "write the JSON table here");

    // score
    auto* score = app.add_subcommand("score", "classify one page (exit 0 ham / 10 spam)");
    std::string sc_model, sc_url, sc_html;
    webspam::FetchOptions fetch_opts;
    bool sc_insecure = false;
    score->add_option("--model", sc_model, "model file")->required();
    auto* sc_url_opt = score->add_option("--url", sc_url, "fetch and score this URL");
    auto* sc_html_opt = score->add_option("--html", sc_html, "score this local HTML file");
    sc_url_opt->excludes(sc_html_opt);
    score->add_option("--timeout-ms", fetch_opts.timeout_ms, "fetch timeout")->capture_default_str();
    score->add_option("--max-redirects", fetch_opts.max_redirects, "redirect limit")
        ->capture_default_str();
    score->add_option("--max-bytes", fetch_opts.max_bytes, "body size cap")->capture_default_str();
    score->add_option("--user-agent", fetch_opts.user_agent, "User-Agent header")
        ->capture_default_str();
    score->add_flag("--insecure", sc_insecure, "skip TLS certificate verification");

    // synth
    auto* synth = app.add_subcommand("synth", "generate a labeled synthetic corpus");
    std::string sy_out;
    std::size_t sy_n = 370;
    double sy_fraction = 0.3;
    synth->add_option("--n", sy_n, "page count")->capture_default_str();
    synth->add_option("--spam-fraction", sy_fraction, "spam share")->capture_default_str();
    synth->add_option("--out", sy_out, "output corpus path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*extract) return cmd_extract(common, ex_corpus, ex_families, ex_out);
        if (*train) return cmd_train(common, tr_matrix, tr_out, tr_epochs, tr_hidden, tr_alpha);
        if (*evaluate) return cmd_evaluate(common, ev_model, ev_matrix);
        if (*experiment)
            return cmd_experiment(common, xp_corpus, xp_runs, xp_train_count, xp_shared, xp_epochs,
                                  xp_hidden, xp_alpha, xp_out, xp_json);
        if (*score) {
            if (sc_url.empty() == sc_html.empty()) {
                std::cerr << "score: exactly one of --url/--html is required\n";
                return kExitFile;
            }
            fetch_opts.verify_tls = !sc_insecure;
            return cmd_score(common, sc_model, sc_url, sc_html, fetch_opts);
        }
        if (*synth) return cmd_synth(common, sy_n, sy_fraction, sy_out);
    } catch (const webspam::FetchError& e) {
        std::cerr << "fetch error: " << e.what() << "\n";
        return kExitFetch;
    } catch (const webspam::DimensionError& e) {
        std::cerr << "feature mismatch: " << e.what() << "\n";
        return kExitFeatureMismatch;
    } catch (const webspam::TrainingError& e) {
        std::cerr << "training error: " << e.what() << "\n";
        return kExitSingleClass;
    } catch (const webspam::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFile;
    } catch (const webspam::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFile;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFile;
    }
    return kExitOk;
}
