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
#include <fstream>
#include <string>
#include <vector>

#include <webspam/net.hpp>
#include <webspam/rng.hpp>

using Catch::Matchers::WithinAbs;
using webspam::MlpModel;
using webspam::TrainingConfig;

namespace {

// XOR over bipolar inputs: the canonical not-linearly-separable set.
const std::vector<std::vector<double>> kXorRows = {
    {-1.0, -1.0}, {-1.0, 1.0}, {1.0, -1.0}, {1.0, 1.0}};
const std::vector<int> kXorLabels = {0, 1, 1, 0};

MlpModel golden_model() {
    MlpModel m;
    m.input_dim = 3;
    m.hidden_dim = 2;
    m.hidden_weights = {0.3, -0.7, 0.15, -0.45, 0.2, 0.9};
    m.hidden_bias = {0.1, -0.2};
    m.output_weights = {0.8, -0.6};
    m.output_bias = 0.05;
    m.alpha = 2.0;
    m.norm_min.assign(3, -1.0);
    m.norm_max.assign(3, 1.0);
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Activation
// ---------------------------------------------------------------------------

TEST_CASE("bipolar sigmoid equals tanh(alpha x / 2) on a dense grid") {
    for (double alpha : {0.5, 1.0, 2.0, 3.7}) {
        for (int i = 0; i <= 1000; ++i) {
            const double x = -20.0 + 40.0 * i / 1000.0;
            INFO("alpha=" << alpha << " x=" << x);
            REQUIRE_THAT(webspam::bipolar_sigmoid(x, alpha),
                         WithinAbs(std::tanh(alpha * x / 2.0), 1e-12));
        }
    }
    CHECK(webspam::bipolar_sigmoid(0.0, 2.0) == 0.0);
}

TEST_CASE("bipolar sigmoid saturates cleanly at extreme inputs") {
    CHECK(webspam::bipolar_sigmoid(500.0, 2.0) == 1.0);
    CHECK(webspam::bipolar_sigmoid(-500.0, 2.0) == -1.0);
    CHECK(std::isfinite(webspam::bipolar_sigmoid(1e308, 2.0)));
    CHECK(std::isfinite(webspam::bipolar_sigmoid(-1e308, 2.0)));
}

TEST_CASE("activation self-composition matches the frozen reference") {
    const double f1 = webspam::bipolar_sigmoid(1.0, 2.0);
    CHECK_THAT(f1, WithinAbs(0.7615941559557649, 1e-15));
    CHECK_THAT(webspam::bipolar_sigmoid(f1, 2.0), WithinAbs(0.6420149920119997, 1e-15));
}

TEST_CASE("derivative identity holds against finite differences") {
    for (double alpha : {1.0, 2.0}) {
        for (double x : {0.0, 0.3, -1.7, 2.5}) {
            const double a = webspam::bipolar_sigmoid(x, alpha);
            const double analytic = webspam::bipolar_sigmoid_derivative(a, alpha);
            const double h = 1e-6;
            const double fd = (webspam::bipolar_sigmoid(x + h, alpha) -
                               webspam::bipolar_sigmoid(x - h, alpha)) /
                              (2.0 * h);
            CHECK_THAT(analytic, WithinAbs(fd, 1e-8));
        }
    }
    // Frozen spot values at alpha = 2.
    CHECK_THAT(webspam::bipolar_sigmoid_derivative(webspam::bipolar_sigmoid(0.3, 2.0), 2.0),
               WithinAbs(0.9151369618266292, 1e-14));
    CHECK_THAT(webspam::bipolar_sigmoid_derivative(webspam::bipolar_sigmoid(-1.7, 2.0), 2.0),
               WithinAbs(0.1250098706334466, 1e-14));
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

TEST_CASE("fit_bounds finds per-column extremes") {
    MlpModel m;
    m.input_dim = 3;
    webspam::fit_bounds(m, {{1.0, -2.0, 5.0}, {3.0, 0.0, 5.0}, {2.0, -1.0, 5.0}});
    CHECK(m.norm_min == std::vector<double>{1.0, -2.0, 5.0});
    CHECK(m.norm_max == std::vector<double>{3.0, 0.0, 5.0});
    CHECK_THROWS_AS(webspam::fit_bounds(m, {}), webspam::TrainingError);
    CHECK_THROWS_AS(webspam::fit_bounds(m, {{1.0, 2.0, 3.0}, {1.0, 2.0}}),
                    webspam::DimensionError);
}

TEST_CASE("normalize maps to [-1,1], zeroes constant columns, clamps outliers") {
    MlpModel m;
    m.input_dim = 3;
    m.norm_min = {0.0, 5.0, -2.0};
    m.norm_max = {10.0, 5.0, 2.0};
    const auto mid = webspam::normalize({5.0, 123.0, 0.0}, m);
    CHECK_THAT(mid[0], WithinAbs(0.0, 1e-15));
    CHECK(mid[1] == 0.0);  // constant column ignores the value entirely
    CHECK_THAT(mid[2], WithinAbs(0.0, 1e-15));

    const auto lohi = webspam::normalize({0.0, 5.0, 2.0}, m);
    CHECK(lohi[0] == -1.0);
    CHECK(lohi[2] == 1.0);

    // Values outside the fitted range clamp instead of escaping [-1, 1].
    const auto outlier = webspam::normalize({-100.0, 5.0, 100.0}, m);
    CHECK(outlier[0] == -1.0);
    CHECK(outlier[2] == 1.0);

    CHECK_THROWS_AS(webspam::normalize({1.0}, m), webspam::DimensionError);
}

// ---------------------------------------------------------------------------
// Forward pass and gradient
// ---------------------------------------------------------------------------

TEST_CASE("forward pass reproduces the frozen golden fixture") {
    const MlpModel m = golden_model();
    const double y = webspam::forward(m, {0.25, -0.5, 0.75});
    CHECK_THAT(y, WithinAbs(0.3333359342280168, 1e-12));
    CHECK_THROWS_AS(webspam::forward(m, {0.25, -0.5}), webspam::DimensionError);
}

TEST_CASE("analytic gradient matches central differences on random nets") {
    std::mt19937_64 gen(31337);
    for (int trial = 0; trial < 25; ++trial) {
        MlpModel m;
        m.input_dim = 1 + webspam::rng::below(gen, 4);
        m.hidden_dim = 1 + webspam::rng::below(gen, 4);
        m.alpha = 2.0;
        auto rnd = [&](std::size_t n) {
            std::vector<double> v(n);
            for (double& x : v) x = webspam::rng::uniform(gen, -1.0, 1.0);
            return v;
        };
        m.hidden_weights = rnd(m.hidden_dim * m.input_dim);
        m.hidden_bias = rnd(m.hidden_dim);
        m.output_weights = rnd(m.hidden_dim);
        m.output_bias = webspam::rng::uniform(gen, -1.0, 1.0);
        m.norm_min.assign(m.input_dim, -1.0);
        m.norm_max.assign(m.input_dim, 1.0);

        const std::size_t batch = 1 + webspam::rng::below(gen, 5);
        std::vector<std::vector<double>> inputs;
        std::vector<double> targets;
        for (std::size_t b = 0; b < batch; ++b) {
            inputs.push_back(rnd(m.input_dim));
            targets.push_back(webspam::rng::uniform(gen, -0.9, 0.9));
        }

        const auto sse = [&](const MlpModel& model) {
            double total = 0.0;
            for (std::size_t r = 0; r < inputs.size(); ++r) {
                const double diff = targets[r] - webspam::forward(model, inputs[r]);
                total += 0.5 * diff * diff;
            }
            return total;
        };
        const auto check_block = [&](std::vector<double>& weights,
                                     const std::vector<double>& analytic) {
            const double h = 1e-6;
            for (std::size_t i = 0; i < weights.size(); ++i) {
                const double keep = weights[i];
                weights[i] = keep + h;
                const double hi = sse(m);
                weights[i] = keep - h;
                const double lo = sse(m);
                weights[i] = keep;
                const double fd = (hi - lo) / (2.0 * h);
                INFO("trial " << trial << " weight " << i);
                REQUIRE_THAT(analytic[i], WithinAbs(fd, 1e-6 + 1e-4 * std::fabs(fd)));
            }
        };

        webspam::Gradient g = webspam::sse_gradient(m, inputs, targets);
        check_block(m.hidden_weights, g.hidden_weights);
        check_block(m.hidden_bias, g.hidden_bias);
        check_block(m.output_weights, g.output_weights);
        std::vector<double> ob{m.output_bias};
        const double keep = m.output_bias;
        const double h = 1e-6;
        m.output_bias = keep + h;
        const double hi = sse(m);
        m.output_bias = keep - h;
        const double lo = sse(m);
        m.output_bias = keep;
        REQUIRE_THAT(g.output_bias, WithinAbs((hi - lo) / (2.0 * h), 1e-6));
    }
}

TEST_CASE("zero model maps every input to zero through both layers") {
    MlpModel m;
    m.input_dim = 3;
    m.hidden_dim = 4;
    m.hidden_weights.assign(12, 0.0);
    m.hidden_bias.assign(4, 0.0);
    m.output_weights.assign(4, 0.0);
    m.norm_min.assign(3, -1.0);
    m.norm_max.assign(3, 1.0);
    CHECK(webspam::forward(m, {0.9, -0.3, 0.5}) == 0.0);

    // Outputs equal the all-zero targets, so the gradient vanishes.
    webspam::Gradient g =
        webspam::sse_gradient(m, {{0.9, -0.3, 0.5}, {-1.0, 1.0, 0.0}}, {0.0, 0.0});
    for (double v : g.hidden_weights) CHECK(v == 0.0);
    for (double v : g.hidden_bias) CHECK(v == 0.0);
    for (double v : g.output_weights) CHECK(v == 0.0);
    CHECK(g.output_bias == 0.0);

    // Symmetric targets around the zero output cancel in the bias gradient.
    webspam::Gradient s =
        webspam::sse_gradient(m, {{0.9, -0.3, 0.5}, {0.9, -0.3, 0.5}}, {0.7, -0.7});
    CHECK_THAT(s.output_bias, WithinAbs(0.0, 1e-15));
}

TEST_CASE("sse_gradient rejects bad batches") {
    const MlpModel m = golden_model();
    CHECK_THROWS_AS(webspam::sse_gradient(m, {}, {}), webspam::TrainingError);
    CHECK_THROWS_AS(webspam::sse_gradient(m, {{1.0, 2.0, 3.0}}, {0.5, 0.5}),
                    webspam::TrainingError);
    CHECK_THROWS_AS(webspam::sse_gradient(m, {{1.0}}, {0.5}), webspam::DimensionError);
}

// ---------------------------------------------------------------------------
// RProp update rule
// ---------------------------------------------------------------------------

TEST_CASE("rprop grows steps on agreement and caps at delta_max") {
    webspam::RpropConfig cfg;
    std::vector<double> w{0.0}, prev{1.0}, step{0.1};
    std::vector<double> grad{2.0};  // same sign as prev
    webspam::rprop_update(std::span(w), std::span(grad), std::span(prev), std::span(step), cfg);
    CHECK_THAT(step[0], WithinAbs(0.12, 1e-15));
    CHECK_THAT(w[0], WithinAbs(-0.12, 1e-15));  // moves against the gradient
    CHECK(prev[0] == 2.0);

    // Repeated agreement saturates at delta_max.
    for (int i = 0; i < 60; ++i)
        webspam::rprop_update(std::span(w), std::span(grad), std::span(prev), std::span(step),
                              cfg);
    CHECK(step[0] == cfg.delta_max);
}

TEST_CASE("rprop shrinks on sign flip, holds the weight, floors at delta_min") {
    webspam::RpropConfig cfg;
    std::vector<double> w{0.5}, prev{1.0}, step{0.1};
    std::vector<double> grad{-3.0};  // sign flip
    webspam::rprop_update(std::span(w), std::span(grad), std::span(prev), std::span(step), cfg);
    CHECK_THAT(step[0], WithinAbs(0.05, 1e-15));
    CHECK(w[0] == 0.5);    // no move on a flip
    CHECK(prev[0] == 0.0);  // stored gradient zeroed

    // Alternate signs forever: the step never drops below delta_min.
    for (int i = 0; i < 100; ++i) {
        std::vector<double> g{i % 2 ? 3.0 : -3.0};
        prev[0] = i % 2 ? -1.0 : 1.0;
        webspam::rprop_update(std::span(w), std::span(g), std::span(prev), std::span(step), cfg);
    }
    CHECK(step[0] >= cfg.delta_min);
}

TEST_CASE("rprop with zero history moves by the current step") {
    webspam::RpropConfig cfg;
    std::vector<double> w{1.0}, prev{0.0}, step{0.1};
    std::vector<double> grad{5.0};
    webspam::rprop_update(std::span(w), std::span(grad), std::span(prev), std::span(step), cfg);
    CHECK_THAT(w[0], WithinAbs(0.9, 1e-15));
    CHECK(prev[0] == 5.0);

    // Zero gradient: nothing moves, history resets to zero.
    std::vector<double> zero{0.0};
    webspam::rprop_update(std::span(w), std::span(zero), std::span(prev), std::span(step), cfg);
    CHECK_THAT(w[0], WithinAbs(0.9, 1e-15));
    CHECK(prev[0] == 0.0);
}

// ---------------------------------------------------------------------------
// Training
// ---------------------------------------------------------------------------

TEST_CASE("training solves XOR, which no linear classifier can") {
    TrainingConfig cfg;
    cfg.hidden_dim = 10;
    cfg.seed = 42;
    cfg.epochs = 200;
    const webspam::TrainResult res = webspam::train_rprop(kXorRows, kXorLabels, cfg);

    REQUIRE(res.sse_trace.size() == 200);
    CHECK(res.sse_trace.back() < res.sse_trace.front());
    CHECK(res.sse_trace.back() < 0.05);

    for (std::size_t i = 0; i < kXorRows.size(); ++i) {
        const double y = webspam::forward(res.model, kXorRows[i]);
        INFO("row " << i << " score " << y);
        CHECK((y >= 0.0) == (kXorLabels[i] == 1));
    }

    // A single hidden unit gives y = f(v * f(w.x + b) + c), monotone in the
    // linear score w.x + b, so it draws one line. Brute-force the weight grid
    // to confirm that no such model gets all four corners right.
    std::size_t best = 0;
    const double grid[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    for (double w1 : grid)
        for (double w2 : grid)
            for (double b : grid)
                for (double v : grid)
                    for (double c : grid) {
                        MlpModel m;
                        m.input_dim = 2;
                        m.hidden_dim = 1;
                        m.hidden_weights = {w1, w2};
                        m.hidden_bias = {b};
                        m.output_weights = {v};
                        m.output_bias = c;
                        m.norm_min.assign(2, -1.0);
                        m.norm_max.assign(2, 1.0);
                        std::size_t correct = 0;
                        for (std::size_t i = 0; i < kXorRows.size(); ++i) {
                            const double out = webspam::forward(m, kXorRows[i]);
                            if ((out >= 0.0) == (kXorLabels[i] == 1)) ++correct;
                        }
                        best = std::max(best, correct);
                    }
    CHECK(best < 4);
}

TEST_CASE("training descends on linearly separable blobs") {
    std::mt19937_64 gen(5);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 20; ++i) {
        const double jx = webspam::rng::uniform(gen, -0.2, 0.2);
        const double jy = webspam::rng::uniform(gen, -0.2, 0.2);
        rows.push_back({-0.5 + jx, -0.5 + jy});
        labels.push_back(0);
        rows.push_back({0.5 + jx, 0.5 + jy});
        labels.push_back(1);
    }
    TrainingConfig cfg;
    cfg.epochs = 60;
    cfg.seed = 11;
    const auto res = webspam::train_rprop(rows, labels, cfg);
    CHECK(res.sse_trace.back() < res.sse_trace.front());
    std::size_t correct = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if ((webspam::forward(res.model, rows[i]) >= 0.0) == (labels[i] == 1)) ++correct;
    CHECK(correct == rows.size());
}

TEST_CASE("training is deterministic for a fixed seed") {
    TrainingConfig cfg;
    cfg.hidden_dim = 6;
    cfg.seed = 7;
    cfg.epochs = 50;
    const auto a = webspam::train_rprop(kXorRows, kXorLabels, cfg);
    const auto b = webspam::train_rprop(kXorRows, kXorLabels, cfg);
    CHECK(a.model.hidden_weights == b.model.hidden_weights);
    CHECK(a.model.hidden_bias == b.model.hidden_bias);
    CHECK(a.model.output_weights == b.model.output_weights);
    CHECK(a.model.output_bias == b.model.output_bias);
    CHECK(a.sse_trace == b.sse_trace);

    cfg.seed = 8;
    const auto c = webspam::train_rprop(kXorRows, kXorLabels, cfg);
    CHECK(a.model.hidden_weights != c.model.hidden_weights);
}

TEST_CASE("training rejects degenerate inputs") {
    TrainingConfig cfg;
    CHECK_THROWS_AS(webspam::train_rprop({}, {}, cfg), webspam::TrainingError);
    CHECK_THROWS_AS(webspam::train_rprop({{1.0}, {2.0}}, {1, 1}, cfg),
                    webspam::TrainingError);  // single class
    CHECK_THROWS_AS(webspam::train_rprop({{1.0}, {2.0}}, {0}, cfg), webspam::TrainingError);
    cfg.epochs = 0;
    CHECK_THROWS_AS(webspam::train_rprop({{1.0}, {2.0}}, {1, 0}, cfg), webspam::TrainingError);
}

TEST_CASE("classify applies bounds and breaks threshold ties toward spam") {
    MlpModel m = golden_model();
    m.threshold = 0.0;
    const auto v = webspam::classify(m, {0.25, -0.5, 0.75});
    CHECK(v.label == webspam::Label::Spam);  // golden output is positive
    CHECK_THAT(v.score, WithinAbs(0.3333359342280168, 1e-12));

    // A threshold above the score flips the verdict.
    m.threshold = 0.5;
    CHECK(webspam::classify(m, {0.25, -0.5, 0.75}).label == webspam::Label::Ham);
    // Exactly at threshold: spam.
    m.threshold = webspam::classify(golden_model(), {0.25, -0.5, 0.75}).score;
    CHECK(webspam::classify(m, {0.25, -0.5, 0.75}).label == webspam::Label::Spam);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

TEST_CASE("model json round trip preserves behavior bit for bit") {
    TrainingConfig cfg;
    cfg.hidden_dim = 5;
    cfg.seed = 99;
    cfg.epochs = 40;
    MlpModel trained = webspam::train_rprop(kXorRows, kXorLabels, cfg).model;
    trained.feature_names = {"x1", "x2"};
    trained.norm_min = {-2.0, -3.0};
    trained.norm_max = {2.0, 3.0};

    const std::string path = "round_trip_model.json";
    webspam::save_model(trained, path);
    const MlpModel loaded = webspam::load_model(path);
    std::remove(path.c_str());

    CHECK(loaded.input_dim == trained.input_dim);
    CHECK(loaded.hidden_weights == trained.hidden_weights);
    CHECK(loaded.hidden_bias == trained.hidden_bias);
    CHECK(loaded.output_weights == trained.output_weights);
    CHECK(loaded.output_bias == trained.output_bias);
    CHECK(loaded.norm_min == trained.norm_min);
    CHECK(loaded.norm_max == trained.norm_max);
    CHECK(loaded.feature_names == trained.feature_names);
    CHECK(loaded.training.seed == 99);
    CHECK(loaded.training.rprop.eta_plus == 1.2);

    for (const auto& row : {std::vector<double>{0.3, -1.5}, {1.9, 2.2}, {-2.0, 0.0}}) {
        CHECK(webspam::classify(loaded, row).score == webspam::classify(trained, row).score);
    }
}

TEST_CASE("model loading rejects corrupt files") {
    using nlohmann::json;
    const MlpModel good = golden_model();
    json j = webspam::model_to_json(good);

    json wrong_version = j;
    wrong_version["format_version"] = 999;
    CHECK_THROWS_AS(webspam::model_from_json(wrong_version), webspam::ParseError);

    json missing = j;
    missing.erase("hidden_weights");
    CHECK_THROWS_AS(webspam::model_from_json(missing), webspam::ParseError);

    json bad_dims = j;
    bad_dims["hidden_bias"] = std::vector<double>{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(webspam::model_from_json(bad_dims), webspam::ParseError);

    json inverted = j;
    inverted["norm_min"] = std::vector<double>{1.0, 0.0, 0.0};
    inverted["norm_max"] = std::vector<double>{-1.0, 1.0, 1.0};
    CHECK_THROWS_AS(webspam::model_from_json(inverted), webspam::ParseError);

    json nonfinite = j;
    nonfinite["output_bias"] = "not a number";
    CHECK_THROWS_AS(webspam::model_from_json(nonfinite), webspam::ParseError);

    CHECK_THROWS_AS(webspam::load_model("definitely_missing_file.json"), webspam::IoError);

    const std::string path = "broken_model.json";
    std::ofstream(path) << "{ not json";
    CHECK_THROWS_AS(webspam::load_model(path), webspam::ParseError);
    std::remove(path.c_str());
}
