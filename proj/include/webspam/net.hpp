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

// Single-hidden-layer perceptron with bipolar sigmoid activations, trained by
// resilient backpropagation (the RProp- variant, full batch). Includes min-max
// input normalization and JSON model serialization.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "webspam/errors.hpp"
#include "webspam/rng.hpp"

namespace webspam {

struct RpropConfig {
    double eta_plus = 1.2;
    double eta_minus = 0.5;
    double delta_init = 0.1;
    double delta_max = 50.0;
    double delta_min = 1e-6;
};

struct TrainingConfig {
    std::size_t epochs = 200;
    std::uint64_t seed = 0;
    std::size_t hidden_dim = 10;
    double alpha = 2.0;
    RpropConfig rprop;
    double target_spam = 0.9;
    double target_ham = -0.9;
};

struct MlpModel {
    std::size_t input_dim = 0;
    std::size_t hidden_dim = 0;
    std::vector<double> hidden_weights;  // row-major, hidden_dim x input_dim
    std::vector<double> hidden_bias;     // hidden_dim
    std::vector<double> output_weights;  // hidden_dim
    double output_bias = 0.0;
    double alpha = 2.0;
    double threshold = 0.0;
    std::vector<double> norm_min;  // input_dim
    std::vector<double> norm_max;  // input_dim
    std::vector<std::string> feature_names;  // input_dim
    TrainingConfig training;       // provenance, carried into the model file
};

/// f(x) = 2/(1+e^{-alpha x}) - 1, computed in the rational form that never
/// overflows: both branches evaluate exp of a non-positive argument.
inline double bipolar_sigmoid(double x, double alpha) {
    double ax = alpha * x;
    if (ax >= 0.0) {
        double e = std::exp(-ax);
        return (1.0 - e) / (1.0 + e);
    }
    double e = std::exp(ax);
    return (e - 1.0) / (e + 1.0);
}

/// Derivative expressed through the activation value: f' = alpha/2 (1 - f^2).
inline double bipolar_sigmoid_derivative(double activation, double alpha) {
    return 0.5 * alpha * (1.0 - activation * activation);
}

/// Fit per-column min/max bounds over the given rows.
inline void fit_bounds(MlpModel& model, const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw TrainingError("cannot fit normalization bounds on an empty set");
    std::size_t dim = rows.front().size();
    model.norm_min = rows.front();
    model.norm_max = rows.front();
    for (const auto& row : rows) {
        if (row.size() != dim) throw DimensionError(dim, row.size());
        for (std::size_t i = 0; i < dim; ++i) {
            if (row[i] < model.norm_min[i]) model.norm_min[i] = row[i];
            if (row[i] > model.norm_max[i]) model.norm_max[i] = row[i];
        }
    }
}

/// Map each component by 2(v-min)/(max-min) - 1; constant columns map to 0,
/// out-of-bound test values clamp to [-1, 1].
inline std::vector<double> normalize(const std::vector<double>& values, const MlpModel& model) {
    if (values.size() != model.input_dim) throw DimensionError(model.input_dim, values.size());
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        double lo = model.norm_min[i], hi = model.norm_max[i];
        if (lo == hi) {
            out[i] = 0.0;
            continue;
        }
        double z = 2.0 * (values[i] - lo) / (hi - lo) - 1.0;
        out[i] = z < -1.0 ? -1.0 : (z > 1.0 ? 1.0 : z);
    }
    return out;
}

/// Forward pass over an already-normalized input.
inline double forward(const MlpModel& model, const std::vector<double>& input) {
    if (input.size() != model.input_dim) throw DimensionError(model.input_dim, input.size());
    double out_sum = model.output_bias;
    for (std::size_t j = 0; j < model.hidden_dim; ++j) {
        double sum = model.hidden_bias[j];
        const double* w = model.hidden_weights.data() + j * model.input_dim;
        for (std::size_t i = 0; i < model.input_dim; ++i) sum += w[i] * input[i];
        out_sum += model.output_weights[j] * bipolar_sigmoid(sum, model.alpha);
    }
    return bipolar_sigmoid(out_sum, model.alpha);
}

struct Gradient {
    std::vector<double> hidden_weights;
    std::vector<double> hidden_bias;
    std::vector<double> output_weights;
    double output_bias = 0.0;
};

/// Analytic gradient of E = 1/2 sum (target - output)^2 over the batch.
/// Inputs must be normalized already; batch must be non-empty.
inline Gradient sse_gradient(const MlpModel& model, const std::vector<std::vector<double>>& inputs,
                             const std::vector<double>& targets) {
    if (inputs.empty() || inputs.size() != targets.size())
        throw TrainingError("gradient requires a non-empty batch with matching targets");
    Gradient g;
    g.hidden_weights.assign(model.hidden_weights.size(), 0.0);
    g.hidden_bias.assign(model.hidden_dim, 0.0);
    g.output_weights.assign(model.hidden_dim, 0.0);

    std::vector<double> hidden(model.hidden_dim);
    for (std::size_t r = 0; r < inputs.size(); ++r) {
        const auto& x = inputs[r];
        if (x.size() != model.input_dim) throw DimensionError(model.input_dim, x.size());

        double out_sum = model.output_bias;
        for (std::size_t j = 0; j < model.hidden_dim; ++j) {
            double sum = model.hidden_bias[j];
            const double* w = model.hidden_weights.data() + j * model.input_dim;
            for (std::size_t i = 0; i < model.input_dim; ++i) sum += w[i] * x[i];
            hidden[j] = bipolar_sigmoid(sum, model.alpha);
            out_sum += model.output_weights[j] * hidden[j];
        }
        double y = bipolar_sigmoid(out_sum, model.alpha);

        double delta_out = (y - targets[r]) * bipolar_sigmoid_derivative(y, model.alpha);
        g.output_bias += delta_out;
        for (std::size_t j = 0; j < model.hidden_dim; ++j) {
            g.output_weights[j] += delta_out * hidden[j];
            double delta_h =
                delta_out * model.output_weights[j] * bipolar_sigmoid_derivative(hidden[j], model.alpha);
            g.hidden_bias[j] += delta_h;
            double* gw = g.hidden_weights.data() + j * model.input_dim;
            for (std::size_t i = 0; i < model.input_dim; ++i) gw[i] += delta_h * x[i];
        }
    }
    return g;
}

/// One RProp- step over a parameter block. `prev` and `step` carry per-weight
/// state across epochs. On a sign flip the step shrinks, the weight holds
/// still, and the stored gradient is zeroed so the next epoch moves again.
inline void rprop_update(std::span<double> weights, std::span<const double> grad,
                         std::span<double> prev, std::span<double> step, const RpropConfig& cfg) {
    auto sign = [](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); };
    for (std::size_t i = 0; i < weights.size(); ++i) {
        double prod = prev[i] * grad[i];
        if (prod > 0.0) {
            step[i] = std::min(step[i] * cfg.eta_plus, cfg.delta_max);
            weights[i] -= sign(grad[i]) * step[i];
            prev[i] = grad[i];
        } else if (prod < 0.0) {
            step[i] = std::max(step[i] * cfg.eta_minus, cfg.delta_min);
            prev[i] = 0.0;
        } else {
            weights[i] -= sign(grad[i]) * step[i];
            prev[i] = grad[i];
        }
    }
}

struct TrainResult {
    MlpModel model;
    std::vector<double> sse_trace;  // SSE before each epoch's update
};

/// Train on normalized rows. Labels are 1 = spam, 0 = ham and become the
/// +-target values from the config. Weights initialize uniformly in
/// [-0.5, 0.5] from config.seed; exactly config.epochs full-batch updates run.
inline TrainResult train_rprop(const std::vector<std::vector<double>>& rows,
                               const std::vector<int>& labels, const TrainingConfig& config) {
    if (rows.empty() || rows.size() != labels.size())
        throw TrainingError("training requires a non-empty labeled matrix");
    if (config.epochs < 1) throw TrainingError("epochs must be >= 1");
    bool has_spam = false, has_ham = false;
    for (int label : labels) (label ? has_spam : has_ham) = true;
    if (!has_spam || !has_ham) throw TrainingError("training data contains a single class");

    TrainResult result;
    MlpModel& model = result.model;
    model.input_dim = rows.front().size();
    model.hidden_dim = config.hidden_dim;
    model.alpha = config.alpha;
    model.training = config;
    // Identity bounds: rows are already in [-1, 1]. Callers that fitted real
    // bounds overwrite these afterwards.
    model.norm_min.assign(model.input_dim, -1.0);
    model.norm_max.assign(model.input_dim, 1.0);

    std::mt19937_64 gen(config.seed);
    auto init = [&](std::vector<double>& block, std::size_t n) {
        block.resize(n);
        for (double& w : block) w = rng::uniform(gen, -0.5, 0.5);
    };
    init(model.hidden_weights, model.hidden_dim * model.input_dim);
    init(model.hidden_bias, model.hidden_dim);
    init(model.output_weights, model.hidden_dim);
    model.output_bias = rng::uniform(gen, -0.5, 0.5);

    std::vector<double> targets(labels.size());
    for (std::size_t r = 0; r < labels.size(); ++r)
        targets[r] = labels[r] ? config.target_spam : config.target_ham;

    std::size_t total = model.hidden_weights.size() + model.hidden_bias.size() +
                        model.output_weights.size() + 1;
    std::vector<double> prev(total, 0.0);
    std::vector<double> step(total, config.rprop.delta_init);

    result.sse_trace.reserve(config.epochs);
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        Gradient g = sse_gradient(model, rows, targets);

        double sse = 0.0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            double diff = targets[r] - forward(model, rows[r]);
            sse += 0.5 * diff * diff;
        }
        result.sse_trace.push_back(sse);

        std::size_t off = 0;
        auto block = [&](std::vector<double>& w, const std::vector<double>& grad) {
            rprop_update(std::span(w), std::span(grad),
                         std::span(prev).subspan(off, w.size()),
                         std::span(step).subspan(off, w.size()), config.rprop);
            off += w.size();
        };
        block(model.hidden_weights, g.hidden_weights);
        block(model.hidden_bias, g.hidden_bias);
        block(model.output_weights, g.output_weights);
        std::vector<double> ob{model.output_bias}, gob{g.output_bias};
        rprop_update(std::span(ob), std::span(gob), std::span(prev).subspan(off, 1),
                     std::span(step).subspan(off, 1), config.rprop);
        model.output_bias = ob[0];
    }
    return result;
}

enum class Label { Ham, Spam };

struct Verdict {
    Label label = Label::Ham;
    double score = 0.0;
};

/// Normalize a raw feature vector through the model bounds and score it.
/// Scores >= threshold are spam (ties break toward spam).
inline Verdict classify(const MlpModel& model, const std::vector<double>& raw) {
    double score = forward(model, normalize(raw, model));
    return Verdict{score >= model.threshold ? Label::Spam : Label::Ham, score};
}

inline constexpr int kModelFormatVersion = 1;

inline nlohmann::json model_to_json(const MlpModel& model) {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["input_dim"] = model.input_dim;
    j["hidden_dim"] = model.hidden_dim;
    j["alpha"] = model.alpha;
    j["threshold"] = model.threshold;
    j["feature_names"] = model.feature_names;
    j["norm_min"] = model.norm_min;
    j["norm_max"] = model.norm_max;
    j["hidden_weights"] = model.hidden_weights;
    j["hidden_bias"] = model.hidden_bias;
    j["output_weights"] = model.output_weights;
    j["output_bias"] = model.output_bias;
    j["training"] = {
        {"seed", model.training.seed},
        {"epochs", model.training.epochs},
        {"hidden_dim", model.training.hidden_dim},
        {"alpha", model.training.alpha},
        {"target_spam", model.training.target_spam},
        {"target_ham", model.training.target_ham},
        {"rprop",
         {{"eta_plus", model.training.rprop.eta_plus},
          {"eta_minus", model.training.rprop.eta_minus},
          {"delta_init", model.training.rprop.delta_init},
          {"delta_max", model.training.rprop.delta_max},
          {"delta_min", model.training.rprop.delta_min}}},
    };
    return j;
}

inline MlpModel model_from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("format_version", -1) != kModelFormatVersion)
        throw ParseError("unsupported model format");
    MlpModel m;
    try {
        m.input_dim = j.at("input_dim").get<std::size_t>();
        m.hidden_dim = j.at("hidden_dim").get<std::size_t>();
        m.alpha = j.at("alpha").get<double>();
        m.threshold = j.at("threshold").get<double>();
        m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        m.norm_min = j.at("norm_min").get<std::vector<double>>();
        m.norm_max = j.at("norm_max").get<std::vector<double>>();
        m.hidden_weights = j.at("hidden_weights").get<std::vector<double>>();
        m.hidden_bias = j.at("hidden_bias").get<std::vector<double>>();
        m.output_weights = j.at("output_weights").get<std::vector<double>>();
        m.output_bias = j.at("output_bias").get<double>();
        if (j.contains("training")) {
            const auto& t = j.at("training");
            m.training.seed = t.value("seed", std::uint64_t{0});
            m.training.epochs = t.value("epochs", std::size_t{200});
            m.training.hidden_dim = t.value("hidden_dim", std::size_t{10});
            m.training.alpha = t.value("alpha", 2.0);
            m.training.target_spam = t.value("target_spam", 0.9);
            m.training.target_ham = t.value("target_ham", -0.9);
            if (t.contains("rprop")) {
                const auto& r = t.at("rprop");
                m.training.rprop.eta_plus = r.value("eta_plus", 1.2);
                m.training.rprop.eta_minus = r.value("eta_minus", 0.5);
                m.training.rprop.delta_init = r.value("delta_init", 0.1);
                m.training.rprop.delta_max = r.value("delta_max", 50.0);
                m.training.rprop.delta_min = r.value("delta_min", 1e-6);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed model file: ") + e.what());
    }
    if (m.hidden_weights.size() != m.hidden_dim * m.input_dim ||
        m.hidden_bias.size() != m.hidden_dim || m.output_weights.size() != m.hidden_dim ||
        m.norm_min.size() != m.input_dim || m.norm_max.size() != m.input_dim ||
        (!m.feature_names.empty() && m.feature_names.size() != m.input_dim))
        throw ParseError("model file dimensions are inconsistent");
    for (std::size_t i = 0; i < m.input_dim; ++i)
        if (m.norm_min[i] > m.norm_max[i]) throw ParseError("model norm bounds are inverted");
    auto finite = [](const std::vector<double>& v) {
        for (double x : v)
            if (!std::isfinite(x)) return false;
        return true;
    };
    if (!finite(m.hidden_weights) || !finite(m.hidden_bias) || !finite(m.output_weights) ||
        !std::isfinite(m.output_bias))
        throw ParseError("model file contains non-finite weights");
    return m;
}

inline void save_model(const MlpModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write model file: " + path);
    out << model_to_json(model).dump(2) << '\n';
    if (!out) throw IoError("failed writing model file: " + path);
}

inline MlpModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("model file " + path + " is not valid JSON: " + e.what());
    }
    return model_from_json(j);
}

}  // namespace webspam
