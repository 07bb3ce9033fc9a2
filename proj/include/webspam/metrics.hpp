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

// Confusion-matrix metrics with spam as the positive class: sensitivity,
// specificity, efficiency (their balanced mean), precision, F1, accuracy.

#pragma once

#include <cstddef>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "webspam/errors.hpp"
#include "webspam/net.hpp"

namespace webspam {

struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
};

struct MetricsReport {
    double sensitivity = 0.0;
    double specificity = 0.0;
    double efficiency = 0.0;
    double precision = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;
    bool degenerate = false;  // some ratio hit 0/0 and was reported as 0
};

/// Tally (predicted, actual) label pairs; spam counts as positive.
inline ConfusionMatrix confusion(const std::vector<std::pair<Label, Label>>& pairs) {
    if (pairs.empty()) throw TrainingError("cannot build a confusion matrix from zero pairs");
    ConfusionMatrix cm;
    for (auto [predicted, actual] : pairs) {
        if (actual == Label::Spam)
            ++(predicted == Label::Spam ? cm.tp : cm.fn);
        else
            ++(predicted == Label::Spam ? cm.fp : cm.tn);
    }
    return cm;
}

/// Balanced mean of sensitivity and specificity.
inline double efficiency_of(double sensitivity, double specificity) {
    return 0.5 * (sensitivity + specificity);
}

/// Harmonic mean of precision and sensitivity; 0 when both are 0.
inline double f1_of(double precision, double sensitivity) {
    double denom = precision + sensitivity;
    return denom == 0.0 ? 0.0 : 2.0 * precision * sensitivity / denom;
}

/// Compute all six metrics. Any 0/0 ratio becomes 0.0 and sets `degenerate`
/// so 20-run experiments survive pathological splits without aborting.
inline MetricsReport report(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw TrainingError("confusion matrix is empty");
    MetricsReport r;
    auto ratio = [&r](std::size_t num, std::size_t denom) {
        if (denom == 0) {
            r.degenerate = true;
            return 0.0;
        }
        return static_cast<double>(num) / static_cast<double>(denom);
    };
    r.sensitivity = ratio(cm.tp, cm.tp + cm.fn);
    r.specificity = ratio(cm.tn, cm.tn + cm.fp);
    r.efficiency = efficiency_of(r.sensitivity, r.specificity);
    r.precision = ratio(cm.tp, cm.tp + cm.fp);
    r.f1 = f1_of(r.precision, r.sensitivity);
    r.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
    return r;
}

/// Full-precision machine form.
inline nlohmann::json metrics_to_json(const MetricsReport& r) {
    return nlohmann::json{
        {"sensitivity", r.sensitivity}, {"specificity", r.specificity},
        {"efficiency", r.efficiency},   {"precision", r.precision},
        {"f1", r.f1},                   {"accuracy", r.accuracy},
        {"degenerate", r.degenerate},
    };
}

/// Fixed 4-decimal display form, one value per Table-style column.
inline std::string format_metric(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

inline std::string metrics_to_text(const MetricsReport& r) {
    std::string out;
    out += "sensitivity " + format_metric(r.sensitivity) + "\n";
    out += "specificity " + format_metric(r.specificity) + "\n";
    out += "efficiency  " + format_metric(r.efficiency) + "\n";
    out += "precision   " + format_metric(r.precision) + "\n";
    out += "f1          " + format_metric(r.f1) + "\n";
    out += "accuracy    " + format_metric(r.accuracy) + "\n";
    return out;
}

}  // namespace webspam
