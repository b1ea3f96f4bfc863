// Copyright 2026 The qocsvm Authors
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

#include "qocsvm/eval.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qocsvm {

Confusion confusion(std::span<const Label> labels, std::span<const Label> predictions) {
    if (labels.size() != predictions.size()) {
        throw std::invalid_argument("confusion: label and prediction lengths differ");
    }
    Confusion c;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const bool actual = labels[i] == Label::anomaly;
        const bool flagged = predictions[i] == Label::anomaly;
        if (actual && flagged) ++c.tp;
        else if (!actual && flagged) ++c.fp;
        else if (!actual) ++c.tn;
        else ++c.fn;
    }
    return c;
}

double precision(const Confusion &c) {
    return c.tp + c.fp == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
}

double recall(const Confusion &c) {
    return c.tp + c.fn == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
}

double f1(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

double average_precision(std::span<const double> scores, std::span<const Label> labels) {
    if (scores.size() != labels.size()) {
        throw std::invalid_argument("average_precision: score and label lengths differ");
    }
    const auto positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), Label::anomaly));
    if (positives == 0) throw std::invalid_argument("average_precision: no anomalies among the labels");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    double ap = 0.0;
    std::size_t hits = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (labels[order[k]] != Label::anomaly) continue;
        ++hits;
        ap += static_cast<double>(hits) / static_cast<double>(k + 1);
    }
    return ap / static_cast<double>(positives);
}

MetricsReport evaluate(std::span<const Label> labels, std::span<const double> anomaly_scores,
                       std::span<const Label> predictions) {
    MetricsReport m;
    m.counts = confusion(labels, predictions);
    m.precision = precision(m.counts);
    m.recall = recall(m.counts);
    m.f1 = f1(m.precision, m.recall);
    m.average_precision = average_precision(anomaly_scores, labels);
    return m;
}

}  // namespace qocsvm
