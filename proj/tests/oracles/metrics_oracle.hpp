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

// Precision/recall by brute force over every score threshold.

#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

namespace oracle {

struct Counts {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
};

/// Flags every point with score >= t; positives are label 1.
inline Counts counts_at(const std::vector<double> &scores, const std::vector<int> &labels, double t) {
    Counts c;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool flagged = scores[i] >= t;
        if (labels[i] == 1) (flagged ? c.tp : c.fn)++;
        else (flagged ? c.fp : c.tn)++;
    }
    return c;
}

/// Sum over thresholds (descending distinct scores) of delta-recall * precision.
inline double average_precision(const std::vector<double> &scores, const std::vector<int> &labels) {
    std::set<double, std::greater<>> thresholds(scores.begin(), scores.end());
    double ap = 0.0, prev_recall = 0.0;
    for (double t : thresholds) {
        const Counts c = counts_at(scores, labels, t);
        const double recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
        const double precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
        ap += (recall - prev_recall) * precision;
        prev_recall = recall;
    }
    return ap;
}

inline double f1_from_predictions(const std::vector<int> &labels, const std::vector<int> &predicted) {
    std::size_t tp = 0, flagged = 0, positives = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        tp += labels[i] == 1 && predicted[i] == 1;
        flagged += predicted[i] == 1;
        positives += labels[i] == 1;
    }
    if (tp == 0) return 0.0;
    // 2 tp / (2 tp + fp + fn), the same harmonic mean written over counts
    return 2.0 * static_cast<double>(tp) / static_cast<double>(flagged + positives);
}

}  // namespace oracle
