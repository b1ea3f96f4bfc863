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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "qocsvm/ocsvm.hpp"

namespace qocsvm {

/// Anomaly is the positive class.
struct Confusion {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
    bool operator==(const Confusion &) const = default;
};

Confusion confusion(std::span<const Label> labels, std::span<const Label> predictions);

/// tp / (tp + fp), 0 when nothing is flagged.
double precision(const Confusion &c);
/// tp / (tp + fn), 0 when there are no anomalies.
double recall(const Confusion &c);
/// Harmonic mean; 0 when both inputs are 0.
double f1(double precision, double recall);

/// Step-sum area under the precision-recall curve. Higher scores mean more
/// anomalous; ties keep index order.
double average_precision(std::span<const double> anomaly_scores, std::span<const Label> labels);

struct MetricsReport {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double average_precision = 0.0;
    Confusion counts;
    double train_time_s = 0.0;
    double test_time_s = 0.0;
    std::uint64_t kernel_evals = 0;
};

MetricsReport evaluate(std::span<const Label> labels, std::span<const double> anomaly_scores,
                       std::span<const Label> predictions);

}  // namespace qocsvm
