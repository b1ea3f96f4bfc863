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
#include <vector>

#include "qocsvm/kernel.hpp"

namespace qocsvm {

struct SolverConfig {
    /// Stop once max_{alpha_j > 0} g_j - min_{alpha_i < C} g_i falls to this.
    double tolerance = 1e-3;
    std::size_t max_iterations = 100000;
    /// Seeds tie-breaking between equally violating indices.
    std::uint64_t seed = 0;
    /// Keep the objective after every accepted pair update.
    bool record_objective = false;

    void validate() const;
};

/// Fitted nu-one-class SVM over a precomputed kernel. The decision function is
/// f(x) = sum_i alpha_i k(x, x_i) - rho.
struct OCSVMModel {
    std::vector<double> alphas;
    std::vector<std::size_t> support_indices;
    double rho = 0.0;
    double nu = 0.0;
    std::size_t n_train = 0;

    /// False when the iteration cap was hit before the KKT tolerance was met.
    bool converged = false;
    std::size_t iterations = 0;
    double objective = 0.0;
    double kkt_violation = 0.0;
    std::size_t rejected_updates = 0;
    std::vector<double> objective_trace;

    double upper_bound() const { return 1.0 / (nu * static_cast<double>(n_train)); }
};

inline constexpr double kSupportThreshold = 1e-8;

/// Minimizes 1/2 a^T G a subject to 0 <= a_i <= 1/(nu n), sum a_i = 1 by
/// maximal-violating-pair SMO.
OCSVMModel fit(const GramMatrix &gram, double nu, const SolverConfig &cfg = {});

/// Dual objective 1/2 a^T G a.
double dual_objective(const GramMatrix &gram, std::span<const double> alphas);

/// score_k = sum_i alpha_i K(k, i) - rho for every row of `cross`.
std::vector<double> decision_scores(const OCSVMModel &model, const GramMatrix &cross);

enum class Label : std::uint8_t { normal = 0, anomaly = 1 };

/// score < threshold is an anomaly; ties go to normal.
std::vector<Label> predict(std::span<const double> scores, double threshold = 0.0);

}  // namespace qocsvm
