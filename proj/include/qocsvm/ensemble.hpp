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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qocsvm/kernel.hpp"
#include "qocsvm/matrix.hpp"
#include "qocsvm/ocsvm.hpp"
#include "qocsvm/random.hpp"

namespace qocsvm {

enum class Aggregation { mean, max };

std::string_view aggregation_name(Aggregation a);
Aggregation parse_aggregation(std::string_view name);

struct VSConfig {
    std::size_t n_min = 50;
    std::size_t n_max = 100;
    /// Empty: floor(n / 100) components, at least one.
    std::optional<std::size_t> fixed_components;
    Aggregation aggregation = Aggregation::mean;
    bool rfb_enabled = false;
    KernelConfig base_kernel;
    double nu = 0.1;
    SolverConfig solver;
    /// Components fitted/scored concurrently (0 = hardware concurrency).
    std::size_t threads = 1;

    void validate() const;
};

struct Component {
    std::vector<std::size_t> subsample_indices;
    /// d x r' with orthonormal columns when feature bagging is on.
    std::optional<Matrix> projection;
    /// Training points (already projected) and, for randomized kernels, the
    /// cached settings and signatures.
    KernelContext kernel;
    /// Root seed of this component's kernel streams.
    std::uint64_t kernel_seed = 0;
    OCSVMModel model;
    double train_score_mean = 0.0;
    double train_score_std = 1.0;
    std::uint64_t train_evals = 0;
    double gram_seconds = 0.0;
    double solver_seconds = 0.0;
};

struct EnsembleModel {
    std::vector<Component> components;
    Aggregation aggregation = Aggregation::mean;
    std::size_t input_dim = 0;

    std::uint64_t train_evals() const;
};

struct EnsembleScores {
    /// Aggregated normalized outlier scores: higher is more anomalous.
    std::vector<double> scores;
    std::uint64_t eval_count = 0;
};

/// Error raised while fitting or scoring one component.
class ComponentError : public std::runtime_error {
  public:
    ComponentError(std::size_t index, const std::string &what);
    std::size_t index() const { return index_; }

  private:
    std::size_t index_;
};

std::size_t component_count(std::size_t n, const VSConfig &cfg);
std::vector<std::size_t> sample_sizes(std::size_t c, std::size_t n_min, std::size_t n_max, Rng &rng);
/// min(d, 2 + ceil(sqrt(d) / 2)).
std::size_t rotation_dim(std::size_t d);
/// d x r' matrix with orthonormal columns from Gram-Schmidt on a uniform
/// [-1, 1] draw.
Matrix random_rotation(std::size_t d, std::size_t r_prime, Rng &rng);

EnsembleModel fit_vs(const Matrix &X_train, const VSConfig &cfg, std::uint64_t seed);
/// Each component's decision scores are z-normalized with its training-score
/// statistics, negated into outlier scores, and aggregated.
EnsembleScores score_vs(const EnsembleModel &model, const Matrix &X_test, std::size_t threads = 1);

/// Anomaly iff score > threshold.
std::vector<Label> predict_outliers(std::span<const double> outlier_scores, double threshold = 0.0);

}  // namespace qocsvm
