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

#include "qocsvm/ocsvm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "qocsvm/random.hpp"
#include "qocsvm/simd/kernels.hpp"

namespace qocsvm {
namespace {

constexpr double kCurvatureFloor = 1e-12;

struct Candidate {
    std::size_t index = 0;
    double value = 0.0;
    std::size_t ties = 0;
};

// Reservoir choice among exact ties keeps selection uniform and seeded.
void offer(Candidate &best, std::size_t idx, double value, bool better, Rng &rng) {
    if (best.ties == 0 || better) {
        best = {idx, value, 1};
    } else if (value == best.value) {
        ++best.ties;
        if (std::uniform_int_distribution<std::size_t>(0, best.ties - 1)(rng) == 0) {
            best.index = idx;
        }
    }
}

void validate_gram(const GramMatrix &gram) {
    if (gram.rows != gram.cols || gram.entries.size() != gram.rows * gram.cols) {
        throw std::invalid_argument("OC-SVM needs a square Gram matrix");
    }
    for (std::size_t i = 0; i < gram.rows; ++i) {
        for (std::size_t j = i + 1; j < gram.cols; ++j) {
            if (gram.at(i, j) != gram.at(j, i)) {
                throw std::invalid_argument("OC-SVM needs a symmetric Gram matrix; (" + std::to_string(i) + ", " +
                                            std::to_string(j) + ") differs from its transpose");
            }
        }
    }
    for (double v : gram.entries) {
        if (!std::isfinite(v)) throw std::invalid_argument("Gram matrix has non-finite entries");
    }
}

}  // namespace

void SolverConfig::validate() const {
    if (!(tolerance > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
    if (max_iterations == 0) throw std::invalid_argument("solver needs at least one iteration");
}

double dual_objective(const GramMatrix &gram, std::span<const double> alphas) {
    double obj = 0.0;
    for (std::size_t i = 0; i < gram.rows; ++i) {
        obj += alphas[i] * simd::dot(gram.row(i), alphas);
    }
    return 0.5 * obj;
}

OCSVMModel fit(const GramMatrix &gram, double nu, const SolverConfig &cfg) {
    cfg.validate();
    validate_gram(gram);
    const std::size_t n = gram.rows;
    if (n == 0) throw std::invalid_argument("OC-SVM needs at least one training point");
    if (!(nu > 0.0) || nu > 1.0) throw std::invalid_argument("nu must lie in (0, 1]");
    if (nu * static_cast<double>(n) < 1.0 - 1e-12) {
        throw std::invalid_argument("nu * n must be at least 1 (nu = " + std::to_string(nu) +
                                    ", n = " + std::to_string(n) + ")");
    }

    OCSVMModel model;
    model.nu = nu;
    model.n_train = n;
    const double C = model.upper_bound();

    // Feasible start: fill the first floor(nu n) coefficients to the bound.
    auto &alpha = model.alphas;
    alpha.assign(n, 0.0);
    double remaining = 1.0;
    for (std::size_t i = 0; i < n && remaining > 0.0; ++i) {
        alpha[i] = std::min(C, remaining);
        remaining -= alpha[i];
        if (remaining < 1e-15) remaining = 0.0;
    }

    std::vector<double> grad(n);
    for (std::size_t i = 0; i < n; ++i) grad[i] = simd::dot(gram.row(i), alpha);

    Rng rng = make_stream(cfg.seed, StreamTag::solver);
    std::set<std::pair<std::size_t, std::size_t>> excluded;
    auto objective = [&] { return 0.5 * simd::dot(alpha, grad); };
    if (cfg.record_objective) model.objective_trace.push_back(objective());

    model.converged = false;
    std::size_t iter = 0;
    for (; iter < cfg.max_iterations; ++iter) {
        Candidate up, low;
        for (std::size_t k = 0; k < n; ++k) {
            if (alpha[k] < C) offer(up, k, grad[k], up.ties == 0 || grad[k] < up.value, rng);
            if (alpha[k] > 0.0) offer(low, k, grad[k], low.ties == 0 || grad[k] > low.value, rng);
        }
        if (up.ties == 0 || low.ties == 0) {
            model.kkt_violation = 0.0;
            model.converged = true;
            break;
        }
        model.kkt_violation = low.value - up.value;
        if (model.kkt_violation <= cfg.tolerance) {
            model.converged = true;
            break;
        }
        std::size_t i = up.index, j = low.index;
        if (excluded.count({i, j}) != 0) {
            // Fall back to the most violating pair that has not been rejected.
            double best = cfg.tolerance;
            bool found = false;
            for (std::size_t a = 0; a < n; ++a) {
                if (!(alpha[a] < C)) continue;
                for (std::size_t b = 0; b < n; ++b) {
                    if (!(alpha[b] > 0.0) || a == b || excluded.count({a, b}) != 0) continue;
                    if (grad[b] - grad[a] > best) {
                        best = grad[b] - grad[a];
                        i = a;
                        j = b;
                        found = true;
                    }
                }
            }
            if (!found) break;
        }

        const double gap = grad[j] - grad[i];
        const double eta = gram.at(i, i) + gram.at(j, j) - 2.0 * gram.at(i, j);
        const double step_max = std::min(C - alpha[i], alpha[j]);
        const double step = eta > kCurvatureFloor ? std::min(gap / eta, step_max) : step_max;
        const double change = -step * gap + 0.5 * step * step * eta;
        if (!(step > 0.0) || change > 0.0) {
            excluded.insert({i, j});
            ++model.rejected_updates;
            continue;
        }
        excluded.clear();

        alpha[i] = std::min(C, alpha[i] + step);
        alpha[j] = step >= alpha[j] ? 0.0 : alpha[j] - step;
        const auto row_i = gram.row(i);
        const auto row_j = gram.row(j);
        for (std::size_t k = 0; k < n; ++k) {
            grad[k] += step * (row_i[k] - row_j[k]);
        }
        if (cfg.record_objective) model.objective_trace.push_back(objective());
    }
    model.iterations = iter;

    // Fresh gradient so rho and scores do not inherit accumulated drift.
    for (std::size_t k = 0; k < n; ++k) grad[k] = simd::dot(gram.row(k), alpha);
    model.objective = objective();

    double margin_sum = 0.0, bound_sum = 0.0;
    std::size_t margin_count = 0, bound_count = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (alpha[k] > kSupportThreshold) {
            model.support_indices.push_back(k);
            if (alpha[k] < C - kSupportThreshold) {
                margin_sum += grad[k];
                ++margin_count;
            } else {
                bound_sum += grad[k];
                ++bound_count;
            }
        }
    }
    if (margin_count > 0) {
        model.rho = margin_sum / static_cast<double>(margin_count);
    } else if (bound_count > 0) {
        model.rho = bound_sum / static_cast<double>(bound_count);
    }
    return model;
}

std::vector<double> decision_scores(const OCSVMModel &model, const GramMatrix &cross) {
    if (cross.cols != model.n_train) {
        throw std::invalid_argument("cross kernel has " + std::to_string(cross.cols) + " columns, model has " +
                                    std::to_string(model.n_train) + " training points");
    }
    std::vector<double> scores(cross.rows);
    for (std::size_t k = 0; k < cross.rows; ++k) {
        scores[k] = simd::dot(cross.row(k), model.alphas) - model.rho;
    }
    return scores;
}

std::vector<Label> predict(std::span<const double> scores, double threshold) {
    std::vector<Label> labels(scores.size());
    for (std::size_t k = 0; k < scores.size(); ++k) {
        labels[k] = scores[k] < threshold ? Label::anomaly : Label::normal;
    }
    return labels;
}

}  // namespace qocsvm
