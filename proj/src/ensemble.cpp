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

#include "qocsvm/ensemble.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qocsvm/parallel.hpp"

namespace qocsvm {
namespace {

constexpr int kRotationRetries = 16;

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Rng &rng) {
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(k);
    return pool;
}

std::pair<double, double> mean_std(std::span<const double> v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(v.size());
    return {mean, std::sqrt(var)};
}

}  // namespace

std::string_view aggregation_name(Aggregation a) { return a == Aggregation::mean ? "mean" : "max"; }

Aggregation parse_aggregation(std::string_view name) {
    if (name == "mean") return Aggregation::mean;
    if (name == "max") return Aggregation::max;
    throw std::invalid_argument("unknown aggregation '" + std::string(name) + "' (expected mean or max)");
}

ComponentError::ComponentError(std::size_t index, const std::string &what)
    : std::runtime_error("component " + std::to_string(index) + ": " + what), index_(index) {}

void VSConfig::validate() const {
    if (n_min < 50 || n_min > n_max) {
        throw std::invalid_argument("subsample sizes need 50 <= n_min <= n_max");
    }
    if (fixed_components && *fixed_components == 0) {
        throw std::invalid_argument("component count must be at least 1");
    }
    if (!(nu > 0.0 && nu <= 1.0)) throw std::invalid_argument("nu must be in (0, 1]");
    base_kernel.validate();
    solver.validate();
}

std::uint64_t EnsembleModel::train_evals() const {
    std::uint64_t total = 0;
    for (const auto &c : components) total += c.train_evals;
    return total;
}

std::size_t component_count(std::size_t n, const VSConfig &cfg) {
    if (cfg.fixed_components) return *cfg.fixed_components;
    return std::max<std::size_t>(1, n / 100);
}

std::vector<std::size_t> sample_sizes(std::size_t c, std::size_t n_min, std::size_t n_max, Rng &rng) {
    if (c == 0) throw std::invalid_argument("sample_sizes: c must be at least 1");
    if (n_min > n_max) throw std::invalid_argument("sample_sizes: n_min > n_max");
    std::uniform_int_distribution<std::size_t> dist(n_min, n_max);
    std::vector<std::size_t> sizes(c);
    for (auto &s : sizes) s = dist(rng);
    return sizes;
}

std::size_t rotation_dim(std::size_t d) {
    if (d == 0) throw std::invalid_argument("rotation_dim: d must be at least 1");
    const auto half_root = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(d)) / 2.0));
    return std::min(d, 2 + half_root);
}

Matrix random_rotation(std::size_t d, std::size_t r_prime, Rng &rng) {
    if (r_prime == 0 || r_prime > d) {
        throw std::invalid_argument("random_rotation: need 1 <= r' <= d");
    }
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int attempt = 0; attempt < kRotationRetries; ++attempt) {
        Matrix E(d, r_prime);
        for (auto &v : E.data()) v = unif(rng);
        bool ok = true;
        // modified Gram-Schmidt, two passes for orthogonality to ~1e-16
        for (std::size_t k = 0; k < r_prime && ok; ++k) {
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t j = 0; j < k; ++j) {
                    double proj = 0.0;
                    for (std::size_t i = 0; i < d; ++i) proj += E(i, j) * E(i, k);
                    for (std::size_t i = 0; i < d; ++i) E(i, k) -= proj * E(i, j);
                }
            }
            double norm = 0.0;
            for (std::size_t i = 0; i < d; ++i) norm += E(i, k) * E(i, k);
            norm = std::sqrt(norm);
            if (norm < 1e-8) {
                ok = false;
                break;
            }
            for (std::size_t i = 0; i < d; ++i) E(i, k) /= norm;
        }
        if (ok) return E;
    }
    throw std::runtime_error("random_rotation: rank-deficient draws");
}

EnsembleModel fit_vs(const Matrix &X, const VSConfig &cfg, std::uint64_t seed) {
    cfg.validate();
    const std::size_t n = X.rows(), d = X.cols();
    if (n < cfg.n_min) {
        throw std::invalid_argument("fit_vs: " + std::to_string(n) + " training points < n_min = " +
                                    std::to_string(cfg.n_min));
    }
    const std::size_t c = component_count(n, cfg);

    // All sampling happens up front, in component order, so fitting can run
    // in any order. Sizes come first: they do not depend on d.
    Rng rng = make_stream(seed, StreamTag::ensemble);
    std::vector<std::size_t> sizes = sample_sizes(c, cfg.n_min, cfg.n_max, rng);
    const std::size_t r_prime = cfg.rfb_enabled ? rotation_dim(d) : d;

    EnsembleModel model;
    model.aggregation = cfg.aggregation;
    model.input_dim = d;
    model.components.resize(c);
    for (std::size_t i = 0; i < c; ++i) {
        auto &comp = model.components[i];
        comp.subsample_indices = sample_without_replacement(n, std::min(sizes[i], n), rng);
        if (cfg.rfb_enabled) comp.projection = random_rotation(d, r_prime, rng);
        comp.kernel_seed = derive_seed(seed, StreamTag::component, {i});
    }

    parallel_for(c, cfg.threads, [&](std::size_t i) {
        auto &comp = model.components[i];
        try {
            const auto t0 = std::chrono::steady_clock::now();
            Matrix sub = X.select_rows(comp.subsample_indices);
            if (comp.projection) sub = multiply(sub, *comp.projection);
            TrainingGram tg = build_gram_train(sub, cfg.base_kernel, comp.kernel_seed);
            const auto t1 = std::chrono::steady_clock::now();
            SolverConfig scfg = cfg.solver;
            scfg.seed = derive_seed(cfg.solver.seed, StreamTag::solver, {i});
            comp.model = fit(tg.gram, cfg.nu, scfg);
            const std::vector<double> train_scores = decision_scores(comp.model, tg.gram);
            auto [mu, sd] = mean_std(train_scores);
            comp.train_score_mean = mu;
            comp.train_score_std = sd < 1e-12 ? 1.0 : sd;
            comp.train_evals = tg.gram.eval_count;
            comp.kernel = std::move(tg.context);
            comp.gram_seconds = std::chrono::duration<double>(t1 - t0).count();
            comp.solver_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
        } catch (const std::exception &e) {
            throw ComponentError(i, e.what());
        }
    });
    return model;
}

EnsembleScores score_vs(const EnsembleModel &model, const Matrix &X_test, std::size_t threads) {
    if (model.components.empty()) throw std::invalid_argument("score_vs: empty ensemble");
    if (X_test.cols() != model.input_dim) {
        throw std::invalid_argument("score_vs: expected " + std::to_string(model.input_dim) + " features, got " +
                                    std::to_string(X_test.cols()));
    }
    const std::size_t c = model.components.size(), t = X_test.rows();
    std::vector<std::vector<double>> per(c);
    std::vector<std::uint64_t> evals(c, 0);
    parallel_for(c, threads, [&](std::size_t i) {
        const auto &comp = model.components[i];
        try {
            const Matrix Xp = comp.projection ? multiply(X_test, *comp.projection) : X_test;
            GramMatrix cross = build_gram_cross(Xp, comp.kernel, comp.kernel_seed);
            evals[i] = cross.eval_count;
            per[i] = decision_scores(comp.model, cross);
            for (auto &s : per[i]) s = -(s - comp.train_score_mean) / comp.train_score_std;
        } catch (const std::exception &e) {
            throw ComponentError(i, e.what());
        }
    });

    EnsembleScores out;
    out.scores.assign(t, 0.0);
    for (std::size_t k = 0; k < t; ++k) {
        if (model.aggregation == Aggregation::mean) {
            double sum = 0.0;
            for (std::size_t i = 0; i < c; ++i) sum += per[i][k];
            out.scores[k] = sum / static_cast<double>(c);
        } else {
            double best = per[0][k];
            for (std::size_t i = 1; i < c; ++i) best = std::max(best, per[i][k]);
            out.scores[k] = best;
        }
    }
    for (auto e : evals) out.eval_count += e;
    return out;
}

std::vector<Label> predict_outliers(std::span<const double> outlier_scores, double threshold) {
    std::vector<Label> labels(outlier_scores.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        labels[i] = outlier_scores[i] > threshold ? Label::anomaly : Label::normal;
    }
    return labels;
}

}  // namespace qocsvm
