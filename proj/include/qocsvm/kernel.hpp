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

#include "qocsvm/matrix.hpp"
#include "qocsvm/random.hpp"
#include "qocsvm/statevec.hpp"

namespace qocsvm {

enum class KernelKind { exact, inversion_test, swap_test, randomized, rbf };

std::string_view kernel_kind_name(KernelKind kind);
KernelKind parse_kernel_kind(std::string_view name);

/// Raised when a purity estimate is not positive, so a signature cannot be
/// used to normalize kernel entries.
class DegenerateEstimateError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct KernelConfig {
    KernelKind kind = KernelKind::exact;
    /// Shots per pair circuit for the inversion and swap tests.
    std::uint64_t it_shots = 1000;
    /// Number r of local Haar settings for randomized measurements.
    std::size_t rm_settings = 30;
    /// Shots s per (point, setting) circuit.
    std::uint64_t rm_shots = 9000;
    bool mitigate = true;
    /// RBF bandwidth; empty means 1 / (d * Var(X_train)).
    std::optional<double> rbf_gamma;
    /// num_qubits is taken from the data dimension when a Gram is built.
    FeatureMapConfig feature_map;
    /// Replace negative eigenvalues of training Grams by zero (off by default).
    bool clip_negative_eigenvalues = false;
    /// Worker threads for Gram assembly (0 = hardware concurrency). Results do
    /// not depend on this value.
    std::size_t threads = 0;

    void validate() const;
};

/// n x m kernel matrix plus the number of simulated circuit executions.
struct GramMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    bool symmetric = false;
    std::uint64_t eval_count = 0;
    /// Number of eigenvalues raised to zero by the optional clipping step.
    std::size_t clipped_eigenvalues = 0;
    std::vector<double> entries;

    GramMatrix() = default;
    GramMatrix(std::size_t n, std::size_t m, bool sym = false)
        : rows(n), cols(m), symmetric(sym), entries(n * m, 0.0) {}

    /// Symmetric Gram from a full row-major array; throws if not symmetric.
    static GramMatrix from_symmetric(std::size_t n, std::vector<double> values);

    double &at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
    std::span<const double> row(std::size_t i) const { return {entries.data() + i * cols, cols}; }
};

/// Per-point randomized-measurement record: outcome counts for each of r
/// settings, s shots each, over 2^d outcomes.
struct RMSignature {
    std::size_t num_qubits = 0;
    std::uint64_t shots = 0;
    /// Identifies the settings list the signature was measured with.
    std::uint64_t settings_fingerprint = 0;
    /// counts[t] has 2^num_qubits entries.
    std::vector<std::vector<std::uint64_t>> counts;

    std::size_t num_settings() const { return counts.size(); }
    /// Empirical distribution of setting t; sums to 1.
    std::vector<double> distribution(std::size_t t) const;

    bool operator==(const RMSignature &) const = default;
};

std::uint64_t settings_fingerprint(std::span<const LocalHaarSetting> settings);

// --- single-entry estimators ---------------------------------------------

double exact_fidelity(std::span<const double> x, std::span<const double> y, const FeatureMapConfig &fm);
double inversion_test(std::span<const double> x, std::span<const double> y, const FeatureMapConfig &fm,
                      std::uint64_t shots, Rng &rng);
double swap_test(std::span<const double> x, std::span<const double> y, const FeatureMapConfig &fm,
                 std::uint64_t shots, Rng &rng);

/// Measures Phi(x) after each setting; `rngs` may be a single stream used for
/// every setting in turn.
RMSignature collect_signature(std::span<const double> x, const FeatureMapConfig &fm,
                              std::span<const LocalHaarSetting> settings, std::uint64_t shots, Rng &rng);
RMSignature collect_signature(const Statevector &state, std::span<const LocalHaarSetting> settings,
                              std::uint64_t shots, std::uint64_t fingerprint, Rng &rng);

std::size_t hamming(std::string_view a, std::string_view b);

/// Row-major 2^d x 2^d table of (-2)^(-H(s, s')). Cached per d.
std::span<const double> hamming_coefficients(std::size_t num_qubits);

/// 2^N * mean_t sum_{s,s'} (-2)^(-H(s,s')) P_i^t(s) P_j^t(s'), symmetric in
/// its arguments bit for bit.
double rm_kernel_entry(const RMSignature &a, const RMSignature &b);

/// Self-pair corrected purity estimate (U-statistic over shot pairs).
double rm_purity(const RMSignature &sig);

/// k / sqrt(p_i p_j); throws DegenerateEstimateError unless both purities are positive.
double mitigate(double k, double purity_i, double purity_j);

double rbf_entry(std::span<const double> x, std::span<const double> y, double gamma);

/// 1 / (d * Var(X)) over all entries of X.
double rbf_auto_gamma(const Matrix &X);

// --- Gram assembly ---------------------------------------------------------

/// Training-side state needed to evaluate cross kernels later on.
struct RandomizedContext {
    std::vector<LocalHaarSetting> settings;
    std::uint64_t fingerprint = 0;
    std::vector<RMSignature> signatures;
    std::vector<double> purities;
};

struct KernelContext {
    /// Config with feature_map.num_qubits and rbf_gamma resolved.
    KernelConfig config;
    Matrix train_points;
    std::optional<RandomizedContext> randomized;
};

struct TrainingGram {
    GramMatrix gram;
    KernelContext context;
};

/// Symmetric n x n Gram over the rows of X. Pairwise kinds evaluate only the
/// upper triangle (diagonal fixed to 1); the randomized kind measures one
/// signature per point against settings drawn once from `seed`.
TrainingGram build_gram_train(const Matrix &X, const KernelConfig &cfg, std::uint64_t seed);

/// t x n kernel between X_test rows and the training points of `context`.
/// For randomized kernels only the t test signatures are measured.
GramMatrix build_gram_cross(const Matrix &X_test, const KernelContext &context, std::uint64_t seed);

/// Eigenvalue clipping of a symmetric Gram; returns the number of negative
/// eigenvalues that were raised to zero.
std::size_t clip_to_psd(GramMatrix &gram);

}  // namespace qocsvm
