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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qocsvm/data.hpp"
#include "qocsvm/ensemble.hpp"
#include "qocsvm/eval.hpp"
#include "qocsvm/kernel.hpp"

namespace qocsvm {

std::string_view library_version();

enum class Method { rbf, exact, it, swap, rm, rm_unmitigated, vs_it, vs_rm, vs_rfb_rm };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);
bool is_ensemble(Method m);
KernelKind method_kernel(Method m);

struct RunConfig {
    Method method = Method::rbf;
    std::string dataset = "synthetic";
    std::size_t train_size = 500;
    std::size_t test_size = 125;
    /// Empty: 2 for synthetic data, 6 for fraud.
    std::optional<std::size_t> num_features;
    /// Empty: 0.3 for synthetic data, 0.05 for fraud.
    std::optional<double> test_anomaly_ratio;
    double nu = 0.1;
    double lambda = 3.0;
    std::size_t layers = 2;
    std::uint64_t it_shots = 1000;
    std::size_t rm_settings = 30;
    std::uint64_t rm_shots = 9000;
    Aggregation aggregation = Aggregation::mean;
    std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14};
    std::string fraud_csv_path;
    /// Anomaly iff outlier score > threshold (outlier score = -decision for
    /// single models, aggregated normalized score for ensembles).
    double threshold = 0.0;
    double solver_tolerance = 1e-3;
    /// Run seeds concurrently. Output does not change.
    bool parallel = false;
    /// Workers for Gram assembly inside each seed.
    std::size_t threads = 1;
    /// Omit wall-clock fields from records so reruns compare byte for byte.
    bool record_timing = true;

    std::size_t features() const;
    double anomaly_ratio() const;
    void validate() const;
};

struct PhaseTimes {
    double preprocess_s = 0.0;
    double train_gram_s = 0.0;
    double solver_s = 0.0;
    double test_gram_s = 0.0;
    double scoring_s = 0.0;
};

struct RunRecord {
    RunConfig config;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    std::size_t n_test = 0;
    std::size_t n_test_anomalies = 0;
    MetricsReport metrics;
    PhaseTimes phases;
    std::uint64_t train_kernel_evals = 0;
    std::uint64_t test_kernel_evals = 0;
    std::size_t components = 1;
    std::optional<std::size_t> r_prime;
    /// Training-set outlier and support-vector fractions (single models only).
    std::optional<double> train_outlier_fraction;
    std::optional<double> support_fraction;
    std::vector<double> component_train_seconds;
};

/// Loads the fraud CSV when the config needs it; returns empty otherwise.
std::optional<Dataset> load_source(const RunConfig &cfg);
RunRecord run_seed(const RunConfig &cfg, std::uint64_t seed, const Dataset *source);
/// One record per seed, in seed-list order. A failing seed yields a record
/// with ok = false; the others still run.
std::vector<RunRecord> run_experiment(const RunConfig &cfg);

nlohmann::ordered_json to_json(const RunRecord &rec);
RunRecord record_from_json(const nlohmann::json &j);
void write_records(std::ostream &out, const std::vector<RunRecord> &records);
std::vector<RunRecord> read_records(std::istream &in);

struct MetricStats {
    double mean = 0.0;
    double std = 0.0;
    bool operator==(const MetricStats &) const = default;
};

struct SummaryRow {
    std::string method;
    std::string dataset;
    std::size_t n_train = 0;
    std::size_t d = 0;
    std::size_t runs = 0;
    /// Missing entries (e.g. timings of untimed runs) are absent.
    std::map<std::string, MetricStats> stats;
    bool operator==(const SummaryRow &) const = default;
};

/// Metrics summarized per group, in column order.
const std::vector<std::string> &summary_metrics();

/// Mean and sample standard deviation per (method, dataset, n_train, d) over
/// successful records. Throws on empty input.
std::vector<SummaryRow> summarize(const std::vector<RunRecord> &records);
void write_summary_csv(std::ostream &out, const std::vector<SummaryRow> &rows);
std::vector<SummaryRow> read_summary_csv(std::istream &in);

}  // namespace qocsvm
