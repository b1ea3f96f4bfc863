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

// Command-line harness: `run` executes an experiment grid point over seeds and
// writes JSON-lines records; `summarize` turns records into a CSV table.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qocsvm/experiment.hpp"

namespace {

int run_command(qocsvm::RunConfig cfg, const std::string &method, const std::string &aggregation,
                std::optional<std::size_t> num_features, std::optional<double> ratio, const std::string &output) {
    cfg.method = qocsvm::parse_method(method);
    cfg.aggregation = qocsvm::parse_aggregation(aggregation);
    cfg.num_features = num_features;
    cfg.test_anomaly_ratio = ratio;
    if (cfg.fraud_csv_path.empty()) {
        if (const char *env = std::getenv("QOCSVM_FRAUD_CSV")) cfg.fraud_csv_path = env;
    }

    const std::vector<qocsvm::RunRecord> records = qocsvm::run_experiment(cfg);
    std::size_t failed = 0;
    for (const auto &r : records) {
        if (!r.ok) {
            ++failed;
            std::cerr << "seed " << r.seed << " failed: " << r.error << '\n';
        }
    }
    if (output.empty() || output == "-") {
        qocsvm::write_records(std::cout, records);
    } else {
        std::ofstream out(output, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "cannot write " << output << '\n';
            return 1;
        }
        qocsvm::write_records(out, records);
    }
    return failed == 0 ? 0 : 1;
}

int summarize_command(const std::vector<std::string> &inputs, const std::string &output) {
    std::vector<qocsvm::RunRecord> records;
    for (const auto &path : inputs) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            std::cerr << "cannot open " << path << '\n';
            return 1;
        }
        auto part = qocsvm::read_records(in);
        records.insert(records.end(), part.begin(), part.end());
    }
    const auto rows = qocsvm::summarize(records);
    if (output.empty() || output == "-") {
        qocsvm::write_summary_csv(std::cout, rows);
    } else {
        std::ofstream out(output, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "cannot write " << output << '\n';
            return 1;
        }
        qocsvm::write_summary_csv(out, rows);
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum-kernel one-class SVM anomaly detection benchmark"};
    app.set_version_flag("--version", std::string(qocsvm::library_version()));
    app.require_subcommand(1);

    qocsvm::RunConfig cfg;
    std::string method = "rbf", aggregation = "mean", output;
    std::optional<std::size_t> num_features;
    std::optional<double> ratio;
    bool no_timing = false;

    auto *run = app.add_subcommand("run", "Run one configuration over a list of seeds");
    run->add_option("--method", method, "rbf, exact, it, swap, rm, rm-unmitigated, vs-it, vs-rm or vs-rfb-rm")
        ->capture_default_str();
    run->add_option("--dataset", cfg.dataset, "synthetic or fraud")->capture_default_str();
    run->add_option("--train-size", cfg.train_size, "Normal points used for training")->capture_default_str();
    run->add_option("--test-size", cfg.test_size)->capture_default_str();
    run->add_option("--num-features", num_features, "Features kept by PCA (default 2 synthetic, 6 fraud)");
    run->add_option("--test-anomaly-ratio", ratio, "Anomaly share of the test set (default 0.3 synthetic, 0.05 fraud)");
    run->add_option("--nu", cfg.nu)->capture_default_str();
    run->add_option("--lambda", cfg.lambda, "Feature-map angle scale")->capture_default_str();
    run->add_option("--layers", cfg.layers, "Feature-map repetitions")->capture_default_str();
    run->add_option("--it-shots", cfg.it_shots, "Shots per inversion/swap-test circuit")->capture_default_str();
    run->add_option("--rm-settings", cfg.rm_settings, "Random measurement bases")->capture_default_str();
    run->add_option("--rm-shots", cfg.rm_shots, "Shots per measurement basis")->capture_default_str();
    run->add_option("--aggregation", aggregation, "Ensemble score aggregation: mean or max")->capture_default_str();
    run->add_option("--seeds", cfg.seeds, "Seeds to run")->capture_default_str();
    run->add_option("--fraud-csv-path", cfg.fraud_csv_path, "Credit-card fraud CSV")->envname("QOCSVM_FRAUD_CSV");
    run->add_option("--output,-o", output, "JSON-lines output file (default stdout)");
    run->add_option("--threshold", cfg.threshold, "Outlier-score threshold for anomaly labels")->capture_default_str();
    run->add_option("--solver-tolerance", cfg.solver_tolerance)->capture_default_str();
    run->add_option("--threads", cfg.threads, "Workers for kernel matrix assembly (0 = all cores)")
        ->capture_default_str();
    run->add_flag("--parallel", cfg.parallel, "Run seeds concurrently");
    run->add_flag("--no-timing", no_timing, "Leave wall-clock fields out of the records");

    std::vector<std::string> inputs;
    std::string summary_out;
    auto *summarize = app.add_subcommand("summarize", "Mean and standard deviation per configuration, as CSV");
    summarize->add_option("inputs", inputs, "JSON-lines record files")->required()->check(CLI::ExistingFile);
    summarize->add_option("--output,-o", summary_out, "CSV output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            cfg.record_timing = !no_timing;
            return run_command(cfg, method, aggregation, num_features, ratio, output);
        }
        return summarize_command(inputs, summary_out);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
