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

#include "qocsvm/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gtest/gtest.h"

using namespace qocsvm;

namespace {

RunConfig small(Method m) {
    RunConfig c;
    c.method = m;
    c.train_size = 100;
    c.seeds = {0, 1, 2};
    c.it_shots = 200;
    c.rm_settings = 10;
    c.rm_shots = 300;
    return c;
}

/// Fraud-shaped CSV with Gaussian normals and shifted anomalies.
std::filesystem::path write_fake_fraud(std::size_t normals, std::size_t anomalies) {
    const auto p = std::filesystem::temp_directory_path() / "qocsvm_fake_fraud.csv";
    std::ofstream out(p);
    out << "\"Time\"";
    for (int k = 1; k <= 28; ++k) out << ",\"V" << k << '"';
    out << ",\"Amount\",\"Class\"\n";
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (std::size_t i = 0; i < normals + anomalies; ++i) {
        const bool anomaly = i % ((normals + anomalies) / anomalies) == 0 && i / ((normals + anomalies) / anomalies) < anomalies;
        out << i;
        for (int k = 1; k <= 28; ++k) out << ',' << g(rng) * (1.0 + 0.1 * k) + (anomaly ? 3.0 : 0.0);
        out << ',' << 10.0 << ",\"" << (anomaly ? 1 : 0) << "\"\n";
    }
    return p;
}

}  // namespace

TEST(method, names_round_trip) {
    for (Method m : {Method::rbf, Method::exact, Method::it, Method::swap, Method::rm, Method::rm_unmitigated,
                     Method::vs_it, Method::vs_rm, Method::vs_rfb_rm}) {
        EXPECT_EQ(parse_method(method_name(m)), m);
    }
    EXPECT_THROW(parse_method("qsvm"), std::invalid_argument);
    EXPECT_EQ(method_kernel(Method::rm_unmitigated), KernelKind::randomized);
    EXPECT_TRUE(is_ensemble(Method::vs_rfb_rm));
}

TEST(run_experiment, rbf_records_have_expected_shape) {
    RunConfig c = small(Method::rbf);
    c.seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14};
    const auto recs = run_experiment(c);
    ASSERT_EQ(recs.size(), 15u);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto &r = recs[i];
        ASSERT_TRUE(r.ok) << r.error;
        EXPECT_EQ(r.seed, i);
        EXPECT_GE(r.metrics.average_precision, 0.0);
        EXPECT_LE(r.metrics.average_precision, 1.0);
        EXPECT_LT(r.metrics.train_time_s, 60.0);
        EXPECT_EQ(r.n_test, 125u);
        EXPECT_EQ(r.n_test_anomalies, 37u);
        EXPECT_EQ(r.metrics.counts.total(), 125u);
    }
}

TEST(run_experiment, every_method_runs) {
    for (Method m : {Method::exact, Method::it, Method::swap, Method::rm, Method::rm_unmitigated}) {
        RunConfig c = small(m);
        c.seeds = {4};
        const auto recs = run_experiment(c);
        ASSERT_TRUE(recs[0].ok) << method_name(m) << ": " << recs[0].error;
        EXPECT_EQ(recs[0].components, 1u);
    }
}

TEST(run_experiment, vs_it_reports_five_components) {
    RunConfig c = small(Method::vs_it);
    c.train_size = 500;
    c.seeds = {0, 1};
    c.it_shots = 50;
    for (const auto &r : run_experiment(c)) {
        ASSERT_TRUE(r.ok) << r.error;
        EXPECT_EQ(r.components, 5u);
        EXPECT_FALSE(r.r_prime.has_value());
    }
}

TEST(run_experiment, vs_rfb_rm_on_fraud_reports_rotation_dim) {
    const auto csv = write_fake_fraud(1200, 40);
    RunConfig c = small(Method::vs_rfb_rm);
    c.dataset = "fraud";
    c.fraud_csv_path = csv.string();
    c.train_size = 200;
    c.seeds = {0, 1};
    for (const auto &r : run_experiment(c)) {
        ASSERT_TRUE(r.ok) << r.error;
        EXPECT_EQ(r.config.features(), 6u);
        ASSERT_TRUE(r.r_prime.has_value());
        EXPECT_EQ(*r.r_prime, 4u);
        EXPECT_EQ(r.components, 2u);
        EXPECT_EQ(r.n_test_anomalies, 6u);
    }
    std::filesystem::remove(csv);
}

TEST(run_experiment, failing_seed_is_recorded) {
    const auto csv = write_fake_fraud(300, 3);
    RunConfig c = small(Method::rbf);
    c.dataset = "fraud";
    c.fraud_csv_path = csv.string();
    // 6 anomalies needed, 3 available
    const auto recs = run_experiment(c);
    ASSERT_EQ(recs.size(), 3u);
    for (const auto &r : recs) {
        EXPECT_FALSE(r.ok);
        EXPECT_NE(r.error.find("anomalies"), std::string::npos);
    }
    std::filesystem::remove(csv);
}

TEST(run_experiment, config_validation) {
    RunConfig c = small(Method::rbf);
    c.dataset = "mnist";
    EXPECT_THROW(run_experiment(c), std::invalid_argument);
    c = small(Method::rbf);
    c.dataset = "fraud";
    EXPECT_THROW(run_experiment(c), std::invalid_argument);
    c = small(Method::rbf);
    c.num_features = 3;
    EXPECT_THROW(run_experiment(c), std::invalid_argument);
}

TEST(run_experiment, parallel_matches_sequential) {
    RunConfig c = small(Method::it);
    c.record_timing = false;
    std::ostringstream a, b;
    write_records(a, run_experiment(c));
    c.parallel = true;
    c.threads = 2;
    write_records(b, run_experiment(c));
    EXPECT_EQ(a.str(), b.str());
}

TEST(records, json_field_names) {
    RunConfig c = small(Method::vs_rm);
    c.seeds = {0};
    c.train_size = 120;
    const auto j = to_json(run_experiment(c)[0]);
    for (const char *key : {"method", "dataset", "seed", "n_train", "d", "ap", "f1", "precision", "recall",
                            "train_time_s", "test_time_s", "kernel_evals", "components", "r_prime"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    c.record_timing = false;
    const auto k = to_json(run_experiment(c)[0]);
    EXPECT_FALSE(k.contains("train_time_s"));
    EXPECT_FALSE(k.contains("phases"));
}

TEST(records, json_round_trip) {
    RunConfig c = small(Method::exact);
    const auto recs = run_experiment(c);
    std::stringstream s;
    write_records(s, recs);
    const auto back = read_records(s);
    ASSERT_EQ(back.size(), recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        EXPECT_EQ(back[i].seed, recs[i].seed);
        EXPECT_EQ(back[i].metrics.average_precision, recs[i].metrics.average_precision);
        EXPECT_EQ(back[i].metrics.counts, recs[i].metrics.counts);
        EXPECT_EQ(to_json(back[i]).dump(), to_json(recs[i]).dump());
    }
}

TEST(summarize, single_record_has_zero_std) {
    RunRecord r;
    r.ok = true;
    r.metrics.average_precision = 0.7;
    const auto rows = summarize({r});
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].runs, 1u);
    EXPECT_EQ(rows[0].stats.at("ap").mean, 0.7);
    EXPECT_EQ(rows[0].stats.at("ap").std, 0.0);
}

TEST(summarize, mean_and_sample_std) {
    RunRecord a, b;
    a.ok = b.ok = true;
    a.metrics.average_precision = 0.4;
    b.metrics.average_precision = 0.6;
    const auto rows = summarize({a, b});
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_NEAR(rows[0].stats.at("ap").mean, 0.5, 1e-15);
    EXPECT_NEAR(rows[0].stats.at("ap").std, 0.1414, 1e-4);
}

TEST(summarize, groups_and_skips_failures) {
    RunRecord a, b, f;
    a.ok = b.ok = true;
    b.config.method = Method::it;
    b.config.train_size = 200;
    f.ok = false;
    const auto rows = summarize({a, b, f});
    EXPECT_EQ(rows.size(), 2u);
    EXPECT_THROW(summarize({}), std::invalid_argument);
    EXPECT_THROW(summarize({f}), std::invalid_argument);
}

TEST(summarize, csv_round_trip) {
    RunConfig c = small(Method::rbf);
    auto recs = run_experiment(c);
    RunConfig d = small(Method::exact);
    d.record_timing = false;
    for (auto &r : run_experiment(d)) recs.push_back(r);
    const auto rows = summarize(recs);
    std::stringstream s;
    write_summary_csv(s, rows);
    EXPECT_EQ(read_summary_csv(s), rows);
    // untimed group leaves timing columns empty
    const auto exact = std::find_if(rows.begin(), rows.end(), [](const SummaryRow &r) { return r.method == "exact"; });
    ASSERT_NE(exact, rows.end());
    EXPECT_EQ(exact->stats.count("train_time_s"), 0u);
}
