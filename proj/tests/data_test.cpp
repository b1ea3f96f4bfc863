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

#include "qocsvm/data.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "gtest/gtest.h"

using namespace qocsvm;

namespace {

const std::filesystem::path kFixtures = QOCSVM_FIXTURE_DIR;

std::filesystem::path temp_path(const std::string &name) {
    return std::filesystem::temp_directory_path() / name;
}

void write_text(const std::filesystem::path &p, const std::string &text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

Dataset fake_source(std::size_t normals, std::size_t anomalies) {
    Dataset d;
    d.name = "fake";
    d.features = Matrix(normals + anomalies, 3);
    for (std::size_t i = 0; i < normals + anomalies; ++i) {
        d.features(i, 0) = static_cast<double>(i);
        d.labels.push_back(i % 7 == 3 && anomalies > 0 && i / 7 < anomalies ? Label::anomaly : Label::normal);
        d.source_rows.push_back(i);
    }
    return d;
}

}  // namespace

TEST(synthetic, shapes_and_labels) {
    auto [train, test] = generate_synthetic(500, SplitSpec{}, 0);
    EXPECT_EQ(train.size(), 500u);
    EXPECT_EQ(train.features.cols(), 2u);
    EXPECT_EQ(train.anomaly_count(), 0u);
    EXPECT_EQ(test.size(), 125u);
    EXPECT_EQ(test.anomaly_count(), 37u);
}

TEST(synthetic, deterministic_per_seed) {
    EXPECT_EQ(generate_synthetic(100, SplitSpec{}, 3), generate_synthetic(100, SplitSpec{}, 3));
    EXPECT_NE(generate_synthetic(100, SplitSpec{}, 3).first.features, generate_synthetic(100, SplitSpec{}, 4).first.features);
}

TEST(synthetic, normal_points_form_two_clusters) {
    auto [train, test] = generate_synthetic(2000, SplitSpec{}, 1);
    std::size_t upper = 0;
    double sx = 0.0;
    for (std::size_t r = 0; r < train.size(); ++r) {
        upper += train.features(r, 0) > 0.0;
        sx += std::abs(train.features(r, 0));
    }
    EXPECT_EQ(upper, 1000u);
    EXPECT_NEAR(sx / 2000.0, 2.0, 0.05);
    for (std::size_t r = 0; r < test.size(); ++r) {
        if (test.labels[r] != Label::anomaly) continue;
        EXPECT_LE(std::abs(test.features(r, 0)), 4.0);
        EXPECT_LE(std::abs(test.features(r, 1)), 4.0);
    }
}

TEST(fraud_csv, fixture_parses) {
    const Dataset d = load_fraud_csv(kFixtures / "fraud_small.csv");
    ASSERT_EQ(d.size(), 3u);
    ASSERT_EQ(d.features.cols(), 28u);
    EXPECT_DOUBLE_EQ(d.features(0, 0), 0.51);
    EXPECT_DOUBLE_EQ(d.features(0, 1), -0.252);
    EXPECT_DOUBLE_EQ(d.features(0, 27), -0.278);
    EXPECT_DOUBLE_EQ(d.features(2, 0), 1.51);
    EXPECT_DOUBLE_EQ(d.features(2, 26), 1.77);
    EXPECT_EQ(d.labels, (std::vector<Label>{Label::normal, Label::anomaly, Label::normal}));
    EXPECT_EQ(d.anomaly_count(), 1u);
}

TEST(fraud_csv, missing_value_names_row_and_column) {
    try {
        load_fraud_csv(kFixtures / "fraud_missing_v7.csv");
        FAIL() << "expected a parse error";
    } catch (const NonNumericError &e) {
        EXPECT_EQ(e.row(), 3u);
        EXPECT_EQ(e.column(), "V7");
        EXPECT_NE(std::string(e.what()).find("V7"), std::string::npos);
    }
}

TEST(fraud_csv, distinct_errors) {
    const auto p = temp_path("qocsvm_fraud_errors.csv");
    write_text(p, "");
    EXPECT_THROW(load_fraud_csv(p), EmptyFileError);
    write_text(p, "Time,V1,Amount,Class\n1,2,3,0\n");
    try {
        load_fraud_csv(p);
        FAIL() << "expected a missing-column error";
    } catch (const MissingColumnError &e) {
        EXPECT_EQ(e.column(), "V2");
    }
    std::string header = "Time";
    for (int k = 1; k <= 28; ++k) header += ",V" + std::to_string(k);
    header += ",Amount,Class\n";
    std::string row = "0";
    for (int k = 1; k <= 28; ++k) row += ",0.5";
    write_text(p, header + row + ",1.0,0\n" + row + ",abc,0\n");
    // Amount is dropped, so a bad Amount does not matter; bad V cells do
    EXPECT_NO_THROW(load_fraud_csv(p));
    write_text(p, header + row + ",1.0,0\n" + "0,x" + row.substr(5) + ",1.0,0\n");
    EXPECT_THROW(load_fraud_csv(p), NonNumericError);
    write_text(p, header + row + ",1.0\n");
    EXPECT_THROW(load_fraud_csv(p), MalformedRowError);
    write_text(p, header + row + ",1.0,2\n");
    EXPECT_THROW(load_fraud_csv(p), NonNumericError);
    write_text(p, header);
    EXPECT_THROW(load_fraud_csv(p), EmptyFileError);
    std::filesystem::remove(p);
}

TEST(split, fraud_defaults) {
    const Dataset src = fake_source(2000, 60);
    SplitSpec spec;
    spec.test_anomaly_ratio = 0.05;
    auto [train, test] = make_split(src, spec, 0);
    EXPECT_EQ(train.size(), 500u);
    EXPECT_EQ(train.anomaly_count(), 0u);
    EXPECT_EQ(test.size(), 125u);
    EXPECT_EQ(test.anomaly_count(), 6u);
}

TEST(split, disjoint_and_seed_dependent) {
    const Dataset src = fake_source(1500, 60);
    SplitSpec spec;
    auto [train, test] = make_split(src, spec, 0);
    std::set<std::size_t> a(train.source_rows.begin(), train.source_rows.end());
    ASSERT_EQ(a.size(), train.size());
    for (auto r : test.source_rows) EXPECT_EQ(a.count(r), 0u);
    auto [train1, test1] = make_split(src, spec, 1);
    EXPECT_NE(train.source_rows, train1.source_rows);
    auto [again, test_again] = make_split(src, spec, 0);
    EXPECT_EQ(train.source_rows, again.source_rows);
    EXPECT_EQ(test.source_rows, test_again.source_rows);
}

TEST(split, insufficient_points) {
    SplitSpec spec;
    EXPECT_THROW(make_split(fake_source(400, 60), spec, 0), InsufficientDataError);
    EXPECT_THROW(make_split(fake_source(2000, 0), spec, 0), InsufficientDataError);
}

TEST(dataset_cache, round_trip_and_corruption) {
    const auto p = temp_path("qocsvm_dataset.bin");
    auto [train, test] = generate_synthetic(50, SplitSpec{}, 9);
    save_dataset(test, p);
    EXPECT_EQ(load_dataset(p), test);
    std::filesystem::resize_file(p, std::filesystem::file_size(p) - 1);
    EXPECT_THROW(load_dataset(p), DatasetCacheError);
    write_text(p, "QDSX");
    EXPECT_THROW(load_dataset(p), DatasetCacheError);
    std::filesystem::remove(p);
}
