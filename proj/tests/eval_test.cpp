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

#include "qocsvm/eval.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "oracles/metrics_oracle.hpp"

using namespace qocsvm;

namespace {

constexpr Label N = Label::normal;
constexpr Label A = Label::anomaly;

}  // namespace

TEST(confusion, all_correct) {
    const std::vector<Label> y{A, N, N, A};
    const Confusion c = confusion(y, y);
    EXPECT_EQ(c.fp, 0u);
    EXPECT_EQ(c.fn, 0u);
    EXPECT_EQ(c.tp, 2u);
    EXPECT_EQ(c.tn, 2u);
}

TEST(confusion, all_normal) {
    const std::vector<Label> y(5, N);
    const Confusion c = confusion(y, y);
    EXPECT_EQ(c.tp, 0u);
    EXPECT_EQ(c.tn, 5u);
}

TEST(confusion, hand_counted_case) {
    const std::vector<Label> y{A, A, N, N, A, N};
    const std::vector<Label> p{A, N, A, N, A, N};
    EXPECT_EQ(confusion(y, p), (Confusion{2, 1, 2, 1}));
    EXPECT_THROW(confusion(y, std::vector<Label>{A}), std::invalid_argument);
}

TEST(precision_recall, empty_denominators) {
    EXPECT_EQ(precision(Confusion{0, 0, 4, 1}), 0.0);
    EXPECT_EQ(recall(Confusion{0, 2, 4, 0}), 0.0);
}

TEST(f1, examples) {
    EXPECT_EQ(f1(1.0, 1.0), 1.0);
    EXPECT_EQ(f1(0.5, 0.5), 0.5);
    EXPECT_NEAR(f1(1.0, 0.5), 0.6667, 1e-4);
    EXPECT_EQ(f1(0.0, 0.0), 0.0);
    EXPECT_EQ(f1(0.3, 0.8), f1(0.8, 0.3));
}

TEST(average_precision, perfect_ranking) {
    EXPECT_EQ(average_precision(std::vector<double>{0.9, 0.8, 0.1, 0.05}, std::vector<Label>{A, A, N, N}), 1.0);
    EXPECT_EQ(average_precision(std::vector<double>{0.3, 0.2}, std::vector<Label>{A, A}), 1.0);
}

TEST(average_precision, interleaved_example) {
    // 0.5 * 1 + 0.5 * 2/3
    EXPECT_NEAR(average_precision(std::vector<double>{0.9, 0.8, 0.7, 0.6}, std::vector<Label>{A, N, A, N}), 5.0 / 6.0,
                1e-15);
}

TEST(average_precision, ties_keep_index_order) {
    const std::vector<double> s{0.5, 0.5, 0.5};
    EXPECT_DOUBLE_EQ(average_precision(s, std::vector<Label>{A, N, N}), 1.0);
    EXPECT_DOUBLE_EQ(average_precision(s, std::vector<Label>{N, N, A}), 1.0 / 3.0);
}

TEST(average_precision, needs_an_anomaly) {
    EXPECT_THROW(average_precision(std::vector<double>{0.1, 0.2}, std::vector<Label>{N, N}), std::invalid_argument);
}

TEST(average_precision, invariant_under_monotone_transform) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2, 2);
    std::vector<double> s(40), t(40);
    std::vector<Label> y(40);
    for (std::size_t i = 0; i < 40; ++i) {
        s[i] = u(rng);
        t[i] = std::exp(3.0 * s[i]) - 7.0;
        y[i] = i % 3 == 0 ? A : N;
    }
    EXPECT_EQ(average_precision(s, y), average_precision(t, y));
}

TEST(average_precision, matches_threshold_enumeration) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 3 + trial % 20;
        std::vector<double> s(n);
        std::vector<int> yi(n);
        std::vector<Label> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = u(rng);
            yi[i] = u(rng) < 0.3 ? 1 : 0;
        }
        yi[trial % n] = 1;
        for (std::size_t i = 0; i < n; ++i) y[i] = yi[i] ? A : N;
        EXPECT_NEAR(average_precision(s, y), oracle::average_precision(s, yi), 1e-12);
    }
}

TEST(evaluate, fills_report) {
    const std::vector<Label> y{A, N, A, N, N};
    const std::vector<double> s{0.9, 0.1, 0.4, 0.5, -1.0};
    const std::vector<Label> p{A, N, N, A, N};
    const MetricsReport m = evaluate(y, s, p);
    EXPECT_EQ(m.counts.total(), 5u);
    EXPECT_DOUBLE_EQ(m.precision, 0.5);
    EXPECT_DOUBLE_EQ(m.recall, 0.5);
    EXPECT_DOUBLE_EQ(m.f1, 0.5);
    EXPECT_NEAR(m.average_precision, 0.5 * 1.0 + 0.5 * (2.0 / 3.0), 1e-15);
}
