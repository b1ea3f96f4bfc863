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

#include "qocsvm/statevec.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "oracles/circuit_oracle.hpp"

using namespace qocsvm;

namespace {

FeatureMapConfig fm(std::size_t d, std::size_t layers = 2, double lambda = 3.0) {
    FeatureMapConfig c;
    c.num_qubits = d;
    c.layers = layers;
    c.angle_scale = lambda;
    return c;
}

Statevector random_state(std::size_t d, Rng &rng) {
    std::normal_distribution<double> g;
    std::vector<Amplitude> amps(std::size_t{1} << d);
    double norm = 0.0;
    for (auto &a : amps) {
        a = {g(rng), g(rng)};
        norm += std::norm(a);
    }
    for (auto &a : amps) a /= std::sqrt(norm);
    return Statevector(d, std::move(amps));
}

void expect_matches(const Statevector &s, const oracle::Vec &v, double tol) {
    ASSERT_EQ(s.dimension(), static_cast<std::size_t>(v.size()));
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        EXPECT_NEAR(s.amplitude(i).real(), v(i).real(), tol) << "index " << i;
        EXPECT_NEAR(s.amplitude(i).imag(), v(i).imag(), tol) << "index " << i;
    }
}

}  // namespace

TEST(statevec, zero_input_returns_all_zeros_state) {
    std::vector<double> x{0.0, 0.0};
    Statevector s = encode_iqp(x, fm(2));
    EXPECT_NEAR(std::abs(s.amplitude(0) - Amplitude(1.0)), 0.0, 1e-15);
    for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(std::abs(s.amplitude(i)), 0.0, 1e-15);
}

TEST(statevec, encode_matches_frozen_dense_oracle_values) {
    // x = (0.3, -0.7), two layers, angle scale 3; from a dense expm() reference.
    const Amplitude want[4] = {{-0.2989290224814719, 0.27023446007113905},
                               {0.15899170800369583, -0.4634679352138201},
                               {-0.4712320372427774, -0.4413254608808217},
                               {0.0851678979918542, 0.4164763135269971}};
    std::vector<double> x{0.3, -0.7};
    Statevector s = encode_iqp(x, fm(2));
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(s.amplitude(i).real(), want[i].real(), 1e-12);
        EXPECT_NEAR(s.amplitude(i).imag(), want[i].imag(), 1e-12);
    }
}

TEST(statevec, encode_matches_dense_circuit_for_small_widths) {
    Rng rng(7);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (std::size_t d = 1; d <= 4; ++d) {
        for (std::size_t layers : {1, 2, 3}) {
            std::vector<double> x(d);
            for (auto &v : x) v = u(rng);
            expect_matches(encode_iqp(x, fm(d, layers, 2.5)), oracle::iqp_state(x, layers, 2.5), 1e-12);
        }
    }
}

TEST(statevec, output_is_normalized) {
    Rng rng(1);
    std::uniform_real_distribution<double> u(-4, 4);
    for (int t = 0; t < 20; ++t) {
        std::vector<double> x(5);
        for (auto &v : x) v = u(rng);
        EXPECT_NEAR(encode_iqp(x, fm(5)).norm_squared(), 1.0, 1e-10);
    }
}

TEST(statevec, adjoint_undoes_feature_map) {
    std::vector<double> x{0.4, -1.2, 0.9};
    Statevector back = apply_iqp_adjoint(encode_iqp(x, fm(3)), x, fm(3));
    EXPECT_NEAR(std::norm(back.amplitude(0)), 1.0, 1e-12);
}

TEST(statevec, diagonal_layer_order_does_not_matter) {
    // Apply the Z and ZZ factors of one block one gate at a time, in reverse
    // order, and compare with the combined diagonal.
    std::vector<double> x{0.8, -0.3, 0.5};
    const double lam = 3.0;
    Statevector a(3), b(3);
    for (std::size_t q = 0; q < 3; ++q) {
        a.apply_gate(q, kHadamard);
        b.apply_gate(q, kHadamard);
    }
    a.apply_diagonal(iqp_phases(x, fm(3)));
    std::vector<std::pair<std::size_t, std::size_t>> pairs{{1, 2}, {0, 2}, {0, 1}};
    for (auto [j, k] : pairs) {
        std::vector<Amplitude> diag(8);
        for (std::size_t i = 0; i < 8; ++i) {
            const int zj = (i >> (2 - j)) & 1 ? -1 : 1, zk = (i >> (2 - k)) & 1 ? -1 : 1;
            diag[i] = std::polar(1.0, -0.5 * lam * lam * x[j] * x[k] * zj * zk);
        }
        b.apply_diagonal(diag);
    }
    for (std::size_t q = 3; q-- > 0;) {
        std::vector<Amplitude> diag(8);
        for (std::size_t i = 0; i < 8; ++i) diag[i] = std::polar(1.0, -0.5 * lam * x[q] * ((i >> (2 - q)) & 1 ? -1 : 1));
        b.apply_diagonal(diag);
    }
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(a.amplitude(i) - b.amplitude(i)), 0.0, 1e-12);
}

TEST(statevec, encode_rejects_bad_input) {
    std::vector<double> x{0.1, 0.2, 0.3};
    EXPECT_THROW(encode_iqp(x, fm(2)), std::invalid_argument);
    std::vector<double> none;
    EXPECT_THROW(encode_iqp(none, fm(0)), std::invalid_argument);
    EXPECT_THROW(encode_iqp(x, fm(3, 0)), std::invalid_argument);
    EXPECT_THROW(encode_iqp(x, fm(3, 2, -1.0)), std::invalid_argument);
}

TEST(statevec, constructor_checks_length_and_norm) {
    EXPECT_THROW(Statevector(2, std::vector<Amplitude>(3, 0.5)), std::invalid_argument);
    EXPECT_THROW(Statevector(1, std::vector<Amplitude>{1.0, 1.0}), std::invalid_argument);
    EXPECT_NO_THROW(Statevector(1, std::vector<Amplitude>{0.6, Amplitude(0, 0.8)}));
}

TEST(statevec, bitstrings_put_qubit_zero_first) {
    EXPECT_EQ(to_bitstring(2, 2), "10");
    EXPECT_EQ(to_bitstring(1, 3), "001");
    EXPECT_EQ(from_bitstring("110"), 6u);
    Statevector s(2);
    s.apply_gate(0, {Amplitude(0), Amplitude(1), Amplitude(1), Amplitude(0)});  // X on qubit 0
    EXPECT_EQ(s.amplitude(from_bitstring("10")), Amplitude(1.0));
}

TEST(haar, unitaries_are_unitary) {
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        LocalHaarSetting s = sample_haar_setting(3, rng);
        ASSERT_EQ(s.num_qubits(), 3u);
        for (const auto &u : s.unitaries) {
            // U^dagger U
            const Amplitude m00 = std::conj(u[0]) * u[0] + std::conj(u[2]) * u[2];
            const Amplitude m01 = std::conj(u[0]) * u[1] + std::conj(u[2]) * u[3];
            const Amplitude m11 = std::conj(u[1]) * u[1] + std::conj(u[3]) * u[3];
            EXPECT_LT(std::abs(m00 - 1.0), 1e-10);
            EXPECT_LT(std::abs(m01), 1e-10);
            EXPECT_LT(std::abs(m11 - 1.0), 1e-10);
            // special unitary
            EXPECT_LT(std::abs(u[0] * u[3] - u[1] * u[2] - 1.0), 1e-10);
        }
    }
}

TEST(haar, seeded_draws_are_reproducible) {
    Rng a(11), b(11), c(12);
    const auto sa = sample_haar_setting(4, a), sb = sample_haar_setting(4, b), sc = sample_haar_setting(4, c);
    EXPECT_EQ(sa, sb);
    EXPECT_NE(sa, sc);
}

TEST(haar, first_moment_of_u00) {
    // E|U_00|^2 = 1/2 under Haar measure
    Rng rng(2024);
    double sum = 0.0;
    const int n = 100000;
    for (int t = 0; t < n; ++t) sum += std::norm(sample_haar_setting(1, rng).unitaries[0][0]);
    EXPECT_NEAR(sum / n, 0.5, 0.01);
}

TEST(haar, second_moment_of_u00) {
    // E|U_00|^4 = 1/3 for Haar on U(2); a biased sampler usually misses this
    Rng rng(99);
    double sum = 0.0;
    const int n = 100000;
    for (int t = 0; t < n; ++t) {
        const double p = std::norm(sample_haar_setting(1, rng).unitaries[0][0]);
        sum += p * p;
    }
    EXPECT_NEAR(sum / n, 1.0 / 3.0, 0.01);
}

TEST(apply_local, identity_setting_is_noop) {
    Rng rng(5);
    Statevector s = random_state(3, rng);
    LocalHaarSetting id{{kIdentity, kIdentity, kIdentity}};
    Statevector out = apply_local(s, id);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(out.amplitude(i), s.amplitude(i));
}

TEST(apply_local, matches_kronecker_product) {
    Rng rng(8);
    for (std::size_t d : {1, 2, 3}) {
        Statevector s = random_state(d, rng);
        LocalHaarSetting setting = sample_haar_setting(d, rng);
        oracle::Vec v(s.dimension());
        for (std::size_t i = 0; i < s.dimension(); ++i) v(i) = s.amplitude(i);
        const oracle::Vec want = oracle::local_unitary(setting.unitaries) * v;
        Statevector got = apply_local(s, setting);
        expect_matches(got, want, 1e-12);
        EXPECT_NEAR(got.norm_squared(), 1.0, 1e-10);
    }
}

TEST(apply_local, rejects_dimension_mismatch) {
    Rng rng(1);
    EXPECT_THROW(apply_local(Statevector(2), sample_haar_setting(3, rng)), std::invalid_argument);
}

TEST(measure, basis_state_is_deterministic) {
    Rng rng(4);
    OutcomeHistogram h = measure(Statevector(2), 100, rng);
    EXPECT_EQ(h.shots, 100u);
    EXPECT_EQ(h.count("00"), 100u);
    EXPECT_EQ(h.count("01") + h.count("10") + h.count("11"), 0u);
}

TEST(measure, uniform_superposition_frequency) {
    Rng rng(17);
    Statevector s(1);
    s.apply_gate(0, kHadamard);
    OutcomeHistogram h = measure(s, 1000000, rng);
    // 3 sigma of a fair binomial with 1e6 draws is 0.0015
    EXPECT_NEAR(static_cast<double>(h.count("0")) / 1e6, 0.5, 0.002);
}

TEST(measure, counts_sum_to_shots) {
    Rng rng(23);
    for (std::uint64_t shots : {1u, 7u, 1000u, 12345u}) {
        Statevector s = random_state(3, rng);
        OutcomeHistogram h = measure(s, shots, rng);
        std::uint64_t total = 0;
        for (auto c : h.counts) total += c;
        EXPECT_EQ(total, shots);
    }
}

TEST(measure, zero_shots_is_an_error) {
    Rng rng(1);
    EXPECT_THROW(measure(Statevector(1), 0, rng), std::invalid_argument);
}

TEST(measure, same_seed_same_histogram) {
    Rng rng(31);
    Statevector s = random_state(3, rng);
    Rng a(77), b(77);
    EXPECT_EQ(measure(s, 5000, a).counts, measure(s, 5000, b).counts);
}

TEST(measure, multinomial_matches_probabilities) {
    Rng rng(41);
    std::vector<double> p{0.1, 0.2, 0.3, 0.4};
    const std::uint64_t n = 400000;
    auto c = sample_counts(p, n, rng);
    for (std::size_t i = 0; i < 4; ++i) {
        const double sd = std::sqrt(p[i] * (1 - p[i]) / n);
        EXPECT_NEAR(static_cast<double>(c[i]) / n, p[i], 4 * sd);
    }
}

TEST(inner_product, basic_identities) {
    Rng rng(9);
    Statevector a = random_state(3, rng), b = random_state(3, rng);
    EXPECT_NEAR(std::abs(inner_product(a, a) - Amplitude(1.0)), 0.0, 1e-10);
    const Amplitude ab = inner_product(a, b), ba = inner_product(b, a);
    EXPECT_EQ(ab, std::conj(ba));
    EXPECT_EQ(inner_product(Statevector::basis_state(2, 0), Statevector::basis_state(2, 3)), Amplitude(0.0));
    EXPECT_THROW(inner_product(Statevector(2), Statevector(3)), std::invalid_argument);
}
