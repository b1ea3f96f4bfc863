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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qocsvm {
namespace {

constexpr double kNormTolerance = 1e-10;

std::size_t checked_dimension(std::size_t num_qubits) {
    if (num_qubits == 0) {
        throw std::invalid_argument("statevector needs at least one qubit");
    }
    if (num_qubits > 30) {
        throw std::invalid_argument("statevector with " + std::to_string(num_qubits) +
                                    " qubits exceeds the dense simulator limit of 30");
    }
    return std::size_t{1} << num_qubits;
}

// Stride between the two amplitudes a gate on `qubit` mixes; qubit 0 is the MSB.
std::size_t stride_of(std::size_t qubit, std::size_t num_qubits) {
    return std::size_t{1} << (num_qubits - 1 - qubit);
}

void apply_hadamard_layer(Statevector &state) {
    for (std::size_t q = 0; q < state.num_qubits(); ++q) {
        state.apply_gate(q, kHadamard);
    }
}

}  // namespace

const Gate2 kHadamard = {Amplitude{std::numbers::sqrt2 / 2, 0}, Amplitude{std::numbers::sqrt2 / 2, 0},
                         Amplitude{std::numbers::sqrt2 / 2, 0}, Amplitude{-std::numbers::sqrt2 / 2, 0}};
const Gate2 kIdentity = {Amplitude{1, 0}, Amplitude{0, 0}, Amplitude{0, 0}, Amplitude{1, 0}};

Statevector::Statevector(std::size_t num_qubits)
    : num_qubits_(num_qubits), amplitudes_(checked_dimension(num_qubits)) {
    amplitudes_[0] = 1.0;
}

Statevector::Statevector(std::size_t num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != checked_dimension(num_qubits)) {
        throw std::invalid_argument("statevector length " + std::to_string(amplitudes_.size()) +
                                    " is not 2^" + std::to_string(num_qubits));
    }
    if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
        throw std::invalid_argument("statevector is not normalized");
    }
}

Statevector Statevector::basis_state(std::size_t num_qubits, std::size_t index) {
    Statevector s(num_qubits);
    if (index >= s.dimension()) {
        throw std::out_of_range("basis index out of range");
    }
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[index] = 1.0;
    return s;
}

double Statevector::norm_squared() const { return simd::inner_product(amplitudes_, amplitudes_).real(); }

std::vector<double> Statevector::probabilities() const {
    std::vector<double> p(amplitudes_.size());
    simd::squared_magnitudes(amplitudes_, p);
    return p;
}

void Statevector::apply_gate(std::size_t qubit, const Gate2 &gate) {
    if (qubit >= num_qubits_) {
        throw std::out_of_range("gate target qubit " + std::to_string(qubit) + " out of range");
    }
    simd::apply_1q(amplitudes_, stride_of(qubit, num_qubits_), gate);
}

void Statevector::apply_diagonal(std::span<const Amplitude> diagonal) {
    simd::multiply_diagonal(amplitudes_, diagonal);
}

void FeatureMapConfig::validate() const {
    if (num_qubits == 0) throw std::invalid_argument("feature map needs at least one qubit");
    if (layers == 0) throw std::invalid_argument("feature map needs at least one layer");
    if (!(angle_scale > 0.0)) throw std::invalid_argument("feature map angle scale must be positive");
}

std::uint64_t OutcomeHistogram::count(std::string_view bitstring) const {
    if (bitstring.size() != num_qubits) {
        throw std::invalid_argument("bitstring length does not match qubit count");
    }
    return counts.at(from_bitstring(bitstring));
}

std::string to_bitstring(std::size_t index, std::size_t num_qubits) {
    std::string s(num_qubits, '0');
    for (std::size_t q = 0; q < num_qubits; ++q) {
        if ((index >> (num_qubits - 1 - q)) & 1U) s[q] = '1';
    }
    return s;
}

std::size_t from_bitstring(std::string_view bitstring) {
    std::size_t index = 0;
    for (char c : bitstring) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bitstring may only contain '0' and '1'");
        }
        index = (index << 1) | static_cast<std::size_t>(c == '1');
    }
    return index;
}

std::vector<Amplitude> iqp_phases(std::span<const double> x, const FeatureMapConfig &cfg) {
    cfg.validate();
    if (x.size() != cfg.num_qubits) {
        throw std::invalid_argument("feature map expects " + std::to_string(cfg.num_qubits) +
                                    " features, got " + std::to_string(x.size()));
    }
    const std::size_t d = cfg.num_qubits;
    const std::size_t dim = checked_dimension(d);
    const double s = cfg.angle_scale;
    std::vector<Amplitude> diag(dim);
    std::vector<double> z(d);
    for (std::size_t b = 0; b < dim; ++b) {
        for (std::size_t j = 0; j < d; ++j) {
            z[j] = ((b >> (d - 1 - j)) & 1U) ? -1.0 : 1.0;
        }
        double phi = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            phi -= 0.5 * (s * x[j]) * z[j];
        }
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t k = j + 1; k < d; ++k) {
                phi -= 0.5 * (s * s * x[j] * x[k]) * z[j] * z[k];
            }
        }
        diag[b] = std::polar(1.0, phi);
    }
    return diag;
}

Statevector encode_iqp(std::span<const double> x, const FeatureMapConfig &cfg) {
    const auto diag = iqp_phases(x, cfg);
    Statevector state(cfg.num_qubits);
    for (std::size_t layer = 0; layer < cfg.layers; ++layer) {
        apply_hadamard_layer(state);
        state.apply_diagonal(diag);
    }
    return state;
}

Statevector apply_iqp_adjoint(Statevector state, std::span<const double> x, const FeatureMapConfig &cfg) {
    auto diag = iqp_phases(x, cfg);
    if (state.num_qubits() != cfg.num_qubits) {
        throw std::invalid_argument("adjoint feature map: qubit count mismatch");
    }
    for (auto &p : diag) p = std::conj(p);
    for (std::size_t layer = 0; layer < cfg.layers; ++layer) {
        state.apply_diagonal(diag);
        apply_hadamard_layer(state);
    }
    return state;
}

LocalHaarSetting sample_haar_setting(std::size_t num_qubits, Rng &rng) {
    if (num_qubits == 0) {
        throw std::invalid_argument("Haar setting needs at least one qubit");
    }
    std::normal_distribution<double> gauss(0.0, std::numbers::sqrt2 / 2);
    LocalHaarSetting setting;
    setting.unitaries.reserve(num_qubits);
    for (std::size_t q = 0; q < num_qubits; ++q) {
        // Ginibre columns, then Gram-Schmidt. GS leaves R with a positive real
        // diagonal, which is the phase convention that makes Q Haar on U(2).
        Amplitude c0[2], c1[2];
        for (auto &v : c0) v = {gauss(rng), gauss(rng)};
        for (auto &v : c1) v = {gauss(rng), gauss(rng)};
        const double n0 = std::sqrt(std::norm(c0[0]) + std::norm(c0[1]));
        c0[0] /= n0;
        c0[1] /= n0;
        const Amplitude proj = std::conj(c0[0]) * c1[0] + std::conj(c0[1]) * c1[1];
        c1[0] -= proj * c0[0];
        c1[1] -= proj * c0[1];
        const double n1 = std::sqrt(std::norm(c1[0]) + std::norm(c1[1]));
        c1[0] /= n1;
        c1[1] /= n1;
        // Remove the global phase so det U = 1.
        const Amplitude det = c0[0] * c1[1] - c1[0] * c0[1];
        const Amplitude fix = std::polar(1.0, -0.5 * std::arg(det));
        setting.unitaries.push_back({c0[0] * fix, c1[0] * fix, c0[1] * fix, c1[1] * fix});
    }
    return setting;
}

Statevector apply_local(const Statevector &state, const LocalHaarSetting &setting) {
    if (setting.num_qubits() != state.num_qubits()) {
        throw std::invalid_argument("local rotation has " + std::to_string(setting.num_qubits()) +
                                    " unitaries for a " + std::to_string(state.num_qubits()) + "-qubit state");
    }
    Statevector out = state;
    for (std::size_t q = 0; q < setting.num_qubits(); ++q) {
        out.apply_gate(q, setting.unitaries[q]);
    }
    return out;
}

std::vector<std::uint64_t> sample_counts(std::span<const double> probabilities, std::uint64_t shots, Rng &rng) {
    const std::size_t n = probabilities.size();
    std::vector<double> tail(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        tail[i] = tail[i + 1] + std::max(probabilities[i], 0.0);
    }
    if (!(tail[0] > 0.0)) {
        throw std::invalid_argument("cannot sample from an all-zero distribution");
    }
    // Sequential conditional binomials give an exact multinomial draw.
    std::vector<std::uint64_t> counts(n, 0);
    std::uint64_t remaining = shots;
    for (std::size_t i = 0; i < n && remaining > 0; ++i) {
        const double p = std::max(probabilities[i], 0.0);
        if (p == 0.0) continue;
        if (tail[i + 1] <= 0.0) {
            counts[i] = remaining;
            remaining = 0;
            break;
        }
        const double q = std::clamp(p / tail[i], 0.0, 1.0);
        std::binomial_distribution<std::uint64_t> draw(remaining, q);
        counts[i] = draw(rng);
        remaining -= counts[i];
    }
    return counts;
}

OutcomeHistogram measure(const Statevector &state, std::uint64_t shots, Rng &rng) {
    if (shots == 0) {
        throw std::invalid_argument("measure: shots must be at least 1");
    }
    const auto probs = state.probabilities();
    return OutcomeHistogram{state.num_qubits(), shots, sample_counts(probs, shots, rng)};
}

Amplitude inner_product(const Statevector &a, const Statevector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("inner product of states with different qubit counts");
    }
    return simd::inner_product(a.amplitudes(), b.amplitudes());
}

}  // namespace qocsvm
