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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qocsvm/random.hpp"
#include "qocsvm/simd/kernels.hpp"

namespace qocsvm {

using Amplitude = std::complex<double>;
using Gate2 = simd::Gate2;

/// Pure state of `num_qubits` qubits. Basis index bits are read with qubit 0 as
/// the most significant bit, so index 0b10 on two qubits is |10>.
class Statevector {
  public:
    /// |0...0> on num_qubits qubits.
    explicit Statevector(std::size_t num_qubits);

    /// Takes ownership of `amplitudes`; throws unless the length is
    /// 2^num_qubits and the norm is 1 within 1e-10.
    Statevector(std::size_t num_qubits, std::vector<Amplitude> amplitudes);

    static Statevector basis_state(std::size_t num_qubits, std::size_t index);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    Amplitude amplitude(std::size_t index) const { return amplitudes_.at(index); }

    double norm_squared() const;

    /// Born probabilities |a_i|^2.
    std::vector<double> probabilities() const;

    void apply_gate(std::size_t qubit, const Gate2 &gate);
    void apply_diagonal(std::span<const Amplitude> diagonal);

  private:
    std::size_t num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

struct FeatureMapConfig {
    std::size_t num_qubits = 2;
    std::size_t layers = 2;
    double angle_scale = 3.0;

    void validate() const;
};

/// One 2x2 unitary per qubit; the local basis rotation U_1 (x) ... (x) U_d.
struct LocalHaarSetting {
    std::vector<Gate2> unitaries;

    std::size_t num_qubits() const { return unitaries.size(); }
    bool operator==(const LocalHaarSetting &) const = default;
};

/// Measurement record over 2^num_qubits outcomes, indexed by basis index.
struct OutcomeHistogram {
    std::size_t num_qubits = 0;
    std::uint64_t shots = 0;
    std::vector<std::uint64_t> counts;

    /// Count for a bitstring such as "01" (qubit 0 first).
    std::uint64_t count(std::string_view bitstring) const;
};

/// Bitstring for a basis index, qubit 0 first.
std::string to_bitstring(std::size_t index, std::size_t num_qubits);
std::size_t from_bitstring(std::string_view bitstring);

extern const Gate2 kHadamard;
extern const Gate2 kIdentity;

/// Diagonal of one U_Z(x) block: exp(i phi(b)) with
/// phi(b) = -1/2 * sum_j s*x_j z_j - 1/2 * sum_{j<k} s^2 x_j x_k z_j z_k, z = +1/-1 for bit 0/1.
std::vector<Amplitude> iqp_phases(std::span<const double> x, const FeatureMapConfig &cfg);

/// |Phi(x)> = (U_Z(x) H^d)^layers |0...0>.
Statevector encode_iqp(std::span<const double> x, const FeatureMapConfig &cfg);

/// Applies the inverse feature-map circuit U_Phi(x)^dagger to `state`.
Statevector apply_iqp_adjoint(Statevector state, std::span<const double> x, const FeatureMapConfig &cfg);

/// Draws d independent Haar-random SU(2) unitaries.
LocalHaarSetting sample_haar_setting(std::size_t num_qubits, Rng &rng);

/// (U_1 (x) ... (x) U_d) |state>.
Statevector apply_local(const Statevector &state, const LocalHaarSetting &setting);

/// Draws `shots` i.i.d. computational-basis outcomes with Born probabilities.
OutcomeHistogram measure(const Statevector &state, std::uint64_t shots, Rng &rng);

/// Multinomial draw of `shots` outcomes from `probabilities` (need not be
/// exactly normalized; negative rounding noise is treated as zero).
std::vector<std::uint64_t> sample_counts(std::span<const double> probabilities, std::uint64_t shots,
                                         Rng &rng);

/// <a|b>
Amplitude inner_product(const Statevector &a, const Statevector &b);

}  // namespace qocsvm
