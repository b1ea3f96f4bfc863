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

#include "qocsvm/kernel.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "qocsvm/parallel.hpp"

namespace qocsvm {
namespace {

void require_same_dim(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("kernel inputs differ in dimension (" + std::to_string(x.size()) + " vs " +
                                    std::to_string(y.size()) + ")");
    }
}

FeatureMapConfig map_for(std::size_t d, FeatureMapConfig fm) {
    fm.num_qubits = d;
    return fm;
}

double all_zero_frequency(const Statevector &state, std::uint64_t shots, Rng &rng) {
    const auto hist = measure(state, shots, rng);
    return static_cast<double>(hist.counts[0]) / static_cast<double>(shots);
}

double swap_estimate(double fidelity, std::uint64_t shots, Rng &rng) {
    if (shots == 0) throw std::invalid_argument("swap test: shots must be at least 1");
    const double p0 = std::clamp(0.5 * (1.0 + fidelity), 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> draw(shots, p0);
    const double freq = static_cast<double>(draw(rng)) / static_cast<double>(shots);
    return 2.0 * freq - 1.0;
}

// Signature laid out for post-processing: P holds the r distributions back to
// back, W holds (-2)^(-H) applied to each of them.
struct Processed {
    std::vector<double> p;
    std::vector<double> w;
};

Processed process(const RMSignature &sig) {
    const std::size_t dim = std::size_t{1} << sig.num_qubits;
    const auto coeff = hamming_coefficients(sig.num_qubits);
    Processed out;
    out.p.resize(sig.num_settings() * dim);
    out.w.resize(out.p.size());
    const double inv = 1.0 / static_cast<double>(sig.shots);
    for (std::size_t t = 0; t < sig.num_settings(); ++t) {
        for (std::size_t s = 0; s < dim; ++s) {
            out.p[t * dim + s] = static_cast<double>(sig.counts[t][s]) * inv;
        }
        simd::matvec(coeff, std::span<const double>(out.p).subspan(t * dim, dim),
                     std::span<double>(out.w).subspan(t * dim, dim));
    }
    return out;
}

double processed_entry(const Processed &a, const Processed &b, std::size_t num_qubits, std::size_t r) {
    // Both orders are summed so the entry is symmetric bit for bit.
    const double ab = simd::dot(a.w, b.p);
    const double ba = simd::dot(b.w, a.p);
    const double scale = std::ldexp(1.0, static_cast<int>(num_qubits)) / static_cast<double>(r);
    return scale * (0.5 * (ab + ba));
}

void check_compatible(const RMSignature &a, const RMSignature &b) {
    if (a.num_qubits != b.num_qubits) {
        throw std::invalid_argument("randomized signatures differ in qubit count");
    }
    if (a.num_settings() != b.num_settings()) {
        throw std::invalid_argument("randomized signatures differ in number of settings");
    }
    if (a.settings_fingerprint != b.settings_fingerprint) {
        throw std::invalid_argument("randomized signatures were measured with different settings");
    }
    if (a.num_settings() == 0) {
        throw std::invalid_argument("randomized signature has no settings");
    }
}

std::vector<Statevector> encode_rows(const Matrix &X, const FeatureMapConfig &fm, std::size_t threads) {
    std::vector<Statevector> states(X.rows(), Statevector(fm.num_qubits));
    parallel_for(X.rows(), threads, [&](std::size_t i) { states[i] = encode_iqp(X.row(i), fm); });
    return states;
}

std::vector<LocalHaarSetting> draw_settings(std::size_t d, std::size_t r, std::uint64_t seed) {
    Rng rng = make_stream(seed, StreamTag::haar_settings);
    std::vector<LocalHaarSetting> settings;
    settings.reserve(r);
    for (std::size_t t = 0; t < r; ++t) {
        settings.push_back(sample_haar_setting(d, rng));
    }
    return settings;
}

std::vector<RMSignature> measure_signatures(const Matrix &X, const KernelConfig &cfg,
                                            const std::vector<LocalHaarSetting> &settings, std::uint64_t fp,
                                            std::uint64_t seed, StreamTag tag) {
    std::vector<RMSignature> sigs(X.rows());
    parallel_for(X.rows(), cfg.threads, [&](std::size_t i) {
        Rng rng = make_stream(seed, tag, {i});
        const auto state = encode_iqp(X.row(i), cfg.feature_map);
        sigs[i] = collect_signature(state, settings, cfg.rm_shots, fp, rng);
    });
    return sigs;
}

}  // namespace

std::string_view kernel_kind_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::exact:
            return "exact";
        case KernelKind::inversion_test:
            return "inversion_test";
        case KernelKind::swap_test:
            return "swap_test";
        case KernelKind::randomized:
            return "randomized";
        case KernelKind::rbf:
            return "rbf";
    }
    return "unknown";
}

KernelKind parse_kernel_kind(std::string_view name) {
    for (auto k : {KernelKind::exact, KernelKind::inversion_test, KernelKind::swap_test, KernelKind::randomized,
                   KernelKind::rbf}) {
        if (kernel_kind_name(k) == name) return k;
    }
    throw std::invalid_argument("unknown kernel kind '" + std::string(name) + "'");
}

void KernelConfig::validate() const {
    if (it_shots == 0 || rm_shots == 0) {
        throw std::invalid_argument("kernel shot counts must be at least 1");
    }
    if (kind == KernelKind::randomized) {
        if (rm_settings < 2) throw std::invalid_argument("randomized kernel needs at least 2 settings");
        if (rm_shots < 2) throw std::invalid_argument("randomized kernel needs at least 2 shots per setting");
    }
    if (rbf_gamma && !(*rbf_gamma > 0.0)) {
        throw std::invalid_argument("RBF gamma must be positive");
    }
    if (feature_map.layers == 0) throw std::invalid_argument("feature map needs at least one layer");
    if (!(feature_map.angle_scale > 0.0)) throw std::invalid_argument("feature map angle scale must be positive");
}

GramMatrix GramMatrix::from_symmetric(std::size_t n, std::vector<double> values) {
    if (values.size() != n * n) {
        throw std::invalid_argument("Gram values do not form an n x n matrix");
    }
    GramMatrix g(n, n, true);
    g.entries = std::move(values);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (g.at(i, j) != g.at(j, i)) {
                throw std::invalid_argument("Gram matrix is not symmetric at (" + std::to_string(i) + ", " +
                                            std::to_string(j) + ")");
            }
        }
    }
    return g;
}

std::vector<double> RMSignature::distribution(std::size_t t) const {
    const auto &c = counts.at(t);
    std::vector<double> p(c.size());
    for (std::size_t s = 0; s < c.size(); ++s) {
        p[s] = static_cast<double>(c[s]) / static_cast<double>(shots);
    }
    return p;
}

std::uint64_t settings_fingerprint(std::span<const LocalHaarSetting> settings) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto mix = [&](std::uint64_t v) {
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (v >> (8 * byte)) & 0xFFU;
            h *= 0x100000001B3ULL;
        }
    };
    mix(settings.size());
    for (const auto &s : settings) {
        mix(s.num_qubits());
        for (const auto &u : s.unitaries) {
            for (const auto &z : u) {
                mix(std::bit_cast<std::uint64_t>(z.real()));
                mix(std::bit_cast<std::uint64_t>(z.imag()));
            }
        }
    }
    return h;
}

double exact_fidelity(std::span<const double> x, std::span<const double> y, const FeatureMapConfig &fm) {
    require_same_dim(x, y);
    const auto cfg = map_for(x.size(), fm);
    return std::norm(inner_product(encode_iqp(y, cfg), encode_iqp(x, cfg)));
}

double inversion_test(std::span<const double> x, std::span<const double> y, const FeatureMapConfig &fm,
                      std::uint64_t shots, Rng &rng) {
    require_same_dim(x, y);
    const auto cfg = map_for(x.size(), fm);
    return all_zero_frequency(apply_iqp_adjoint(encode_iqp(x, cfg), y, cfg), shots, rng);
}

double swap_test(std::span<const double> x, std::span<const double> y, const FeatureMapConfig &fm,
                 std::uint64_t shots, Rng &rng) {
    require_same_dim(x, y);
    const auto cfg = map_for(x.size(), fm);
    return swap_estimate(std::norm(inner_product(encode_iqp(y, cfg), encode_iqp(x, cfg))), shots, rng);
}

RMSignature collect_signature(const Statevector &state, std::span<const LocalHaarSetting> settings,
                              std::uint64_t shots, std::uint64_t fingerprint, Rng &rng) {
    if (shots == 0) throw std::invalid_argument("collect_signature: shots must be at least 1");
    RMSignature sig;
    sig.num_qubits = state.num_qubits();
    sig.shots = shots;
    sig.settings_fingerprint = fingerprint;
    sig.counts.reserve(settings.size());
    for (const auto &setting : settings) {
        if (setting.num_qubits() != state.num_qubits()) {
            throw std::invalid_argument("setting qubit count " + std::to_string(setting.num_qubits()) +
                                        " does not match the state (" + std::to_string(state.num_qubits()) + ")");
        }
        sig.counts.push_back(measure(apply_local(state, setting), shots, rng).counts);
    }
    return sig;
}

RMSignature collect_signature(std::span<const double> x, const FeatureMapConfig &fm,
                              std::span<const LocalHaarSetting> settings, std::uint64_t shots, Rng &rng) {
    const auto cfg = map_for(x.size(), fm);
    return collect_signature(encode_iqp(x, cfg), settings, shots, settings_fingerprint(settings), rng);
}

std::size_t hamming(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("hamming: bitstrings differ in length");
    }
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += a[i] != b[i];
    }
    return d;
}

std::span<const double> hamming_coefficients(std::size_t num_qubits) {
    if (num_qubits == 0 || num_qubits > 14) {
        throw std::invalid_argument("randomized post-processing supports 1..14 qubits, got " +
                                    std::to_string(num_qubits));
    }
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<std::vector<double>>> cache;
    std::lock_guard lock(mutex);
    auto &slot = cache[num_qubits];
    if (!slot) {
        const std::size_t dim = std::size_t{1} << num_qubits;
        std::vector<double> pow(num_qubits + 1);
        for (std::size_t h = 0; h <= num_qubits; ++h) {
            pow[h] = std::pow(-0.5, static_cast<double>(h));
        }
        auto table = std::make_unique<std::vector<double>>(dim * dim);
        for (std::size_t s = 0; s < dim; ++s) {
            for (std::size_t t = 0; t < dim; ++t) {
                (*table)[s * dim + t] = pow[static_cast<std::size_t>(std::popcount(s ^ t))];
            }
        }
        slot = std::move(table);
    }
    return *slot;
}

double rm_kernel_entry(const RMSignature &a, const RMSignature &b) {
    check_compatible(a, b);
    return processed_entry(process(a), process(b), a.num_qubits, a.num_settings());
}

double rm_purity(const RMSignature &sig) {
    if (sig.shots < 2) {
        throw std::invalid_argument("purity estimate needs at least 2 shots per setting");
    }
    if (sig.num_settings() == 0) {
        throw std::invalid_argument("purity estimate needs at least one setting");
    }
    const std::size_t dim = std::size_t{1} << sig.num_qubits;
    const auto coeff = hamming_coefficients(sig.num_qubits);
    const double s = static_cast<double>(sig.shots);
    std::vector<double> c(dim), oc(dim);
    double total = 0.0;
    for (const auto &counts : sig.counts) {
        for (std::size_t k = 0; k < dim; ++k) c[k] = static_cast<double>(counts[k]);
        simd::matvec(coeff, c, oc);
        // Diagonal coefficients are 1, so removing self pairs subtracts sum_s c_s = shots.
        total += (simd::dot(c, oc) - s) / (s * (s - 1.0));
    }
    return std::ldexp(1.0, static_cast<int>(sig.num_qubits)) * total / static_cast<double>(sig.num_settings());
}

double mitigate(double k, double purity_i, double purity_j) {
    if (!(purity_i > 0.0) || !(purity_j > 0.0)) {
        throw DegenerateEstimateError("cannot mitigate with non-positive purity estimates (" +
                                      std::to_string(purity_i) + ", " + std::to_string(purity_j) + ")");
    }
    return k / std::sqrt(purity_i * purity_j);
}

double rbf_entry(std::span<const double> x, std::span<const double> y, double gamma) {
    require_same_dim(x, y);
    if (!(gamma > 0.0)) throw std::invalid_argument("RBF gamma must be positive");
    return std::exp(-gamma * simd::squared_distance(x, y));
}

double rbf_auto_gamma(const Matrix &X) {
    const auto v = X.data();
    if (v.empty()) throw std::invalid_argument("RBF gamma needs a non-empty training matrix");
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double e : v) ss += (e - mean) * (e - mean);
    const double var = ss / n;
    if (!(var > 0.0)) return 1.0 / static_cast<double>(X.cols());
    return 1.0 / (static_cast<double>(X.cols()) * var);
}

TrainingGram build_gram_train(const Matrix &X, const KernelConfig &cfg_in, std::uint64_t seed) {
    cfg_in.validate();
    const std::size_t n = X.rows();
    if (n < 2) throw std::invalid_argument("training Gram needs at least 2 points");
    if (X.cols() == 0) throw std::invalid_argument("training points have no features");

    TrainingGram out;
    KernelConfig &cfg = out.context.config;
    cfg = cfg_in;
    cfg.feature_map.num_qubits = X.cols();
    out.context.train_points = X;
    GramMatrix &g = out.gram;
    g = GramMatrix(n, n, true);

    if (cfg.kind == KernelKind::randomized) {
        RandomizedContext rc;
        rc.settings = draw_settings(X.cols(), cfg.rm_settings, seed);
        rc.fingerprint = settings_fingerprint(rc.settings);
        rc.signatures = measure_signatures(X, cfg, rc.settings, rc.fingerprint, seed, StreamTag::train_signature);
        std::vector<Processed> proc(n);
        rc.purities.resize(n);
        parallel_for(n, cfg.threads, [&](std::size_t i) {
            proc[i] = process(rc.signatures[i]);
            rc.purities[i] = rm_purity(rc.signatures[i]);
        });
        if (cfg.mitigate) {
            for (std::size_t i = 0; i < n; ++i) {
                if (!(rc.purities[i] > 0.0)) {
                    throw DegenerateEstimateError("training point " + std::to_string(i) +
                                                  " has a non-positive purity estimate");
                }
            }
        }
        parallel_for(n, cfg.threads, [&](std::size_t i) {
            g.at(i, i) = cfg.mitigate ? 1.0 : rc.purities[i];
            for (std::size_t j = i + 1; j < n; ++j) {
                double k = processed_entry(proc[i], proc[j], X.cols(), cfg.rm_settings);
                if (cfg.mitigate) k = mitigate(k, rc.purities[i], rc.purities[j]);
                g.at(i, j) = k;
            }
        });
        g.eval_count = static_cast<std::uint64_t>(n) * cfg.rm_settings;
        out.context.randomized = std::move(rc);
    } else {
        if (cfg.kind == KernelKind::rbf && !cfg.rbf_gamma) {
            cfg.rbf_gamma = rbf_auto_gamma(X);
        }
        std::vector<Statevector> states;
        if (cfg.kind != KernelKind::rbf) states = encode_rows(X, cfg.feature_map, cfg.threads);
        parallel_for(n, cfg.threads, [&](std::size_t i) {
            g.at(i, i) = 1.0;
            for (std::size_t j = i + 1; j < n; ++j) {
                double k = 0.0;
                switch (cfg.kind) {
                    case KernelKind::exact:
                        k = std::norm(inner_product(states[j], states[i]));
                        break;
                    case KernelKind::inversion_test: {
                        Rng rng = make_stream(seed, StreamTag::train_pair, {i, j});
                        k = all_zero_frequency(apply_iqp_adjoint(states[i], X.row(j), cfg.feature_map),
                                               cfg.it_shots, rng);
                        break;
                    }
                    case KernelKind::swap_test: {
                        Rng rng = make_stream(seed, StreamTag::train_pair, {i, j});
                        k = swap_estimate(std::norm(inner_product(states[j], states[i])), cfg.it_shots, rng);
                        break;
                    }
                    case KernelKind::rbf:
                        k = rbf_entry(X.row(i), X.row(j), *cfg.rbf_gamma);
                        break;
                    case KernelKind::randomized:
                        break;
                }
                g.at(i, j) = k;
            }
        });
        g.eval_count = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            g.at(j, i) = g.at(i, j);
        }
    }
    if (cfg.clip_negative_eigenvalues) {
        g.clipped_eigenvalues = clip_to_psd(g);
    }
    return out;
}

GramMatrix build_gram_cross(const Matrix &X_test, const KernelContext &context, std::uint64_t seed) {
    const KernelConfig &cfg = context.config;
    const Matrix &train = context.train_points;
    if (X_test.cols() != train.cols()) {
        throw std::invalid_argument("test points have " + std::to_string(X_test.cols()) +
                                    " features, training points have " + std::to_string(train.cols()));
    }
    const std::size_t t = X_test.rows();
    const std::size_t n = train.rows();
    GramMatrix g(t, n, false);

    if (cfg.kind == KernelKind::randomized) {
        if (!context.randomized) {
            throw std::invalid_argument("randomized cross kernel needs cached training signatures");
        }
        const auto &rc = *context.randomized;
        if (rc.settings.size() != cfg.rm_settings || rc.signatures.size() != n || rc.purities.size() != n ||
            settings_fingerprint(rc.settings) != rc.fingerprint) {
            throw std::invalid_argument("cached training signatures do not match the kernel configuration");
        }
        for (const auto &sig : rc.signatures) {
            if (sig.settings_fingerprint != rc.fingerprint || sig.num_settings() != cfg.rm_settings) {
                throw std::invalid_argument("cached training signature was measured with different settings");
            }
        }
        const auto test_sigs =
            measure_signatures(X_test, cfg, rc.settings, rc.fingerprint, seed, StreamTag::test_signature);
        std::vector<Processed> train_proc(n), test_proc(t);
        std::vector<double> test_purity(t);
        parallel_for(n, cfg.threads, [&](std::size_t i) { train_proc[i] = process(rc.signatures[i]); });
        parallel_for(t, cfg.threads, [&](std::size_t k) {
            test_proc[k] = process(test_sigs[k]);
            test_purity[k] = rm_purity(test_sigs[k]);
        });
        parallel_for(t, cfg.threads, [&](std::size_t k) {
            for (std::size_t i = 0; i < n; ++i) {
                double v = processed_entry(test_proc[k], train_proc[i], train.cols(), cfg.rm_settings);
                if (cfg.mitigate) v = mitigate(v, test_purity[k], rc.purities[i]);
                g.at(k, i) = v;
            }
        });
        g.eval_count = static_cast<std::uint64_t>(t) * cfg.rm_settings;
        return g;
    }

    if (cfg.kind == KernelKind::rbf && !cfg.rbf_gamma) {
        throw std::invalid_argument("RBF cross kernel needs the gamma resolved at training time");
    }
    std::vector<Statevector> train_states, test_states;
    if (cfg.kind != KernelKind::rbf) {
        train_states = encode_rows(train, cfg.feature_map, cfg.threads);
        test_states = encode_rows(X_test, cfg.feature_map, cfg.threads);
    }
    parallel_for(t, cfg.threads, [&](std::size_t k) {
        for (std::size_t i = 0; i < n; ++i) {
            double v = 0.0;
            switch (cfg.kind) {
                case KernelKind::exact:
                    v = std::norm(inner_product(train_states[i], test_states[k]));
                    break;
                case KernelKind::inversion_test: {
                    Rng rng = make_stream(seed, StreamTag::cross_pair, {k, i});
                    v = all_zero_frequency(apply_iqp_adjoint(test_states[k], train.row(i), cfg.feature_map),
                                           cfg.it_shots, rng);
                    break;
                }
                case KernelKind::swap_test: {
                    Rng rng = make_stream(seed, StreamTag::cross_pair, {k, i});
                    v = swap_estimate(std::norm(inner_product(train_states[i], test_states[k])), cfg.it_shots, rng);
                    break;
                }
                case KernelKind::rbf:
                    v = rbf_entry(X_test.row(k), train.row(i), *cfg.rbf_gamma);
                    break;
                case KernelKind::randomized:
                    break;
            }
            g.at(k, i) = v;
        }
    });
    g.eval_count = static_cast<std::uint64_t>(t) * n;
    return g;
}

std::size_t clip_to_psd(GramMatrix &gram) {
    if (!gram.symmetric || gram.rows != gram.cols) {
        throw std::invalid_argument("eigenvalue clipping needs a symmetric Gram");
    }
    const std::size_t n = gram.rows;
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = gram.at(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
    Eigen::VectorXd values = eig.eigenvalues();
    std::size_t clipped = 0;
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        if (values(k) < 0.0) {
            values(k) = 0.0;
            ++clipped;
        }
    }
    if (clipped == 0) return 0;
    const Eigen::MatrixXd rebuilt = eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().transpose();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = 0.5 * (rebuilt(i, j) + rebuilt(j, i));
            gram.at(i, j) = v;
            gram.at(j, i) = v;
        }
    }
    return clipped;
}

}  // namespace qocsvm
