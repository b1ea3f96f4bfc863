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

#include "qocsvm/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

namespace qocsvm {
namespace {

void require_cols(const Matrix &X, std::size_t d, const char *what) {
    if (X.cols() != d) {
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(d) + " features, got " +
                                    std::to_string(X.cols()));
    }
}

}  // namespace

ScalerParams fit_scaler(const Matrix &X) {
    if (X.rows() < 2) throw std::invalid_argument("standard scaler needs at least 2 rows");
    const std::size_t n = X.rows(), d = X.cols();
    ScalerParams p{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) p.mean[c] += X(r, c);
    for (auto &m : p.mean) m /= static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const double dev = X(r, c) - p.mean[c];
            p.scale[c] += dev * dev;
        }
    }
    for (auto &s : p.scale) {
        s = std::sqrt(s / static_cast<double>(n));
        if (s == 0.0) s = 1.0;
    }
    return p;
}

Matrix apply_scaler(const ScalerParams &p, const Matrix &X) {
    require_cols(X, p.mean.size(), "apply_scaler");
    Matrix out(X.rows(), X.cols());
    for (std::size_t r = 0; r < X.rows(); ++r)
        for (std::size_t c = 0; c < X.cols(); ++c) out(r, c) = (X(r, c) - p.mean[c]) / p.scale[c];
    return out;
}

Matrix invert_scaler(const ScalerParams &p, const Matrix &X) {
    require_cols(X, p.mean.size(), "invert_scaler");
    Matrix out(X.rows(), X.cols());
    for (std::size_t r = 0; r < X.rows(); ++r)
        for (std::size_t c = 0; c < X.cols(); ++c) out(r, c) = X(r, c) * p.scale[c] + p.mean[c];
    return out;
}

PCAParams fit_pca(const Matrix &X, std::size_t m) {
    const std::size_t n = X.rows(), d = X.cols();
    if (n < 2 || m == 0 || m > std::min(n - 1, d)) {
        throw std::invalid_argument("PCA: m = " + std::to_string(m) + " is outside [1, min(n - 1, d)] for " +
                                    std::to_string(n) + "x" + std::to_string(d) + " data");
    }
    PCAParams p;
    p.mean.assign(d, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) p.mean[c] += X(r, c);
    for (auto &v : p.mean) v /= static_cast<double>(n);

    Eigen::MatrixXd centered(n, d);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) centered(r, c) = X(r, c) - p.mean[c];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    const Eigen::MatrixXd &V = svd.matrixV();
    const Eigen::VectorXd &sv = svd.singularValues();

    p.components = Matrix(d, m);
    p.explained_variance.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        Eigen::Index arg = 0;
        V.col(k).cwiseAbs().maxCoeff(&arg);
        const double sign = V(arg, k) < 0.0 ? -1.0 : 1.0;
        for (std::size_t c = 0; c < d; ++c) p.components(c, k) = sign * V(c, k);
        p.explained_variance[k] = sv(k) * sv(k) / static_cast<double>(n - 1);
    }
    return p;
}

Matrix apply_pca(const PCAParams &p, const Matrix &X) {
    require_cols(X, p.mean.size(), "apply_pca");
    Matrix centered(X.rows(), X.cols());
    for (std::size_t r = 0; r < X.rows(); ++r)
        for (std::size_t c = 0; c < X.cols(); ++c) centered(r, c) = X(r, c) - p.mean[c];
    return multiply(centered, p.components);
}

RescaleParams fit_kernel_rescale(const Matrix &X_train, KernelKind kind) {
    RescaleParams p;
    p.kind = kind;
    switch (kind) {
        case KernelKind::exact:
        case KernelKind::inversion_test:
        case KernelKind::swap_test:
            p.factor = kCircuitAngleFactor;
            break;
        case KernelKind::randomized:
            p.restandardize = fit_scaler(X_train);
            p.factor = 1.0 / std::sqrt(static_cast<double>(X_train.cols()));
            break;
        case KernelKind::rbf:
            break;
    }
    return p;
}

Matrix apply_kernel_rescale(const RescaleParams &p, const Matrix &X) {
    if (p.kind == KernelKind::rbf) return X;
    Matrix out = p.restandardize ? apply_scaler(*p.restandardize, X) : X;
    for (auto &v : out.data()) v *= p.factor;
    return out;
}

Matrix kernel_rescale(const Matrix &X, KernelKind kind) { return apply_kernel_rescale(fit_kernel_rescale(X, kind), X); }

Matrix Preprocessor::transform(const Matrix &X) const {
    return apply_kernel_rescale(rescale, apply_pca(pca, apply_scaler(scaler, X)));
}

Preprocessor fit_preprocessor(const Matrix &X_train, std::size_t m, KernelKind kind) {
    Preprocessor p;
    p.scaler = fit_scaler(X_train);
    const Matrix scaled = apply_scaler(p.scaler, X_train);
    p.pca = fit_pca(scaled, m);
    p.rescale = fit_kernel_rescale(apply_pca(p.pca, scaled), kind);
    return p;
}

}  // namespace qocsvm
