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
#include <optional>
#include <vector>

#include "qocsvm/kernel.hpp"
#include "qocsvm/matrix.hpp"

namespace qocsvm {

/// Per-feature mean and (population) standard deviation. Constant features
/// get a scale of 1 and therefore map to 0.
struct ScalerParams {
    std::vector<double> mean;
    std::vector<double> scale;
};

ScalerParams fit_scaler(const Matrix &X_train);
Matrix apply_scaler(const ScalerParams &params, const Matrix &X);
Matrix invert_scaler(const ScalerParams &params, const Matrix &X);

struct PCAParams {
    std::vector<double> mean;
    /// d x m, orthonormal columns, largest-magnitude entry of each column positive.
    Matrix components;
    /// Non-increasing, sample variance (n - 1 denominator) along each component.
    std::vector<double> explained_variance;
};

PCAParams fit_pca(const Matrix &X_train, std::size_t m);
Matrix apply_pca(const PCAParams &params, const Matrix &X);

/// Kernel-specific rescaling after PCA: x0.1 for the circuit kernels,
/// re-standardization then 1/sqrt(M) for randomized measurements, identity for RBF.
struct RescaleParams {
    KernelKind kind = KernelKind::rbf;
    std::optional<ScalerParams> restandardize;
    double factor = 1.0;
};

inline constexpr double kCircuitAngleFactor = 0.1;

RescaleParams fit_kernel_rescale(const Matrix &X_train, KernelKind kind);
Matrix apply_kernel_rescale(const RescaleParams &params, const Matrix &X);
/// fit_kernel_rescale on X, then apply it to X.
Matrix kernel_rescale(const Matrix &X, KernelKind kind);

/// Full chain: standard scaling, PCA to m features, kernel rescaling. Every
/// stage is fit on training data only.
struct Preprocessor {
    ScalerParams scaler;
    PCAParams pca;
    RescaleParams rescale;

    Matrix transform(const Matrix &X) const;
};

Preprocessor fit_preprocessor(const Matrix &X_train, std::size_t m, KernelKind kind);

}  // namespace qocsvm
