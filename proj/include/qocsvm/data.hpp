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
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qocsvm/matrix.hpp"
#include "qocsvm/ocsvm.hpp"

namespace qocsvm {

struct Dataset {
    Matrix features;
    std::vector<Label> labels;
    std::string name;
    std::uint64_t seed = 0;
    /// Row of each point in the originating dataset (identity for generated data).
    std::vector<std::size_t> source_rows;

    std::size_t size() const { return features.rows(); }
    std::size_t anomaly_count() const;
    bool operator==(const Dataset &) const = default;
};

struct SplitSpec {
    std::size_t train_size = 500;
    std::size_t test_size = 125;
    double test_anomaly_ratio = 0.3;

    std::size_t test_anomalies() const;
    void validate() const;
};

/// Constants of the synthetic generator: two Gaussian blobs of normal points
/// at +-center, anomalies uniform on a square box.
struct SyntheticParams {
    double center = 2.0;
    double cluster_std = 0.42426406871192851;  // 0.3 * sqrt(2)
    double box = 4.0;
};

/// Train set (normal only) and test set with floor(ratio * test_size)
/// anomalies, shuffled.
std::pair<Dataset, Dataset> generate_synthetic(std::size_t n_train, const SplitSpec &spec, std::uint64_t seed,
                                               const SyntheticParams &params = {});

/// Base of all dataset parse errors. row is 1-based over file lines (header = 1);
/// column is the header name when known.
class DataError : public std::runtime_error {
  public:
    DataError(const std::string &what, std::size_t row, std::string column);
    std::size_t row() const { return row_; }
    const std::string &column() const { return column_; }

  private:
    std::size_t row_;
    std::string column_;
};

class EmptyFileError : public DataError {
  public:
    using DataError::DataError;
};
class MissingColumnError : public DataError {
  public:
    using DataError::DataError;
};
/// Row with the wrong number of fields.
class MalformedRowError : public DataError {
  public:
    using DataError::DataError;
};
/// Empty or unparsable cell, or a Class value other than 0/1.
class NonNumericError : public DataError {
  public:
    using DataError::DataError;
};

/// Reads the credit-card fraud CSV (Time, V1..V28, Amount, Class). Features
/// are V1..V28 in order; Time and Amount are dropped.
Dataset load_fraud_csv(const std::filesystem::path &path);

class InsufficientDataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Normal-only training set and a disjoint, shuffled test set.
std::pair<Dataset, Dataset> make_split(const Dataset &data, const SplitSpec &spec, std::uint64_t seed);

class DatasetCacheError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Versioned little-endian binary copy of a dataset, for skipping CSV parsing.
void save_dataset(const Dataset &data, const std::filesystem::path &path);
Dataset load_dataset(const std::filesystem::path &path);

}  // namespace qocsvm
