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
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <string_view>

#include "qocsvm/binary_io.hpp"
#include "qocsvm/random.hpp"

namespace qocsvm {
namespace {

constexpr std::size_t kFraudFeatures = 28;
constexpr char kDatasetMagic[5] = "QDS1";
constexpr std::uint32_t kDatasetVersion = 1;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

Dataset take(const Dataset &src, std::span<const std::size_t> idx, std::string name, std::uint64_t seed) {
    Dataset out;
    out.features = src.features.select_rows(idx);
    out.name = std::move(name);
    out.seed = seed;
    out.labels.reserve(idx.size());
    out.source_rows.reserve(idx.size());
    for (auto i : idx) {
        out.labels.push_back(src.labels[i]);
        out.source_rows.push_back(src.source_rows.empty() ? i : src.source_rows[i]);
    }
    return out;
}

}  // namespace

std::size_t Dataset::anomaly_count() const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), Label::anomaly));
}

std::size_t SplitSpec::test_anomalies() const {
    return static_cast<std::size_t>(std::floor(test_anomaly_ratio * static_cast<double>(test_size)));
}

void SplitSpec::validate() const {
    if (train_size == 0 || test_size == 0) throw std::invalid_argument("split sizes must be positive");
    if (!(test_anomaly_ratio >= 0.0 && test_anomaly_ratio <= 1.0)) {
        throw std::invalid_argument("test anomaly ratio must be in [0, 1]");
    }
}

std::pair<Dataset, Dataset> generate_synthetic(std::size_t n_train, const SplitSpec &spec, std::uint64_t seed,
                                               const SyntheticParams &params) {
    if (n_train == 0) throw std::invalid_argument("generate_synthetic: n_train must be positive");
    spec.validate();
    Rng rng = make_stream(seed, StreamTag::synthetic);
    std::normal_distribution<double> noise(0.0, params.cluster_std);
    std::uniform_real_distribution<double> box(-params.box, params.box);

    auto normals = [&](std::size_t count) {
        Matrix m(count, 2);
        for (std::size_t i = 0; i < count; ++i) {
            // first half around +center, second half around -center
            const double c = i < (count + 1) / 2 ? params.center : -params.center;
            m(i, 0) = c + noise(rng);
            m(i, 1) = c + noise(rng);
        }
        return m;
    };

    Dataset train;
    train.name = "synthetic";
    train.seed = seed;
    train.features = normals(n_train);
    train.labels.assign(n_train, Label::normal);
    train.source_rows.resize(n_train);
    std::iota(train.source_rows.begin(), train.source_rows.end(), std::size_t{0});

    const std::size_t n_anom = spec.test_anomalies();
    const std::size_t n_norm = spec.test_size - n_anom;
    Matrix test_norm = normals(n_norm);
    Dataset pool;
    pool.features = Matrix(spec.test_size, 2);
    pool.labels.resize(spec.test_size);
    for (std::size_t i = 0; i < n_norm; ++i) {
        pool.features(i, 0) = test_norm(i, 0);
        pool.features(i, 1) = test_norm(i, 1);
        pool.labels[i] = Label::normal;
    }
    for (std::size_t i = n_norm; i < spec.test_size; ++i) {
        pool.features(i, 0) = box(rng);
        pool.features(i, 1) = box(rng);
        pool.labels[i] = Label::anomaly;
    }
    std::vector<std::size_t> order(spec.test_size);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    Dataset test = take(pool, order, "synthetic", seed);
    // generated test points are numbered after the training points
    for (auto &r : test.source_rows) r += n_train;
    return {std::move(train), std::move(test)};
}

DataError::DataError(const std::string &what, std::size_t row, std::string column)
    : std::runtime_error(what), row_(row), column_(std::move(column)) {}

Dataset load_fraud_csv(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    const std::string where = path.string();

    std::string line;
    if (!std::getline(in, line) || trim(line).empty()) {
        throw EmptyFileError(where + ": empty file, expected a header row", 1, "");
    }
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    const std::vector<std::string_view> header = split_fields(line);
    std::vector<std::string> names(header.begin(), header.end());

    auto find_col = [&](const std::string &want) {
        auto it = std::find(names.begin(), names.end(), want);
        if (it == names.end()) {
            throw MissingColumnError(where + ": header has no column '" + want + "'", 1, want);
        }
        return static_cast<std::size_t>(it - names.begin());
    };
    std::vector<std::size_t> feature_cols;
    for (std::size_t k = 1; k <= kFraudFeatures; ++k) feature_cols.push_back(find_col("V" + std::to_string(k)));
    find_col("Time");
    find_col("Amount");
    const std::size_t class_col = find_col("Class");

    Dataset data;
    data.name = "fraud";
    std::vector<double> values;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const std::vector<std::string_view> fields = split_fields(line);
        if (fields.size() != names.size()) {
            throw MalformedRowError(where + ":" + std::to_string(row) + ": expected " + std::to_string(names.size()) +
                                        " fields, got " + std::to_string(fields.size()),
                                    row, "");
        }
        auto parse = [&](std::size_t col) {
            const std::string_view cell = fields[col];
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
                throw NonNumericError(where + ":" + std::to_string(row) + ": column " + names[col] +
                                          (cell.empty() ? " is empty" : " is not a number: '" + std::string(cell) + "'"),
                                      row, names[col]);
            }
            return v;
        };
        for (auto c : feature_cols) values.push_back(parse(c));
        const double cls = parse(class_col);
        if (cls != 0.0 && cls != 1.0) {
            throw NonNumericError(where + ":" + std::to_string(row) + ": Class must be 0 or 1", row, "Class");
        }
        data.labels.push_back(cls == 1.0 ? Label::anomaly : Label::normal);
        data.source_rows.push_back(data.source_rows.size());
    }
    if (data.labels.empty()) throw EmptyFileError(where + ": header but no data rows", row, "");
    data.features = Matrix(data.labels.size(), kFraudFeatures, std::move(values));
    return data;
}

std::pair<Dataset, Dataset> make_split(const Dataset &data, const SplitSpec &spec, std::uint64_t seed) {
    spec.validate();
    std::vector<std::size_t> normals, anomalies;
    for (std::size_t i = 0; i < data.size(); ++i) {
        (data.labels[i] == Label::anomaly ? anomalies : normals).push_back(i);
    }
    const std::size_t n_anom = spec.test_anomalies();
    const std::size_t n_norm_test = spec.test_size - n_anom;
    if (normals.size() < spec.train_size + n_norm_test) {
        throw InsufficientDataError("split needs " + std::to_string(spec.train_size + n_norm_test) +
                                    " normal points, dataset has " + std::to_string(normals.size()));
    }
    if (anomalies.size() < n_anom) {
        throw InsufficientDataError("split needs " + std::to_string(n_anom) + " anomalies, dataset has " +
                                    std::to_string(anomalies.size()));
    }
    Rng rng = make_stream(seed, StreamTag::split);
    // partial Fisher-Yates: the first k entries become a uniform sample
    auto draw = [&](std::vector<std::size_t> &pool, std::size_t k) {
        for (std::size_t i = 0; i < k; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
            std::swap(pool[i], pool[pick(rng)]);
        }
    };
    draw(normals, spec.train_size + n_norm_test);
    draw(anomalies, n_anom);

    std::vector<std::size_t> train_idx(normals.begin(), normals.begin() + static_cast<std::ptrdiff_t>(spec.train_size));
    std::vector<std::size_t> test_idx(normals.begin() + static_cast<std::ptrdiff_t>(spec.train_size),
                                      normals.begin() + static_cast<std::ptrdiff_t>(spec.train_size + n_norm_test));
    test_idx.insert(test_idx.end(), anomalies.begin(), anomalies.begin() + static_cast<std::ptrdiff_t>(n_anom));
    std::shuffle(test_idx.begin(), test_idx.end(), rng);
    return {take(data, train_idx, data.name, seed), take(data, test_idx, data.name, seed)};
}

void save_dataset(const Dataset &data, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(kDatasetMagic, 4);
    binary::write_u32(out, kDatasetVersion);
    binary::write_u64(out, data.features.rows());
    binary::write_u64(out, data.features.cols());
    binary::write_u64(out, data.seed);
    binary::write_u64(out, data.name.size());
    out.write(data.name.data(), static_cast<std::streamsize>(data.name.size()));
    for (double v : data.features.data()) binary::write_f64(out, v);
    for (auto l : data.labels) binary::write_u32(out, static_cast<std::uint32_t>(l));
    for (auto r : data.source_rows) binary::write_u64(out, r);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

Dataset load_dataset(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    using E = DatasetCacheError;
    binary::expect_magic<E>(in, kDatasetMagic);
    if (binary::read_u32<E>(in) != kDatasetVersion) throw E("unsupported dataset cache version");
    const std::uint64_t rows = binary::read_u64<E>(in);
    const std::uint64_t cols = binary::read_u64<E>(in);
    Dataset d;
    d.seed = binary::read_u64<E>(in);
    const std::uint64_t name_len = binary::read_u64<E>(in);
    if (name_len > 4096 || (cols != 0 && rows > (std::uint64_t{1} << 40) / cols)) throw E("implausible header");
    d.name.resize(name_len);
    if (!in.read(d.name.data(), static_cast<std::streamsize>(name_len))) throw E("unexpected end of file");
    std::vector<double> values(rows * cols);
    for (auto &v : values) v = binary::read_f64<E>(in);
    d.features = Matrix(rows, cols, std::move(values));
    d.labels.resize(rows);
    for (auto &l : d.labels) {
        const std::uint32_t raw = binary::read_u32<E>(in);
        if (raw > 1) throw E("label out of range");
        l = static_cast<Label>(raw);
    }
    d.source_rows.resize(rows);
    for (auto &r : d.source_rows) r = binary::read_u64<E>(in);
    if (in.peek() != std::char_traits<char>::eof()) throw E("trailing bytes after dataset");
    return d;
}

}  // namespace qocsvm
