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

#include "qocsvm/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "qocsvm/ocsvm.hpp"
#include "qocsvm/parallel.hpp"
#include "qocsvm/pipeline.hpp"

#ifndef QOCSVM_VERSION
#define QOCSVM_VERSION "0.0.0"
#endif

namespace qocsvm {
namespace {

using Clock = std::chrono::steady_clock;
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct MethodInfo {
    Method method;
    std::string_view name;
};

constexpr MethodInfo kMethods[] = {
    {Method::rbf, "rbf"},     {Method::exact, "exact"},
    {Method::it, "it"},       {Method::swap, "swap"},
    {Method::rm, "rm"},       {Method::rm_unmitigated, "rm-unmitigated"},
    {Method::vs_it, "vs-it"}, {Method::vs_rm, "vs-rm"},
    {Method::vs_rfb_rm, "vs-rfb-rm"},
};

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::runtime_error("summary CSV: bad number '" + std::string(s) + "'");
    }
    return v;
}

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (!out.empty() && !out.back().empty() && out.back().back() == '\r') out.back().pop_back();
    return out;
}

}  // namespace

std::string_view library_version() { return QOCSVM_VERSION; }

std::string_view method_name(Method m) {
    for (const auto &info : kMethods)
        if (info.method == m) return info.name;
    throw std::invalid_argument("unknown method");
}

Method parse_method(std::string_view name) {
    for (const auto &info : kMethods)
        if (info.name == name) return info.method;
    throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

bool is_ensemble(Method m) { return m == Method::vs_it || m == Method::vs_rm || m == Method::vs_rfb_rm; }

KernelKind method_kernel(Method m) {
    switch (m) {
        case Method::rbf: return KernelKind::rbf;
        case Method::exact: return KernelKind::exact;
        case Method::it:
        case Method::vs_it: return KernelKind::inversion_test;
        case Method::swap: return KernelKind::swap_test;
        case Method::rm:
        case Method::rm_unmitigated:
        case Method::vs_rm:
        case Method::vs_rfb_rm: return KernelKind::randomized;
    }
    throw std::invalid_argument("unknown method");
}

std::size_t RunConfig::features() const { return num_features.value_or(dataset == "fraud" ? 6 : 2); }

double RunConfig::anomaly_ratio() const { return test_anomaly_ratio.value_or(dataset == "fraud" ? 0.05 : 0.3); }

void RunConfig::validate() const {
    if (dataset != "synthetic" && dataset != "fraud") {
        throw std::invalid_argument("dataset must be synthetic or fraud, got '" + dataset + "'");
    }
    if (dataset == "synthetic" && features() > 2) {
        throw std::invalid_argument("synthetic data has 2 features; num_features must be 1 or 2");
    }
    if (features() == 0) throw std::invalid_argument("num_features must be positive");
    if (method == Method::vs_rfb_rm && features() < 2) {
        throw std::invalid_argument("rotated feature bagging needs at least 2 features");
    }
    if (seeds.empty()) throw std::invalid_argument("no seeds given");
    if (!(nu > 0.0 && nu <= 1.0)) throw std::invalid_argument("nu must be in (0, 1]");
    if (train_size < 2) throw std::invalid_argument("train_size must be at least 2");
    SplitSpec{train_size, test_size, anomaly_ratio()}.validate();
}

std::optional<Dataset> load_source(const RunConfig &cfg) {
    if (cfg.dataset != "fraud") return std::nullopt;
    if (cfg.fraud_csv_path.empty()) throw std::invalid_argument("fraud dataset requested but no CSV path given");
    return load_fraud_csv(cfg.fraud_csv_path);
}

RunRecord run_seed(const RunConfig &cfg, std::uint64_t seed, const Dataset *source) {
    RunRecord rec;
    rec.config = cfg;
    rec.seed = seed;
    try {
        cfg.validate();
        const SplitSpec spec{cfg.train_size, cfg.test_size, cfg.anomaly_ratio()};
        std::pair<Dataset, Dataset> split;
        if (cfg.dataset == "synthetic") {
            split = generate_synthetic(cfg.train_size, spec, seed);
        } else {
            if (source == nullptr) throw std::invalid_argument("fraud dataset not loaded");
            split = make_split(*source, spec, seed);
        }
        const auto &[train, test] = split;
        rec.n_test = test.size();
        rec.n_test_anomalies = test.anomaly_count();

        const KernelKind kind = method_kernel(cfg.method);
        auto t0 = Clock::now();
        const Preprocessor pre = fit_preprocessor(train.features, cfg.features(), kind);
        const Matrix X_train = pre.transform(train.features);
        const Matrix X_test = pre.transform(test.features);
        rec.phases.preprocess_s = seconds_since(t0);

        KernelConfig kc;
        kc.kind = kind;
        kc.it_shots = cfg.it_shots;
        kc.rm_settings = cfg.rm_settings;
        kc.rm_shots = cfg.rm_shots;
        kc.mitigate = cfg.method != Method::rm_unmitigated;
        kc.feature_map.layers = cfg.layers;
        kc.feature_map.angle_scale = cfg.lambda;
        kc.threads = cfg.threads;
        SolverConfig sc;
        sc.tolerance = cfg.solver_tolerance;
        sc.seed = seed;

        std::vector<double> outlier_scores;
        if (is_ensemble(cfg.method)) {
            VSConfig vc;
            vc.aggregation = cfg.aggregation;
            vc.rfb_enabled = cfg.method == Method::vs_rfb_rm;
            vc.base_kernel = kc;
            vc.nu = cfg.nu;
            vc.solver = sc;
            vc.threads = cfg.threads;
            const EnsembleModel model = fit_vs(X_train, vc, seed);
            for (const auto &c : model.components) {
                rec.phases.train_gram_s += c.gram_seconds;
                rec.phases.solver_s += c.solver_seconds;
                rec.component_train_seconds.push_back(c.gram_seconds + c.solver_seconds);
            }
            rec.train_kernel_evals = model.train_evals();
            rec.components = model.components.size();
            if (vc.rfb_enabled) rec.r_prime = rotation_dim(X_train.cols());
            t0 = Clock::now();
            EnsembleScores es = score_vs(model, X_test, cfg.threads);
            rec.phases.test_gram_s = seconds_since(t0);
            rec.test_kernel_evals = es.eval_count;
            outlier_scores = std::move(es.scores);
        } else {
            t0 = Clock::now();
            const TrainingGram tg = build_gram_train(X_train, kc, seed);
            rec.phases.train_gram_s = seconds_since(t0);
            t0 = Clock::now();
            const OCSVMModel model = fit(tg.gram, cfg.nu, sc);
            rec.phases.solver_s = seconds_since(t0);
            rec.train_kernel_evals = tg.gram.eval_count;

            const std::vector<double> train_scores = decision_scores(model, tg.gram);
            const auto outliers = std::count_if(train_scores.begin(), train_scores.end(), [](double s) { return s < 0.0; });
            rec.train_outlier_fraction = static_cast<double>(outliers) / static_cast<double>(train_scores.size());
            rec.support_fraction =
                static_cast<double>(model.support_indices.size()) / static_cast<double>(model.n_train);

            t0 = Clock::now();
            const GramMatrix cross = build_gram_cross(X_test, tg.context, seed);
            rec.phases.test_gram_s = seconds_since(t0);
            t0 = Clock::now();
            outlier_scores = decision_scores(model, cross);
            for (auto &s : outlier_scores) s = -s;
            rec.phases.scoring_s = seconds_since(t0);
            rec.test_kernel_evals = cross.eval_count;
        }

        const std::vector<Label> predictions = predict_outliers(outlier_scores, cfg.threshold);
        rec.metrics = evaluate(test.labels, outlier_scores, predictions);
        rec.metrics.train_time_s = rec.phases.preprocess_s + rec.phases.train_gram_s + rec.phases.solver_s;
        rec.metrics.test_time_s = rec.phases.test_gram_s + rec.phases.scoring_s;
        rec.metrics.kernel_evals = rec.train_kernel_evals + rec.test_kernel_evals;
        rec.ok = true;
    } catch (const std::exception &e) {
        rec.ok = false;
        rec.error = e.what();
    }
    return rec;
}

std::vector<RunRecord> run_experiment(const RunConfig &cfg) {
    cfg.validate();
    const std::optional<Dataset> source = load_source(cfg);
    std::vector<RunRecord> records(cfg.seeds.size());
    const std::size_t workers = cfg.parallel ? 0 : 1;
    parallel_for(cfg.seeds.size(), workers, [&](std::size_t i) {
        records[i] = run_seed(cfg, cfg.seeds[i], source ? &*source : nullptr);
    });
    return records;
}

ordered_json to_json(const RunRecord &rec) {
    const RunConfig &c = rec.config;
    const bool timed = c.record_timing;
    ordered_json j;
    j["method"] = method_name(c.method);
    j["dataset"] = c.dataset;
    j["seed"] = rec.seed;
    j["n_train"] = c.train_size;
    j["d"] = c.features();
    j["status"] = rec.ok ? "ok" : "failed";
    if (rec.ok) {
        j["ap"] = rec.metrics.average_precision;
        j["f1"] = rec.metrics.f1;
        j["precision"] = rec.metrics.precision;
        j["recall"] = rec.metrics.recall;
        if (timed) {
            j["train_time_s"] = rec.metrics.train_time_s;
            j["test_time_s"] = rec.metrics.test_time_s;
        }
        j["kernel_evals"] = rec.metrics.kernel_evals;
        j["components"] = rec.components;
        j["r_prime"] = rec.r_prime ? ordered_json(*rec.r_prime) : ordered_json(nullptr);
        j["tp"] = rec.metrics.counts.tp;
        j["fp"] = rec.metrics.counts.fp;
        j["tn"] = rec.metrics.counts.tn;
        j["fn"] = rec.metrics.counts.fn;
        j["n_test"] = rec.n_test;
        j["n_test_anomalies"] = rec.n_test_anomalies;
        j["train_kernel_evals"] = rec.train_kernel_evals;
        j["test_kernel_evals"] = rec.test_kernel_evals;
        if (rec.train_outlier_fraction) j["train_outlier_fraction"] = *rec.train_outlier_fraction;
        if (rec.support_fraction) j["support_fraction"] = *rec.support_fraction;
        if (timed) {
            j["phases"] = {{"preprocess_s", rec.phases.preprocess_s},
                           {"train_gram_s", rec.phases.train_gram_s},
                           {"solver_s", rec.phases.solver_s},
                           {"test_gram_s", rec.phases.test_gram_s},
                           {"scoring_s", rec.phases.scoring_s}};
            if (!rec.component_train_seconds.empty()) j["component_train_s"] = rec.component_train_seconds;
        }
    } else {
        j["error"] = rec.error;
    }
    j["config"] = {
        {"num_features", c.features()},
        {"test_size", c.test_size},
        {"test_anomaly_ratio", c.anomaly_ratio()},
        {"nu", c.nu},
        {"lambda", c.lambda},
        {"layers", c.layers},
        {"it_shots", c.it_shots},
        {"rm_settings", c.rm_settings},
        {"rm_shots", c.rm_shots},
        {"aggregation", aggregation_name(c.aggregation)},
        {"threshold", c.threshold},
        {"solver_tolerance", c.solver_tolerance},
        {"score_normalization", "train-zscore"},
    };
    if (c.dataset == "synthetic") {
        const SyntheticParams sp;
        j["synthetic"] = {{"center", sp.center}, {"cluster_std", sp.cluster_std}, {"box", sp.box}};
    }
    j["version"] = library_version();
    return j;
}

RunRecord record_from_json(const json &j) {
    RunRecord rec;
    RunConfig &c = rec.config;
    c.method = parse_method(j.at("method").get<std::string>());
    c.dataset = j.at("dataset").get<std::string>();
    c.train_size = j.at("n_train").get<std::size_t>();
    c.num_features = j.at("d").get<std::size_t>();
    rec.seed = j.at("seed").get<std::uint64_t>();
    rec.ok = j.at("status").get<std::string>() == "ok";
    c.record_timing = j.contains("train_time_s");
    if (j.contains("config")) {
        const json &cj = j.at("config");
        c.test_size = cj.at("test_size").get<std::size_t>();
        c.test_anomaly_ratio = cj.at("test_anomaly_ratio").get<double>();
        c.nu = cj.at("nu").get<double>();
        c.lambda = cj.at("lambda").get<double>();
        c.layers = cj.at("layers").get<std::size_t>();
        c.it_shots = cj.at("it_shots").get<std::uint64_t>();
        c.rm_settings = cj.at("rm_settings").get<std::size_t>();
        c.rm_shots = cj.at("rm_shots").get<std::uint64_t>();
        c.aggregation = parse_aggregation(cj.at("aggregation").get<std::string>());
        c.threshold = cj.at("threshold").get<double>();
        c.solver_tolerance = cj.at("solver_tolerance").get<double>();
    }
    if (!rec.ok) {
        rec.error = j.value("error", std::string());
        return rec;
    }
    rec.metrics.average_precision = j.at("ap").get<double>();
    rec.metrics.f1 = j.at("f1").get<double>();
    rec.metrics.precision = j.at("precision").get<double>();
    rec.metrics.recall = j.at("recall").get<double>();
    if (c.record_timing) {
        rec.metrics.train_time_s = j.at("train_time_s").get<double>();
        rec.metrics.test_time_s = j.at("test_time_s").get<double>();
    }
    rec.metrics.kernel_evals = j.at("kernel_evals").get<std::uint64_t>();
    rec.components = j.at("components").get<std::size_t>();
    if (!j.at("r_prime").is_null()) rec.r_prime = j.at("r_prime").get<std::size_t>();
    rec.metrics.counts = {j.value("tp", std::size_t{0}), j.value("fp", std::size_t{0}), j.value("tn", std::size_t{0}),
                          j.value("fn", std::size_t{0})};
    rec.n_test = j.value("n_test", std::size_t{0});
    rec.n_test_anomalies = j.value("n_test_anomalies", std::size_t{0});
    rec.train_kernel_evals = j.value("train_kernel_evals", std::uint64_t{0});
    rec.test_kernel_evals = j.value("test_kernel_evals", std::uint64_t{0});
    if (j.contains("train_outlier_fraction")) rec.train_outlier_fraction = j.at("train_outlier_fraction").get<double>();
    if (j.contains("support_fraction")) rec.support_fraction = j.at("support_fraction").get<double>();
    if (j.contains("phases")) {
        const json &p = j.at("phases");
        rec.phases = {p.at("preprocess_s").get<double>(), p.at("train_gram_s").get<double>(),
                      p.at("solver_s").get<double>(), p.at("test_gram_s").get<double>(),
                      p.at("scoring_s").get<double>()};
    }
    if (j.contains("component_train_s")) {
        rec.component_train_seconds = j.at("component_train_s").get<std::vector<double>>();
    }
    return rec;
}

void write_records(std::ostream &out, const std::vector<RunRecord> &records) {
    for (const auto &r : records) out << to_json(r).dump() << '\n';
}

std::vector<RunRecord> read_records(std::istream &in) {
    std::vector<RunRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(record_from_json(json::parse(line)));
        } catch (const std::exception &e) {
            throw std::runtime_error("records line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

const std::vector<std::string> &summary_metrics() {
    static const std::vector<std::string> names = {"ap",           "f1",          "precision",   "recall",
                                                   "train_time_s", "test_time_s", "kernel_evals"};
    return names;
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord> &records) {
    using Key = std::tuple<std::string, std::string, std::size_t, std::size_t>;
    std::map<Key, std::vector<const RunRecord *>> groups;
    for (const auto &r : records) {
        if (!r.ok) continue;
        groups[{std::string(method_name(r.config.method)), r.config.dataset, r.config.train_size,
                r.config.features()}]
            .push_back(&r);
    }
    if (groups.empty()) throw std::invalid_argument("summarize: no successful records");

    std::vector<SummaryRow> rows;
    for (const auto &[key, members] : groups) {
        SummaryRow row;
        std::tie(row.method, row.dataset, row.n_train, row.d) = key;
        row.runs = members.size();
        const bool timed = std::all_of(members.begin(), members.end(), [](auto *r) { return r->config.record_timing; });
        for (const auto &name : summary_metrics()) {
            const bool is_time = name == "train_time_s" || name == "test_time_s";
            if (is_time && !timed) continue;
            std::vector<double> v;
            for (const auto *r : members) {
                const auto &m = r->metrics;
                if (name == "ap") v.push_back(m.average_precision);
                else if (name == "f1") v.push_back(m.f1);
                else if (name == "precision") v.push_back(m.precision);
                else if (name == "recall") v.push_back(m.recall);
                else if (name == "train_time_s") v.push_back(m.train_time_s);
                else if (name == "test_time_s") v.push_back(m.test_time_s);
                else v.push_back(static_cast<double>(m.kernel_evals));
            }
            MetricStats st;
            for (double x : v) st.mean += x;
            st.mean /= static_cast<double>(v.size());
            if (v.size() > 1) {
                double ss = 0.0;
                for (double x : v) ss += (x - st.mean) * (x - st.mean);
                st.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
            }
            row.stats[name] = st;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_summary_csv(std::ostream &out, const std::vector<SummaryRow> &rows) {
    out << "method,dataset,n_train,d,runs";
    for (const auto &name : summary_metrics()) out << ',' << name << "_mean," << name << "_std";
    out << '\n';
    for (const auto &row : rows) {
        out << row.method << ',' << row.dataset << ',' << row.n_train << ',' << row.d << ',' << row.runs;
        for (const auto &name : summary_metrics()) {
            auto it = row.stats.find(name);
            if (it == row.stats.end()) {
                out << ",,";
            } else {
                out << ',' << format_double(it->second.mean) << ',' << format_double(it->second.std);
            }
        }
        out << '\n';
    }
}

std::vector<SummaryRow> read_summary_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("summary CSV: empty input");
    const auto header = split_csv(line);
    const auto &names = summary_metrics();
    if (header.size() != 5 + 2 * names.size() || header[0] != "method") {
        throw std::runtime_error("summary CSV: unexpected header");
    }
    std::vector<SummaryRow> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto f = split_csv(line);
        if (f.size() != header.size()) throw std::runtime_error("summary CSV: wrong field count");
        SummaryRow row;
        row.method = f[0];
        row.dataset = f[1];
        row.n_train = static_cast<std::size_t>(parse_double(f[2]));
        row.d = static_cast<std::size_t>(parse_double(f[3]));
        row.runs = static_cast<std::size_t>(parse_double(f[4]));
        for (std::size_t k = 0; k < names.size(); ++k) {
            const auto &mean = f[5 + 2 * k];
            const auto &sd = f[6 + 2 * k];
            if (mean.empty() && sd.empty()) continue;
            row.stats[names[k]] = {parse_double(mean), parse_double(sd)};
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qocsvm
