#include "fpslfa/benchmark.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "fpslfa/errors.hpp"

namespace fpslfa {

Stats compute_stats(std::span<const double> values) {
    if (values.empty()) return {};
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    if (values.size() < 2) return {mean, 0.0};
    double sq = 0.0;
    for (double v : values) sq += (v - mean) * (v - mean);
    return {mean, std::sqrt(sq / static_cast<double>(values.size() - 1))};
}

namespace {

BenchmarkSample sample_from_report(const TrainReport& report) {
    BenchmarkSample s;
    s.best_rmse = report.best_validation_rmse;
    s.test_rmse = report.test_rmse;
    s.epochs_run = report.per_epoch.size();
    s.epochs_to_best = static_cast<std::size_t>(report.best_epoch) + 1;
    const double threshold = 1.05 * report.best_validation_rmse;
    for (const EpochMetrics& m : report.per_epoch) {
        if (m.validation_rmse <= threshold) {
            s.epochs_to_near_best = m.epoch + 1;
            break;
        }
    }
    s.update_secs_to_best = report.update_seconds_to_best;
    s.total_secs_to_best = report.total_seconds_to_best;
    return s;
}

std::vector<double> collect(const BenchmarkRow& row, double BenchmarkSample::*field) {
    std::vector<double> values;
    values.reserve(row.samples.size());
    for (const BenchmarkSample& s : row.samples) values.push_back(s.*field);
    return values;
}

std::vector<double> collect_counts(const BenchmarkRow& row,
                                   std::size_t BenchmarkSample::*field) {
    std::vector<double> values;
    values.reserve(row.samples.size());
    for (const BenchmarkSample& s : row.samples) {
        values.push_back(static_cast<double>(s.*field));
    }
    return values;
}

}  // namespace

std::vector<BenchmarkRow> run_benchmark(const SparseMatrix& source, const EffectiveConfig& cfg,
                                        std::span<const OptimizerKind> kinds) {
    if (kinds.size() < 2) {
        throw ConfigError("benchmark requires at least 2 optimizer configurations");
    }
    if (cfg.repeats < 1) throw ConfigError("benchmark requires repeats >= 1");

    const DatasetSplit split = split_dataset(source, cfg.split_seed);

    std::vector<BenchmarkRow> rows;
    rows.reserve(kinds.size());
    for (const OptimizerKind kind : kinds) rows.push_back({kind, {}});

    for (std::size_t repeat = 0; repeat < cfg.repeats; ++repeat) {
        for (std::size_t i = 0; i < kinds.size(); ++i) {
            TrainConfig train_cfg = cfg.to_train_config(kinds[i]);
            train_cfg.seed = cfg.seed + repeat;
            const TrainResult result = train(split, train_cfg);
            if (result.report.divergence) {
                const DivergenceInfo& d = *result.report.divergence;
                throw DivergenceError(d.row, d.col, d.epoch,
                                      to_string(kinds[i]) + " diverged: " + d.message);
            }
            rows[i].samples.push_back(sample_from_report(result.report));
        }
    }
    return rows;
}

void print_benchmark_table(std::ostream& out, std::span<const BenchmarkRow> rows) {
    char line[256];
    std::snprintf(line, sizeof(line), "%-9s %-19s %-19s %-17s %-19s %-19s", "optimizer",
                  "best_rmse", "test_rmse", "epochs_to_best", "update_secs", "total_secs");
    out << line << "\n";
    for (const BenchmarkRow& row : rows) {
        const Stats rmse = compute_stats(collect(row, &BenchmarkSample::best_rmse));
        const Stats test = compute_stats(collect(row, &BenchmarkSample::test_rmse));
        const Stats epochs = compute_stats(collect_counts(row, &BenchmarkSample::epochs_to_best));
        const Stats update = compute_stats(collect(row, &BenchmarkSample::update_secs_to_best));
        const Stats total = compute_stats(collect(row, &BenchmarkSample::total_secs_to_best));
        std::snprintf(line, sizeof(line),
                      "%-9s %.4f \xc2\xb1 %-8.1e %.4f \xc2\xb1 %-8.1e %6.1f \xc2\xb1 %-6.1f "
                      "%8.3f \xc2\xb1 %-6.3f %8.3f \xc2\xb1 %-6.3f",
                      to_string(row.optimizer).c_str(), rmse.mean, rmse.stddev, test.mean,
                      test.stddev, epochs.mean, epochs.stddev, update.mean, update.stddev,
                      total.mean, total.stddev);
        out << line << "\n";
    }
}

nlohmann::ordered_json benchmark_record(const BenchmarkRow& row) {
    nlohmann::ordered_json j;
    j["type"] = "benchmark";
    j["optimizer"] = to_string(row.optimizer);
    j["repeats"] = row.samples.size();

    auto put = [&](const char* name, std::vector<double> values, bool timing) {
        const Stats s = compute_stats(values);
        const char* mean_key = timing ? "mean_secs" : "mean";
        nlohmann::ordered_json block;
        block[mean_key] = s.mean;
        block["stddev"] = s.stddev;
        block["values"] = values;
        j[name] = block;
    };
    put("best_rmse", collect(row, &BenchmarkSample::best_rmse), false);
    put("test_rmse", collect(row, &BenchmarkSample::test_rmse), false);
    put("epochs_to_best", collect_counts(row, &BenchmarkSample::epochs_to_best), false);
    put("epochs_to_near_best", collect_counts(row, &BenchmarkSample::epochs_to_near_best), false);
    put("update_to_best", collect(row, &BenchmarkSample::update_secs_to_best), true);
    put("total_to_best", collect(row, &BenchmarkSample::total_secs_to_best), true);
    return j;
}

}  // namespace fpslfa
