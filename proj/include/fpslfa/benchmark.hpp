#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <json.hpp>

#include "fpslfa/config.hpp"
#include "fpslfa/training.hpp"

namespace fpslfa {

// One trained run inside a benchmark.
struct BenchmarkSample {
    double best_rmse = 0.0;
    double test_rmse = 0.0;
    std::size_t epochs_run = 0;
    std::size_t epochs_to_best = 0;       // count of epochs through the best one
    std::size_t epochs_to_near_best = 0;  // first epoch within 1.05x of the run's best
    double update_secs_to_best = 0.0;
    double total_secs_to_best = 0.0;
};

struct BenchmarkRow {
    OptimizerKind optimizer;
    std::vector<BenchmarkSample> samples;  // one per repeat
};

struct Stats {
    double mean = 0.0;
    double stddev = 0.0;  // sample stddev; 0 for a single repeat
};

Stats compute_stats(std::span<const double> values);

// Runs every optimizer on the same split (cfg.split_seed) with the same
// per-repeat initialization seed (cfg.seed + repeat), sequentially so the
// timing comparison is fair on shared hardware.
std::vector<BenchmarkRow> run_benchmark(const SparseMatrix& source, const EffectiveConfig& cfg,
                                        std::span<const OptimizerKind> kinds);

void print_benchmark_table(std::ostream& out, std::span<const BenchmarkRow> rows);

nlohmann::ordered_json benchmark_record(const BenchmarkRow& row);

}  // namespace fpslfa
