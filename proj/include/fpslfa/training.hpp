#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fpslfa/fuzzy.hpp"
#include "fpslfa/optimizers.hpp"
#include "fpslfa/types.hpp"

namespace fpslfa {

struct TrainConfig {
    OptimizerKind optimizer = OptimizerKind::fps;
    std::uint32_t f = 20;
    std::size_t max_epochs = 1000;
    std::size_t patience = 5;      // non-improving epochs tolerated
    double min_delta = 1e-5;       // improvement below this counts as a stall
    std::uint64_t seed = 1;
    bool shuffle_each_epoch = false;
    Hyperparams hyper;             // eta/lambda drive sgd and pid
    PidGains initial_gains;        // raw gains for pid, eta-folded for fps
    FuzzyTable table = default_table();  // fps only

    void validate() const;
};

struct EpochMetrics {
    std::size_t epoch = 0;
    double validation_rmse = 0.0;
    std::optional<double> a_t;  // absent at epoch 0
    AdaptedParams adapted;      // folded-view parameters in effect this epoch
    double update_seconds = 0.0;
    double eval_seconds = 0.0;

    double elapsed_seconds() const { return update_seconds + eval_seconds; }
};

struct DivergenceInfo {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    std::size_t epoch = 0;
    std::string message;
};

struct TrainReport {
    std::vector<EpochMetrics> per_epoch;
    std::ptrdiff_t best_epoch = -1;
    double best_validation_rmse = std::numeric_limits<double>::quiet_NaN();
    double test_rmse = std::numeric_limits<double>::quiet_NaN();
    double update_seconds_total = 0.0;
    double eval_seconds_total = 0.0;
    double total_seconds = 0.0;
    // Cumulative cost through the best epoch, the Table-IV style "time to
    // lowest RMSE" reading.
    double update_seconds_to_best = 0.0;
    double total_seconds_to_best = 0.0;
    std::optional<DivergenceInfo> divergence;
};

// sqrt(sum((value - prediction)^2) / n) over the known entries. Summation is
// a fixed-chunk tree reduction, so the result does not depend on how callers
// might partition the set. Throws std::invalid_argument on an empty set.
double compute_rmse(const FactorModel& model, const SparseMatrix& entries);

// One pass over the training entries in natural order, applying the
// configured optimizer per entry; `current` is held constant for the pass
// and is only consulted by the fps rule.
void run_epoch(FactorModel& model, ControllerBank& bank, const SparseMatrix& train,
               const TrainConfig& cfg, const AdaptedParams& current);

// As above but visiting entries in the given order. Controller states stay
// tied to entry indices, not to visit positions.
void run_epoch(FactorModel& model, ControllerBank& bank, const SparseMatrix& train,
               const TrainConfig& cfg, const AdaptedParams& current,
               std::span<const std::uint32_t> order);

struct TrainResult {
    FactorModel model;  // snapshot at the best validation epoch
    TrainReport report;
};

// Epoch loop with per-epoch validation RMSE, the improvement signal
// a_t = rmse(t-1) - rmse(t), fuzzy parameter adaptation (fps only), early
// stopping, and timing. Divergence aborts the loop and is reported on the
// partial report rather than thrown. on_epoch, when given, is invoked after
// each completed epoch with the metrics just recorded.
TrainResult train(const DatasetSplit& data, const TrainConfig& cfg,
                  const std::function<void(const EpochMetrics&)>& on_epoch = {});

}  // namespace fpslfa
