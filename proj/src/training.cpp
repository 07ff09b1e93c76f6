#include "fpslfa/training.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fpslfa/errors.hpp"
#include "fpslfa/rng.hpp"

namespace fpslfa {

void TrainConfig::validate() const {
    if (max_epochs < 1) throw std::invalid_argument("max_epochs must be >= 1");
    if (patience < 1) throw std::invalid_argument("patience must be >= 1");
    if (!(min_delta >= 0.0)) throw std::invalid_argument("min_delta must be >= 0");
    if (f < 1) throw std::invalid_argument("f must be >= 1");
    hyper.validate();
    if (optimizer == OptimizerKind::fps) table.validate();
}

namespace {

double squared_residual_sum(const FactorModel& model, std::span<const Entry> entries) {
    constexpr std::size_t kChunk = 256;
    if (entries.size() <= kChunk) {
        double sum = 0.0;
        for (const Entry& e : entries) {
            const double r = e.value - model.predict(e.row, e.col);
            sum += r * r;
        }
        return sum;
    }
    const std::size_t half = entries.size() / 2;
    return squared_residual_sum(model, entries.first(half)) +
           squared_residual_sum(model, entries.subspan(half));
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Folded-form view of the parameters in effect, for uniform reporting across
// optimizer kinds. sgd behaves as a unit proportional gain on the raw error.
AdaptedParams folded_view(const TrainConfig& cfg, const AdaptedParams& current) {
    switch (cfg.optimizer) {
        case OptimizerKind::fps:
            return current;
        case OptimizerKind::pid:
            return {cfg.hyper.phi,
                    {cfg.hyper.eta * cfg.initial_gains.kp, cfg.hyper.eta * cfg.initial_gains.ki,
                     cfg.hyper.eta * cfg.initial_gains.kd}};
        case OptimizerKind::sgd:
            return {cfg.hyper.phi, {cfg.hyper.eta, 0.0, 0.0}};
    }
    return current;
}

}  // namespace

double compute_rmse(const FactorModel& model, const SparseMatrix& entries) {
    if (entries.entries.empty()) {
        throw std::invalid_argument("compute_rmse: empty entry set");
    }
    const double sum = squared_residual_sum(model, entries.entries);
    return std::sqrt(sum / static_cast<double>(entries.entries.size()));
}

void run_epoch(FactorModel& model, ControllerBank& bank, const SparseMatrix& train,
               const TrainConfig& cfg, const AdaptedParams& current,
               std::span<const std::uint32_t> order) {
    if (bank.states.size() != train.entries.size()) {
        throw std::invalid_argument("controller bank size does not match training entries");
    }
    switch (cfg.optimizer) {
        case OptimizerKind::sgd:
            for (const std::uint32_t i : order) {
                sgd_update(model, train.entries[i], cfg.hyper);
            }
            break;
        case OptimizerKind::pid:
            for (const std::uint32_t i : order) {
                psl_update(model, train.entries[i], bank.states[i], cfg.hyper, cfg.initial_gains);
            }
            break;
        case OptimizerKind::fps:
            for (const std::uint32_t i : order) {
                fps_update(model, train.entries[i], bank.states[i], current);
            }
            break;
    }
}

void run_epoch(FactorModel& model, ControllerBank& bank, const SparseMatrix& train,
               const TrainConfig& cfg, const AdaptedParams& current) {
    std::vector<std::uint32_t> order(train.entries.size());
    std::iota(order.begin(), order.end(), 0u);
    run_epoch(model, bank, train, cfg, current, order);
}

TrainResult train(const DatasetSplit& data, const TrainConfig& cfg,
                  const std::function<void(const EpochMetrics&)>& on_epoch) {
    cfg.validate();
    if (data.train.entries.empty()) {
        throw std::invalid_argument("train: empty training set");
    }
    if (data.validation.entries.empty() || data.test.entries.empty()) {
        throw std::invalid_argument("train: degenerate split (empty validation or test set)");
    }

    const auto total_start = Clock::now();

    FactorModel model =
        init_factors(data.train.num_rows, data.train.num_cols, cfg.f, cfg.seed);
    ControllerBank bank(data.train.entries.size());

    std::vector<std::uint32_t> order(data.train.entries.size());
    std::iota(order.begin(), order.end(), 0u);
    rng::Engine shuffle_engine(cfg.seed);

    AdaptedParams current{cfg.hyper.phi, cfg.initial_gains};

    TrainResult result;
    TrainReport& report = result.report;
    FactorModel best_model;
    double best_rmse = std::numeric_limits<double>::infinity();
    double prev_rmse = 0.0;
    std::size_t stall = 0;

    for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        if (cfg.shuffle_each_epoch) {
            rng::shuffle(std::span<std::uint32_t>(order), shuffle_engine);
        }

        const auto update_start = Clock::now();
        try {
            run_epoch(model, bank, data.train, cfg, current, order);
        } catch (const DivergenceError& err) {
            report.divergence =
                DivergenceInfo{err.row(), err.col(), epoch, err.what()};
            break;
        }
        const double update_secs = seconds_since(update_start);

        const auto eval_start = Clock::now();
        const double rmse = compute_rmse(model, data.validation);
        const double eval_secs = seconds_since(eval_start);

        EpochMetrics metrics;
        metrics.epoch = epoch;
        metrics.validation_rmse = rmse;
        if (epoch > 0) metrics.a_t = prev_rmse - rmse;
        metrics.adapted = folded_view(cfg, current);
        metrics.update_seconds = update_secs;
        metrics.eval_seconds = eval_secs;
        report.per_epoch.push_back(metrics);
        if (on_epoch) on_epoch(metrics);

        report.update_seconds_total += update_secs;
        report.eval_seconds_total += eval_secs;

        // Snapshot on any strict improvement; the stall counter only resets
        // on an improvement larger than min_delta.
        const double improvement = best_rmse - rmse;
        if (rmse < best_rmse) {
            best_rmse = rmse;
            report.best_epoch = static_cast<std::ptrdiff_t>(epoch);
            report.best_validation_rmse = rmse;
            report.update_seconds_to_best = report.update_seconds_total;
            report.total_seconds_to_best =
                report.update_seconds_total + report.eval_seconds_total;
            best_model = model;
        }
        if (improvement > cfg.min_delta) {
            stall = 0;
        } else {
            ++stall;
        }

        // Parameters for the next epoch; only fps adapts, and only once an
        // improvement signal exists.
        if (cfg.optimizer == OptimizerKind::fps && metrics.a_t.has_value()) {
            current = defuzzify(fuzzify(*metrics.a_t, cfg.table), cfg.table);
        }
        prev_rmse = rmse;

        if (stall >= cfg.patience) break;
    }

    if (report.best_epoch >= 0) {
        result.model = std::move(best_model);
        report.test_rmse = compute_rmse(result.model, data.test);
    }
    report.total_seconds = seconds_since(total_start);
    return result;
}

}  // namespace fpslfa
