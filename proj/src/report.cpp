#include "fpslfa/report.hpp"

#include <cmath>
#include <ostream>

namespace fpslfa {

namespace {

double round_ms(double seconds) { return std::round(seconds * 1000.0) / 1000.0; }

nlohmann::ordered_json json_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

}  // namespace

nlohmann::ordered_json config_record(const EffectiveConfig& cfg, OptimizerKind kind,
                                     const std::string& subcommand) {
    const TrainConfig train_cfg = cfg.to_train_config(kind);
    nlohmann::ordered_json j;
    j["type"] = "config";
    j["subcommand"] = subcommand;
    j["data"] = cfg.data;
    j["format"] = cfg.format;
    j["has_header"] = cfg.has_header;
    j["optimizer"] = to_string(kind);
    j["f"] = cfg.f;
    j["eta"] = train_cfg.hyper.eta;
    j["lambda"] = train_cfg.hyper.lambda;
    j["phi"] = train_cfg.hyper.phi;
    j["kp"] = train_cfg.initial_gains.kp;
    j["ki"] = train_cfg.initial_gains.ki;
    j["kd"] = train_cfg.initial_gains.kd;
    j["max_epochs"] = cfg.max_epochs;
    j["patience"] = cfg.patience;
    j["min_delta"] = cfg.min_delta;
    j["seed"] = cfg.seed;
    j["split_seed"] = cfg.split_seed;
    j["shuffle"] = cfg.shuffle;
    j["fuzzy"] = {
        {"a_points", cfg.table.a_points},       {"phi_points", cfg.table.phi_points},
        {"p_points", cfg.table.p_points},       {"i_points", cfg.table.i_points},
        {"d_points", cfg.table.d_points},
    };
    return j;
}

nlohmann::ordered_json epoch_record(const EpochMetrics& metrics) {
    nlohmann::ordered_json j;
    j["type"] = "epoch";
    j["epoch"] = metrics.epoch;
    j["val_rmse"] = metrics.validation_rmse;
    j["a_t"] = metrics.a_t.has_value() ? nlohmann::ordered_json(*metrics.a_t)
                                       : nlohmann::ordered_json(nullptr);
    j["phi"] = metrics.adapted.phi;
    j["kp"] = metrics.adapted.gains.kp;
    j["ki"] = metrics.adapted.gains.ki;
    j["kd"] = metrics.adapted.gains.kd;
    j["update_secs"] = round_ms(metrics.update_seconds);
    j["eval_secs"] = round_ms(metrics.eval_seconds);
    return j;
}

nlohmann::ordered_json summary_record(const TrainReport& report) {
    nlohmann::ordered_json j;
    j["type"] = "summary";
    j["epochs_run"] = report.per_epoch.size();
    j["best_epoch"] = report.best_epoch;
    j["best_val_rmse"] = json_or_null(report.best_validation_rmse);
    j["test_rmse"] = json_or_null(report.test_rmse);
    j["diverged"] = report.divergence.has_value();
    if (report.divergence) {
        j["divergence"] = {{"row", report.divergence->row},
                           {"col", report.divergence->col},
                           {"epoch", report.divergence->epoch},
                           {"message", report.divergence->message}};
    }
    j["update_secs"] = round_ms(report.update_seconds_total);
    j["eval_secs"] = round_ms(report.eval_seconds_total);
    j["update_to_best_secs"] = round_ms(report.update_seconds_to_best);
    j["total_to_best_secs"] = round_ms(report.total_seconds_to_best);
    j["total_secs"] = round_ms(report.total_seconds);
    return j;
}

void write_train_report(std::ostream& out, const nlohmann::ordered_json& config_echo,
                        const TrainReport& report) {
    out << config_echo.dump() << "\n";
    for (const EpochMetrics& metrics : report.per_epoch) {
        out << epoch_record(metrics).dump() << "\n";
    }
    out << summary_record(report).dump() << "\n";
}

}  // namespace fpslfa
