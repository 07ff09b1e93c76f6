#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "fpslfa/config.hpp"
#include "fpslfa/training.hpp"

namespace fpslfa {

// Training reports are line-delimited JSON: one config record, one record
// per epoch, one summary record. Fields ending in "_secs" carry wall-clock
// timing (millisecond resolution) and are the only fields expected to vary
// between identically configured runs.

nlohmann::ordered_json config_record(const EffectiveConfig& cfg, OptimizerKind kind,
                                     const std::string& subcommand);
nlohmann::ordered_json epoch_record(const EpochMetrics& metrics);
nlohmann::ordered_json summary_record(const TrainReport& report);

void write_train_report(std::ostream& out, const nlohmann::ordered_json& config_echo,
                        const TrainReport& report);

}  // namespace fpslfa
