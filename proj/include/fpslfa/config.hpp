#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fpslfa/data_io.hpp"
#include "fpslfa/fuzzy.hpp"
#include "fpslfa/training.hpp"

namespace fpslfa {

// Flat key = value text with dotted keys. '#' starts a comment; arrays are
// written as [v1, v2, ...]. Values are kept as raw strings and typed at
// resolution time.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_file(const std::filesystem::path& path);

// "key=value" items, e.g. collected from command-line flags.
ConfigMap parse_overrides(std::span<const std::string> items);

// Fully resolved run configuration: built-in defaults, overlaid by the
// config file, overlaid by command-line overrides.
struct EffectiveConfig {
    std::string data;
    std::string format = "csv";
    bool has_header = false;
    std::string output;
    std::string model;
    std::string eval_set = "test";  // train | validation | test | all
    std::vector<std::string> optimizers = {"fps"};

    std::uint32_t f = 20;
    double eta = 0.005;
    double lambda = 0.03;
    // Unset means kind-dependent defaults: fps uses the folded initial
    // values phi=0.00012, gains (0.005, 1e-6, 2e-4); pid uses their
    // unfolded counterparts (1, 2e-4, 0.04) at the default eta.
    std::optional<double> phi;
    std::optional<double> kp, ki, kd;

    std::size_t max_epochs = 1000;
    std::size_t patience = 5;
    double min_delta = 1e-5;
    std::uint64_t seed = 1;
    std::uint64_t split_seed = 1;
    bool shuffle = false;
    std::size_t repeats = 3;
    FuzzyTable table = default_table();

    TrainConfig to_train_config(OptimizerKind kind) const;
    DatasetFormat dataset_format() const;
};

// Applies file and override maps on top of defaults. Unknown keys, bad
// types, and invalid fuzzy tables raise ConfigError naming the key.
EffectiveConfig resolve_config(const ConfigMap& file, const ConfigMap& overrides);

}  // namespace fpslfa
