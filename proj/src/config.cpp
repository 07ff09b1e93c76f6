#include "fpslfa/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "fpslfa/errors.hpp"

namespace fpslfa {

namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string_view::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return std::string(s.substr(begin, end - begin + 1));
}

double to_double(const std::string& key, const std::string& value) {
    double v = 0.0;
    const char* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw ConfigError("config: '" + key + "' expects a number, got '" + value + "'");
    }
    return v;
}

std::uint64_t to_count(const std::string& key, const std::string& value) {
    std::uint64_t v = 0;
    const char* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("config: '" + key + "' expects a non-negative integer, got '" + value +
                          "'");
    }
    return v;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on") return true;
    if (value == "false" || value == "0" || value == "off") return false;
    throw ConfigError("config: '" + key + "' expects true or false, got '" + value + "'");
}

std::array<double, 5> to_array5(const std::string& key, const std::string& value) {
    if (value.size() < 2 || value.front() != '[' || value.back() != ']') {
        throw ConfigError("config: '" + key + "' expects [v1, v2, v3, v4, v5]");
    }
    std::array<double, 5> out{};
    std::string_view body(value.data() + 1, value.size() - 2);
    std::size_t index = 0;
    while (true) {
        const std::size_t comma = body.find(',');
        const std::string token = trim(body.substr(0, comma));
        if (index >= out.size() || token.empty()) {
            throw ConfigError("config: '" + key + "' expects exactly 5 numbers");
        }
        out[index++] = to_double(key, token);
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    if (index != out.size()) {
        throw ConfigError("config: '" + key + "' expects exactly 5 numbers");
    }
    return out;
}

std::vector<std::string> split_csv(const std::string& value) {
    std::vector<std::string> out;
    std::string_view rest = value;
    while (true) {
        const std::size_t comma = rest.find(',');
        out.push_back(trim(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

void apply(EffectiveConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "data") cfg.data = value;
    else if (key == "format") {
        if (!parse_file_kind(value)) {
            throw ConfigError("config: unknown format '" + value +
                              "' (expected movielens_dat, csv, or tsv)");
        }
        cfg.format = value;
    } else if (key == "has_header") cfg.has_header = to_bool(key, value);
    else if (key == "output") cfg.output = value;
    else if (key == "model") cfg.model = value;
    else if (key == "set") {
        if (value != "train" && value != "validation" && value != "test" && value != "all") {
            throw ConfigError("config: 'set' expects train, validation, test, or all");
        }
        cfg.eval_set = value;
    } else if (key == "optimizer") {
        cfg.optimizers = split_csv(value);
        for (const std::string& name : cfg.optimizers) {
            if (!parse_optimizer_kind(name)) {
                throw ConfigError("config: unknown optimizer '" + name +
                                  "' (expected sgd, pid, or fps)");
            }
        }
    } else if (key == "f") cfg.f = static_cast<std::uint32_t>(to_count(key, value));
    else if (key == "eta") cfg.eta = to_double(key, value);
    else if (key == "lambda") cfg.lambda = to_double(key, value);
    else if (key == "phi") cfg.phi = to_double(key, value);
    else if (key == "kp") cfg.kp = to_double(key, value);
    else if (key == "ki") cfg.ki = to_double(key, value);
    else if (key == "kd") cfg.kd = to_double(key, value);
    else if (key == "max_epochs") cfg.max_epochs = to_count(key, value);
    else if (key == "patience") cfg.patience = to_count(key, value);
    else if (key == "min_delta") cfg.min_delta = to_double(key, value);
    else if (key == "seed") cfg.seed = to_count(key, value);
    else if (key == "split_seed") cfg.split_seed = to_count(key, value);
    else if (key == "shuffle") cfg.shuffle = to_bool(key, value);
    else if (key == "repeats") cfg.repeats = to_count(key, value);
    else if (key == "fuzzy.a_points") cfg.table.a_points = to_array5(key, value);
    else if (key == "fuzzy.phi_points") cfg.table.phi_points = to_array5(key, value);
    else if (key == "fuzzy.p_points") cfg.table.p_points = to_array5(key, value);
    else if (key == "fuzzy.i_points") cfg.table.i_points = to_array5(key, value);
    else if (key == "fuzzy.d_points") cfg.table.d_points = to_array5(key, value);
    else throw ConfigError("config: unknown key '" + key + "'");
}

}  // namespace

ConfigMap parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    ConfigMap map;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: " + path.string() + ":" + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config: " + path.string() + ":" + std::to_string(line_no) +
                              ": empty key");
        }
        map[key] = value;
    }
    return map;
}

ConfigMap parse_overrides(std::span<const std::string> items) {
    ConfigMap map;
    for (const std::string& item : items) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ConfigError("config: override '" + item + "' is not key=value");
        }
        map[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    }
    return map;
}

EffectiveConfig resolve_config(const ConfigMap& file, const ConfigMap& overrides) {
    EffectiveConfig cfg;
    for (const auto& [key, value] : file) apply(cfg, key, value);
    for (const auto& [key, value] : overrides) apply(cfg, key, value);
    try {
        cfg.table.validate();
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("config: ") + err.what());
    }
    if (cfg.optimizers.empty()) throw ConfigError("config: no optimizer selected");
    return cfg;
}

TrainConfig EffectiveConfig::to_train_config(OptimizerKind kind) const {
    TrainConfig cfg;
    cfg.optimizer = kind;
    cfg.f = f;
    cfg.max_epochs = max_epochs;
    cfg.patience = patience;
    cfg.min_delta = min_delta;
    cfg.seed = seed;
    cfg.shuffle_each_epoch = shuffle;
    cfg.table = table;
    switch (kind) {
        case OptimizerKind::sgd:
            cfg.hyper = Hyperparams::from_eta_lambda(eta, lambda);
            cfg.initial_gains = {};
            break;
        case OptimizerKind::pid:
            cfg.hyper = Hyperparams::from_eta_lambda(eta, lambda);
            cfg.initial_gains = {kp.value_or(1.0), ki.value_or(2e-4), kd.value_or(0.04)};
            break;
        case OptimizerKind::fps:
            cfg.hyper = Hyperparams::with_phi(eta, phi.value_or(0.00012));
            cfg.initial_gains = {kp.value_or(0.005), ki.value_or(1e-6), kd.value_or(2e-4)};
            break;
    }
    return cfg;
}

DatasetFormat EffectiveConfig::dataset_format() const {
    return DatasetFormat{*parse_file_kind(format), has_header};
}

}  // namespace fpslfa
