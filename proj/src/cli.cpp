#include "fpslfa/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "fpslfa/benchmark.hpp"
#include "fpslfa/config.hpp"
#include "fpslfa/data_io.hpp"
#include "fpslfa/errors.hpp"
#include "fpslfa/report.hpp"

namespace fpslfa {

namespace {

EffectiveConfig resolve_spec(const RunSpec& spec) {
    ConfigMap file;
    if (!spec.config_path.empty()) {
        file = parse_config_file(spec.config_path);
    }
    return resolve_config(file, parse_overrides(spec.overrides));
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file " + path);
    return out;
}

OptimizerKind single_optimizer(const EffectiveConfig& cfg) {
    if (cfg.optimizers.size() != 1) {
        throw ConfigError("this subcommand takes exactly one optimizer");
    }
    return *parse_optimizer_kind(cfg.optimizers.front());
}

const SparseMatrix& select_entry_set(const EffectiveConfig& cfg, const SparseMatrix& all,
                                     const DatasetSplit& split) {
    if (cfg.eval_set == "all") return all;
    if (cfg.eval_set == "train") return split.train;
    if (cfg.eval_set == "validation") return split.validation;
    return split.test;
}

int cmd_train(const EffectiveConfig& cfg) {
    if (cfg.data.empty()) throw ConfigError("train requires a data path (--data)");
    const OptimizerKind kind = single_optimizer(cfg);

    const ParsedDataset parsed = parse_dataset(cfg.data, cfg.dataset_format());
    const DatasetSplit split = split_dataset(parsed.matrix, cfg.split_seed);
    const TrainConfig train_cfg = cfg.to_train_config(kind);

    const bool to_file = !cfg.output.empty();
    std::ofstream file;
    if (to_file) file = open_output(cfg.output);
    std::ostream& out = to_file ? file : std::cout;

    out << config_record(cfg, kind, "train").dump() << "\n";
    const TrainResult result = train(split, train_cfg, [&](const EpochMetrics& m) {
        out << epoch_record(m).dump() << "\n";
        if (to_file) {
            std::fprintf(stderr, "epoch %zu  val_rmse %.6f\n", m.epoch, m.validation_rmse);
        }
    });
    out << summary_record(result.report).dump() << "\n";

    const std::string snapshot = to_file ? cfg.output + ".model" : "fpslfa_model.bin";
    if (result.report.best_epoch >= 0) {
        save_model(result.model, snapshot);
        save_id_maps({parsed.row_ids, parsed.col_ids}, snapshot + ".ids");
    }

    if (result.report.divergence) {
        const DivergenceInfo& d = *result.report.divergence;
        std::cerr << "error: diverged at entry (" << d.row << ", " << d.col << "), epoch "
                  << d.epoch << "; partial report written\n";
        return exit_code::divergence;
    }
    std::cerr << "best val_rmse " << result.report.best_validation_rmse << " at epoch "
              << result.report.best_epoch << ", test_rmse " << result.report.test_rmse << ", "
              << result.report.per_epoch.size() << " epochs, snapshot " << snapshot << "\n";
    return exit_code::ok;
}

int cmd_evaluate(const EffectiveConfig& cfg) {
    if (cfg.model.empty()) throw ConfigError("evaluate requires a model snapshot (--model)");
    if (cfg.data.empty()) throw ConfigError("evaluate requires a data path (--data)");

    const FactorModel model = load_model(cfg.model);
    const ParsedDataset parsed = parse_dataset(cfg.data, cfg.dataset_format());
    if (parsed.matrix.num_rows != model.num_rows() ||
        parsed.matrix.num_cols != model.num_cols()) {
        throw ConfigError("snapshot is " + std::to_string(model.num_rows()) + "x" +
                          std::to_string(model.num_cols()) + " but dataset is " +
                          std::to_string(parsed.matrix.num_rows) + "x" +
                          std::to_string(parsed.matrix.num_cols));
    }

    const DatasetSplit split = cfg.eval_set == "all"
                                   ? DatasetSplit{}
                                   : split_dataset(parsed.matrix, cfg.split_seed);
    const SparseMatrix& entries = select_entry_set(cfg, parsed.matrix, split);
    if (entries.entries.empty()) {
        throw std::invalid_argument("selected entry set '" + cfg.eval_set + "' is empty");
    }
    const double rmse = compute_rmse(model, entries);

    std::cout << config_record(cfg, single_optimizer(cfg), "evaluate").dump() << "\n";
    nlohmann::ordered_json record;
    record["type"] = "evaluation";
    record["set"] = cfg.eval_set;
    record["entries"] = entries.entries.size();
    record["rmse"] = rmse;
    std::cout << record.dump() << "\n";

    if (!cfg.output.empty()) {
        std::ofstream out = open_output(cfg.output);
        out << "user,item,rating,prediction\n";
        char buf[64];
        for (const Entry& e : entries.entries) {
            out << parsed.row_ids[e.row] << ',' << parsed.col_ids[e.col] << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", e.value);
            out << buf << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", model.predict(e.row, e.col));
            out << buf << "\n";
        }
    }
    return exit_code::ok;
}

int cmd_benchmark(const EffectiveConfig& cfg) {
    if (cfg.data.empty()) throw ConfigError("benchmark requires a data path (--data)");
    std::vector<OptimizerKind> kinds;
    kinds.reserve(cfg.optimizers.size());
    for (const std::string& name : cfg.optimizers) {
        kinds.push_back(*parse_optimizer_kind(name));
    }

    const ParsedDataset parsed = parse_dataset(cfg.data, cfg.dataset_format());
    const std::vector<BenchmarkRow> rows = run_benchmark(parsed.matrix, cfg, kinds);

    nlohmann::ordered_json echo;
    echo["type"] = "config";
    echo["subcommand"] = "benchmark";
    echo["data"] = cfg.data;
    echo["format"] = cfg.format;
    echo["optimizers"] = cfg.optimizers;
    echo["f"] = cfg.f;
    echo["eta"] = cfg.eta;
    echo["lambda"] = cfg.lambda;
    echo["max_epochs"] = cfg.max_epochs;
    echo["patience"] = cfg.patience;
    echo["min_delta"] = cfg.min_delta;
    echo["seed"] = cfg.seed;
    echo["split_seed"] = cfg.split_seed;
    echo["shuffle"] = cfg.shuffle;
    echo["repeats"] = cfg.repeats;

    print_benchmark_table(std::cout, rows);
    if (!cfg.output.empty()) {
        std::ofstream out = open_output(cfg.output);
        out << echo.dump() << "\n";
        for (const BenchmarkRow& row : rows) out << benchmark_record(row).dump() << "\n";
    }
    return exit_code::ok;
}

}  // namespace

int run_cli(const RunSpec& spec) {
    try {
        const EffectiveConfig cfg = resolve_spec(spec);
        if (spec.subcommand == "train") return cmd_train(cfg);
        if (spec.subcommand == "evaluate") return cmd_evaluate(cfg);
        if (spec.subcommand == "benchmark") return cmd_benchmark(cfg);
        std::cerr << "error: unknown subcommand '" << spec.subcommand << "'\n";
        return exit_code::usage;
    } catch (const ParseError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return exit_code::parse;
    } catch (const FormatError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return exit_code::parse;
    } catch (const DivergenceError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return exit_code::divergence;
    } catch (const ConfigError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return exit_code::usage;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return exit_code::usage;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}

}  // namespace fpslfa
