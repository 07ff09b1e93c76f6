#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "fpslfa/cli.hpp"

namespace {

// Every flag value is forwarded verbatim as a "key=value" override, so the
// config layer owns all typing and precedence (flags > config file >
// defaults).
class FlagSet {
public:
    explicit FlagSet(CLI::App* app) : app_(app) {}

    void add(const std::string& flag, const std::string& key, const std::string& help) {
        auto storage = std::make_unique<std::string>();
        options_.push_back({key, app_->add_option(flag, *storage, help), std::move(storage)});
    }

    void add_switch(const std::string& flag, const std::string& key, const std::string& help) {
        options_.push_back({key, app_->add_flag(flag, help), nullptr});
        options_.back().is_switch = true;
    }

    void collect(std::vector<std::string>& overrides) const {
        for (const auto& opt : options_) {
            if (opt.option->count() == 0) continue;
            overrides.push_back(opt.key + "=" + (opt.is_switch ? "true" : *opt.storage));
        }
    }

private:
    struct Bound {
        std::string key;
        CLI::Option* option;
        std::unique_ptr<std::string> storage;
        bool is_switch = false;
    };
    CLI::App* app_;
    std::vector<Bound> options_;
};

void add_common_flags(FlagSet& flags) {
    flags.add("--data", "data", "ratings file");
    flags.add("--format", "format", "movielens_dat, csv, or tsv");
    flags.add_switch("--header", "has_header", "first line of a csv/tsv file is a header");
    flags.add("--optimizer", "optimizer", "sgd, pid, or fps (comma list for benchmark)");
    flags.add("--f", "f", "latent dimension");
    flags.add("--eta", "eta", "learning rate (sgd, pid)");
    flags.add("--lambda", "lambda", "regularization coefficient (sgd, pid)");
    flags.add("--phi", "phi", "initial folded shrinkage constant (fps)");
    flags.add("--kp", "kp", "proportional gain (raw for pid, folded for fps)");
    flags.add("--ki", "ki", "integral gain (raw for pid, folded for fps)");
    flags.add("--kd", "kd", "derivative gain (raw for pid, folded for fps)");
    flags.add("--max-epochs", "max_epochs", "epoch cap");
    flags.add("--patience", "patience", "non-improving epochs tolerated");
    flags.add("--min-delta", "min_delta", "RMSE improvement threshold");
    flags.add("--seed", "seed", "factor initialization / shuffle seed");
    flags.add("--split-seed", "split_seed", "70/10/20 split seed");
    flags.add_switch("--shuffle", "shuffle", "reshuffle the visit order each epoch");
    flags.add("--output", "output", "report / predictions file");
    flags.add("--repeats", "repeats", "benchmark repeat count");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Latent factor analysis on incomplete matrices via plain, PID-refined, "
                 "and fuzzy-adaptive SGD"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::pair<CLI::App*, std::unique_ptr<FlagSet>>> subs;
    for (const auto& [name, help] :
         {std::pair{"train", "fit a factor model and write a report"},
          {"evaluate", "score a snapshot on an entry set"},
          {"benchmark", "compare optimizers on one split"}}) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "key = value configuration file");
        auto flags = std::make_unique<FlagSet>(sub);
        add_common_flags(*flags);
        if (std::string(name) == "evaluate") {
            flags->add("--model", "model", "model snapshot to score");
            flags->add("--set", "set", "train, validation, test, or all");
        }
        subs.emplace_back(sub, std::move(flags));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : fpslfa::exit_code::usage;
    }

    fpslfa::RunSpec spec;
    spec.config_path = config_path;
    for (const auto& [sub, flags] : subs) {
        if (sub->parsed()) {
            spec.subcommand = sub->get_name();
            flags->collect(spec.overrides);
        }
    }
    return fpslfa::run_cli(spec);
}
