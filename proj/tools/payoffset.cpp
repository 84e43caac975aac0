// payoffset estimate|convergence|coverage|verify-lb|bounds --config <path.json> --seed <u64> --out <dir>
//
// Exit codes: 0 success, 2 config error, 3 failed assertion in a verifying
// subcommand (coverage, verify-lb, bounds).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "payoffset/experiments.hpp"

using payoffset::ConfigError;
using payoffset::Json;

int main(int argc, char** argv) {
    CLI::App app{"Estimate, verify and tabulate inverse-game feasible payoff sets"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "runs";
    std::optional<uint64_t> seed;
    bool print_csv = false;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"estimate", "sample a profile and emit the recommended payoff sets"},
        {"convergence", "bound and distance diagnostics over a grid of sample sizes"},
        {"coverage", "empirical violation frequencies of the concentration bounds"},
        {"verify-lb", "LP verification of the lower-bound instance separations"},
        {"bounds", "sample-size upper bounds against minimax lower bounds"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        auto* opt = sub->add_option("--config", config_path, "JSON config file");
        if (name != "verify-lb" && name != "bounds") opt->required();
        sub->add_option("--seed", seed, "base seed (overrides the config)");
        sub->add_option("--out", out_dir, "output root directory")->capture_default_str();
        sub->add_flag("--print", print_csv, "also print the CSV rows to stdout");
    }
    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    Json config = Json::object();
    try {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw ConfigError("cannot open config " + config_path);
            config = Json::parse(f);
            if (!config.is_object()) throw ConfigError("config must be a JSON object");
        }
        if (seed) config["seed"] = *seed;
    } catch (const Json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        const payoffset::ExperimentReport r = payoffset::run_command(command, config);
        const std::string dir = payoffset::write_report(r, out_dir);
        if (print_csv) std::cout << payoffset::to_csv(r);
        std::cout << command << ": " << r.rows.size() << " rows -> " << dir << "\n";
        for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
        if (!r.assertions_passed) {
            std::cerr << command << ": verification failed (see " << dir << "/summary.json)\n";
            return 3;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const payoffset::InputError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const payoffset::RangeError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
