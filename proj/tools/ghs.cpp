// Command-line front end: run / sweep / list-scenarios / verify.
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "ghs/acceptance.hpp"
#include "ghs/errors.hpp"
#include "ghs/scenario.hpp"

namespace {

enum Exit : int { kOk = 0, kConfig = 1, kRuntime = 2, kAcceptance = 3 };

int print_run(const ghs::ScenarioReport& r) {
    const auto& o = r.outcome;
    std::printf("%s: %s at t=%.6g after %zu steps (min u_x %.4g)\n", r.directory.filename().c_str(),
                ghs::to_string(o.status), o.t_final, o.steps, o.min_slope);
    if (o.blowup_estimate) {
        std::printf("  blow-up fit: T0_est=%.6g rate_est=%.4g\n", o.blowup_estimate->T0_est,
                    o.blowup_estimate->rate_est);
    }
    if (!o.message.empty()) std::printf("  %s\n", o.message.c_str());
    std::printf("  output in %s\n", r.directory.c_str());
    return o.status == ghs::RunStatus::NumericalBreakdown ? kRuntime : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-component generalized Hunter-Saxton simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset;
    auto* run_cmd = app.add_subcommand("run", "Run one scenario from a JSON config or a built-in preset");
    auto* cfg_opt = run_cmd->add_option("config", config_path, "Scenario config file");
    run_cmd->add_option("--seed-preset", preset, "Run a built-in scenario instead of a config file")
        ->excludes(cfg_opt);

    std::string sweep_path;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run an (alpha, kappa) sweep");
    sweep_cmd->add_option("config", sweep_path, "Sweep config file")->required();

    auto* list_cmd = app.add_subcommand("list-scenarios", "List built-in scenarios");
    bool dump = false;
    list_cmd->add_flag("--dump", dump, "Print each preset as a config document");

    std::vector<std::string> only;
    auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance suite");
    verify_cmd->add_option("criteria", only, "Subset of criteria (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*run_cmd) {
            if (config_path.empty() == preset.empty()) {
                std::cerr << "run: give a config file or --seed-preset <name>\n";
                return kConfig;
            }
            const ghs::ScenarioConfig config =
                preset.empty() ? ghs::load_scenario(config_path) : ghs::builtin_scenario(preset);
            return print_run(ghs::run_scenario(config, ghs::output_root()));
        }
        if (*sweep_cmd) {
            const auto rows = ghs::run_sweep(ghs::load_sweep(sweep_path), ghs::output_root());
            int code = kOk;
            for (const auto& row : rows) {
                std::printf("alpha=%-6g kappa=%-6g %-20s t_final=%-10.6g min_slope=%.4g\n", row.alpha, row.kappa,
                            row.status.c_str(), row.t_final, row.min_slope);
                if (row.status == "NumericalBreakdown" || row.status == "Error") code = kRuntime;
            }
            return code;
        }
        if (*list_cmd) {
            for (const auto& name : ghs::builtin_scenario_names()) {
                if (dump) {
                    std::cout << ghs::to_json(ghs::builtin_scenario(name)) << '\n';
                } else {
                    std::cout << name << '\n';
                }
            }
            return kOk;
        }
        if (*verify_cmd) {
            bool all = true;
            const auto report = [&](const ghs::acceptance::CriterionResult& r) {
                std::cout << r.line() << std::endl;
                all = all && r.pass();
            };
            if (only.empty()) {
                ghs::acceptance::run_all(report);
            } else {
                for (const auto& id : only) report(ghs::acceptance::run_criterion(id));
            }
            return all ? kOk : kAcceptance;
        }
    } catch (const ghs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kOk;
}
