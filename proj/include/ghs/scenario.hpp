#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ghs/analysis.hpp"
#include "ghs/characteristics.hpp"
#include "ghs/evolution.hpp"
#include "ghs/grid.hpp"

namespace ghs {

struct ObserverConfig {
    bool conservation = true;
    std::vector<double> sobolev_orders;  // H^s norms of u written as extra columns
    int characteristic_seeds = 0;        // 0 disables the tracker
    std::optional<AuxiliaryKind> auxiliary;  // needs characteristic_seeds > 0
    bool origin_slope = false;
};

struct ScenarioConfig {
    std::string name = "scenario";
    SystemParams params;
    int n = 256;
    FunctionDescriptor u0;
    FunctionDescriptor rho0;
    double horizon = 1.0;
    StepControl control;
    ObserverConfig observers;
    std::vector<double> snapshot_times;
    std::string output_dir;  // relative to the output root; defaults to name

    // Throws ConfigError naming the offending field.
    void validate() const;
};

struct SweepConfig {
    ScenarioConfig base;
    std::vector<double> alphas;
    std::vector<double> kappas;
    int parallelism = 1;

    void validate() const;
};

/**
 * JSON config readers. Syntax errors carry the line and column, schema errors
 * the JSON pointer of the field, both as ConfigError.
 */
ScenarioConfig parse_scenario(const std::string& text);
SweepConfig parse_sweep(const std::string& text);
ScenarioConfig load_scenario(const std::filesystem::path& path);
SweepConfig load_sweep(const std::filesystem::path& path);

std::string to_json(const ScenarioConfig& config);

std::vector<std::string> builtin_scenario_names();
ScenarioConfig builtin_scenario(const std::string& name);  // ConfigError if unknown

/// Root for relative output directories: $GHS_OUTPUT_ROOT, else the working directory.
std::filesystem::path output_root();

struct ScenarioReport {
    RunOutcome outcome;
    HypothesisReport hypotheses;
    std::optional<ConservationReport> conservation;
    std::filesystem::path directory;
};

/**
 * Validates, runs and writes into root/output_dir:
 *   timeseries.csv   one row per accepted step (plus t = 0)
 *   snapshot_NNN.csv x, u, rho at each reached snapshot time
 *   origin_slope.csv when the origin-slope observer is on
 *   summary.json
 * Nothing is created when validation fails.
 */
ScenarioReport run_scenario(const ScenarioConfig& config, const std::filesystem::path& root);

struct SweepRow {
    double alpha = 0.0;
    double kappa = 0.0;
    std::string status;  // RunStatus name, or "Error"
    double t_final = 0.0;
    double min_slope = 0.0;
    double a_drift = 0.0;
    double energy_drift = 0.0;
    std::string message;
};

/**
 * One cell per (alpha, kappa), alpha-major. Cells run on up to `parallelism`
 * threads, each in its own subdirectory; the returned rows and sweep.csv do
 * not depend on scheduling. A failing cell fills its row and never aborts
 * the sweep.
 */
std::vector<SweepRow> run_sweep(const SweepConfig& config, const std::filesystem::path& root);

}  // namespace ghs
