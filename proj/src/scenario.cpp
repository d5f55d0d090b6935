#include "ghs/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "ghs/spectral.hpp"

namespace ghs {

using nlohmann::json;

namespace {

// Round-trip decimal for data files.
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

// Object view that remembers where it sits in the document and rejects
// unknown keys, so typos surface as errors instead of silent defaults.
class Node {
public:
    Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) field_error(path_.empty() ? "/" : path_, "expected an object");
    }

    void allow(std::initializer_list<const char*> keys) const {
        const std::set<std::string> known(keys.begin(), keys.end());
        for (const auto& item : j_.items()) {
            if (!known.contains(item.key())) field_error(at(item.key()), "unknown field");
        }
    }

    bool has(const char* key) const { return j_.contains(key); }
    std::string at(const std::string& key) const { return path_ + "/" + key; }
    const json& raw(const char* key) const { return j_.at(key); }

    double number(const char* key, double fallback) const {
        if (!has(key)) return fallback;
        return number(key);
    }
    double number(const char* key) const {
        if (!has(key)) field_error(at(key), "required field is missing");
        const json& v = j_.at(key);
        if (!v.is_number()) field_error(at(key), "expected a number");
        return v.get<double>();
    }
    int integer(const char* key, int fallback) const {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_number_integer()) field_error(at(key), "expected an integer");
        return v.get<int>();
    }
    bool boolean(const char* key, bool fallback) const {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_boolean()) field_error(at(key), "expected true or false");
        return v.get<bool>();
    }
    std::string string(const char* key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_string()) field_error(at(key), "expected a string");
        return v.get<std::string>();
    }
    std::vector<double> numbers(const char* key) const {
        if (!has(key)) return {};
        const json& v = j_.at(key);
        if (!v.is_array()) field_error(at(key), "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) field_error(at(key) + "/" + std::to_string(i), "expected a number");
            out.push_back(v[i].get<double>());
        }
        return out;
    }

private:
    const json& j_;
    std::string path_;
};

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config syntax: ") + e.what());
    }
}

fn::Term parse_term(const json& j, const std::string& path) {
    const Node node(j, path);
    const std::string type = node.string("type", "");
    if (type == "constant") {
        node.allow({"type", "value"});
        return fn::Constant{node.number("value")};
    }
    if (type == "sine" || type == "cosine") {
        node.allow({"type", "amplitude", "frequency"});
        const double amplitude = node.number("amplitude", 1.0);
        const int frequency = node.integer("frequency", 1);
        if (type == "sine") return fn::Sine{amplitude, frequency};
        return fn::Cosine{amplitude, frequency};
    }
    if (type == "raised_cosine") {
        node.allow({"type", "scale"});
        return fn::RaisedCosine{node.number("scale", 1.0)};
    }
    if (type == "fourier") {
        node.allow({"type", "mean", "cos", "sin"});
        return fn::FourierSum{node.number("mean", 0.0), node.numbers("cos"), node.numbers("sin")};
    }
    field_error(path + "/type", "unknown function family '" + type +
                                    "' (constant, sine, cosine, raised_cosine, fourier)");
}

FunctionDescriptor parse_function(const json& j, const std::string& path) {
    FunctionDescriptor f;
    if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) f.terms.push_back(parse_term(j[i], path + "/" + std::to_string(i)));
    } else {
        f.terms.push_back(parse_term(j, path));
    }
    return f;
}

json term_json(const fn::Term& term) {
    return std::visit(
        [](const auto& t) -> json {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, fn::Constant>) return {{"type", "constant"}, {"value", t.value}};
            if constexpr (std::is_same_v<T, fn::Sine>)
                return {{"type", "sine"}, {"amplitude", t.amplitude}, {"frequency", t.frequency}};
            if constexpr (std::is_same_v<T, fn::Cosine>)
                return {{"type", "cosine"}, {"amplitude", t.amplitude}, {"frequency", t.frequency}};
            if constexpr (std::is_same_v<T, fn::RaisedCosine>) return {{"type", "raised_cosine"}, {"scale", t.scale}};
            if constexpr (std::is_same_v<T, fn::FourierSum>)
                return {{"type", "fourier"}, {"mean", t.mean}, {"cos", t.cos_coeffs}, {"sin", t.sin_coeffs}};
        },
        term);
}

json function_json(const FunctionDescriptor& f) {
    json out = json::array();
    for (const auto& term : f.terms) out.push_back(term_json(term));
    return out;
}

const char* auxiliary_name(AuxiliaryKind kind) {
    return kind == AuxiliaryKind::WAlphaMinus1 ? "w" : "w_tilde";
}

ScenarioConfig scenario_from_json(const json& root, const std::string& path) {
    const Node top(root, path);
    top.allow({"name", "params", "grid", "initial", "horizon", "step", "observers", "snapshots", "output"});

    ScenarioConfig c;
    c.name = top.string("name", c.name);

    if (top.has("params")) {
        const Node p(top.raw("params"), top.at("params"));
        p.allow({"alpha", "kappa", "dealias"});
        c.params.alpha = p.number("alpha", c.params.alpha);
        c.params.kappa = p.number("kappa", c.params.kappa);
        c.params.dealias = p.boolean("dealias", c.params.dealias);
    }
    if (top.has("grid")) {
        const Node g(top.raw("grid"), top.at("grid"));
        g.allow({"n"});
        c.n = g.integer("n", c.n);
    }
    if (!top.has("initial")) field_error(top.at("initial"), "required field is missing");
    {
        const Node init(top.raw("initial"), top.at("initial"));
        init.allow({"u", "rho"});
        if (!init.has("u")) field_error(init.at("u"), "required field is missing");
        if (!init.has("rho")) field_error(init.at("rho"), "required field is missing");
        c.u0 = parse_function(init.raw("u"), init.at("u"));
        c.rho0 = parse_function(init.raw("rho"), init.at("rho"));
    }
    c.horizon = top.number("horizon");
    if (top.has("step")) {
        const Node s(top.raw("step"), top.at("step"));
        s.allow({"cfl", "dt_min", "dt_max", "slope_floor", "adaptive"});
        c.control.cfl = s.number("cfl", c.control.cfl);
        c.control.dt_min = s.number("dt_min", c.control.dt_min);
        c.control.dt_max = s.number("dt_max", c.control.dt_max);
        c.control.slope_floor = s.number("slope_floor", c.control.slope_floor);
        c.control.adaptive = s.boolean("adaptive", c.control.adaptive);
    }
    if (top.has("observers")) {
        const Node o(top.raw("observers"), top.at("observers"));
        o.allow({"conservation", "sobolev", "characteristics", "auxiliary", "origin_slope"});
        c.observers.conservation = o.boolean("conservation", true);
        c.observers.sobolev_orders = o.numbers("sobolev");
        if (o.has("characteristics")) {
            const Node ch(o.raw("characteristics"), o.at("characteristics"));
            ch.allow({"seeds"});
            c.observers.characteristic_seeds = ch.integer("seeds", 64);
        }
        const std::string aux = o.string("auxiliary", "");
        if (aux == "w") {
            c.observers.auxiliary = AuxiliaryKind::WAlphaMinus1;
        } else if (aux == "w_tilde") {
            c.observers.auxiliary = AuxiliaryKind::WtildeAlpha0;
        } else if (!aux.empty()) {
            field_error(o.at("auxiliary"), "expected \"w\" or \"w_tilde\"");
        }
        c.observers.origin_slope = o.boolean("origin_slope", false);
    }
    c.snapshot_times = top.numbers("snapshots");
    c.output_dir = top.string("output", "");

    try {
        c.validate();
    } catch (const ConfigError& e) {
        throw ConfigError((path.empty() ? std::string() : path) + e.what());
    }
    return c;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

void ScenarioConfig::validate() const {
    if (name.empty()) field_error("/name", "must not be empty");
    try {
        params.validate();
    } catch (const std::invalid_argument& e) {
        field_error("/params", e.what());
    }
    if (n < PeriodicGrid::kMinPoints || n % 2 != 0) {
        field_error("/grid/n", "must be even and at least " + std::to_string(PeriodicGrid::kMinPoints));
    }
    if (u0.terms.empty()) field_error("/initial/u", "needs at least one term");
    if (rho0.terms.empty()) field_error("/initial/rho", "needs at least one term");
    if (!(std::isfinite(horizon) && horizon > 0.0)) field_error("/horizon", "must be finite and > 0");
    try {
        control.validate();
    } catch (const std::invalid_argument& e) {
        field_error("/step", e.what());
    }
    for (double s : observers.sobolev_orders) {
        if (!(std::isfinite(s) && s >= 0.0)) field_error("/observers/sobolev", "orders must be finite and >= 0");
    }
    if (observers.characteristic_seeds < 0) field_error("/observers/characteristics/seeds", "must be >= 0");
    if (observers.auxiliary && observers.characteristic_seeds == 0) {
        field_error("/observers/auxiliary", "needs the characteristics observer");
    }
    for (double t : snapshot_times) {
        if (!(t >= 0.0 && t <= horizon)) field_error("/snapshots", "times must lie in [0, horizon]");
    }
    const std::filesystem::path out(output_dir);
    if (out.is_absolute()) return;
    for (const auto& part : out) {
        if (part == "..") field_error("/output", "must not leave the output root");
    }
}

void SweepConfig::validate() const {
    base.validate();
    if (alphas.empty()) field_error("/axes/alpha", "must not be empty");
    if (kappas.empty()) field_error("/axes/kappa", "must not be empty");
    if (parallelism < 1) field_error("/parallelism", "must be >= 1");
}

ScenarioConfig parse_scenario(const std::string& text) { return scenario_from_json(parse_text(text), ""); }

SweepConfig parse_sweep(const std::string& text) {
    const json root = parse_text(text);
    const Node top(root, "");
    top.allow({"base", "preset", "axes", "parallelism", "output"});
    SweepConfig s;
    if (top.has("base") == top.has("preset")) field_error("/base", "give exactly one of base or preset");
    s.base = top.has("base") ? scenario_from_json(top.raw("base"), "/base") : builtin_scenario(top.string("preset", ""));
    if (top.has("output")) s.base.output_dir = top.string("output", "");
    if (!top.has("axes")) field_error("/axes", "required field is missing");
    const Node axes(top.raw("axes"), "/axes");
    axes.allow({"alpha", "kappa"});
    s.alphas = axes.numbers("alpha");
    s.kappas = axes.numbers("kappa");
    s.parallelism = top.integer("parallelism", 1);
    s.validate();
    return s;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    try {
        return parse_scenario(read_file(path));
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

SweepConfig load_sweep(const std::filesystem::path& path) {
    try {
        return parse_sweep(read_file(path));
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string to_json(const ScenarioConfig& c) {
    json o = {{"conservation", c.observers.conservation},
              {"sobolev", c.observers.sobolev_orders},
              {"origin_slope", c.observers.origin_slope}};
    if (c.observers.characteristic_seeds > 0) o["characteristics"] = {{"seeds", c.observers.characteristic_seeds}};
    if (c.observers.auxiliary) o["auxiliary"] = auxiliary_name(*c.observers.auxiliary);
    json j = {
        {"name", c.name},
        {"params", {{"alpha", c.params.alpha}, {"kappa", c.params.kappa}, {"dealias", c.params.dealias}}},
        {"grid", {{"n", c.n}}},
        {"initial", {{"u", function_json(c.u0)}, {"rho", function_json(c.rho0)}}},
        {"horizon", c.horizon},
        {"step",
         {{"cfl", c.control.cfl},
          {"dt_min", c.control.dt_min},
          {"dt_max", c.control.dt_max},
          {"slope_floor", c.control.slope_floor},
          {"adaptive", c.control.adaptive}}},
        {"observers", o},
        {"snapshots", c.snapshot_times},
    };
    if (!c.output_dir.empty()) j["output"] = c.output_dir;
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Presets

std::vector<std::string> builtin_scenario_names() {
    return {"zero-forcing-blowup",        "half-forcing-blowup", "conservation",       "dadt-alpha1",
            "global-alpha-minus1",  "transport-alpha0", "proudman-johnson"};
}

ScenarioConfig builtin_scenario(const std::string& name) {
    constexpr double pi = std::numbers::pi;
    ScenarioConfig c;
    c.name = name;
    c.n = 256;
    c.observers.sobolev_orders = {1.0, 2.0};
    const FunctionDescriptor smooth_u = fn::Sine{0.1, 1};
    const FunctionDescriptor smooth_rho{fn::Constant{0.5}, fn::Cosine{0.1, 1}};

    if (name == "zero-forcing-blowup") {
        // ||u0_x||^2 = ||rho0||^2 = 2 pi^2, so a(0) = 0 and T0 = 1/pi.
        c.params = {-1.0, -1.0, true};
        c.u0 = fn::Sine{-1.0, 1};
        c.rho0 = fn::RaisedCosine{2.0 * pi / std::sqrt(3.0)};
        c.horizon = 0.5;
        c.observers.origin_slope = true;
    } else if (name == "half-forcing-blowup") {
        // b from 2 pi^2 b^2 - (3/2)(0.2)^2 = 1, giving a(0) = -1/2.
        c.params = {-1.0, -1.0, true};
        c.u0 = fn::Sine{-std::sqrt((1.0 + 1.5 * 0.04) / (2.0 * pi * pi)), 1};
        c.rho0 = fn::RaisedCosine{0.2};
        c.horizon = 1.5;
        c.observers.origin_slope = true;
    } else if (name == "conservation") {
        c.params = {-1.0, -1.0, true};
        c.u0 = smooth_u;
        c.rho0 = smooth_rho;
        c.horizon = 1.0;
        c.observers.characteristic_seeds = 64;
    } else if (name == "dadt-alpha1") {
        c.params = {1.0, 1.0, true};
        c.u0 = smooth_u;
        c.rho0 = smooth_rho;
        c.horizon = 0.5;
    } else if (name == "global-alpha-minus1") {
        c.params = {-1.0, 1.0, true};
        c.u0 = fn::Sine{1.0, 1};
        c.rho0 = FunctionDescriptor{fn::Constant{1.0}, fn::Cosine{0.5, 1}};
        c.horizon = 10.0;
        c.observers.characteristic_seeds = 64;
        c.observers.auxiliary = AuxiliaryKind::WAlphaMinus1;
        c.snapshot_times = {0.25, 0.5, 1.0};
    } else if (name == "transport-alpha0") {
        c.params = {0.0, 1.0, true};
        c.u0 = smooth_u;
        c.rho0 = smooth_rho;
        c.horizon = 1.0;
        c.observers.characteristic_seeds = 64;
        c.observers.auxiliary = AuxiliaryKind::WtildeAlpha0;
    } else if (name == "proudman-johnson") {
        c.params = {1.0, 1.0, true};
        c.u0 = smooth_u;
        c.rho0 = fn::Constant{0.0};
        c.horizon = 1.0;
    } else {
        std::string known;
        for (const auto& n : builtin_scenario_names()) known += (known.empty() ? "" : ", ") + n;
        throw ConfigError("unknown scenario '" + name + "' (known: " + known + ")");
    }
    c.validate();
    return c;
}

std::filesystem::path output_root() {
    if (const char* env = std::getenv("GHS_OUTPUT_ROOT"); env != nullptr && *env != '\0') return env;
    return std::filesystem::current_path();
}

// ---------------------------------------------------------------------------
// Running

namespace {

std::vector<double> even_seeds(int count) {
    std::vector<double> seeds(static_cast<std::size_t>(count));
    // Offset from the nodes so the interpolant is exercised between them.
    for (int i = 0; i < count; ++i) seeds[static_cast<std::size_t>(i)] = (i + 0.5) / count;
    return seeds;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }
    void row(const std::vector<double>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << num(cells[i]);
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

void write_snapshot(const std::filesystem::path& path, const SimState& s) {
    CsvWriter csv(path);
    csv.row(std::vector<std::string>{"x", "u", "rho"});
    for (int j = 0; j < s.u.size(); ++j) csv.row(std::vector<double>{s.grid().point(j), s.u[j], s.rho[j]});
}

json hypotheses_json(const HypothesisReport& h) {
    json j = {{"symmetric", h.symmetric},
              {"odd_residual_u", h.odd_residual_u},
              {"even_residual_rho", h.even_residual_rho},
              {"rho_at_origin", h.rho_at_origin},
              {"zeta0", h.zeta0},
              {"a0", h.a0},
              {"parameters_admissible", h.parameters_admissible},
              {"energy_condition", h.energy_condition},
              {"steep_slope_condition", h.steep_slope_condition},
              {"applicable", h.applicable},
              {"predicted_T0_exact", h.predicted_T0_exact}};
    j["predicted_T0"] = std::isfinite(h.predicted_T0) ? json(h.predicted_T0) : json(nullptr);
    j["T0_upper_bound"] = h.T0_upper_bound ? json(*h.T0_upper_bound) : json(nullptr);
    return j;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

ScenarioReport run_scenario(const ScenarioConfig& config, const std::filesystem::path& root) {
    // Everything that can reject the config happens before the first write.
    config.validate();
    const PeriodicGrid grid(config.n);
    const SimState initial(0.0, sample(config.u0, grid), sample(config.rho0, grid));
    if (!initial.is_finite()) throw ConfigError("/initial: initial data is not finite");

    ScenarioReport report{.outcome = {.blowup_estimate = std::nullopt, .final_state = initial, .message = {}},
                          .hypotheses = check_blowup_hypotheses(initial.u, initial.rho, config.params),
                          .conservation = std::nullopt,
                          .directory = root / (config.output_dir.empty() ? config.name : config.output_dir)};

    std::unique_ptr<CharacteristicTracker> tracker;
    std::unique_ptr<AuxiliaryMonitor> monitor;
    if (config.observers.characteristic_seeds > 0) {
        tracker = std::make_unique<CharacteristicTracker>(initial, config.params,
                                                          even_seeds(config.observers.characteristic_seeds));
        if (config.observers.auxiliary) {
            try {
                monitor = std::make_unique<AuxiliaryMonitor>(*config.observers.auxiliary, tracker->ensemble(),
                                                             config.params, compute_a(initial, config.params));
            } catch (const SignConditionViolated& e) {
                throw ConfigError(std::string("/observers/auxiliary: ") + e.what());
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("/observers/auxiliary: ") + e.what());
            }
        }
    }
    std::unique_ptr<OriginSlopeTracker> origin;
    if (config.observers.origin_slope) origin = std::make_unique<OriginSlopeTracker>(initial, config.params);

    const auto& dir = report.directory;
    std::filesystem::create_directories(dir);

    CsvWriter series(dir / "timeseries.csv");
    std::vector<std::string> header{"t", "a", "E", "min_ux", "max_ux", "rho_inf"};
    for (double s : config.observers.sobolev_orders) header.push_back("H" + short_num(s) + "_u");
    header.insert(header.end(), {"tail_u", "tail_rho"});
    series.row(header);

    double max_tail_u = 0.0;
    double max_tail_rho = 0.0;
    const auto record = [&](const SimState& s) {
        const RealField ux = derivative(s.u);
        std::vector<double> row{s.t, compute_a(s, config.params), energy(s, config.params), ux.min(), ux.max(),
                                s.rho.max_abs()};
        for (double order : config.observers.sobolev_orders) row.push_back(sobolev_norm(s.u, SobolevOrder(order)));
        const double tu = spectral_tail(s.u);
        const double tr = spectral_tail(s.rho);
        max_tail_u = std::max(max_tail_u, tu);
        max_tail_rho = std::max(max_tail_rho, tr);
        row.push_back(tu);
        row.push_back(tr);
        series.row(row);
    };

    std::vector<double> snaps = config.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());
    json snapshots = json::array();
    std::size_t next_snap = 0;
    const auto maybe_snapshot = [&](const SimState& s) {
        while (next_snap < snaps.size() && std::abs(s.t - snaps[next_snap]) <= 1e-12 * std::max(1.0, s.t)) {
            char file[32];
            std::snprintf(file, sizeof file, "snapshot_%03zu.csv", next_snap);
            write_snapshot(dir / file, s);
            snapshots.push_back({{"t", snaps[next_snap]}, {"file", file}});
            ++next_snap;
        }
    };

    RunLog log{log_sample(initial, config.params)};
    record(initial);
    maybe_snapshot(initial);

    std::vector<Observer> observers;
    observers.emplace_back([&](const SimState& s) {
        record(s);
        maybe_snapshot(s);
        if (config.observers.conservation) log.push_back(log_sample(s, config.params));
    });
    if (tracker) {
        observers.emplace_back([&](const SimState& s) {
            tracker->observe(s);
            if (monitor) monitor->observe(tracker->ensemble(), compute_a(s, config.params));
        });
    }
    if (origin) observers.emplace_back([&](const SimState& s) { origin->observe(s); });

    report.outcome = run(initial, config.params, config.control, config.horizon, observers, snaps);
    const RunOutcome& out = report.outcome;

    json summary = {{"name", config.name},
                    {"status", to_string(out.status)},
                    {"t_final", out.t_final},
                    {"steps", out.steps},
                    {"min_slope", out.min_slope},
                    {"message", out.message},
                    {"max_spectral_tail", {{"u", max_tail_u}, {"rho", max_tail_rho}}},
                    {"hypotheses", hypotheses_json(report.hypotheses)},
                    {"snapshots", snapshots}};
    if (out.blowup_estimate) {
        const BlowupFit& f = *out.blowup_estimate;
        summary["blowup_fit"] = {{"T0_est", f.T0_est},         {"rate_est", f.rate_est}, {"window_begin", f.window_begin},
                                 {"window_end", f.window_end}, {"residual", f.residual}, {"samples", f.samples}};
    } else {
        summary["blowup_fit"] = nullptr;
    }
    if (config.observers.conservation && log.size() >= 2) {
        report.conservation = conservation_report(log, config.params);
        const ConservationReport& c = *report.conservation;
        summary["conservation"] = {{"max_a_drift", c.max_a_drift},
                                   {"max_energy_drift", c.max_energy_drift},
                                   {"max_dadt_residual", c.max_dadt_residual},
                                   {"relative_dadt_residual", c.relative_dadt_residual}};
    }
    if (tracker) {
        const auto& e = tracker->ensemble();
        summary["characteristics"] = {
            {"seeds", e.size()},
            {"t", e.t},
            {"transport_residual", check_transport_identity(e, tracker->rho0_at_seeds(), config.params.alpha)},
            {"jacobian_gap", jacobian_exponential_gap(e)},
            {"min_phi_x", tracker->min_phi_x()},
            {"orientation_preserving", tracker->always_orientation_preserving()}};
    }
    if (monitor) {
        summary["auxiliary"] = {{"kind", auxiliary_name(monitor->kind())},
                                {"worst_ratio", finite_or_null(monitor->worst_ratio())},
                                {"min_value", monitor->min_value()}};
    }
    if (origin) {
        const OriginSlopeSeries& os = origin->series();
        CsvWriter csv(dir / "origin_slope.csv");
        csv.row(std::vector<std::string>{"t", "zeta", "rho_origin", "a"});
        for (std::size_t i = 0; i < os.t.size(); ++i) csv.row(std::vector<double>{os.t[i], os.zeta[i], os.rho_origin[i], os.a[i]});
        json o = {{"samples", os.t.size()}, {"zeta_final", os.zeta.back()}};
        const HypothesisReport& h = report.hypotheses;
        if (h.predicted_T0_exact) {
            const RiccatiSolution exact(h.zeta0, h.a0);
            const RiccatiComparison cmp = compare_to_riccati(os.t, os.zeta, exact, 100.0, 1e-3);
            o["riccati"] = {{"T0", exact.blowup_time()},
                            {"samples", cmp.samples},
                            {"max_relative_deviation", cmp.max_relative_deviation},
                            {"first_miss_abs_zeta", finite_or_null(cmp.first_miss_abs_zeta)}};
        }
        summary["origin_slope"] = o;
    }
    summary["config"] = json::parse(to_json(config));

    std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';
    return report;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config, const std::filesystem::path& root) {
    config.validate();
    const std::filesystem::path sweep_dir =
        root / (config.base.output_dir.empty() ? config.base.name + "-sweep" : config.base.output_dir);

    struct Cell {
        ScenarioConfig config;
        SweepRow row;
    };
    std::vector<Cell> cells;
    for (double alpha : config.alphas) {
        for (double kappa : config.kappas) {
            Cell cell{config.base, {}};
            cell.config.params.alpha = alpha;
            cell.config.params.kappa = kappa;
            cell.config.output_dir = "alpha_" + short_num(alpha) + "_kappa_" + short_num(kappa);
            cell.row.alpha = alpha;
            cell.row.kappa = kappa;
            cells.push_back(std::move(cell));
        }
    }
    std::filesystem::create_directories(sweep_dir);

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            Cell& cell = cells[i];
            try {
                const ScenarioReport r = run_scenario(cell.config, sweep_dir);
                cell.row.status = to_string(r.outcome.status);
                cell.row.t_final = r.outcome.t_final;
                cell.row.min_slope = r.outcome.min_slope;
                cell.row.message = r.outcome.message;
                if (r.conservation) {
                    cell.row.a_drift = r.conservation->max_a_drift;
                    cell.row.energy_drift = r.conservation->max_energy_drift;
                }
            } catch (const std::exception& e) {
                cell.row.status = "Error";
                cell.row.message = e.what();
            }
        }
    };
    const int threads = std::min<int>(config.parallelism, static_cast<int>(cells.size()));
    {
        std::vector<std::jthread> pool;
        for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
        worker();
    }

    std::vector<SweepRow> rows;
    CsvWriter csv(sweep_dir / "sweep.csv");
    csv.row(std::vector<std::string>{"alpha", "kappa", "status", "t_final", "min_slope", "a_drift", "energy_drift",
                                     "message"});
    for (auto& cell : cells) {
        const SweepRow& r = cell.row;
        std::string msg = r.message;
        std::replace(msg.begin(), msg.end(), '"', '\'');
        csv.row(std::vector<std::string>{num(r.alpha), num(r.kappa), r.status, num(r.t_final), num(r.min_slope),
                                         num(r.a_drift), num(r.energy_drift), "\"" + msg + "\""});
        rows.push_back(r);
    }
    return rows;
}

}  // namespace ghs
