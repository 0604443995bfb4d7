// Configuration-driven scenario runner: every module is exposed through a
// named scenario that builds its inputs, runs the operation pipeline, and
// evaluates named checks with pinned tolerances.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "envlab/grid.hpp"

namespace envlab {

// configuration / usage problems; the CLI maps these to exit code 2
struct config_error : error {
    explicit config_error(const std::string& msg) : error(msg) {}
};

// Flat key-value configuration with optional [section] prefixes
// ("section.key"). Values stay strings until a scenario asks for a type.
struct ScenarioConfig {
    std::map<std::string, std::string> kv;

    static ScenarioConfig from_file(const std::string& path);
    static ScenarioConfig from_text(const std::string& text);

    bool has(const std::string& key) const { return kv.count(key) > 0; }
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    // common knobs
    unsigned long long seed() const;
    double tol_scale() const;
    int jobs() const;
};

struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string relation;  // "<=", ">=", "report"
    std::string note;
};

struct ScenarioResult {
    std::string scenario;
    std::vector<Check> checks;
    bool all_pass() const;
};

struct ScenarioInfo {
    std::string name;
    std::string description;
};

const std::vector<ScenarioInfo>& list_scenarios();
bool scenario_exists(const std::string& name);
std::string suggest_scenario(const std::string& name);  // nearest registered name

// Runs one scenario; writes report.json (and scenario artifacts) into out_dir
// when out_dir is nonempty. Throws config_error for unknown names or bad
// configuration, envelope_failure for solver failures.
ScenarioResult run_scenario(const std::string& name, const ScenarioConfig& config,
                            const std::string& out_dir = "");

std::string result_to_json(const ScenarioResult& result);

}  // namespace envlab
