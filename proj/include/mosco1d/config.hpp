#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mosco1d/mosco.hpp"

namespace mosco1d {

inline constexpr int kConfigVersion = 1;

struct SetConfig {
    std::string kind = "fat_cantor"; // fat_cantor | interval_union | full | comb | window
    double lead = 0.25;
    double ratio = 0.5;
    int depth = kDefaultCantorDepth;
    std::vector<std::pair<double, double>> spans; // interval_union
    int n = 1;                                    // comb | window
    std::vector<SetConfig> base;                  // comb | window: exactly one entry

    bool operator==(const SetConfig& o) const;
};

struct SpeedConfig {
    std::string kind = "lebesgue"; // lebesgue | density | stieltjes_F
    std::string density;           // cauchy | gaussian | rational
    double p = 2.0;                // rational exponent
    double alpha = 0.5;            // stieltjes_F exponent
    std::vector<std::pair<double, double>> atoms; // (at, mass)

    bool operator==(const SpeedConfig&) const = default;
};

struct SequenceConfig {
    std::string kind = "comb"; // comb | window | constant
    std::vector<int> indices{1, 2, 4, 8, 16, 32};

    bool operator==(const SequenceConfig&) const = default;
};

struct LimitConfig {
    std::string set = "base";      // base | full
    std::string boundary = "full"; // absorbing | full

    bool operator==(const LimitConfig&) const = default;
};

struct SolverConfig {
    int N = 4000;
    double R = 20.0;
    int steps = 200;
    std::string grading = "blend"; // scale | uniform | blend
    double blend = 0.5;
    std::string truncation = "zero_flux"; // zero_flux | dirichlet

    bool operator==(const SolverConfig&) const = default;
};

struct RunConfig {
    std::vector<double> alphas{0.5, 1.0, 2.0};
    std::vector<std::string> test_functions{"gaussian", "tent", "mollified_indicator"};
    double tolerance = 1e-2;

    bool operator==(const RunConfig&) const = default;
};

struct ScenarioConfig {
    int version = kConfigVersion;
    std::string name = "scenario";
    double a = -kInf, b = kInf, e = 0.0;
    SpeedConfig speed;
    SetConfig set;
    std::string boundary = "full"; // absorbing | full
    std::optional<SequenceConfig> sequence;
    LimitConfig limit;
    SolverConfig solver;
    RunConfig run;

    bool operator==(const ScenarioConfig&) const = default;
};

// Throws ConfigError naming the offending key.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);
std::string serialize_config(const ScenarioConfig& cfg);

Interval build_interval(const ScenarioConfig& cfg);
CharacteristicSet build_set(const SetConfig& cfg, const Interval& I);
SpeedMeasure build_speed(const ScenarioConfig& cfg);
DirichletSpaceSpec build_spec(const ScenarioConfig& cfg);
GridConfig build_grid_config(const ScenarioConfig& cfg);
// Needs a sequence section.
Scenario build_scenario(const ScenarioConfig& cfg);

} // namespace mosco1d
