#pragma once

#include "mscz/gate_analysis.hpp"
#include "mscz/metasurface.hpp"

#include <string>
#include <vector>

namespace mscz {

enum class SweepParameter { ratio_delta, efficiency, conversion_efficiency };
enum class Scenario { single_cz, cascaded, ghz, path_cz };

std::string to_string(SweepParameter p);
std::string to_string(Scenario s);
SweepParameter parse_sweep_parameter(const std::string& name);
Scenario parse_scenario(const std::string& name);

struct SweepSpec {
    SweepParameter parameter = SweepParameter::ratio_delta;
    double min = 0.0;
    double max = 0.0;
    int steps = 2;
    Scenario scenario = Scenario::single_cz;

    void validate() const;  // steps >= 2, min < max, range inside the physical domain
};

struct SweepRow {
    double value = 0.0;
    double process_fidelity = 0.0;
    double mean_success_probability = 0.0;
};

/// The ideal configuration sized to a scenario (ratio 1/3, efficiencies 1).
MetasurfaceConfig default_config(Scenario scenario);

struct ScenarioResult {
    double fidelity = 0.0;
    double mean_success_probability = 0.0;
    std::vector<double> per_input_success;
};

/// Build the configured unitary and run the scenario against its ideal:
/// single/path CZ against diag(1,1,1,-1), the cascade against the sequential
/// double-CZ unitary, ghz against the GHZ target overlap.
ScenarioResult run_scenario(Scenario scenario, const MetasurfaceConfig& config);

/// Evaluate the scenario over an evenly spaced grid of the swept parameter
/// applied to the base config. Rows come back ordered by parameter value.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const MetasurfaceConfig& base);

}  // namespace mscz
