#include "mscz/sweep.hpp"

#include <sstream>
#include <stdexcept>

namespace mscz {

std::string to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::ratio_delta: return "ratio_delta";
        case SweepParameter::efficiency: return "efficiency";
        case SweepParameter::conversion_efficiency: return "conversion_efficiency";
    }
    return "?";
}

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::single_cz: return "single_cz";
        case Scenario::cascaded: return "cascaded";
        case Scenario::ghz: return "ghz";
        case Scenario::path_cz: return "path_cz";
    }
    return "?";
}

SweepParameter parse_sweep_parameter(const std::string& name) {
    if (name == "ratio_delta") return SweepParameter::ratio_delta;
    if (name == "efficiency") return SweepParameter::efficiency;
    if (name == "conversion_efficiency") return SweepParameter::conversion_efficiency;
    throw std::invalid_argument("unknown sweep parameter '" + name + "'");
}

Scenario parse_scenario(const std::string& name) {
    if (name == "single_cz") return Scenario::single_cz;
    if (name == "cascaded") return Scenario::cascaded;
    if (name == "ghz") return Scenario::ghz;
    if (name == "path_cz") return Scenario::path_cz;
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

void SweepSpec::validate() const {
    if (steps < 2) throw std::invalid_argument("SweepSpec: need at least 2 steps");
    if (!(min < max)) throw std::invalid_argument("SweepSpec: min must be below max");
    switch (parameter) {
        case SweepParameter::ratio_delta:
            // Ratio scaling by (1 + delta) must keep the power fraction positive
            // and below 1 for the ideal 1/3 splitter.
            if (min <= -1.0 || max >= 2.0)
                throw std::invalid_argument("SweepSpec: ratio_delta range outside (-1, 2)");
            break;
        case SweepParameter::efficiency:
            if (min <= 0.0 || max > 1.0)
                throw std::invalid_argument("SweepSpec: efficiency range outside (0, 1]");
            break;
        case SweepParameter::conversion_efficiency:
            if (min < 0.0 || max > 1.0)
                throw std::invalid_argument("SweepSpec: conversion_efficiency range outside [0, 1]");
            break;
    }
}

MetasurfaceConfig default_config(Scenario scenario) {
    switch (scenario) {
        case Scenario::single_cz: return MetasurfaceConfig::ideal(-1, 2);
        case Scenario::cascaded:
        case Scenario::ghz: return MetasurfaceConfig::ideal(-2, 2);
        case Scenario::path_cz: return MetasurfaceConfig::ideal(-2, 3);
    }
    throw std::invalid_argument("default_config: unknown scenario");
}

namespace {

ScenarioResult run_gate_scenario(const ModeUnitary& u, const QubitEncoding& enc,
                                 const ComplexMatrix& ideal) {
    const QubitEncoding local = enc.basis() == u.basis() ? enc : enc.rebased(u.basis());
    const PostSelectedOperator op = extract_operator(u, local);
    const FidelityReport report = process_fidelity(op, ideal);
    return {report.process_fidelity, report.mean_success_probability, report.per_input_success};
}

}  // namespace

ScenarioResult run_scenario(Scenario scenario, const MetasurfaceConfig& config) {
    const ModeUnitary u = build_parallel_bs(config);
    switch (scenario) {
        case Scenario::single_cz:
            return run_gate_scenario(u, polarization_cz_encoding(), ideal_cz());
        case Scenario::cascaded:
            return run_gate_scenario(u, cascaded_encoding(), ideal_cascaded_unitary());
        case Scenario::path_cz:
            return run_gate_scenario(u, path_cz_encoding(), ideal_cz());
        case Scenario::ghz: {
            const QubitEncoding enc = cascaded_encoding();
            const QubitEncoding local = enc.basis() == u.basis() ? enc : enc.rebased(u.basis());
            const GhzReport report = ghz_prepare(u, local);
            return {report.fidelity_vs_ghz, report.success_probability,
                    {report.success_probability}};
        }
    }
    throw std::invalid_argument("run_scenario: unknown scenario");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const MetasurfaceConfig& base) {
    spec.validate();
    base.validate();

    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(spec.steps));
    for (int i = 0; i < spec.steps; ++i) {
        const double value =
            spec.min + (spec.max - spec.min) * static_cast<double>(i) /
                           static_cast<double>(spec.steps - 1);
        try {
            MetasurfaceConfig cfg = base;
            switch (spec.parameter) {
                case SweepParameter::ratio_delta: cfg = perturb_ratio(base, value); break;
                case SweepParameter::efficiency: cfg.global_efficiency = value; break;
                case SweepParameter::conversion_efficiency: cfg.conversion_efficiency = value; break;
            }
            const ScenarioResult result = run_scenario(spec.scenario, cfg);
            rows.push_back({value, result.fidelity, result.mean_success_probability});
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "sweep point " << to_string(spec.parameter) << "=" << value << ": " << e.what();
            throw std::invalid_argument(os.str());
        }
    }
    return rows;
}

}  // namespace mscz
