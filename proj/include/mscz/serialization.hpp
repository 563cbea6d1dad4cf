#pragma once

#include "mscz/gate_analysis.hpp"
#include "mscz/metasurface.hpp"
#include "mscz/sweep.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace mscz {

using ordered_json = nlohmann::ordered_json;

/// Raised for unreadable, malformed or invalid configuration input.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// "%.12g": up to 12 significant digits, deterministic.
std::string format_double(double x);

/// Nearest double to the 12-significant-digit decimal rendering of x. All
/// serialized numbers pass through this so JSON output carries the same
/// precision as the CSV output.
double round12(double x);

/// FNV-1a 64-bit checksum, 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

ordered_json config_to_json(const MetasurfaceConfig& config);

/// Apply a JSON document on top of a default config. Absent keys keep the
/// default; unknown keys and invalid values raise ConfigError.
MetasurfaceConfig config_from_json(const ordered_json& j, const MetasurfaceConfig& defaults);

/// Read and parse a config file; any failure raises ConfigError.
MetasurfaceConfig load_config_file(const std::string& path, const MetasurfaceConfig& defaults);

ordered_json truth_table_to_json(const TruthTable& table);
/// Header: input,output,phase_re,phase_im,success_probability
std::string truth_table_to_csv(const TruthTable& table);

ordered_json sweep_to_json(const SweepSpec& spec, const std::vector<SweepRow>& rows);
/// Header: parameter,value,process_fidelity,mean_success_probability
std::string sweep_to_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);

ordered_json operator_to_json(const PostSelectedOperator& op, const FidelityReport& report,
                              const std::vector<std::string>& qubit_labels);
/// Header: row,col,re,im
std::string operator_to_csv(const PostSelectedOperator& op);

ordered_json ghz_to_json(const GhzReport& report);
/// Header: fidelity_vs_ghz,success_probability
std::string ghz_to_csv(const GhzReport& report);

ordered_json factorization_to_json(const FactorizationReport& report,
                                   const std::vector<std::pair<int, int>>& gate_paths);
/// Header: max_deviation,joint_success_probability
std::string factorization_to_csv(const FactorizationReport& report);

/// Wrap a serialized payload with the run manifest (command, resolved config,
/// tool version, payload checksum).
ordered_json with_manifest(const std::string& command, const MetasurfaceConfig& config,
                           ordered_json payload);

}  // namespace mscz
