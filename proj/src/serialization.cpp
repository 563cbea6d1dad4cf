#include "mscz/serialization.hpp"

#include "mscz/version.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mscz {

namespace {

ordered_json complex_pair(cdouble z) {
    return ordered_json::array({round12(z.real()), round12(z.imag())});
}

ordered_json matrix_to_json(const ComplexMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_pair(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json amplitudes_to_json(const LogicalState& state) {
    ordered_json amps = ordered_json::array();
    for (const auto& a : state.amplitudes) amps.push_back(complex_pair(a));
    return amps;
}

void require_keys(const ordered_json& j, const std::vector<std::string>& allowed,
                  const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const auto& k : allowed)
            if (k == key) known = true;
        if (!known) throw ConfigError("config: unknown key '" + key + "' in " + where);
    }
}

double number_field(const ordered_json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError("config: '" + key + "' must be a number");
    return j.at(key).get<double>();
}

int int_field(const ordered_json& j, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) throw ConfigError("config: '" + key + "' must be an integer");
    return j.at(key).get<int>();
}

std::string qubit_order_string(const std::vector<std::string>& labels) {
    std::string s;
    for (const auto& l : labels) s += l;
    return s;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

double round12(double x) { return std::strtod(format_double(x).c_str(), nullptr); }

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ordered_json config_to_json(const MetasurfaceConfig& config) {
    ordered_json j;
    j["order_min"] = config.order_min;
    j["order_max"] = config.order_max;
    j["ratio"] = round12(config.default_ratio);
    j["efficiency"] = round12(config.global_efficiency);
    j["conversion_efficiency"] = round12(config.conversion_efficiency);
    ordered_json overrides = ordered_json::array();
    for (const auto& s : config.overrides) {
        ordered_json o;
        o["pair_order"] = s.pair_order;
        o["ratio"] = round12(s.ratio());
        o["efficiency"] = round12(s.efficiency);
        overrides.push_back(std::move(o));
    }
    j["overrides"] = std::move(overrides);
    return j;
}

MetasurfaceConfig config_from_json(const ordered_json& j, const MetasurfaceConfig& defaults) {
    if (!j.is_object()) throw ConfigError("config: document must be a JSON object");
    require_keys(j, {"order_min", "order_max", "ratio", "efficiency", "conversion_efficiency",
                     "overrides"},
                 "config");

    MetasurfaceConfig cfg = defaults;
    try {
        cfg.order_min = int_field(j, "order_min", defaults.order_min);
        cfg.order_max = int_field(j, "order_max", defaults.order_max);
        cfg.default_ratio = number_field(j, "ratio", defaults.default_ratio);
        cfg.global_efficiency = number_field(j, "efficiency", defaults.global_efficiency);
        cfg.conversion_efficiency =
            number_field(j, "conversion_efficiency", defaults.conversion_efficiency);
        if (j.contains("overrides")) {
            if (!j.at("overrides").is_array())
                throw ConfigError("config: 'overrides' must be an array");
            cfg.overrides.clear();
            for (const auto& o : j.at("overrides")) {
                if (!o.is_object()) throw ConfigError("config: override entries must be objects");
                require_keys(o, {"pair_order", "ratio", "efficiency"}, "override");
                if (!o.contains("pair_order"))
                    throw ConfigError("config: override missing 'pair_order'");
                const int pair = int_field(o, "pair_order", 0);
                const double ratio = number_field(o, "ratio", cfg.default_ratio);
                const double eff = number_field(o, "efficiency", cfg.global_efficiency);
                cfg.overrides.push_back(SplitterSpec::from_ratio(pair, ratio, eff));
            }
        }
        cfg.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

MetasurfaceConfig load_config_file(const std::string& path, const MetasurfaceConfig& defaults) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError("config: malformed JSON in '" + path + "': " + e.what());
    }
    return config_from_json(j, defaults);
}

ordered_json truth_table_to_json(const TruthTable& table) {
    ordered_json j;
    j["qubit_order"] = qubit_order_string(table.qubit_labels);
    j["basis"] = to_string(table.basis);
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json r;
        r["input"] = row.input_label;
        r["output"] = row.dominant_label;
        r["phase_re"] = round12(row.phase.real());
        r["phase_im"] = round12(row.phase.imag());
        r["success_probability"] = round12(row.success_probability);
        r["amplitudes"] = amplitudes_to_json(row.output);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

std::string truth_table_to_csv(const TruthTable& table) {
    std::ostringstream os;
    os << "input,output,phase_re,phase_im,success_probability\n";
    for (const auto& row : table.rows)
        os << row.input_label << "," << row.dominant_label << ","
           << format_double(row.phase.real()) << "," << format_double(row.phase.imag()) << ","
           << format_double(row.success_probability) << "\n";
    return os.str();
}

ordered_json sweep_to_json(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    ordered_json j;
    j["parameter"] = to_string(spec.parameter);
    j["scenario"] = to_string(spec.scenario);
    j["min"] = round12(spec.min);
    j["max"] = round12(spec.max);
    j["steps"] = spec.steps;
    ordered_json out_rows = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json r;
        r["value"] = round12(row.value);
        r["process_fidelity"] = round12(row.process_fidelity);
        r["mean_success_probability"] = round12(row.mean_success_probability);
        out_rows.push_back(std::move(r));
    }
    j["rows"] = std::move(out_rows);
    return j;
}

std::string sweep_to_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "parameter,value,process_fidelity,mean_success_probability\n";
    for (const auto& row : rows)
        os << to_string(spec.parameter) << "," << format_double(row.value) << ","
           << format_double(row.process_fidelity) << ","
           << format_double(row.mean_success_probability) << "\n";
    return os.str();
}

ordered_json operator_to_json(const PostSelectedOperator& op, const FidelityReport& report,
                              const std::vector<std::string>& qubit_labels) {
    ordered_json j;
    j["qubit_order"] = qubit_order_string(qubit_labels);
    j["dim"] = op.dim;
    j["matrix"] = matrix_to_json(op.matrix);
    ordered_json per = ordered_json::array();
    for (double p : report.per_input_success) per.push_back(round12(p));
    j["per_input_success_probability"] = std::move(per);
    j["mean_success_probability"] = round12(report.mean_success_probability);
    j["process_fidelity_vs_ideal"] = round12(report.process_fidelity);
    return j;
}

std::string operator_to_csv(const PostSelectedOperator& op) {
    std::ostringstream os;
    os << "row,col,re,im\n";
    for (std::size_t r = 0; r < op.dim; ++r)
        for (std::size_t c = 0; c < op.dim; ++c)
            os << r << "," << c << "," << format_double(op.matrix(r, c).real()) << ","
               << format_double(op.matrix(r, c).imag()) << "\n";
    return os.str();
}

ordered_json ghz_to_json(const GhzReport& report) {
    ordered_json j;
    j["fidelity_vs_ghz"] = round12(report.fidelity_vs_ghz);
    j["success_probability"] = round12(report.success_probability);
    j["qubit_order"] = "CST";
    j["amplitudes"] = amplitudes_to_json(report.state);
    ordered_json purities;
    const char* names[3] = {"C", "S", "T"};
    for (int q = 0; q < 3; ++q) purities[names[q]] = round12(reduced_purity(report.state, q));
    j["reduced_purities"] = std::move(purities);
    return j;
}

std::string ghz_to_csv(const GhzReport& report) {
    std::ostringstream os;
    os << "fidelity_vs_ghz,success_probability\n";
    os << format_double(report.fidelity_vs_ghz) << ","
       << format_double(report.success_probability) << "\n";
    return os.str();
}

ordered_json factorization_to_json(const FactorizationReport& report,
                                   const std::vector<std::pair<int, int>>& gate_paths) {
    ordered_json j;
    ordered_json gates = ordered_json::array();
    for (const auto& [c, t] : gate_paths) {
        ordered_json g;
        g["control_order"] = c;
        g["target_order"] = t;
        gates.push_back(std::move(g));
    }
    j["gates"] = std::move(gates);
    j["max_deviation"] = round12(report.max_deviation);
    j["joint_success_probability"] = round12(report.joint_success_probability);
    ordered_json factors = ordered_json::array();
    for (const PostSelectedOperator* op : {&report.gate_a, &report.gate_b}) {
        const FidelityReport fid = process_fidelity(*op, ideal_cz());
        ordered_json f;
        f["process_fidelity_vs_cz"] = round12(fid.process_fidelity);
        f["mean_success_probability"] = round12(fid.mean_success_probability);
        factors.push_back(std::move(f));
    }
    j["factors"] = std::move(factors);
    return j;
}

std::string factorization_to_csv(const FactorizationReport& report) {
    std::ostringstream os;
    os << "max_deviation,joint_success_probability\n";
    os << format_double(report.max_deviation) << ","
       << format_double(report.joint_success_probability) << "\n";
    return os.str();
}

ordered_json with_manifest(const std::string& command, const MetasurfaceConfig& config,
                           ordered_json payload) {
    ordered_json manifest;
    manifest["command"] = command;
    manifest["version"] = kVersion;
    manifest["config"] = config_to_json(config);
    manifest["checksum"] = fnv1a_hex(payload.dump());
    ordered_json j;
    j["manifest"] = std::move(manifest);
    j["result"] = std::move(payload);
    return j;
}

}  // namespace mscz
