#include "mscz/encodings.hpp"
#include "mscz/gate_analysis.hpp"
#include "mscz/metasurface.hpp"
#include "mscz/serialization.hpp"
#include "mscz/sweep.hpp"
#include "mscz/version.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::string config_path;
    std::string format = "json";
    std::string output_path;
};

void add_common_options(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "JSON config overriding the ideal default");
    cmd->add_option("--format", opts.format, "Output format: json or csv")
        ->default_val("json");
    cmd->add_option("--output", opts.output_path, "Write output to a file instead of stdout");
}

void check_format(const CommonOptions& opts) {
    if (opts.format != "json" && opts.format != "csv")
        throw UsageError("unknown format '" + opts.format + "' (expected json or csv)");
}

mscz::MetasurfaceConfig resolve_config(const CommonOptions& opts,
                                       const mscz::MetasurfaceConfig& defaults) {
    if (opts.config_path.empty()) return defaults;
    return mscz::load_config_file(opts.config_path, defaults);
}

/// Fully assemble output first; write it in one shot so error paths never
/// leave partial output behind.
void emit(const CommonOptions& opts, const std::string& payload) {
    if (opts.output_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(opts.output_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + opts.output_path + "'");
    out << payload;
}

std::string dump_json(const mscz::ordered_json& j) { return j.dump(2) + "\n"; }

enum class EncodingName { polarization, cascaded, path };

EncodingName parse_encoding(const std::string& name) {
    if (name == "polarization") return EncodingName::polarization;
    if (name == "cascaded") return EncodingName::cascaded;
    if (name == "path") return EncodingName::path;
    throw UsageError("unknown encoding '" + name + "' (expected polarization, cascaded or path)");
}

mscz::QubitEncoding make_encoding(EncodingName name) {
    switch (name) {
        case EncodingName::polarization: return mscz::polarization_cz_encoding();
        case EncodingName::cascaded: return mscz::cascaded_encoding();
        case EncodingName::path: return mscz::path_cz_encoding();
    }
    throw UsageError("unknown encoding");
}

mscz::MetasurfaceConfig encoding_default_config(EncodingName name) {
    switch (name) {
        case EncodingName::polarization: return mscz::MetasurfaceConfig::ideal(-1, 2);
        case EncodingName::cascaded: return mscz::MetasurfaceConfig::ideal(-2, 2);
        case EncodingName::path: return mscz::MetasurfaceConfig::ideal(-2, 3);
    }
    throw UsageError("unknown encoding");
}

/// Build the unitary and fit the encoding onto its basis. A config whose
/// order range cannot host the encoding is a config error.
std::pair<mscz::ModeUnitary, mscz::QubitEncoding> build_gate(
    EncodingName name, const mscz::MetasurfaceConfig& config) {
    mscz::ModeUnitary u = mscz::build_parallel_bs(config);
    mscz::QubitEncoding enc = make_encoding(name);
    try {
        if (!(enc.basis() == u.basis())) enc = enc.rebased(u.basis());
    } catch (const std::exception& e) {
        throw mscz::ConfigError(std::string("config: order range cannot host the encoding: ") +
                                e.what());
    }
    return {std::move(u), std::move(enc)};
}

int cmd_truth_table(const CommonOptions& opts, const std::string& encoding_name,
                    const std::string& basis_name) {
    check_format(opts);
    const EncodingName enc_name = parse_encoding(encoding_name);
    mscz::TruthBasis basis;
    if (basis_name == "standard")
        basis = mscz::TruthBasis::standard;
    else if (basis_name == "hadamard_st")
        basis = mscz::TruthBasis::hadamard_st;
    else
        throw UsageError("unknown basis '" + basis_name + "' (expected standard or hadamard_st)");
    if (basis == mscz::TruthBasis::hadamard_st && enc_name != EncodingName::cascaded)
        throw UsageError("basis hadamard_st is only defined for the cascaded encoding");

    const auto config = resolve_config(opts, encoding_default_config(enc_name));
    const auto [u, enc] = build_gate(enc_name, config);
    const mscz::TruthTable table = mscz::truth_table(u, enc, basis);

    if (opts.format == "csv") {
        emit(opts, mscz::truth_table_to_csv(table));
    } else {
        emit(opts, dump_json(mscz::with_manifest("truth-table", config,
                                                 mscz::truth_table_to_json(table))));
    }
    return kExitOk;
}

int cmd_operator(const CommonOptions& opts, const std::string& encoding_name) {
    check_format(opts);
    const EncodingName enc_name = parse_encoding(encoding_name);
    const auto config = resolve_config(opts, encoding_default_config(enc_name));
    const auto [u, enc] = build_gate(enc_name, config);

    const mscz::PostSelectedOperator op = mscz::extract_operator(u, enc);
    const mscz::ComplexMatrix ideal = enc_name == EncodingName::cascaded
                                          ? mscz::ideal_cascaded_unitary()
                                          : mscz::ideal_cz();
    const mscz::FidelityReport report = mscz::process_fidelity(op, ideal);

    if (opts.format == "csv") {
        emit(opts, mscz::operator_to_csv(op));
    } else {
        emit(opts, dump_json(mscz::with_manifest(
                       "operator", config,
                       mscz::operator_to_json(op, report, enc.qubit_labels()))));
    }
    return kExitOk;
}

int cmd_ghz(const CommonOptions& opts) {
    check_format(opts);
    const auto config = resolve_config(opts, mscz::default_config(mscz::Scenario::ghz));
    const auto [u, enc] = build_gate(EncodingName::cascaded, config);
    const mscz::GhzReport report = mscz::ghz_prepare(u, enc);

    if (opts.format == "csv") {
        emit(opts, mscz::ghz_to_csv(report));
    } else {
        emit(opts, dump_json(mscz::with_manifest("ghz", config, mscz::ghz_to_json(report))));
    }
    return kExitOk;
}

int cmd_sweep(const CommonOptions& opts, const std::string& param_name,
              const std::string& scenario_name, double min, double max, int steps) {
    check_format(opts);
    mscz::SweepSpec spec;
    try {
        spec.parameter = mscz::parse_sweep_parameter(param_name);
        spec.scenario = mscz::parse_scenario(scenario_name);
        spec.min = min;
        spec.max = max;
        spec.steps = steps;
        spec.validate();
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }

    const auto config = resolve_config(opts, mscz::default_config(spec.scenario));
    try {
        (void)mscz::run_scenario(spec.scenario, config);  // the range must host the encoding
    } catch (const std::exception& e) {
        throw mscz::ConfigError(std::string("config: ") + e.what());
    }
    std::vector<mscz::SweepRow> rows;
    try {
        rows = mscz::run_sweep(spec, config);
    } catch (const std::exception& e) {
        throw UsageError(e.what());  // a grid point left the parameter's domain
    }

    if (opts.format == "csv") {
        emit(opts, mscz::sweep_to_csv(spec, rows));
    } else {
        emit(opts, dump_json(mscz::with_manifest("sweep", config, mscz::sweep_to_json(spec, rows))));
    }
    return kExitOk;
}

/// "0,1;-2,-3" -> two path pairs, each normalized so the control is the
/// lower order and the target sits directly above it.
std::vector<std::pair<int, int>> parse_gate_paths(const std::string& text) {
    std::vector<std::pair<int, int>> pairs;
    std::istringstream stream(text);
    std::string chunk;
    while (std::getline(stream, chunk, ';')) {
        const auto comma = chunk.find(',');
        if (comma == std::string::npos)
            throw UsageError("gate paths must look like \"0,1;-2,-3\"");
        int a = 0;
        int b = 0;
        try {
            a = std::stoi(chunk.substr(0, comma));
            b = std::stoi(chunk.substr(comma + 1));
        } catch (const std::exception&) {
            throw UsageError("gate paths must be integers: '" + chunk + "'");
        }
        if (a > b) std::swap(a, b);
        if (b != a + 1)
            throw UsageError("each gate needs two adjacent paths, got '" + chunk + "'");
        pairs.emplace_back(a, b);
    }
    if (pairs.size() != 2) throw UsageError("expected exactly two gates, e.g. \"0,1;-2,-3\"");
    return pairs;
}

int cmd_independent(const CommonOptions& opts, const std::string& gates_text) {
    check_format(opts);
    const auto pairs = parse_gate_paths(gates_text);

    // Each gate needs one auxiliary path on either side of its qubit paths.
    int lo = pairs[0].first;
    int hi = pairs[0].second;
    for (const auto& [c, t] : pairs) {
        lo = std::min(lo, c - 1);
        hi = std::max(hi, t + 1);
    }
    const auto config = resolve_config(opts, mscz::MetasurfaceConfig::ideal(lo, hi));

    const mscz::ModeUnitary u = mscz::build_parallel_bs(config);
    mscz::FactorizationReport report;
    try {
        const auto enc_a = mscz::cz_encoding_on_paths(pairs[0].first, u.basis(), "1");
        const auto enc_b = mscz::cz_encoding_on_paths(pairs[1].first, u.basis(), "2");
        if (mscz::encodings_overlap(enc_a, enc_b))
            throw UsageError("gates share modes; pick disjoint path pairs");
        report = mscz::independent_gates_check(u, enc_a, enc_b);
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw mscz::ConfigError(std::string("config: order range cannot host the gates: ") +
                                e.what());
    }

    if (opts.format == "csv") {
        emit(opts, mscz::factorization_to_csv(report));
    } else {
        emit(opts, dump_json(mscz::with_manifest("independent", config,
                                                 mscz::factorization_to_json(report, pairs))));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator for metasurface parallel-beam-splitter CZ gates"};
    app.set_version_flag("--version", mscz::kVersion);
    app.require_subcommand(1);

    CommonOptions tt_opts;
    std::string tt_encoding;
    std::string tt_basis = "standard";
    auto* tt = app.add_subcommand("truth-table", "Logical truth table of a post-selected gate");
    tt->add_option("--encoding", tt_encoding, "polarization, cascaded or path")->required();
    tt->add_option("--basis", tt_basis, "standard or hadamard_st")->default_val("standard");
    add_common_options(tt, tt_opts);

    CommonOptions op_opts;
    std::string op_encoding;
    auto* op = app.add_subcommand("operator", "Post-selected logical operator matrix");
    op->add_option("--encoding", op_encoding, "polarization, cascaded or path")->required();
    add_common_options(op, op_opts);

    CommonOptions ghz_opts;
    auto* ghz = app.add_subcommand("ghz", "GHZ preparation through the cascaded gate");
    add_common_options(ghz, ghz_opts);

    CommonOptions sweep_opts;
    std::string sweep_param;
    std::string sweep_scenario = "single_cz";
    double sweep_min = 0.0;
    double sweep_max = 0.0;
    int sweep_steps = 2;
    auto* sweep = app.add_subcommand("sweep", "Imperfection sweep against fidelity");
    sweep->add_option("--param", sweep_param,
                      "ratio_delta, efficiency or conversion_efficiency")->required();
    sweep->add_option("--min", sweep_min, "Lowest parameter value")->required();
    sweep->add_option("--max", sweep_max, "Highest parameter value")->required();
    sweep->add_option("--steps", sweep_steps, "Number of grid points")->required();
    sweep->add_option("--scenario", sweep_scenario, "single_cz, cascaded, ghz or path_cz")
        ->default_val("single_cz");
    add_common_options(sweep, sweep_opts);

    CommonOptions ind_opts;
    std::string ind_gates;
    auto* ind = app.add_subcommand("independent", "Tensor-product check for two disjoint gates");
    ind->add_option("--gates", ind_gates, "Two path pairs, e.g. \"0,1;-2,-3\"")->required();
    add_common_options(ind, ind_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (tt->parsed()) return cmd_truth_table(tt_opts, tt_encoding, tt_basis);
        if (op->parsed()) return cmd_operator(op_opts, op_encoding);
        if (ghz->parsed()) return cmd_ghz(ghz_opts);
        if (sweep->parsed())
            return cmd_sweep(sweep_opts, sweep_param, sweep_scenario, sweep_min, sweep_max,
                             sweep_steps);
        if (ind->parsed()) return cmd_independent(ind_opts, ind_gates);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const mscz::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
