#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string cli_path() {
    const char* path = std::getenv("MSCZ_CLI");
    REQUIRE_MESSAGE(path != nullptr, "MSCZ_CLI must point at the mscz binary");
    return path;
}

RunResult run_cli(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << content;
}

int count_lines(const std::string& text) {
    int lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    return lines;
}

}  // namespace

TEST_CASE("truth-table: polarization CSV matches the single-gate table") {
    const RunResult r = run_cli("truth-table --encoding polarization --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "input,output,phase_re,phase_im,success_probability\n"
          "00,00,1,0,0.111111111111\n"
          "01,01,1,0,0.111111111111\n"
          "10,10,1,0,0.111111111111\n"
          "11,11,-1,0,0.111111111111\n");
}

TEST_CASE("truth-table: JSON carries a manifest with a checksum") {
    const RunResult r = run_cli("truth-table --encoding polarization");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["manifest"]["command"] == "truth-table");
    CHECK(j["manifest"]["config"]["order_min"] == -1);
    CHECK(j["manifest"]["checksum"].get<std::string>().size() == 16);
    CHECK(j["result"]["rows"].size() == 4);
    CHECK(j["result"]["rows"][3]["phase_re"].get<double>() == doctest::Approx(-1.0));
    CHECK(j["result"]["rows"][0]["success_probability"].get<double>() ==
          doctest::Approx(1.0 / 9.0));
}

TEST_CASE("truth-table: cascaded Hadamard basis") {
    const RunResult r = run_cli("truth-table --encoding cascaded --basis hadamard_st --format csv");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.out) == 9);
    CHECK(r.out.find("0++,0-+,1,0,0.037037037037") != std::string::npos);
    CHECK(r.out.find("1++,1+-,1,0,0.037037037037") != std::string::npos);
}

TEST_CASE("truth-table: usage errors exit 2") {
    CHECK(run_cli("truth-table --encoding bogus").exit_code == 2);
    CHECK(run_cli("truth-table").exit_code == 2);
    CHECK(run_cli("truth-table --encoding polarization --basis hadamard_st").exit_code == 2);
    CHECK(run_cli("truth-table --encoding polarization --format yaml").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
}

TEST_CASE("ghz: default config reports unit fidelity at 1/27") {
    const RunResult r = run_cli("ghz");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["fidelity_vs_ghz"].get<double>() == doctest::Approx(1.0));
    CHECK(j["result"]["success_probability"].get<double>() == doctest::Approx(1.0 / 27.0));
    CHECK(j["result"]["reduced_purities"]["C"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("ghz: perturbed config drops below unit fidelity") {
    write_file("cli_ratio.json", R"({"ratio": 0.35})");
    const RunResult r = run_cli("ghz --config cli_ratio.json");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["fidelity_vs_ghz"].get<double>() < 1.0);
    CHECK(j["result"]["fidelity_vs_ghz"].get<double>() > 0.9);
    CHECK(j["manifest"]["config"]["ratio"].get<double>() == doctest::Approx(0.35));
}

TEST_CASE("config errors exit 3") {
    write_file("cli_broken.json", "{not json");
    CHECK(run_cli("ghz --config cli_broken.json").exit_code == 3);

    write_file("cli_badkey.json", R"({"ratios": 0.3})");
    CHECK(run_cli("ghz --config cli_badkey.json").exit_code == 3);

    CHECK(run_cli("ghz --config does_not_exist.json").exit_code == 3);

    // Order range too small for the cascaded encoding.
    write_file("cli_narrow.json", R"({"order_min": -1, "order_max": 2})");
    CHECK(run_cli("ghz --config cli_narrow.json").exit_code == 3);
}

TEST_CASE("sweep: ratio_delta CSV starts at fidelity 1") {
    const RunResult r = run_cli(
        "sweep --param ratio_delta --min 0 --max 0.05 --steps 11 --scenario single_cz --format csv");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.out) == 12);
    CHECK(r.out.rfind("parameter,value,process_fidelity,mean_success_probability\n", 0) == 0);
    CHECK(r.out.find("ratio_delta,0,1,0.111111111111\n") != std::string::npos);
}

TEST_CASE("sweep: efficiency column follows eta^2/9") {
    const RunResult r =
        run_cli("sweep --param efficiency --min 0.4 --max 0.7 --steps 4 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("efficiency,0.4,1,0.0177777777778") != std::string::npos);
    CHECK(r.out.find("efficiency,0.5,1,0.0277777777778") != std::string::npos);
    CHECK(r.out.find("efficiency,0.6,1,0.04") != std::string::npos);
    CHECK(r.out.find("efficiency,0.7,1,0.0544444444444") != std::string::npos);
}

TEST_CASE("sweep: out-of-domain range exits 2") {
    CHECK(run_cli("sweep --param ratio_delta --min -2 --max 2 --steps 5").exit_code == 2);
    CHECK(run_cli("sweep --param efficiency --min 0 --max 0.7 --steps 4").exit_code == 2);
    CHECK(run_cli("sweep --param bogus --min 0 --max 1 --steps 3").exit_code == 2);
    CHECK(run_cli("sweep --param ratio_delta --min 0 --max 0.05 --steps 1").exit_code == 2);

    // A grid point that overflows the configured ratio is a usage error too.
    write_file("cli_high_ratio.json", R"({"ratio": 0.9})");
    CHECK(run_cli("sweep --param ratio_delta --min 0 --max 0.2 --steps 3 "
                  "--config cli_high_ratio.json")
              .exit_code == 2);
}

TEST_CASE("sweep: config range too small for the scenario exits 3") {
    write_file("cli_narrow_sweep.json", R"({"order_min": -1, "order_max": 2})");
    CHECK(run_cli("sweep --param ratio_delta --min 0 --max 0.05 --steps 3 --scenario cascaded "
                  "--config cli_narrow_sweep.json")
              .exit_code == 3);
}

TEST_CASE("independent: disjoint gates factorize, shared paths exit 2") {
    const RunResult r = run_cli("independent --gates \"0,1;-2,-3\"");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["max_deviation"].get<double>() < 1e-12);
    CHECK(j["result"]["joint_success_probability"].get<double>() == doctest::Approx(1.0 / 81.0));
    CHECK(j["result"]["factors"][0]["process_fidelity_vs_cz"].get<double>() ==
          doctest::Approx(1.0));

    CHECK(run_cli("independent --gates \"0,1;0,-1\"").exit_code == 2);
    CHECK(run_cli("independent --gates \"0,1\"").exit_code == 2);
    CHECK(run_cli("independent --gates \"0,2;-2,-3\"").exit_code == 2);
}

TEST_CASE("operator: dumps the post-selected matrix") {
    const RunResult r = run_cli("operator --encoding polarization");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["result"]["dim"] == 4);
    CHECK(j["result"]["process_fidelity_vs_ideal"].get<double>() == doctest::Approx(1.0));
    CHECK(j["result"]["matrix"][0][0][0].get<double>() == doctest::Approx(1.0 / 3.0));
    CHECK(j["result"]["matrix"][3][3][0].get<double>() == doctest::Approx(-1.0 / 3.0));
    CHECK(j["result"]["matrix"][0][1][0].get<double>() == doctest::Approx(0.0));

    const RunResult csv = run_cli("operator --encoding polarization --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.rfind("row,col,re,im\n", 0) == 0);
    CHECK(csv.out.find("3,3,-0.333333333333,0") != std::string::npos);
}

TEST_CASE("identical invocations produce byte-identical output") {
    for (const char* args :
         {"truth-table --encoding cascaded", "ghz",
          "sweep --param ratio_delta --min 0 --max 0.05 --steps 5 --format csv",
          "independent --gates \"0,1;-2,-3\""}) {
        const RunResult a = run_cli(args);
        const RunResult b = run_cli(args);
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("--output writes the file instead of stdout") {
    const RunResult r = run_cli(
        "truth-table --encoding polarization --format csv --output cli_table.csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
    std::ifstream in("cli_table.csv");
    REQUIRE(in.good());
    std::string first;
    std::getline(in, first);
    CHECK(first == "input,output,phase_re,phase_im,success_probability");
}
