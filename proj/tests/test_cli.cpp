#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SOLKMS_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 512> buf{};
    while (fgets(buf.data(), buf.size(), pipe) != nullptr) output += buf.data();
    const int status = pclose(pipe);
    return CliResult{WEXITSTATUS(status), output};
}

nlohmann::json load_stripped_report(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    nlohmann::json doc;
    in >> doc;
    REQUIRE(doc.is_array());
    for (auto& r : doc) r.erase("wall_time_ms");
    return doc;
}

}  // namespace

TEST_CASE("measure arc masses from the command line") {
    const auto res = run_cli("measure mr --r 1.3862944 --arc 0,0.5");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("0.6666667") != std::string::npos);
}

TEST_CASE("state evaluation from the command line") {
    const auto res = run_cli(
        "kms eval --expr \"S^1 [] S*^1\" --level 0 --beta 1 --N 2 --theta0 0.3333333 "
        "--depth 3 --solenoid 0,0,0,0");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("0.3678794") != std::string::npos);
}

TEST_CASE("subinvariance verdicts and exit codes") {
    CHECK(run_cli("measure subinv --r 0 --measure lebesgue").exit_code == 0);
    const auto fail = run_cli("measure subinv --r 1 --measure reversed");
    CHECK(fail.exit_code == 1);
    CHECK(fail.output.find("FAIL") != std::string::npos);
}

TEST_CASE("decomposition and probe subcommands") {
    const auto dec =
        run_cli("measure decompose --r 1.3862944 --n 1 --measure mr --rot 0.5");
    CHECK(dec.exit_code == 0);
    CHECK(dec.output.find("0 1") != std::string::npos);
    CHECK(dec.output.find("reconstruction error") != std::string::npos);

    CHECK(run_cli("measure probe --r 1 --n 2 --measure mr").output.find("ForcedEqual") !=
          std::string::npos);
    CHECK(run_cli("measure probe --r 1 --n 2 --measure mr --rot 0.5")
              .output.find("Exceeds") != std::string::npos);
}

TEST_CASE("factor test distinguishes the trace") {
    const auto cold = run_cli("kms factor-test --beta 0 --N 2 --theta0 0.3333333 --depth 3");
    CHECK(cold.output.find("true") != std::string::npos);
    const auto warm = run_cli("kms factor-test --beta 1 --N 2 --theta0 0.3333333 --depth 3");
    CHECK(warm.output.find("false") != std::string::npos);
}

TEST_CASE("negative temperature is refused with a dedicated error") {
    const auto res = run_cli("kms verify --beta -1 --samples 5 --states 2");
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("NoKmsStates") != std::string::npos);
}

TEST_CASE("non-subinvariant vectors are echoed with their index") {
    const auto res = run_cli("cycle decompose --n 1 --r 1.3862944 --x 0.9,0.1");
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("NotSubinvariant at index 1") != std::string::npos);
}

TEST_CASE("reports are byte-identical apart from timing") {
    const std::string base =
        "report --N 2 --theta0 0.3333333 --beta 1 --depth 3 --samples 40 --states 4 ";
    const auto a = run_cli(base + "--seed 77 --out /tmp/solkms_report_a.json");
    const auto b = run_cli(base + "--seed 77 --out /tmp/solkms_report_b.json");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(load_stripped_report("/tmp/solkms_report_a.json") ==
          load_stripped_report("/tmp/solkms_report_b.json"));

    const auto c = run_cli(base + "--seed 78 --out /tmp/solkms_report_c.json");
    CHECK(load_stripped_report("/tmp/solkms_report_a.json") !=
          load_stripped_report("/tmp/solkms_report_c.json"));
    std::remove("/tmp/solkms_report_a.json");
    std::remove("/tmp/solkms_report_b.json");
    std::remove("/tmp/solkms_report_c.json");
}

TEST_CASE("config files seed the flags") {
    {
        std::ofstream cfg("/tmp/solkms_cfg.json");
        cfg << R"({"N": 2, "theta0": 0.3333333, "beta": 0.0, "depth": 3, "samples": 30,)"
            << R"( "states": 3, "seed": 5})";
    }
    const auto res = run_cli("--config /tmp/solkms_cfg.json kms verify");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("trace-identity") != std::string::npos);

    // an explicit flag overrides the file
    const auto warm = run_cli("--config /tmp/solkms_cfg.json kms verify --beta 0.5");
    CHECK(warm.exit_code == 0);
    CHECK(warm.output.find("positivity-gap") != std::string::npos);
    std::remove("/tmp/solkms_cfg.json");
}

TEST_CASE("the environment variable seeds campaigns") {
    const std::string cmd = "SOLKMS_SEED=909 " + std::string(SOLKMS_CLI_PATH) +
                            " report --N 2 --theta0 0.3333333 --beta 1 --depth 3 "
                            "--samples 30 --states 3 --out /tmp/solkms_env_a.json 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const auto direct = run_cli(
        "report --N 2 --theta0 0.3333333 --beta 1 --depth 3 --samples 30 --states 3 "
        "--seed 909 --out /tmp/solkms_env_b.json");
    CHECK(direct.exit_code == 0);
    CHECK(load_stripped_report("/tmp/solkms_env_a.json") ==
          load_stripped_report("/tmp/solkms_env_b.json"));
    std::remove("/tmp/solkms_env_a.json");
    std::remove("/tmp/solkms_env_b.json");
}

TEST_CASE("the l1 curve prints a strictly decreasing column") {
    const auto res = run_cli("measure l1-curve --r 1 --n-max 5 --panels 1024");
    CHECK(res.exit_code == 0);
    std::istringstream lines(res.output);
    std::string line;
    std::getline(lines, line);  // header
    double prev = 1e9;
    int rows = 0;
    while (std::getline(lines, line) && line.find(' ') != std::string::npos &&
           line[0] >= '1' && line[0] <= '9') {
        const double value = std::stod(line.substr(line.find(' ')));
        CHECK(value < prev);
        prev = value;
        ++rows;
    }
    CHECK(rows == 5);
}

TEST_CASE("verify prints one line per suite and a summary") {
    const auto res = run_cli(
        "kms verify --N 2 --theta0 0.3333333 --beta 0.5 --depth 3 --samples 50 --states 4 "
        "--seed 11");
    CHECK(res.exit_code == 0);
    for (const char* suite : {"kms-identity", "state-invariance", "positivity-gap",
                              "reversed-density-detection", "embedding-consistency",
                              "tower-compatibility", "solenoid-equivariance", "factor-test"}) {
        CHECK(res.output.find(suite) != std::string::npos);
    }
    CHECK(res.output.find("all suites passed") != std::string::npos);
}
