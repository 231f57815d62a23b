#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "homsim/report_io.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string binary_path() {
  const char* env = std::getenv("HOMSIM_BIN");
  REQUIRE_MESSAGE(env != nullptr, "HOMSIM_BIN must point at the homsim binary");
  return env;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string out_path = "cli_stdout.tmp";
  const std::string err_path = "cli_stderr.tmp";
  const std::string command = env_prefix + binary_path() + " " + args + " > " +
                              out_path + " 2> " + err_path;
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return result;
}

std::string first_lines(const std::string& text, int n) {
  std::istringstream in(text);
  std::string line, out;
  for (int i = 0; i < n && std::getline(in, line); ++i) out += line + "\n";
  return out;
}

}  // namespace

TEST_CASE("scan emits the stable csv schema") {
  const CliResult r = run_cli("scan --analytic --tau-steps 5 --tau-max 4");
  CHECK(r.exit_code == 0);
  CHECK(first_lines(r.out, 2) ==
        "tau,coincidence,std_error,model,bandwidth_ratio\n"
        "0,0,0,coherence-analytic,1\n");
  CHECK(r.out.find("2,0.49983226868604874,0,coherence-analytic,1\n") !=
        std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
  const std::string flags =
      "scan --sigma 1 --tau-max 4 --tau-steps 65 --n-pairs 100000 --seed 7";
  const CliResult a = run_cli(flags);
  const CliResult b = run_cli(flags);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  const CliResult c = run_cli("compare --format json");
  const CliResult d = run_cli("compare --format json");
  CHECK(c.exit_code == 0);
  CHECK(c.out == d.out);

  // a different seed must actually change the bytes
  const CliResult e = run_cli(
      "scan --sigma 1 --tau-max 4 --tau-steps 65 --n-pairs 100000 --seed 8");
  CHECK(e.out != a.out);
}

TEST_CASE("usage errors exit with code 2 and one diagnostic line") {
  const CliResult odd = run_cli("scan --n-pairs 3");
  CHECK(odd.exit_code == 2);
  CHECK(odd.err.find("even") != std::string::npos);
  CHECK(std::count(odd.err.begin(), odd.err.end(), '\n') == 1);

  const CliResult unknown = run_cli("scan --frobnicate");
  CHECK(unknown.exit_code == 2);

  const CliResult missing = run_cli("");
  CHECK(missing.exit_code == 2);

  const CliResult bad_ratio = run_cli("scan --bandwidth-ratio 1.5");
  CHECK(bad_ratio.exit_code == 2);

  const CliResult fock_mu = run_cli("scan --model fock --mean-offset 1");
  CHECK(fock_mu.exit_code == 2);

  const CliResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("scan") != std::string::npos);
}

TEST_CASE("sweep-bandwidth runs the ratio family") {
  const CliResult r =
      run_cli("sweep-bandwidth --ratios 1,0.75,0.5,0.25 --analytic");
  CHECK(r.exit_code == 0);
  for (const char* ratio : {",1\n", ",0.75\n", ",0.5\n", ",0.25\n"}) {
    CHECK(r.out.find(ratio) != std::string::npos);
  }
}

TEST_CASE("experiment subcommands succeed and report json") {
  const CliResult contrast = run_cli("contrast --analytic --format json");
  CHECK(contrast.exit_code == 0);

  const CliResult fringe = run_cli("fringe --analytic --format json");
  CHECK(fringe.exit_code == 0);

  const CliResult witness = run_cli("witness --center-split 0 --format json");
  CHECK(witness.exit_code == 0);

  const CliResult compare = run_cli("compare --format json");
  CHECK(compare.exit_code == 0);

  // reports parse and round-trip losslessly
  const auto j = nlohmann::ordered_json::parse(witness.out);
  const homsim::ExperimentReport report = homsim::report_from_json(j);
  CHECK(homsim::report_to_json_string(report) == witness.out);
  CHECK(report.name == "witness");
  CHECK(report.all_passed());
  bool saw_gap_check = false;
  for (const homsim::Check& check : report.checks) {
    if (check.name == "product-entangled-gap") {
      saw_gap_check = true;
      CHECK(check.passed);
      CHECK(check.measured < 1e-9);
    }
  }
  CHECK(saw_gap_check);
}

TEST_CASE("failed checks exit with code 1") {
  // a 9-point quadrature grid cannot resolve the plateau
  const CliResult r = run_cli("witness --grid-points 9 --format json");
  CHECK(r.exit_code == 1);
  const auto j = nlohmann::ordered_json::parse(r.out);
  bool plateau_failed = false;
  for (const auto& check : j.at("checks")) {
    if (check.at("name") == "plateau-at-half" && !check.at("passed").get<bool>()) {
      plateau_failed = true;
    }
  }
  CHECK(plateau_failed);
}

TEST_CASE("degenerate witness states are rejected") {
  const CliResult r =
      run_cli("witness --psi-rel 3.141592653589793 --center-split 0");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("degenerate") != std::string::npos);
}

TEST_CASE("output goes to files and honors the environment override") {
  const std::string path = "cli_file_out.csv";
  const CliResult direct =
      run_cli("scan --analytic --tau-steps 3 --output " + path);
  CHECK(direct.exit_code == 0);
  CHECK(direct.out.empty());
  const std::string by_flag = slurp(path);
  std::remove(path.c_str());
  CHECK(by_flag.rfind("tau,", 0) == 0);

  const CliResult via_env = run_cli("scan --analytic --tau-steps 3",
                                    "HOMSIM_OUTPUT=" + path + " ");
  CHECK(via_env.exit_code == 0);
  CHECK(via_env.out.empty());
  const std::string by_env = slurp(path);
  std::remove(path.c_str());
  CHECK(by_env == by_flag);
}
