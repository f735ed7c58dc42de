#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "spinet/network.hpp"
#include "testutil.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = spinet::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Value of a "key value" line in a CLI report.
double line_value(const std::string& text, const std::string& key) {
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line))
    if (line.rfind(key + " ", 0) == 0) return std::stod(line.substr(key.size() + 1));
  FAIL("missing line '", key, "' in:\n", text);
  return 0;
}

fs::path temp_file(const char* name, const std::string& content) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream f(p, std::ios::binary);
  f << content;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("help and argument errors use the conventional codes") {
  RunResult help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("simulate") != std::string::npos);
  CHECK(run_cli({"simulate"}).code == 1);           // missing --network
  CHECK(run_cli({"frobnicate"}).code == 1);         // unknown subcommand
  CHECK(run_cli({}).code == 1);                     // no subcommand
}

TEST_CASE("simulate reports the transfer peak of a bundled network") {
  RunResult r = run_cli({"simulate", "--network", "lambda3", "--kind", "mxy"});
  REQUIRE(r.code == 0);
  CHECK(line_value(r.out, "alpha_ref") ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(line_value(r.out, "peak_fidelity") == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("simulate rejects unusable backend requests") {
  RunResult r = run_cli({"simulate", "--network", "lambda3", "--kind", "xy",
                         "--backend", "fermion"});
  CHECK(r.code == 1);
  CHECK(r.err.find("fermion backend") != std::string::npos);

  RunResult bad = run_cli({"simulate", "--network", "no_such_net"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("not a bundled network name") != std::string::npos);

  RunResult big = run_cli({"simulate", "--network", "pst:13", "--backend", "dense"});
  CHECK(big.code == 3);
  CHECK(big.err.rfind("capacity: ", 0) == 0);
}

TEST_CASE("simulate writes the requested CSV") {
  fs::path csv = fs::temp_directory_path() / "spinet_cli_sim.csv";
  fs::remove(csv);
  RunResult r = run_cli({"simulate", "--network", "lambda3", "--kind", "mxy",
                         "--samples", "101", "--tmax", "6.4", "--out", csv.string()});
  REQUIRE(r.code == 0);
  std::string text = slurp(csv);
  CHECK(text.rfind("# alpha_ref 0.7071067811865475\n", 0) == 0);
  CHECK(text.find("\nt,fidelity\n") != std::string::npos);
  // header+comment plus one row per sample
  CHECK(std::count(text.begin(), text.end(), '\n') == 103);
  fs::remove(csv);
}

TEST_CASE("check-unitary separates the transfer time from other times") {
  RunResult good = run_cli({"check-unitary", "--network", "lambda3", "--time",
                            "3.141592653589793"});
  CHECK(good.code == 0);
  CHECK(good.out.find("verdict true") != std::string::npos);
  CHECK(line_value(good.out, "norm_G") == doctest::Approx(0.5).epsilon(1e-10));

  RunResult bad = run_cli({"check-unitary", "--network", "lambda3", "--time",
                           "1.5707963267948966"});
  CHECK(bad.code == 2);
  CHECK(bad.out.find("verdict false") != std::string::npos);
}

TEST_CASE("check-hamiltonian classifies the end-site support") {
  RunResult r = run_cli({"check-hamiltonian", "--network", "pst:2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("support anticommuting") != std::string::npos);
  CHECK(r.out.find("conditions hold") != std::string::npos);
  CHECK(line_value(r.out, "first_transfer_time") ==
        doctest::Approx(M_PI / 2.0).epsilon(1e-6));

  RunResult mixed = run_cli({"check-hamiltonian", "--network", "fig5"});
  REQUIRE(mixed.code == 0);
  CHECK(mixed.out.find("support mixed") != std::string::npos);
  CHECK(mixed.out.find("conditions not_applicable") != std::string::npos);
}

TEST_CASE("walk output matches the stored hierarchy") {
  RunResult r = run_cli({"walk", "--network", "fig5"});
  REQUIRE(r.code == 0);
  CHECK(r.out == testutil::read_file(testutil::data_path("walk_fig5_xy.txt")));

  RunResult sk = run_cli({"walk", "--network", "fig5", "--skeleton-only"});
  REQUIRE(sk.code == 0);
  CHECK(sk.out ==
        "order 0\n"
        "skeleton 1-2:+ 1-4:+\n"
        "order 1\n"
        "skeleton 1-3:- 1-5:-\n"
        "order 2\n"
        "skeleton 1-2:+ 1-4:+ 1-6:+ 2-3:+ 2-5:+ 3-4:+ 4-5:+\n"
        "order 3\n"
        "skeleton 1-3:- 1-5:- 2-6:- 4-6:-\n"
        "order 4\n"
        "skeleton 1-2:+ 1-4:+ 1-6:+ 2-3:+ 2-5:+ 3-4:+ 3-6:+ 4-5:+ 5-6:+\n");
}

TEST_CASE("walk on an edgeless network prints nothing and succeeds") {
  fs::path net = temp_file("spinet_cli_edgeless.net", "nodes 2\nends 1 2\n");
  RunResult r = run_cli({"walk", "--network", net.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(r.err.empty());
  fs::remove(net);
}

TEST_CASE("collapse prints the class chain") {
  RunResult r = run_cli({"collapse", "--network", "fig5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("classes 1|2,4|3,5|6\n") != std::string::npos);
  // The middle coupling is 1 up to the rounding of the 1/sqrt(2) weights.
  CHECK(r.out.find("alphas 1.4142135623730951,0.9999999999999999,"
                   "1.4142135623730951\n") != std::string::npos);

  RunResult explicit_part =
      run_cli({"collapse", "--network", "fig5", "--partition", "1|2,4|3,5|6"});
  CHECK(explicit_part.code == 0);
  CHECK(explicit_part.out == r.out);

  RunResult bad =
      run_cli({"collapse", "--network", "fig5", "--partition", "1|2|3,4,5|6"});
  CHECK(bad.code == 1);
  CHECK(bad.err.rfind("error: ", 0) == 0);
}

TEST_CASE("synth expands a chain and the result transfers perfectly") {
  std::string plan = R"({
  "sizes": [1, 3, 3, 1],
  "bonds": [
    {"type": "complete", "weights": [2.0, 2.0, 1.0]},
    {"type": "paths"},
    {"type": "complete"}
  ]
})";
  fs::path plan_file = temp_file("spinet_cli_plan.json", plan);
  fs::path net_file = fs::temp_directory_path() / "spinet_cli_synth.net";
  fs::remove(net_file);

  RunResult r = run_cli({"synth", "--chain",
                         "1.7320508075688772,2,1.7320508075688772", "--plan",
                         plan_file.string(), "--out", net_file.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("alphas 1.7320508075688772,2,1.7320508075688772\n") !=
        std::string::npos);
  CHECK(r.out.find("wrote " + net_file.string()) != std::string::npos);

  std::string text = slurp(net_file);
  CHECK(text.rfind("# expanded from chain couplings", 0) == 0);
  spinet::SpinNetwork net = spinet::parse_network(text);
  CHECK(net.n == 8);
  net.validate();

  RunResult sim = run_cli({"simulate", "--network", net_file.string(), "--kind", "mxy"});
  REQUIRE(sim.code == 0);
  CHECK(line_value(sim.out, "peak_fidelity") == doctest::Approx(1.0).epsilon(1e-9));

  RunResult badplan = run_cli({"synth", "--chain", "1,1", "--plan",
                               plan_file.string()});
  CHECK(badplan.code == 1);  // coupling count does not fit the plan

  fs::remove(plan_file);
  fs::remove(net_file);
}

TEST_CASE("demo writes the figure data deterministically") {
  fs::path dir1 = fs::temp_directory_path() / "spinet_cli_demo1";
  fs::path dir2 = fs::temp_directory_path() / "spinet_cli_demo2";
  fs::remove_all(dir1);
  fs::remove_all(dir2);

  RunResult r1 = run_cli({"demo", "--out", dir1.string()});
  REQUIRE(r1.code == 0);
  const char* names[] = {"fig3_xy.csv", "fig3_mxy.csv", "fig7b_xy.csv",
                         "fig7b_mxy.csv", "table1.txt"};
  for (const char* name : names) {
    CHECK(r1.out.find(name) != std::string::npos);
    REQUIRE(fs::exists(dir1 / name));
  }
  for (int i = 0; i < 4; ++i) {
    std::string text = slurp(dir1 / names[i]);
    CHECK(text.rfind("# alpha_ref ", 0) == 0);
    CHECK(text.find("\nt,fidelity\n") != std::string::npos);
  }
  CHECK(slurp(dir1 / "table1.txt").find("verdict true") != std::string::npos);

  RunResult r2 = run_cli({"demo", "--out", dir2.string()});
  REQUIRE(r2.code == 0);
  for (const char* name : names) CHECK(slurp(dir1 / name) == slurp(dir2 / name));

  fs::remove_all(dir1);
  fs::remove_all(dir2);
}
