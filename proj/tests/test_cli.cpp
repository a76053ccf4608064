#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

// Runs the CLI with stderr suppressed, capturing stdout and the exit code.
RunResult run(const std::string& args) {
  const std::string cmd =
      std::string(GRUSHIN_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fx(const std::string& name) {
  return std::string(GRUSHIN_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("verify exit codes: pass 0, verified-fail 1") {
  CHECK(run("verify --map " + fx("map_identity_a1.json") + " --domain " +
            fx("domain_square.json"))
            .exit_code == 0);
  const RunResult fail = run("verify --map " + fx("map_shifted_a1.json") +
                             " --domain " + fx("domain_square.json"));
  CHECK(fail.exit_code == 1);
  CHECK(fail.out.find("zero_set_discrepancy") != std::string::npos);
}

TEST_CASE("obstruct exit codes and certificate") {
  const RunResult obs = run("obstruct --domain-a " + fx("domain_omega.json") +
                            " --domain-b " + fx("domain_omega_prime.json"));
  CHECK(obs.exit_code == 1);
  CHECK(obs.out.find("degree multiset") != std::string::npos);
  CHECK(run("obstruct --domain-a " + fx("domain_omega.json") +
            " --domain-b " + fx("domain_omega.json"))
            .exit_code == 0);
}

TEST_CASE("admissible exit codes") {
  CHECK(run("admissible --alpha 1 --curve " + fx("curve_t_t3.json"))
            .exit_code == 0);
  CHECK(run("admissible --alpha 1 --curve " + fx("curve_t_t.json"))
            .exit_code == 1);
}

TEST_CASE("classify-entire exit codes") {
  CHECK(run("classify-entire --map " + fx("map_entire_a1.json")).exit_code ==
        0);
  CHECK(run("classify-entire --map " + fx("map_joukovski_a1.json"))
            .exit_code == 1);
}

TEST_CASE("malformed inputs exit 2") {
  CHECK(run("verify --map " + fx("bad_expr_zero_a.json") + " --domain " +
            fx("domain_square.json"))
            .exit_code == 2);
  CHECK(run("axis-components --domain " + fx("bad_domain_rect.json"))
            .exit_code == 2);
  CHECK(run("eval --map " + fx("bad_unknown_field.json") + " --point 1,1")
            .exit_code == 2);
  CHECK(run("eval --map " + fx("map_identity_a1.json") + " --point nope")
            .exit_code == 2);
  CHECK(run("length --alpha 1 --curve /does/not/exist.json").exit_code == 2);
  CHECK(run("length --alpha -2 --curve " + fx("curve_t_t3.json")).exit_code ==
        2);
  CHECK(run("grid --map " + fx("map_identity_a1.json") + " --domain " +
            fx("domain_square.json") + " --resolution 0")
            .exit_code == 2);
  CHECK(run("no-such-subcommand").exit_code == 2);
  CHECK(run("").exit_code == 2);  // a subcommand is required
}

TEST_CASE("length and distance succeed with exit 0") {
  const RunResult len =
      run("length --alpha 1 --curve " + fx("curve_segment_horizontal.json"));
  CHECK(len.exit_code == 0);
  CHECK(len.out.find("\"diverged\": false") != std::string::npos);

  // A divergent length is still a successful computation.
  const RunResult div =
      run("length --alpha 1 --curve " + fx("curve_t_t.json"));
  CHECK(div.exit_code == 0);
  CHECK(div.out.find("\"diverged\": true") != std::string::npos);
  CHECK(div.out.find("\"value\": null") != std::string::npos);

  const RunResult dist =
      run("distance --alpha 1 --from 1,0 --to 3,0 --knots 9 --iterations 200");
  CHECK(dist.exit_code == 0);
  CHECK(dist.out.find("\"lower_bound\": 2.0") != std::string::npos);
}

TEST_CASE("grid output matches the documented golden example") {
  const RunResult grid = run("grid --map " + fx("map_identity_a1.json") +
                             " --domain " + fx("domain_square.json") +
                             " --resolution 2");
  CHECK(grid.exit_code == 0);
  CHECK(grid.out ==
        "x,y,g1,g2,wbar_abs,det_dalpha\n"
        "-0.5,-0.5,-0.5,-0.5,0,1\n"
        "0.5,-0.5,0.5,-0.5,0,1\n"
        "-0.5,0.5,-0.5,0.5,0,1\n"
        "0.5,0.5,0.5,0.5,0,1\n");
}

TEST_CASE("reports are byte-identical across repeated runs") {
  const std::string cmd = "distance --alpha 1 --from 0.5,0 --to 0.5,1 "
                          "--knots 17 --iterations 300 --seed 7";
  const RunResult a = run(cmd);
  const RunResult b = run(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  const std::string vcmd = "verify --map " + fx("map_joukovski_a1.json") +
                           " --domain " + fx("domain_square.json");
  CHECK(run(vcmd).out == run(vcmd).out);
}

TEST_CASE("out files land in GRUSHIN_OUT_DIR") {
  const std::string dir = "/tmp/grushin_cli_test_out";
  REQUIRE(std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) == 0);
  const std::string cmd = "GRUSHIN_OUT_DIR=" + dir + " " + GRUSHIN_CLI_PATH +
                          " eval --map " + fx("map_entire_a1.json") +
                          " --point 1,1 --out eval.json 2>/dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  std::ifstream f(dir + "/eval.json");
  REQUIRE(f.good());
  std::string content((std::istreambuf_iterator<char>(f)),
                      std::istreambuf_iterator<char>());
  CHECK(content.find("eval_result") != std::string::npos);
}

TEST_CASE("unwritable output path exits 2") {
  CHECK(run("length --alpha 1 --curve " + fx("curve_t_t3.json") +
            " --out /nonexistent_dir/report.json")
            .exit_code == 2);
}

TEST_CASE("eval prints images") {
  const RunResult r =
      run("eval --map " + fx("map_entire_a1.json") + " --point 0,0 --jet");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"image\"") != std::string::npos);
  CHECK(r.out.find("\"jet\"") != std::string::npos);
}