#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <string>

// Drives the installed binary end to end through a shell.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(PLCURV_BIN) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

RunResult run_shell(const std::string& script) {
  FILE* p = popen(script.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string shape_file(const std::string& shape) {
  std::string path = "/tmp/plcurv_cli_" + shape + ".plc";
  RunResult r = run("gen " + shape + " -o " + path);
  REQUIRE(r.exit_code == 0);
  return path;
}

const nlohmann::json* find_row(const nlohmann::json& rep, const std::string& name) {
  for (const auto& row : rep["results"])
    if (row["name"] == name) return &row;
  return nullptr;
}

}  // namespace

TEST_CASE("generated shape piped into info reports its topology") {
  RunResult r = run_shell(std::string(PLCURV_BIN) + " gen square | " + PLCURV_BIN +
                          " info - 2>/dev/null");
  REQUIRE(r.exit_code == 0);
  nlohmann::json rep = nlohmann::json::parse(r.out);
  CHECK(rep["command"] == "info");
  CHECK((*find_row(rep, "euler_characteristic"))["value"] == 1.0);
  CHECK((*find_row(rep, "betti_0"))["value"] == 1.0);
  CHECK((*find_row(rep, "betti_1"))["value"] == 0.0);
  CHECK((*find_row(rep, "volume_2"))["value"] == 1.0);
}

TEST_CASE("validate accepts every generator shape") {
  for (const std::string shape : {"square", "annulus", "cube_boundary"}) {
    RunResult r = run("validate " + shape_file(shape));
    CHECK(r.exit_code == 0);
    nlohmann::json rep = nlohmann::json::parse(r.out);
    CHECK((*find_row(rep, "issues"))["pass"] == true);
  }
}

TEST_CASE("gauss-bonnet and chern-lashof checks pass on the annulus") {
  std::string annulus = shape_file("annulus");
  RunResult gb = run("check gauss-bonnet " + annulus + " --directions 60 --seed 7");
  REQUIRE(gb.exit_code == 0);
  nlohmann::json rep = nlohmann::json::parse(gb.out);
  CHECK((*find_row(rep, "sigma_census"))["pass"] == true);
  CHECK((*find_row(rep, "sigma_census"))["exact"] == 0.0);

  RunResult cl = run("check chern-lashof " + annulus + " --directions 60 --seed 7");
  REQUIRE(cl.exit_code == 0);
  nlohmann::json rep2 = nlohmann::json::parse(cl.out);
  CHECK((*find_row(rep2, "tau_census_min"))["value"] == 2.0);
  CHECK((*find_row(rep2, "tau_census_min"))["pass"] == true);

  RunResult ms = run("check morse-sum " + annulus + " --directions 40 --seed 3");
  CHECK(ms.exit_code == 0);
}

TEST_CASE("identical seeds give byte-identical reports") {
  std::string annulus = shape_file("annulus");
  std::string args = "wk " + annulus + " --samples 150 --seed 3 --map tau --format csv";
  RunResult a = run(args);
  RunResult b = run(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("wk_1") != std::string::npos);
}

TEST_CASE("thread count comes from the environment but never changes values") {
  std::string square = shape_file("square");
  std::string args = " wk " + square + " --samples 200 --seed 5 --format csv 2>/dev/null";
  RunResult one = run_shell("PLCURV_THREADS=1 " + std::string(PLCURV_BIN) + args);
  RunResult three = run_shell("PLCURV_THREADS=3 " + std::string(PLCURV_BIN) + args);
  REQUIRE(one.exit_code == 0);
  REQUIRE(three.exit_code == 0);
  CHECK(one.out == three.out);
}

TEST_CASE("exact vertex curvature through the command line") {
  std::string annulus = shape_file("annulus");
  // vertex 4 is the first inner corner; reflex under the euler map
  RunResult r = run("curvature " + annulus + " --vertex 4 --exact --map sigma");
  REQUIRE(r.exit_code == 0);
  nlohmann::json rep = nlohmann::json::parse(r.out);
  CHECK((*find_row(rep, "vertex_4"))["value"] == -0.25);
  RunResult tau = run("curvature " + annulus + " --vertex 4 --exact --map tau");
  nlohmann::json rep2 = nlohmann::json::parse(tau.out);
  CHECK((*find_row(rep2, "vertex_4"))["value"] == 0.25);
}

TEST_CASE("kinematic check emits verdict and rejection rate rows") {
  std::string square = shape_file("square");
  RunResult r = run("check kinematic " + square + " " + square +
                    " --map sigma --motions 800 --seed 1");
  REQUIRE(r.exit_code == 0);
  nlohmann::json rep = nlohmann::json::parse(r.out);
  const auto* lhs = find_row(rep, "kinematic_lhs");
  REQUIRE(lhs != nullptr);
  CHECK((*lhs)["pass"] == true);
  CHECK(std::abs(lhs->at("exact").get<double>() - 4.546479089470325) < 1e-12);
  const auto* rate = find_row(rep, "rejection_rate");
  REQUIRE(rate != nullptr);
  CHECK((*rate)["pass"] == true);
}

TEST_CASE("linear and subdivision checks pass on the square") {
  std::string square = shape_file("square");
  RunResult lin = run("check linear " + square + " --k 1 --samples 1500 --seed 2");
  CHECK(lin.exit_code == 0);
  RunResult sub = run("check subdivision " + square + " --map b0");
  CHECK(sub.exit_code == 0);
}

TEST_CASE("factorization and translation measure checks run from files") {
  std::string hseg = shape_file("segment");
  std::string vseg = "/tmp/plcurv_cli_vseg.plc";
  RunResult w = run_shell("printf 'PLC 1 2\\nVERTICES 2\\n0.5 -0.5\\n0.5 0.5\\nSIMPLICES 1\\n1 0 1\\n' > " +
                          vseg + " && echo ok");
  REQUIRE(w.out == "ok\n");

  RunResult fo = run("check factorization " + hseg + " " + vseg +
                     " --face1 0,1 --face2 0,1 --directions 300 --seed 4");
  REQUIRE(fo.exit_code == 0);
  nlohmann::json rep = nlohmann::json::parse(fo.out);
  CHECK((*find_row(rep, "factorization_orthogonal_lhs"))["value"] == 1.0);

  RunResult fa = run("check factorization " + hseg + " " + vseg +
                     " --face1 0,1 --face2 0,1 --mode averaged --rotations 8"
                     " --directions 32 --seed 4");
  CHECK(fa.exit_code == 0);

  RunResult tm = run("check translation-measure " + hseg + " " + vseg +
                     " --face1 0,1 --face2 0,1 --samples 2000 --seed 4");
  REQUIRE(tm.exit_code == 0);
  nlohmann::json rep2 = nlohmann::json::parse(tm.out);
  CHECK((*find_row(rep2, "translation_measure_rhs"))["value"] == 1.0);
}

TEST_CASE("exit codes separate verification failure from input error") {
  // two rotation samples that happen to sit close together far from the
  // target: an honest statistical failure, pinned by its seed
  RunResult fail = run("estimate cnk --n 2 --k 1 --samples 2 --seed 7");
  CHECK(fail.exit_code == 1);

  CHECK(run("info /tmp/plcurv_cli_missing_file.plc").exit_code == 2);
  CHECK(run("gen not_a_shape").exit_code == 2);
  CHECK(run("curvature " + shape_file("square") + " --map euler").exit_code == 2);
  CHECK(run("check factorization " + shape_file("segment") + " " +
            shape_file("segment") + " --face1 0,1 --face2 0,1 --seed 0")
            .exit_code == 2);
  CHECK(run("").exit_code == 2);
  CHECK(run("--help").exit_code == 0);
}
