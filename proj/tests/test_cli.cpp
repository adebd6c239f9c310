#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("chemflood_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run run(const std::string& args) {
  const fs::path o = scratch() / "stdout", e = scratch() / "stderr";
  const std::string cmd = std::string(CHEMFLOOD_CLI_PATH) + " " + args + " >" + o.string() + " 2>" + e.string();
  const int st = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.out = slurp(o);
  r.err = slurp(e);
  return r;
}

}  // namespace

TEST_CASE("validate reports c*") {
  const Run r = run("validate");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["c_star"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("validate fails on a model violating A3") {
  const fs::path p = scratch() / "linear.json";
  std::ofstream(p) << R"({"flux":{"family":"corey","m":{"family":"quad"}},"adsorption":{"family":"linear"}})";
  const Run r = run("validate --model " + p.string());
  CHECK(r.code == 2);
  CHECK(json::parse(r.err)["error"]["kind"] == "validation");
  const Run s = run("solve --left 1,0.8 --right 0,0.2 --model " + p.string());
  CHECK(s.code == 2);
}

TEST_CASE("solve emits the scs structure") {
  const Run r = run("solve --left 1,0.8 --right 0,0.2 --kappa 1");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["structure"] == "scs");
  CHECK(j["waves"].size() >= 2);
  CHECK(j["states"].size() == j["waves"].size() + 1);
}

TEST_CASE("exit statuses") {
  const Run a = run("solve --left 0,0.8 --right 0.5,0.2");
  CHECK(a.code == 3);
  CHECK(json::parse(a.err)["error"]["kind"] == "unsupported_case");
  CHECK(run("solve --left 1.5,0.8 --right 0.5,0.2").code == 1);
  CHECK(run("solve --left 1,0.8").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("solve --left 1,0.8 --right 0,0.2 --kappa -1").code == 1);
  CHECK(run("verify-viscous --left 1,0.8 --right 0,0.2 --cells 10").code == 1);
  CHECK(run("solve --left 1,0.8 --right 0,0.2 --model /nonexistent/model.json").code == 1);
  const Run u = run("phase --c-left 0.3 --c-right 0.2");
  CHECK(u.code == 3);
  CHECK(json::parse(u.err).contains("error"));
}

TEST_CASE("artifacts are deterministic and use the fixed schemas") {
  const fs::path a = scratch() / "a", b = scratch() / "b";
  for (const fs::path& d : {a, b}) {
    REQUIRE(run("solve --left 0.9,0.8 --right 0.2,0.2 --samples 200 --out " + d.string()).code == 0);
    REQUIRE(run("layout --c-left 0.2 --c-right 0.8 --grid 30 --out " + d.string()).code == 0);
    REQUIRE(run("curves --samples 50 --out " + d.string()).code == 0);
    REQUIRE(run("phase --c-left 0.8 --c-right 0.2 --samples 20 --out " + d.string()).code == 0);
    REQUIRE(run("verify-lagrange --left 0.9,0.8 --right 0.2,0.2 --out " + d.string()).code == 0);
    REQUIRE(run("locus --samples 20 --out " + d.string()).code == 0);
    REQUIRE(run("saddle --out " + d.string()).code == 0);
  }
  int files = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++files;
    CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
  }
  CHECK(files > 10);
  auto header = [&](const char* name) {
    std::ifstream in(a / name);
    std::string line;
    std::getline(in, line);
    return line;
  };
  CHECK(header("profile.csv") == "xi,s,c");
  CHECK(header("layout.csv") == "s_L,s_R,label");
  CHECK(header("G1.csv") == "c,s,lambda_c,side");
  CHECK(header("locus.csv") == "c,s,lambda_c,side");
  const json lag = json::parse(slurp(a / "lagrange.json"));
  CHECK(lag["passed"] == true);
}

TEST_CASE("verify-viscous reports a ladder") {
  const fs::path d = scratch() / "v";
  const Run r = run("verify-viscous --left 1,0.5 --right 0.1,0.5 --eps-ladder 1e-2,5e-3 --cells 512 --out " + d.string());
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["rungs"].size() == 2);
  CHECK(j["ratios"].size() == 1);
  CHECK(fs::exists(d / "snapshot_0.csv"));
  CHECK(fs::exists(d / "exact.csv"));
}
