#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

// End-to-end checks against the installed binary. ctest provides
// THERMOPHASE_BIN (path to the executable) and THERMOPHASE_DATA (the
// repository data directory with the golden file).

namespace {

struct RunResult {
  int code;
  std::string out;
};

std::string binary_path() {
  const char* bin = std::getenv("THERMOPHASE_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "THERMOPHASE_BIN must be set");
  return bin;
}

std::string data_dir() {
  const char* data = std::getenv("THERMOPHASE_DATA");
  REQUIRE_MESSAGE(data != nullptr, "THERMOPHASE_DATA must be set");
  return data;
}

RunResult run(const std::string& args) {
  const std::string cmd = binary_path() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  REQUIRE(f.good());
  f << text;
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& text)
      : path(std::filesystem::temp_directory_path() / name) {
    write_file(path, text);
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
};

}  // namespace

TEST_CASE("help exits zero, missing subcommand does not") {
  CHECK(run("--help").code == 0);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("gauge sweep emits a stamped csv and is byte deterministic") {
  const std::string args = "sweep gauge --temps 200 --r-min 0 --r-max 1 --r-step 0.5";
  RunResult first = run(args);
  CHECK(first.code == 0);
  CHECK(first.out.rfind("# config_hash=", 0) == 0);
  CHECK(first.out.find("R_au,T_K,gauge_au\n") != std::string::npos);

  RunResult second = run(args);
  CHECK(second.code == 0);
  CHECK(second.out == first.out);
}

TEST_CASE("invalid arguments map to exit code 2") {
  CHECK(run("sweep gauge --r-step -1").code == 2);
  CHECK(run("sweep gauge --parity Bogus").code == 2);
  CHECK(run("sweep gauge --theta-th -10").code == 2);
  CHECK(run("sweep lambda --t-min 100 --t-max 50 --t-step 10").code == 2);
}

TEST_CASE("minimize reports per-temperature status in the exit code") {
  RunResult ok = run("minimize --temps 200");
  CHECK(ok.code == 0);
  CHECK(ok.out.find(",ok") != std::string::npos);

  RunResult none = run("minimize --parity Odd --temps 150");
  CHECK(none.code == 1);
  CHECK(none.out.find("no-minimum") != std::string::npos);
}

TEST_CASE("verify passes against the shipped golden file") {
  RunResult res = run("verify --golden " + data_dir() + "/golden/two_center.csv");
  CHECK(res.code == 0);
  CHECK(res.out.find("[PASS]") != std::string::npos);
  CHECK(res.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("verify can regenerate a golden file from scratch") {
  const std::filesystem::path fresh =
      std::filesystem::temp_directory_path() / "cli_regen_golden.csv";
  std::error_code ec;
  std::filesystem::remove(fresh, ec);
  RunResult res = run("verify --regenerate --golden " + fresh.string());
  CHECK(res.code == 0);
  CHECK(std::filesystem::exists(fresh));
  std::filesystem::remove(fresh, ec);
}

TEST_CASE("verify flags a corrupted golden value") {
  TempFile bad("cli_bad_golden.csv",
               "lambda,R,quantity,value,tolerance\n"
               "1,2,overlap,0.9,1e-06\n");
  RunResult res = run("verify --golden " + bad.path.string());
  CHECK(res.code == 1);
  CHECK(res.out.find("[FAIL]") != std::string::npos);
}

TEST_CASE("starved quadrature budget surfaces as exit code 3") {
  TempFile cfg("cli_starved.json",
               R"({"quadrature": {"max_subdivisions": 1}})");
  RunResult res = run("verify --config " + cfg.path.string() + " --golden " +
                      data_dir() + "/golden/two_center.csv");
  CHECK(res.code == 3);
}

TEST_CASE("config file keys are strict and flags override the file") {
  TempFile bad("cli_unknown_key.json", R"({"theta_thh": 10})");
  CHECK(run("minimize --config " + bad.path.string() + " --temps 200").code == 2);

  TempFile odd("cli_odd.json", R"({"parity": "Odd"})");
  // file alone: repulsive branch, no minimum anywhere
  CHECK(run("minimize --config " + odd.path.string() + " --temps 200").code == 1);
  // flag wins over the file
  RunResult forced =
      run("minimize --config " + odd.path.string() + " --parity Even --temps 200");
  CHECK(forced.code == 0);
  CHECK(forced.out.find(",ok") != std::string::npos);
}

TEST_CASE("lambda sweep json envelope and self-consistent plumbing") {
  RunResult json = run("sweep lambda --t-min 100 --t-max 200 --t-step 50 --json");
  CHECK(json.code == 0);
  CHECK(json.out.find("\"kind\": \"lambda\"") != std::string::npos);
  CHECK(json.out.find("\"config_hash\"") != std::string::npos);

  CHECK(run("--mode SelfConsistent sweep lambda --t-min 100 --t-max 200 "
            "--t-step 100")
            .code == 2);
  RunResult sc = run(
      "--mode SelfConsistent sweep lambda --t-min 100 --t-max 200 --t-step 100 "
      "--rsep 2.5");
  CHECK(sc.code == 0);
  CHECK(sc.out.find("SelfConsistent") != std::string::npos);
}

TEST_CASE("output lands in the requested file instead of stdout") {
  const std::filesystem::path out =
      std::filesystem::temp_directory_path() / "cli_out.csv";
  std::error_code ec;
  std::filesystem::remove(out, ec);
  RunResult res = run("--out " + out.string() +
                      " sweep phase --t-min 200 --t-max 200 --t-step 5");
  CHECK(res.code == 0);
  CHECK(res.out.empty());
  std::ifstream f(out);
  REQUIRE(f.good());
  std::string first_line;
  std::getline(f, first_line);
  CHECK(first_line.rfind("# config_hash=", 0) == 0);
  std::filesystem::remove(out, ec);
}

TEST_CASE("wkb subcommand round trips a radial table") {
  TempFile table("cli_wkb.csv",
                 "r,V\n"
                 "0.0,0.0\n0.05,0.05\n0.1,0.1\n0.15,0.15\n0.2,0.2\n"
                 "0.25,0.25\n0.3,0.3\n0.35,0.35\n0.4,0.4\n0.45,0.45\n0.5,0.5\n");
  RunResult res = run("wkb --input " + table.path.string() +
                      " --epsilon 1 --orders 2 --hbar 0.01");
  CHECK(res.code == 0);
  CHECK(res.out.find("r,S0,S1,S2,A,Re_phi,Im_phi\n") != std::string::npos);
  // 2 comment/header lines + 11 data rows
  int lines = 0;
  for (char c : res.out)
    if (c == '\n') ++lines;
  CHECK(lines == 13);
}

TEST_CASE("wkb rejects forbidden regions and bad inputs") {
  TempFile wall("cli_wkb_wall.csv",
                "r,V\n0.0,2.0\n0.1,2.0\n0.2,2.0\n0.3,2.0\n");
  CHECK(run("wkb --input " + wall.path.string() + " --epsilon 1").code == 2);
  CHECK(run("wkb --input /nonexistent/table.csv --epsilon 1").code == 2);
  TempFile ok("cli_wkb_ok.csv", "r,V\n0.0,0.0\n0.1,0.0\n0.2,0.0\n");
  CHECK(run("wkb --input " + ok.path.string() + " --epsilon 1 --orders 7").code == 2);
  CHECK(run("wkb --input " + ok.path.string() + " --epsilon 1 --hbar 0").code == 2);
}
