// End-to-end checks of the command-line binary: subcommands, exit codes,
// output determinism. Spawns the real executable.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string output;  // stdout only
};

RunResult run(const std::string& args, const std::string& env = "") {
  const fs::path dir = fs::temp_directory_path() / "cvt_cli_tests";
  fs::create_directories(dir);
  const fs::path out = dir / "stdout.txt";
  const std::string cmd =
      env + " " + std::string(CVT_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream is(out);
  std::ostringstream ss;
  ss << is.rdbuf();
  return {WEXITSTATUS(status), ss.str()};
}

const std::string kData = CVT_DATA_DIR;

}  // namespace

TEST_CASE("backtest subcommand reports the pinned negativity") {
  const RunResult r = run("backtest");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("-0.02434") != std::string::npos);
  CHECK(r.output.find("config_hash") != std::string::npos);
}

TEST_CASE("backtest output is byte-deterministic") {
  const RunResult a = run("backtest");
  const RunResult b = run("backtest");
  CHECK(a.output == b.output);
  const RunResult csv = run("backtest --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.output.rfind("input_negativity,", 0) == 0);
}

TEST_CASE("scenario run on the shipped configs") {
  const RunResult r = run("scenario run " + kData + "/backtest.toml");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"output_negativity\"") != std::string::npos);

  const RunResult ident = run("scenario run " + kData + "/identity.toml");
  CHECK(ident.exit_code == 0);
  CHECK(ident.output.find("-0.3183098") != std::string::npos);  // -1/pi
  CHECK(ident.output.find("\"infinite\"") != std::string::npos);

  const RunResult bb = run("scenario run " + kData + "/broadband.toml");
  CHECK(bb.exit_code == 0);
  CHECK(bb.output.find("\"n_eff\"") != std::string::npos);
  CHECK(bb.output.find("\"modal_transmission\"") != std::string::npos);
}

TEST_CASE("figure subcommand emits CSV and SVG") {
  const RunResult r = run("figure threshold --range eta=0.6:1.0:5");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("eta,r_threshold\n", 0) == 0);
  CHECK(std::count(r.output.begin(), r.output.end(), '\n') == 6);

  const fs::path dir = fs::temp_directory_path() / "cvt_cli_tests";
  const fs::path csv_path = dir / "fig.csv";
  const RunResult f =
      run("figure noise-ratio --svg --out " + csv_path.string());
  CHECK(f.exit_code == 0);
  CHECK(fs::exists(csv_path));
  CHECK(fs::exists(csv_path.string() + ".svg"));
  std::ifstream svg(csv_path.string() + ".svg");
  std::ostringstream ss;
  ss << svg.rdbuf();
  CHECK(ss.str().find("<svg") != std::string::npos);
}

TEST_CASE("sweep subcommand streams deterministic CSV") {
  const std::string args =
      "sweep " + kData + "/backtest.toml --axis eta=0.6:1.0:5 --axis r=0.4:2.0:4";
  const RunResult a = run(args);
  const RunResult b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(std::count(a.output.begin(), a.output.end(), '\n') == 21);
  CHECK(a.output.rfind("eta,r,", 0) == 0);
}

TEST_CASE("exit code 2 on configuration errors") {
  CHECK(run("scenario run /nonexistent/path.toml").exit_code == 2);
  CHECK(run("figure no-such-figure").exit_code == 2);
  CHECK(run("sweep " + kData + "/backtest.toml --axis bogus=0:1:5").exit_code == 2);
  CHECK(run("sweep " + kData + "/backtest.toml --axis r=0:1:2000000").exit_code == 2);
  CHECK(run("backtest --engine warp").exit_code == 2);
  CHECK(run("backtest --grid-size 100").exit_code == 2);  // not a power of two

  const fs::path dir = fs::temp_directory_path() / "cvt_cli_tests";
  fs::create_directories(dir);
  {
    std::ofstream os(dir / "bad.toml");
    os << "[input_state]\ns = 0.28\neta = 1.9\n\n[teleporter]\nr = 0.5\n";
  }
  CHECK(run("scenario run " + (dir / "bad.toml").string()).exit_code == 2);
}

TEST_CASE("exit code 3 on numerical failure") {
  // a window too small for the state blows up inside the engine, not in config
  const fs::path dir = fs::temp_directory_path() / "cvt_cli_tests";
  fs::create_directories(dir);
  {
    std::ofstream os(dir / "clipped.toml");
    os << "[input_state]\ns = 0.9\neta = 0.8\n\n[teleporter]\nr = 0.795\n\n"
          "[engine]\nengine = \"grid\"\n\n[grid]\n"
          "x_min = -2.0\nx_max = 2.0\np_min = -2.0\np_max = 2.0\nn_x = 64\nn_p = 64\n";
  }
  CHECK(run("scenario run " + (dir / "clipped.toml").string()).exit_code == 3);
}

TEST_CASE("CVT_DEFAULT_GRID environment override") {
  const RunResult ok = run("backtest --engine both", "CVT_DEFAULT_GRID=256");
  CHECK(ok.exit_code == 0);
  CHECK(run("backtest", "CVT_DEFAULT_GRID=100").exit_code == 2);
}
