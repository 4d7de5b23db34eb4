#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "arns_cli/run.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

/// Runs the installed binary through the shell; `args` is already quoted.
Outcome shell(const std::string& args) {
  const fs::path err_file = fs::temp_directory_path() / ("arns_cli_err_" + std::to_string(::getpid()));
  const std::string cmd = std::string(ARNS_CLI_PATH) + " " + args + " 2>" + err_file.string();
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = ::pclose(pipe);
  std::ifstream ein(err_file);
  std::stringstream es;
  es << ein.rdbuf();
  fs::remove(err_file);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out, es.str()};
}

Outcome in_process(std::vector<std::string> args) {
  args.insert(args.begin(), "arns");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = arns::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("arns_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("cglmp summary for the three-dimensional MES") {
  const auto r = shell("cglmp --d 3 --state mes");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["S"].get<double>() == doctest::Approx(2.8729).epsilon(1e-4));
  CHECK(j["d"] == 3);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1);
}

TEST_CASE("dimension below two is a usage error naming the flag") {
  const auto r = shell("cglmp --d 1");
  CHECK(r.status == 2);
  CHECK(r.err.find("--d") != std::string::npos);
  CHECK(r.err.find("d must be ≥ 2") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("parse errors and unknown flags exit 2") {
  CHECK(in_process({"cglmp", "--d", "three"}).status == 2);
  CHECK(in_process({"cglmp", "--frobnicate"}).status == 2);
  CHECK(in_process({}).status == 2);
  CHECK(in_process({"render", "--waist", "2furlongs"}).status == 2);
  CHECK(in_process({"render", "--waist", "-1mm"}).status == 2);
  CHECK(in_process({"hologram", "--state", "eps", "--eps0", "0.5", "--eps1", "0.6"}).status == 2);
}

TEST_CASE("computation failures exit 1") {
  const auto r = in_process({"overlap-matrix", "--max-index", "2", "--tolerance", "1e-300",
                             "--max-radial-nodes", "512"});
  CHECK(r.status == 1);
  CHECK(r.err.find("QuadratureNotConverged") != std::string::npos);
}

TEST_CASE("surface writes the grid and both boundary files") {
  const fs::path out = scratch("surf.csv");
  const auto r = in_process({"surface", "--resolution", "64", "--out", out.string()});
  REQUIRE(r.status == 0);
  CHECK(lines(slurp(out)) == 1 + 64 * 65 / 2);
  const fs::path sb = out.parent_path() / "surf_s_boundary.csv";
  const fs::path vb = out.parent_path() / "surf_v_boundary.csv";
  REQUIRE(fs::exists(sb));
  REQUIRE(fs::exists(vb));
  CHECK(slurp(sb).rfind("line,eps0,eps1\n", 0) == 0);
  CHECK(lines(slurp(vb)) > 10);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["outputs"].size() == 3);
  CHECK(j["area_s_above"].get<double>() < j["area_v_above"].get<double>());
}

TEST_CASE("identical invocations produce identical bytes") {
  const fs::path a = scratch("sigma_a.csv"), b = scratch("sigma_b.csv");
  REQUIRE(in_process({"sigma", "--d", "3", "--resamples", "200", "--seed", "9", "--out", a.string()})
              .status == 0);
  REQUIRE(in_process({"sigma", "--d", "3", "--resamples", "200", "--seed", "9", "--out", b.string()})
              .status == 0);
  CHECK(slurp(a) == slurp(b));
  const fs::path p = scratch("holo_a.pgm"), q = scratch("holo_b.pgm");
  REQUIRE(in_process({"hologram", "--resolution", "128", "--d", "2", "--out", p.string()}).status == 0);
  REQUIRE(in_process({"hologram", "--resolution", "128", "--d", "2", "--out", q.string()}).status == 0);
  CHECK(slurp(p) == slurp(q));
}

TEST_CASE("failed runs leave no partial output") {
  const fs::path out = scratch("never.csv");
  fs::remove(out);
  CHECK(in_process({"fringe", "--d", "40", "--out", out.string()}).status == 2);
  CHECK_FALSE(fs::exists(out));
  const fs::path nested = scratch("missing_dir") / "x.csv";
  CHECK(in_process({"fringe", "--out", nested.string()}).status == 1);
  CHECK_FALSE(fs::exists(nested));
}

TEST_CASE("config sections feed subcommands and flags override them") {
  const fs::path ini = scratch("run.ini");
  std::ofstream(ini) << "[cglmp]\nd = 4\n";
  auto r = in_process({"--config", ini.string(), "cglmp"});
  REQUIRE(r.status == 0);
  CHECK(nlohmann::json::parse(r.out)["d"] == 4);
  r = in_process({"--config", ini.string(), "cglmp", "--d", "5"});
  CHECK(nlohmann::json::parse(r.out)["d"] == 5);
  std::ofstream(ini) << "[cglmp]\nd = 4\ncolour = blue\n";
  CHECK(in_process({"--config", ini.string(), "cglmp"}).status == 2);
}

TEST_CASE("length flags accept SI suffixes") {
  const auto a = in_process({"render", "--waist", "1mm", "--resolution", "256"});
  const auto b = in_process({"render", "--waist", "0.001", "--resolution", "256"});
  const auto c = in_process({"render", "--waist", "1000um", "--resolution", "256"});
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(nlohmann::json::parse(a.out)["extent_m"].get<double>() ==
        doctest::Approx(4.0 * 1e-3 * std::sqrt(2.0 * 2 + 2 + 1)));
}

TEST_CASE("every subcommand documents units in --help") {
  for (const char* sub : {"render", "overlap-matrix", "decompose", "fringe", "cglmp", "surface",
                          "hologram", "sigma"}) {
    const auto r = in_process({sub, "--help"});
    CHECK(r.status == 0);
    std::istringstream text(r.out);
    std::string line;
    int flags = 0;
    while (std::getline(text, line)) {
      const auto dash = line.find("--");
      if (dash == std::string::npos || dash > 4 || line.find("--help") != std::string::npos) continue;
      ++flags;
      // Option descriptions may wrap onto the next line.
      std::string next;
      const auto pos = text.tellg();
      std::getline(text, next);
      const std::string both = line + next;
      CHECK_MESSAGE((both.find('[') != std::string::npos && both.find(']') != std::string::npos),
                    sub << ": " << line);
      text.seekg(pos);
    }
    CHECK(flags > 0);
  }
}

TEST_CASE("bundled measured values merge into the comparison file") {
  const fs::path out = scratch("compare.csv");
  const auto r = in_process({"cglmp", "--scan", "--compare", std::string(ARNS_DATA_DIR) + "/measured_cglmp.csv",
                             "--compare-out", out.string()});
  REQUIRE(r.status == 0);
  const auto text = slurp(out);
  CHECK(text.find("\n10,") != std::string::npos);
  CHECK(text.find(",2.650,0.035") != std::string::npos);
  CHECK(nlohmann::json::parse(r.out)["scan"].size() == 9);
}

TEST_CASE("remaining subcommands run with defaults") {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"fringe", "--d", "10"},
        {"decompose", "--d", "3"},
        {"decompose", "--model", "physical", "--family", "radial", "--max-index", "3"},
        {"overlap-matrix", "--max-index", "3"},
        {"render", "--state", "custom", "--modes", "6:6", "--waist-mode", "revised"},
        {"sigma", "--quantity", "visibility", "--resamples", "50"}}) {
    const auto r = in_process(args);
    CHECK_MESSAGE(r.status == 0, args[0] << ": " << r.err);
    CHECK(nlohmann::json::accept(r.out));
  }
}
