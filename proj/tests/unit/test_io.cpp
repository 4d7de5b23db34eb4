#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "arns/error.hpp"
#include "arns/io.hpp"
#include "arns/lg_mode.hpp"

using namespace arns;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("arns_io_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("atomic write replaces the file and leaves no temporary") {
  const fs::path dir = scratch();
  const fs::path target = dir / "out.csv";
  write_file_atomic(target, "first\n");
  write_file_atomic(target, "second\n");
  CHECK(slurp(target) == "second\n");
  std::size_t entries = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    (void)e;
    ++entries;
  }
  CHECK(entries == 1);
  fs::remove_all(dir);
}

TEST_CASE("failed write reports IoFailure and creates nothing") {
  const fs::path missing = scratch() / "no_such_dir" / "out.csv";
  CHECK_THROWS_WITH_AS(write_file_atomic(missing, "x"), doctest::Contains("IoFailure"), Error);
  CHECK_FALSE(fs::exists(missing));
  fs::remove_all(missing.parent_path().parent_path());
}

TEST_CASE("field CSV lists coordinates and components") {
  SampledField f(2, 1.0);
  f(0, 1) = {0.5, -0.25};
  const auto csv = field_csv(f);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x_m,y_m,re,im");
  std::getline(in, line);
  CHECK(line == "-1,-1,0,0");
  std::getline(in, line);
  CHECK(line == "0,-1,0.5,-0.25");
}

TEST_CASE("intensity PGM maps the peak to 255") {
  const std::vector<ModeTerm> t{{{0, 0}, 1.0}};
  RenderOptions o;
  o.resolution = 64;
  const auto f = render_field(t, {780e-9, 1e-3}, o);
  const auto pgm = intensity_pgm(f);
  const std::string header = "P5\n64 64\n255\n";
  REQUIRE(pgm.rfind(header, 0) == 0);
  REQUIRE(pgm.size() == header.size() + 64 * 64);
  const auto centre = static_cast<unsigned char>(pgm[header.size() + 32 * 64 + 32]);
  CHECK(centre == 255);
  CHECK(static_cast<unsigned char>(pgm[header.size()]) == 0);
}
