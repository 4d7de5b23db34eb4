#include "arns/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <unistd.h>

#include "arns/error.hpp"

namespace arns {

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::ostringstream name;
  name << "." << path.filename().string() << ".tmp." << ::getpid();
  const fs::path tmp = dir / name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Error(ErrorCode::IoFailure, "short write to " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw Error(ErrorCode::IoFailure, "cannot move output into " + path.string() + ": " + ec.message());
  }
}

std::string field_csv(const SampledField& field) {
  std::ostringstream out;
  out << std::setprecision(17) << "x_m,y_m,re,im\n";
  const std::size_t n = field.resolution();
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      const auto v = field(row, col);
      out << field.coord(col) << "," << field.coord(row) << "," << v.real() << "," << v.imag() << "\n";
    }
  }
  return out.str();
}

std::string intensity_pgm(const SampledField& field) {
  const std::size_t n = field.resolution();
  double peak = 0.0;
  for (const auto& s : field.samples()) peak = std::max(peak, std::norm(s));
  std::ostringstream out;
  out << "P5\n" << n << " " << n << "\n255\n";
  std::string pixels(n * n, '\0');
  const auto samples = field.samples();
  for (std::size_t i = 0; i < n * n; ++i) {
    const double level = peak > 0.0 ? 255.0 * std::norm(samples[i]) / peak : 0.0;
    pixels[i] = static_cast<char>(static_cast<unsigned char>(std::clamp(std::lround(level), 0L, 255L)));
  }
  out << pixels;
  return out.str();
}

std::string hologram_pgm(const Hologram& holo, int bits) {
  if (bits != 8 && bits != 16) throw Error(ErrorCode::InvalidArgument, "PGM bit depth must be 8 or 16");
  const std::size_t n = holo.resolution;
  const long levels = 1L << bits;
  std::ostringstream out;
  out << "P5\n" << n << " " << n << "\n" << levels - 1 << "\n";
  std::string pixels;
  pixels.reserve(n * n * (bits / 8));
  for (double phi : holo.phase) {
    const auto q = std::clamp(static_cast<long>(std::floor(phi / (2.0 * std::numbers::pi) * static_cast<double>(levels))), 0L, levels - 1);
    if (bits == 16) pixels.push_back(static_cast<char>((q >> 8) & 0xFF));
    pixels.push_back(static_cast<char>(q & 0xFF));
  }
  out << pixels;
  return out.str();
}

}  // namespace arns
