#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "arns/hologram.hpp"
#include "arns/sampled_field.hpp"

namespace arns {

/// Write through a sibling temporary file and rename over `path`, so
/// readers never observe a partial file. Throws Error(IoFailure).
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// x_m,y_m,re,im per sample, row-major.
std::string field_csv(const SampledField& field);

/// Binary P5 greymap of |E|^2 scaled so the peak maps to 255.
std::string intensity_pgm(const SampledField& field);

/// Binary P5 of the phase, [0, 2 pi) mapped linearly onto 2^bits levels.
/// bits is 8 or 16 (16-bit samples big-endian).
std::string hologram_pgm(const Hologram& holo, int bits = 8);

}  // namespace arns
