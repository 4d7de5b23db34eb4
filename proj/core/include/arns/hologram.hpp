#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "arns/sampled_field.hpp"

namespace arns {

/// Root of sin(x)/x = a on [-pi, 0], by bisection. a <= 0 maps to -pi and
/// a >= 1 to 0.
double sincinv(double a);

/// Phase-only SLM pattern, values in [0, 2 pi).
struct Hologram {
  std::size_t resolution = 0;
  double pitch = 0.0;           ///< pixel pitch, m
  double grating_period = 0.0;  ///< blazed grating period along x, m
  int bit_depth = 8;
  std::vector<double> phase;    ///< row-major, row = y

  double operator()(std::size_t row, std::size_t col) const { return phase[row * resolution + col]; }
};

/// Scale a field so its largest amplitude is 1.
SampledField normalize_to_peak(SampledField field);

/// Amplitude-phase encoding with a blazed carrier:
///   phi = M mod(F + 2 pi x / period, 2 pi),
///   M = 1 + sincinv(A) / pi,  F = arg(target) - pi M,
/// so the first diffraction order reproduces the target up to a global sign.
///
/// The target must be peak-normalized (A <= 1 + 1e-9, else
/// AmplitudeOutOfRange); period below two pixels is GratingUnresolvable and
/// `pitch` must equal the target's sample spacing.
Hologram encode(const SampledField& target, double grating_period, double pitch);

struct ReconstructOptions {
  /// Half-width of the square first-order window as a fraction of the
  /// grating frequency; 0.25 spans half the order spacing.
  double window_half_width = 0.25;
  /// Energy fraction that defines the illumination's spectral radius.
  double bandwidth_energy = 0.999;
};

/// Far field of illumination * exp(i phi), first-order window shifted to
/// DC and transformed back. Throws OrderOverlap when the window collapses
/// below one frequency bin, crosses the Nyquist edge, or would reach into
/// the zero-order lobe of the illumination.
SampledField reconstruct(const Hologram& holo, const SampledField& illumination,
                         const ReconstructOptions& options = {});

/// Uniform unit plane wave on the hologram's grid.
SampledField plane_wave(const Hologram& holo);

}  // namespace arns
