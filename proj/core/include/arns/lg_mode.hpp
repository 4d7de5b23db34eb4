#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "arns/sampled_field.hpp"

namespace arns {

/// Angular index l (any integer) and radial index p (>= 0) of a
/// Laguerre-Gaussian mode.
struct ModeIndex {
  int l = 0;
  int p = 0;

  constexpr int order() const noexcept { return (l < 0 ? -l : l) + 2 * p + 1; }
  constexpr int abs_l() const noexcept { return l < 0 ? -l : l; }
  constexpr bool valid() const noexcept { return p >= 0; }

  friend constexpr bool operator==(ModeIndex, ModeIndex) = default;
};

enum class WaistMode {
  Standard,  ///< every mode shares base_waist
  Revised,   ///< waist shrinks as base_waist / sqrt(|l| + 2p + 1)
};

struct BeamGeometry {
  double wavelength = 780e-9;  ///< m
  double base_waist = 2e-3;    ///< w0 of the (0,0) mode, m
  double z = 0.0;              ///< default propagation distance, m
  WaistMode waist_mode = WaistMode::Standard;

  /// Throws Error(InvalidArgument) on non-positive wavelength or waist.
  void validate() const;
};

/// Generalized Laguerre polynomial L_p^alpha(x) by upward three-term recurrence.
double laguerre_poly(int p, int alpha, double x);

/// Waist-plane 1/e amplitude radius used for this mode.
double effective_waist(ModeIndex mode, const BeamGeometry& geom);

/// pi w^2 / lambda with the mode's effective waist.
double rayleigh_range(ModeIndex mode, const BeamGeometry& geom);

/// w(z) = w0 sqrt(1 + (z/z_r)^2).
double beam_radius(ModeIndex mode, const BeamGeometry& geom, double z);

/// Transverse footprint w(z) * sqrt(|l| + 2p + 1): the scale on which the
/// outermost ring sits.
double mode_footprint(ModeIndex mode, const BeamGeometry& geom, double z);

/// Everything in the LG field except exp(i l phi): normalization, radial
/// envelope, curvature phase and Gouy phase.
std::complex<double> radial_profile(ModeIndex mode, const BeamGeometry& geom, double r, double z);

/// Full complex amplitude at cylindrical point (r, phi, z). Unit power
/// normalization over the transverse plane.
std::complex<double> lg_field(ModeIndex mode, const BeamGeometry& geom, double r, double phi,
                              double z);
std::complex<double> lg_field(ModeIndex mode, const BeamGeometry& geom, double r, double phi);

/// Radii of the intensity nodes of the radial profile (zeros of the
/// Laguerre factor), ascending. Empty for p = 0.
std::vector<double> radial_nodes(ModeIndex mode, const BeamGeometry& geom, double z);

struct ModeTerm {
  ModeIndex mode;
  std::complex<double> coefficient;
};

struct RenderOptions {
  std::size_t resolution = 512;
  /// Half-width of the grid; defaults to default_extent().
  std::optional<double> extent;
  /// Minimum samples across the outermost ring of every rendered mode.
  double min_samples_per_ring = 8.0;
};

/// 4 times the largest mode footprint among the terms.
double default_extent(std::span<const ModeTerm> terms, const BeamGeometry& geom);

/// Radial width of the outermost bounded ring: the gap between the last two
/// intensity nodes (the axis counts as a node), or w(z) when p = 0.
double outermost_ring_width(ModeIndex mode, const BeamGeometry& geom, double z);

/// Coherent superposition sampled at geom.z.
///
/// Throws EmptyState when no term carries a non-zero coefficient and
/// GridTooCoarse when the outermost ring of any mode spans fewer than
/// min_samples_per_ring samples.
SampledField render_field(std::span<const ModeTerm> terms, const BeamGeometry& geom,
                          const RenderOptions& options = {});

}  // namespace arns
