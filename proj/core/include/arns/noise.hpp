#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "arns/state.hpp"

namespace arns {

struct NoiseConfig {
  double scale = 1e4;  ///< mean counts per unit normalized intensity
  std::size_t n_resamples = 1000;
  std::uint64_t seed = 20190601;

  /// Throws InvalidArgument unless scale > 0 and n_resamples >= 2.
  void validate() const;
};

/// Engine for resample `index`: std::mt19937_64 seeded with
/// splitmix64(seed + index * 0x9E3779B97F4A7C15). Resamples are independent
/// of evaluation order.
std::mt19937_64 resample_engine(std::uint64_t seed, std::uint64_t index);

/// Each value replaced by Poisson(value * scale) / scale, drawn from `engine`.
std::vector<double> poissonize(std::span<const double> intensities, double scale,
                               std::mt19937_64& engine);

/// Deterministic single pass using resample_engine(cfg.seed, 0).
std::vector<double> poissonize(std::span<const double> intensities, const NoiseConfig& cfg);

enum class Quantity { CglmpS, Visibility, PowerVisibility };

struct SigmaOptions {
  /// Fringe sampling for Visibility.
  VisibilityOptions visibility{};
  /// Projection model for PowerVisibility.
  DecompositionModel decomposition = IdealModel{};
};

struct SigmaEstimate {
  double noiseless = 0.0;
  double mean = 0.0;
  double sigma = 0.0;  ///< sample standard deviation (n - 1)
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<double> samples;
};

/// Resample the ideal intensity set behind `quantity` n_resamples times and
/// recompute it per resample. CGLMP tables are renormalized to unit sum
/// after the draw, as measured counts would be. Visibility is the harmonic
/// fit (harmonics < d) of each resampled scan read at the noiseless extremum
/// phases; re-searching the extrema per resample biases the mean whenever
/// the fringe has degenerate minima or maxima.
SigmaEstimate estimate_sigma(Quantity quantity, const ArnsState& state, const NoiseConfig& cfg,
                             const SigmaOptions& options = {});

/// resample_index,value rows followed by a "# mean,sigma,n,seed" summary.
std::string sigma_csv(const SigmaEstimate& estimate);

}  // namespace arns
