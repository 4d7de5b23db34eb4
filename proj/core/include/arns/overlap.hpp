#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arns/lg_mode.hpp"

namespace arns {

/// Gaussian acceptance mode of the single-mode fiber, imaged back onto the
/// SLM plane: G(r) = sqrt(2/pi) / W * exp(-r^2 / W^2).
struct SmfWeight {
  double mode_size = 750e-6;  ///< W, m

  double operator()(double r) const;
};

enum class ProbeConvention {
  Conjugate,  ///< integrand conj(probe) * target; matches when l' = l
  Direct,     ///< integrand probe * target; matches when l' = -l
};

struct QuadratureConfig {
  std::size_t radial_nodes = 256;
  std::size_t angular_nodes = 256;
  /// Largest accepted change between two successive node doublings.
  double tolerance = 1e-6;
  std::size_t max_radial_nodes = 8192;
  ProbeConvention convention = ProbeConvention::Conjugate;
};

/// Single-resolution tensor-product evaluation (no refinement). Radial
/// Gauss-Legendre in u = (r/s)^2 on [0, (r_max/s)^2], periodic trapezoid in
/// phi; s is the larger beam radius of the pair and r_max = 6 s sqrt(N_max).
std::complex<double> overlap_at(ModeIndex probe, ModeIndex target, const BeamGeometry& geom,
                                const std::optional<SmfWeight>& weight, std::size_t radial_nodes,
                                std::size_t angular_nodes, ProbeConvention convention);

/// Overlap integral with node doubling until two successive estimates agree
/// within cfg.tolerance. Throws QuadratureNotConverged past max_radial_nodes.
std::complex<double> overlap(ModeIndex probe, ModeIndex target, const BeamGeometry& geom,
                             const std::optional<SmfWeight>& weight,
                             const QuadratureConfig& cfg = {});

enum class OverlapNormalization {
  Raw,
  /// Divide by sqrt(<a|a><b|b>) under the same weight.
  SelfNormalized,
};

class OverlapMatrix {
 public:
  OverlapMatrix(std::vector<ModeIndex> probes, std::vector<ModeIndex> targets);

  std::size_t rows() const noexcept { return probes_.size(); }
  std::size_t cols() const noexcept { return targets_.size(); }
  const std::vector<ModeIndex>& probes() const noexcept { return probes_; }
  const std::vector<ModeIndex>& targets() const noexcept { return targets_; }

  std::complex<double>& operator()(std::size_t i, std::size_t j) { return entries_[i * cols() + j]; }
  const std::complex<double>& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols() + j];
  }

  double mag2(std::size_t i, std::size_t j) const { return std::norm((*this)(i, j)); }
  /// |entry|^2 divided by the largest |entry|^2 of its row.
  std::vector<double> row_normalized_mag2() const;

 private:
  std::vector<ModeIndex> probes_;
  std::vector<ModeIndex> targets_;
  std::vector<std::complex<double>> entries_;
};

OverlapMatrix orthogonality_matrix(std::span<const ModeIndex> probes,
                                   std::span<const ModeIndex> targets, const BeamGeometry& geom,
                                   const std::optional<SmfWeight>& weight,
                                   const QuadratureConfig& cfg = {},
                                   OverlapNormalization normalization = OverlapNormalization::Raw);

/// probe_L,probe_P,target_L,target_P,re,im,mag2[,mag2_row_norm]
std::string overlap_matrix_csv(const OverlapMatrix& m, bool include_row_normalized = true);

}  // namespace arns
