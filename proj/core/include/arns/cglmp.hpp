#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arns/level_set.hpp"
#include "arns/state.hpp"

namespace arns {

/// Local-realistic bound of the CGLMP expression.
inline constexpr double kLocalBound = 2.0;

struct CglmpResult {
  std::size_t d = 0;
  double S = 0.0;
  /// Weighted contribution of each k = 0 .. floor(d/2) - 1; sums to S.
  std::vector<double> terms;
  /// Tables for (a, b) = (0,0), (0,1), (1,0), (1,1).
  std::vector<JointProbabilityTable> tables;
  std::optional<double> uncertainty;
};

/// CGLMP combination of four (a, b) tables, A1, A2 = a 0, 1 and B1, B2 = b 0, 1:
///   S = sum_k (1 - 2k/(d-1)) { P(A1=B1+k) + P(B1=A2+k+1) + P(A2=B2+k) + P(B2=A1+k)
///                            - P(A1=B1-k-1) - P(B1=A2-k) - P(A2=B2-k-1) - P(B2=A1-k-1) }
/// with all outcome arithmetic mod d. `tables` must hold exactly the four
/// settings, in any order.
CglmpResult cglmp_from_tables(std::span<const JointProbabilityTable> tables);

CglmpResult cglmp_s(const ArnsState& state, const PhaseOffsets& offsets = {});

struct MesBound {
  int d;
  double S;
};

/// S of the maximally non-separable state for every d in [d_min, d_max].
std::vector<MesBound> mes_bound_scan(int d_min = 2, int d_max = 10);

struct SurfaceOptions {
  VisibilityOptions visibility{};
  double s_level = kLocalBound;
  double v_level = 0.70710678118654752440;  // 1/sqrt(2)
};

/// S(eps0, eps1) and V(eps0, eps1) for the three-term state on
/// eps_k = k / (n - 1); samples off the simplex are NaN.
struct SurfaceGrid {
  std::size_t resolution = 0;
  ScalarGrid S;
  ScalarGrid V;
  std::vector<Polyline> s_boundary;
  std::vector<Polyline> v_boundary;
  double s_level = kLocalBound;
  double v_level = 0.0;

  /// Sampled area (points times cell area) with S >= s_level / V >= v_level.
  double area_s_above() const;
  double area_v_above() const;
  /// Grid sample of largest S.
  Point2 argmax_s() const;
  double cell() const { return 1.0 / static_cast<double>(resolution - 1); }
};

/// Throws ResolutionTooLow below 16 samples per axis.
SurfaceGrid separability_surface(std::size_t resolution, const SurfaceOptions& options = {});

/// d,S,term_0,...  (one row per scan entry, terms padded to the widest row)
std::string cglmp_scan_csv(std::span<const CglmpResult> results);
/// eps0,eps1,S,V over simplex samples.
std::string surface_csv(const SurfaceGrid& surface);
/// line,eps0,eps1 ordered along each polyline.
std::string polyline_csv(std::span<const Polyline> lines);

}  // namespace arns
