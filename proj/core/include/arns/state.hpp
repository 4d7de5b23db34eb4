#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "arns/lg_mode.hpp"
#include "arns/overlap.hpp"

namespace arns {

inline constexpr std::size_t kMaxDimension = 16;

/// d-term angular-radial superposition sum_j c_j |j>_L |j>_P.
///
/// Coefficients are renormalized to unit norm on construction. Term j is
/// carried by modes()[j], (l = j, p = j) unless overridden.
class ArnsState {
 public:
  /// Throws DimensionOutOfRange for d outside [2, max_dimension] and
  /// EmptyState when every coefficient vanishes.
  explicit ArnsState(std::vector<std::complex<double>> coefficients,
                     std::vector<ModeIndex> modes = {},
                     std::size_t max_dimension = kMaxDimension);

  std::size_t dimension() const noexcept { return coefficients_.size(); }
  std::span<const std::complex<double>> coefficients() const noexcept { return coefficients_; }
  std::span<const ModeIndex> modes() const noexcept { return modes_; }

  std::vector<ModeTerm> terms() const;

 private:
  std::vector<std::complex<double>> coefficients_;
  std::vector<ModeIndex> modes_;
};

/// Uniform 1/sqrt(d) superposition.
ArnsState make_mes(int d);

/// sqrt(eps0)|00> + sqrt(eps1)|11> + sqrt(1 - eps0 - eps1)|22>; throws
/// ConstraintViolated off the simplex.
ArnsState make_eps_state(double eps0, double eps1);

/// Single-term state of dimension d with all weight on term `index`.
ArnsState make_product_state(int d, int index = 0);

enum class Party { Angular, Radial };

struct AnalyzerSetting {
  Party party = Party::Angular;
  int label = 0;    ///< a or b, in {0, 1}
  int outcome = 0;  ///< v or w, in [0, d)
  double phase_offset = 0.0;

  /// theta_L = 2pi/d (v + a/2), theta_P = 2pi/d (-w + (-1)^b / 4), plus offset.
  double theta(std::size_t d) const;
};

struct PhaseOffsets {
  double angular = 0.0;
  double radial = 0.0;
};

class JointProbabilityTable {
 public:
  JointProbabilityTable(std::size_t d, int a, int b);

  std::size_t dimension() const noexcept { return d_; }
  int a() const noexcept { return a_; }
  int b() const noexcept { return b_; }

  double& operator()(std::size_t v, std::size_t w) { return p_[v * d_ + w]; }
  double operator()(std::size_t v, std::size_t w) const { return p_[v * d_ + w]; }
  std::span<double> entries() noexcept { return p_; }
  std::span<const double> entries() const noexcept { return p_; }
  double sum() const;

  /// P(A = B + k mod d) = sum_j P(v = j + k, w = j).
  double prob_a_equals_b_plus(int k) const;
  /// P(B = A + k mod d) = sum_j P(v = j, w = j + k).
  double prob_b_equals_a_plus(int k) const;

 private:
  std::size_t d_;
  int a_;
  int b_;
  std::vector<double> p_;
};

/// P(v, w) = |1/d sum_j c_j exp(-i j (theta_L^a(v) + theta_P^b(w)))|^2.
JointProbabilityTable joint_probability(const ArnsState& state, int a, int b,
                                        const PhaseOffsets& offsets = {});

struct FringePoint {
  double phase;
  double intensity;
};

/// Intensity d |1/d sum_j c_j exp(i j (theta_L + theta_P))|^2 as theta_P is
/// scanned with theta_L fixed; the maximally non-separable state peaks at 1.
std::vector<FringePoint> fringe_scan(const ArnsState& state, double fixed_angular_phase,
                                     std::span<const double> scan_phases,
                                     const PhaseOffsets& offsets = {});

/// n equally spaced phases on [0, 2 pi).
std::vector<double> uniform_phases(std::size_t n);

/// (I_max - I_min) / (I_max + I_min); 0 for a dark curve.
double fringe_visibility(std::span<const FringePoint> curve);
double fringe_visibility(std::span<const double> intensities);

/// Visibility of the least-squares trigonometric fit with harmonics up to
/// max_harmonic to intensities sampled on uniform_phases(n); extrema of the
/// fitted curve are polished by golden-section search. A d-term state's
/// fringe holds harmonics up to d - 1 only, so for noiseless curves with
/// n > 2(d - 1) this equals the continuous-curve visibility.
double fitted_visibility(std::span<const double> intensities, std::size_t max_harmonic);

struct FittedFringe {
  double phase_min;
  double phase_max;
  double min;
  double max;
  double visibility;
};

/// Harmonic fit as in fitted_visibility, also reporting where the extrema sit.
FittedFringe fit_fringe(std::span<const double> intensities, std::size_t max_harmonic);

/// Contrast of the harmonic fit evaluated at given phases rather than at its
/// own extrema. Linear in the data up to the final ratio, so Poisson noise
/// leaves it unbiased to first order even when extrema are degenerate.
double fitted_visibility_at(std::span<const double> intensities, std::size_t max_harmonic,
                            double phase_min, double phase_max);

struct VisibilityOptions {
  std::size_t scan_points = 720;
  /// Fixed angular phases tried; the largest resulting visibility is reported.
  std::vector<double> fixed_phases = {0.0};
  /// Polish the sampled minimum and maximum on the continuous curve.
  bool refine_extrema = true;
};

double state_visibility(const ArnsState& state, const VisibilityOptions& options = {});

struct IdealModel {};
struct PhysicalModel {
  BeamGeometry geometry{780e-9, 1000e-6, 0.0, WaistMode::Revised};
  std::optional<SmfWeight> weight = SmfWeight{750e-6};
  QuadratureConfig quadrature{};
};
using DecompositionModel = std::variant<IdealModel, PhysicalModel>;

/// d x d projection powers I_ij and the derived power visibility.
class DecompositionDensity {
 public:
  explicit DecompositionDensity(std::size_t d);

  std::size_t dimension() const noexcept { return d_; }
  double& operator()(std::size_t i, std::size_t j) { return power_[i * d_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return power_[i * d_ + j]; }
  std::span<const double> powers() const noexcept { return power_; }
  std::span<double> powers() noexcept { return power_; }

  /// sum_i I_ii / sum_ij I_ij.
  double power_visibility() const;
  std::vector<double> row_normalized() const;

 private:
  std::size_t d_;
  std::vector<double> power_;
};

double power_visibility(std::span<const double> powers, std::size_t d);

/// Projections <m|_L <j|_P onto the state, m and j ranging over the state's
/// mode map: I_mj = |<(l_m, p_j)|psi>|^2.
DecompositionDensity modal_decomposition(const ArnsState& state, const DecompositionModel& model);

/// Single-mode inputs: row i holds |<probe_j|input_i>|^2 for the family.
DecompositionDensity decompose_family(std::span<const ModeIndex> family,
                                      const DecompositionModel& model);

std::string fringe_csv(std::span<const FringePoint> curve);
std::string probability_table_csv(std::span<const JointProbabilityTable> tables);
std::string decomposition_csv(const DecompositionDensity& density);

}  // namespace arns
