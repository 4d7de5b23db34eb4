#include "arns/lg_mode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "arns/error.hpp"

namespace arns {

namespace {

constexpr double kPi = std::numbers::pi;

// sqrt(2 p! / (pi (p + |l|)!)) through log-gamma so large indices stay finite.
double normalization(ModeIndex mode) {
  const double log_norm = std::log(2.0) + std::lgamma(mode.p + 1.0) - std::log(kPi) -
                          std::lgamma(mode.p + mode.abs_l() + 1.0);
  return std::exp(0.5 * log_norm);
}

void require_mode(ModeIndex mode) {
  if (!mode.valid()) {
    std::ostringstream msg;
    msg << "radial index must be non-negative, got p=" << mode.p;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

}  // namespace

void BeamGeometry::validate() const {
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
    throw Error(ErrorCode::InvalidArgument, "wavelength must be positive");
  }
  if (!(base_waist > 0.0) || !std::isfinite(base_waist)) {
    throw Error(ErrorCode::InvalidArgument, "base waist must be positive");
  }
  if (!std::isfinite(z)) {
    throw Error(ErrorCode::InvalidArgument, "propagation distance must be finite");
  }
}

double laguerre_poly(int p, int alpha, double x) {
  if (p <= 0) return 1.0;
  const double a = alpha;
  double prev = 1.0;
  double curr = 1.0 + a - x;
  for (int k = 1; k < p; ++k) {
    const double next = ((2.0 * k + 1.0 + a - x) * curr - (k + a) * prev) / (k + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

double effective_waist(ModeIndex mode, const BeamGeometry& geom) {
  if (geom.waist_mode == WaistMode::Standard) return geom.base_waist;
  return geom.base_waist / std::sqrt(static_cast<double>(mode.order()));
}

double rayleigh_range(ModeIndex mode, const BeamGeometry& geom) {
  const double w0 = effective_waist(mode, geom);
  return kPi * w0 * w0 / geom.wavelength;
}

double beam_radius(ModeIndex mode, const BeamGeometry& geom, double z) {
  const double ratio = z / rayleigh_range(mode, geom);
  return effective_waist(mode, geom) * std::sqrt(1.0 + ratio * ratio);
}

double mode_footprint(ModeIndex mode, const BeamGeometry& geom, double z) {
  return beam_radius(mode, geom, z) * std::sqrt(static_cast<double>(mode.order()));
}

std::complex<double> radial_profile(ModeIndex mode, const BeamGeometry& geom, double r, double z) {
  require_mode(mode);
  const double zr = rayleigh_range(mode, geom);
  const double w = beam_radius(mode, geom, z);
  const int al = mode.abs_l();
  const double rho = std::sqrt(2.0) * r / w;
  const double amplitude = normalization(mode) / w * std::pow(rho, al) *
                           laguerre_poly(mode.p, al, rho * rho) * std::exp(-r * r / (w * w));
  const double k = 2.0 * kPi / geom.wavelength;
  const double curvature = -k * r * r * z / (2.0 * (z * z + zr * zr));
  const double gouy = (2.0 * mode.p + al + 1.0) * std::atan(z / zr);
  return std::polar(amplitude, curvature + gouy);
}

std::complex<double> lg_field(ModeIndex mode, const BeamGeometry& geom, double r, double phi,
                              double z) {
  return radial_profile(mode, geom, r, z) * std::polar(1.0, mode.l * phi);
}

std::complex<double> lg_field(ModeIndex mode, const BeamGeometry& geom, double r, double phi) {
  return lg_field(mode, geom, r, phi, geom.z);
}

std::vector<double> radial_nodes(ModeIndex mode, const BeamGeometry& geom, double z) {
  require_mode(mode);
  std::vector<double> roots;
  if (mode.p == 0) return roots;
  const int al = mode.abs_l();
  // All zeros of L_p^alpha lie below 4p + 2 alpha + 2.
  const double x_hi = 4.0 * mode.p + 2.0 * al + 10.0;
  const double step = 1e-3;
  double x0 = 0.0;
  double f0 = laguerre_poly(mode.p, al, x0);
  for (double x1 = step; x1 <= x_hi && static_cast<int>(roots.size()) < mode.p; x1 += step) {
    const double f1 = laguerre_poly(mode.p, al, x1);
    if ((f0 < 0.0) != (f1 < 0.0)) {
      double lo = x0;
      double hi = x1;
      for (int it = 0; it < 100 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((laguerre_poly(mode.p, al, mid) < 0.0) == (f0 < 0.0)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  const double w = beam_radius(mode, geom, z);
  for (auto& x : roots) x = w * std::sqrt(x / 2.0);
  return roots;
}

double outermost_ring_width(ModeIndex mode, const BeamGeometry& geom, double z) {
  const auto nodes = radial_nodes(mode, geom, z);
  if (nodes.empty()) return beam_radius(mode, geom, z);
  if (nodes.size() == 1) return nodes.front();
  return nodes.back() - nodes[nodes.size() - 2];
}

double default_extent(std::span<const ModeTerm> terms, const BeamGeometry& geom) {
  double footprint = 0.0;
  for (const auto& t : terms) footprint = std::max(footprint, mode_footprint(t.mode, geom, geom.z));
  return 4.0 * footprint;
}

SampledField render_field(std::span<const ModeTerm> terms, const BeamGeometry& geom,
                          const RenderOptions& options) {
  geom.validate();
  std::vector<ModeTerm> active;
  for (const auto& t : terms) {
    require_mode(t.mode);
    if (std::abs(t.coefficient) > 0.0) active.push_back(t);
  }
  if (active.empty()) {
    throw Error(ErrorCode::EmptyState, "superposition has no non-zero coefficient");
  }

  const double extent = options.extent.value_or(default_extent(active, geom));
  SampledField field(options.resolution, extent);
  const double dx = field.spacing();

  for (const auto& t : active) {
    const double ring = outermost_ring_width(t.mode, geom, geom.z);
    if (ring / dx < options.min_samples_per_ring) {
      std::ostringstream msg;
      msg << "mode (" << t.mode.l << "," << t.mode.p << ") ring width " << ring << " m spans "
          << ring / dx << " samples, need " << options.min_samples_per_ring;
      throw Error(ErrorCode::GridTooCoarse, msg.str());
    }
  }

  const std::size_t n = field.resolution();
  for (std::size_t row = 0; row < n; ++row) {
    const double y = field.coord(row);
    for (std::size_t col = 0; col < n; ++col) {
      const double x = field.coord(col);
      const double r = std::hypot(x, y);
      const double phi = std::atan2(y, x);
      std::complex<double> sum{};
      for (const auto& t : active) sum += t.coefficient * lg_field(t.mode, geom, r, phi, geom.z);
      field(row, col) = sum;
    }
  }
  return field;
}

}  // namespace arns
