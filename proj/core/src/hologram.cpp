#include "arns/hologram.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "arns/error.hpp"

namespace arns {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* plan) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

Plan make_plan(std::size_t n, std::vector<Complex>& buffer, int sign) {
  std::lock_guard lock(planner_mutex());
  auto* data = reinterpret_cast<fftw_complex*>(buffer.data());
  return Plan(fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), data, data, sign,
                               FFTW_ESTIMATE));
}

void transform(std::size_t n, std::vector<Complex>& buffer, int sign) {
  auto plan = make_plan(n, buffer, sign);
  fftw_execute(plan.get());
}

// Signed frequency of unshifted FFT bin k.
long signed_bin(std::size_t k, std::size_t n) {
  const auto kk = static_cast<long>(k);
  const auto nn = static_cast<long>(n);
  return kk <= nn / 2 ? kk : kk - nn;
}

std::size_t wrap_bin(long k, std::size_t n) {
  const auto nn = static_cast<long>(n);
  return static_cast<std::size_t>(((k % nn) + nn) % nn);
}

// Radius in bins enclosing `fraction` of the spectral energy around DC.
double spectral_radius(const std::vector<Complex>& spectrum, std::size_t n, double fraction) {
  std::vector<std::pair<double, double>> radial;
  radial.reserve(spectrum.size());
  double total = 0.0;
  for (std::size_t ky = 0; ky < n; ++ky) {
    for (std::size_t kx = 0; kx < n; ++kx) {
      const double e = std::norm(spectrum[ky * n + kx]);
      if (e == 0.0) continue;
      radial.emplace_back(std::hypot(static_cast<double>(signed_bin(kx, n)),
                                     static_cast<double>(signed_bin(ky, n))),
                          e);
      total += e;
    }
  }
  if (total == 0.0) return 0.0;
  std::sort(radial.begin(), radial.end());
  double acc = 0.0;
  for (const auto& [r, e] : radial) {
    acc += e;
    if (acc >= fraction * total) return r;
  }
  return radial.back().first;
}

}  // namespace

double sincinv(double a) {
  if (a <= 0.0) return -kPi;
  if (a >= 1.0) return 0.0;
  double lo = -kPi;  // sinc(lo) = 0 < a
  double hi = 0.0;   // sinc(hi) = 1 > a
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (sinc(mid) < a) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

SampledField normalize_to_peak(SampledField field) {
  const double peak = field.peak_amplitude();
  if (peak == 0.0) throw Error(ErrorCode::EmptyState, "cannot normalize a dark field");
  for (auto& s : field.samples()) s /= peak;
  return field;
}

Hologram encode(const SampledField& target, double grating_period, double pitch) {
  if (!(pitch > 0.0)) throw Error(ErrorCode::InvalidArgument, "pixel pitch must be positive");
  if (std::abs(pitch - target.spacing()) > 1e-9 * target.spacing()) {
    std::ostringstream msg;
    msg << "pixel pitch " << pitch << " m does not match target sample spacing "
        << target.spacing() << " m";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  if (!(grating_period >= 2.0 * pitch)) {
    std::ostringstream msg;
    msg << "grating period " << grating_period << " m is below two pixels (" << 2.0 * pitch
        << " m)";
    throw Error(ErrorCode::GratingUnresolvable, msg.str());
  }

  const std::size_t n = target.resolution();
  Hologram holo;
  holo.resolution = n;
  holo.pitch = pitch;
  holo.grating_period = grating_period;
  holo.phase.resize(n * n);
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      const Complex t = target(row, col);
      const double amplitude = std::abs(t);
      if (amplitude > 1.0 + 1e-9) {
        std::ostringstream msg;
        msg << "target amplitude " << amplitude << " at (" << row << "," << col
            << ") exceeds 1; normalize to peak first";
        throw Error(ErrorCode::AmplitudeOutOfRange, msg.str());
      }
      const double depth = 1.0 + sincinv(std::min(amplitude, 1.0)) / kPi;
      const double offset = std::arg(t) - kPi * depth;
      double carrier = std::fmod(offset + kTwoPi * target.coord(col) / grating_period, kTwoPi);
      if (carrier < 0.0) carrier += kTwoPi;
      double phi = depth * carrier;
      if (phi >= kTwoPi) phi = 0.0;
      holo.phase[row * n + col] = phi;
    }
  }
  return holo;
}

SampledField plane_wave(const Hologram& holo) {
  SampledField field(holo.resolution, 0.5 * holo.pitch * static_cast<double>(holo.resolution));
  for (auto& s : field.samples()) s = 1.0;
  return field;
}

SampledField reconstruct(const Hologram& holo, const SampledField& illumination,
                         const ReconstructOptions& options) {
  const std::size_t n = holo.resolution;
  if (illumination.resolution() != n ||
      std::abs(illumination.spacing() - holo.pitch) > 1e-9 * holo.pitch) {
    throw Error(ErrorCode::InvalidArgument, "illumination grid does not match the hologram");
  }

  // Grating frequency in bins: N * pitch / period.
  const double carrier_bins = static_cast<double>(n) * holo.pitch / holo.grating_period;
  const auto offset = static_cast<long>(std::lround(carrier_bins));
  const auto half = static_cast<long>(std::floor(options.window_half_width * carrier_bins));
  if (half < 1) {
    std::ostringstream msg;
    msg << "first-order window is " << options.window_half_width * carrier_bins
        << " bins wide; grating period too long for the field size";
    throw Error(ErrorCode::OrderOverlap, msg.str());
  }
  if (offset + half >= static_cast<long>(n / 2)) {
    throw Error(ErrorCode::OrderOverlap, "first-order window crosses the Nyquist edge");
  }

  std::vector<Complex> lit(illumination.samples().begin(), illumination.samples().end());
  transform(n, lit, FFTW_FORWARD);
  const double zero_order = spectral_radius(lit, n, options.bandwidth_energy);
  if (zero_order > static_cast<double>(offset - half)) {
    std::ostringstream msg;
    msg << "illumination spectrum radius " << zero_order << " bins reaches the first-order window at "
        << offset - half << " bins";
    throw Error(ErrorCode::OrderOverlap, msg.str());
  }

  std::vector<Complex> buffer(n * n);
  const auto src = illumination.samples();
  for (std::size_t i = 0; i < n * n; ++i) buffer[i] = src[i] * std::polar(1.0, holo.phase[i]);
  transform(n, buffer, FFTW_FORWARD);

  std::vector<Complex> window(n * n, Complex{});
  for (long ky = -half; ky <= half; ++ky) {
    for (long kx = -half; kx <= half; ++kx) {
      window[wrap_bin(ky, n) * n + wrap_bin(kx, n)] = buffer[wrap_bin(ky, n) * n + wrap_bin(kx + offset, n)];
    }
  }
  transform(n, window, FFTW_BACKWARD);

  // The window sits on the nearest integer bin; the ramp removes the
  // remaining fractional carrier so the order is recentered exactly.
  const double residual = carrier_bins - static_cast<double>(offset);
  SampledField out(n, illumination.extent());
  const double scale = 1.0 / static_cast<double>(n * n);
  auto dst = out.samples();
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      const double ramp = -kTwoPi * residual * static_cast<double>(col) / static_cast<double>(n);
      dst[row * n + col] = window[row * n + col] * scale * std::polar(1.0, ramp);
    }
  }
  return out;
}

}  // namespace arns
