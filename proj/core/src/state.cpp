#include "arns/state.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

#include "arns/error.hpp"

namespace arns {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_label(int label, const char* name) {
  if (label != 0 && label != 1) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " setting label must be 0 or 1");
  }
}

}  // namespace

ArnsState::ArnsState(std::vector<std::complex<double>> coefficients, std::vector<ModeIndex> modes,
                     std::size_t max_dimension)
    : coefficients_(std::move(coefficients)), modes_(std::move(modes)) {
  const std::size_t d = coefficients_.size();
  if (d < 2 || d > max_dimension) {
    std::ostringstream msg;
    msg << "dimension " << d << " outside [2, " << max_dimension << "]";
    throw Error(ErrorCode::DimensionOutOfRange, msg.str());
  }
  double norm2 = 0.0;
  for (const auto& c : coefficients_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorCode::InvalidArgument, "state coefficients must be finite");
    }
    norm2 += std::norm(c);
  }
  if (norm2 == 0.0) throw Error(ErrorCode::EmptyState, "all state coefficients are zero");
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& c : coefficients_) c *= scale;

  if (modes_.empty()) {
    for (std::size_t j = 0; j < d; ++j) {
      modes_.push_back({static_cast<int>(j), static_cast<int>(j)});
    }
  } else if (modes_.size() != d) {
    throw Error(ErrorCode::InvalidArgument, "mode map size must equal the state dimension");
  }
  for (const auto& m : modes_) {
    if (!m.valid()) throw Error(ErrorCode::InvalidArgument, "mode map has negative radial index");
  }
}

std::vector<ModeTerm> ArnsState::terms() const {
  std::vector<ModeTerm> out;
  for (std::size_t j = 0; j < dimension(); ++j) out.push_back({modes_[j], coefficients_[j]});
  return out;
}

ArnsState make_mes(int d) {
  if (d < 2 || d > static_cast<int>(kMaxDimension)) {
    std::ostringstream msg;
    msg << "dimension " << d << " outside [2, " << kMaxDimension << "]";
    throw Error(ErrorCode::DimensionOutOfRange, msg.str());
  }
  return ArnsState(std::vector<std::complex<double>>(d, 1.0 / std::sqrt(static_cast<double>(d))));
}

ArnsState make_eps_state(double eps0, double eps1) {
  constexpr double slack = 1e-12;
  if (!(eps0 >= 0.0) || !(eps1 >= 0.0) || !(eps0 + eps1 <= 1.0 + slack)) {
    std::ostringstream msg;
    msg << "(eps0, eps1) = (" << eps0 << ", " << eps1 << ") leaves the simplex";
    throw Error(ErrorCode::ConstraintViolated, msg.str());
  }
  const double eps2 = std::max(0.0, 1.0 - eps0 - eps1);
  return ArnsState({std::sqrt(eps0), std::sqrt(eps1), std::sqrt(eps2)});
}

ArnsState make_product_state(int d, int index) {
  if (d < 2 || d > static_cast<int>(kMaxDimension)) {
    std::ostringstream msg;
    msg << "dimension " << d << " outside [2, " << kMaxDimension << "]";
    throw Error(ErrorCode::DimensionOutOfRange, msg.str());
  }
  if (index < 0 || index >= d) throw Error(ErrorCode::InvalidArgument, "product term out of range");
  std::vector<std::complex<double>> c(d, 0.0);
  c[index] = 1.0;
  return ArnsState(std::move(c));
}

double AnalyzerSetting::theta(std::size_t d) const {
  const double unit = kTwoPi / static_cast<double>(d);
  if (party == Party::Angular) return unit * (outcome + 0.5 * label) + phase_offset;
  const double quarter = label == 0 ? 0.25 : -0.25;
  return unit * (-outcome + quarter) + phase_offset;
}

JointProbabilityTable::JointProbabilityTable(std::size_t d, int a, int b)
    : d_(d), a_(a), b_(b), p_(d * d, 0.0) {}

double JointProbabilityTable::sum() const {
  double s = 0.0;
  for (double v : p_) s += v;
  return s;
}

double JointProbabilityTable::prob_a_equals_b_plus(int k) const {
  const auto d = static_cast<int>(d_);
  const int shift = ((k % d) + d) % d;
  double s = 0.0;
  for (int j = 0; j < d; ++j) s += (*this)((j + shift) % d, j);
  return s;
}

double JointProbabilityTable::prob_b_equals_a_plus(int k) const {
  const auto d = static_cast<int>(d_);
  const int shift = ((k % d) + d) % d;
  double s = 0.0;
  for (int j = 0; j < d; ++j) s += (*this)(j, (j + shift) % d);
  return s;
}

JointProbabilityTable joint_probability(const ArnsState& state, int a, int b,
                                        const PhaseOffsets& offsets) {
  require_label(a, "angular");
  require_label(b, "radial");
  const std::size_t d = state.dimension();
  const auto c = state.coefficients();
  JointProbabilityTable table(d, a, b);
  for (std::size_t v = 0; v < d; ++v) {
    const double theta_l =
        AnalyzerSetting{Party::Angular, a, static_cast<int>(v), offsets.angular}.theta(d);
    for (std::size_t w = 0; w < d; ++w) {
      const double theta_p =
          AnalyzerSetting{Party::Radial, b, static_cast<int>(w), offsets.radial}.theta(d);
      std::complex<double> amp{};
      for (std::size_t j = 0; j < d; ++j) {
        amp += c[j] * std::polar(1.0, -static_cast<double>(j) * (theta_l + theta_p));
      }
      table(v, w) = std::norm(amp / static_cast<double>(d));
    }
  }
  return table;
}

std::vector<FringePoint> fringe_scan(const ArnsState& state, double fixed_angular_phase,
                                     std::span<const double> scan_phases,
                                     const PhaseOffsets& offsets) {
  const std::size_t d = state.dimension();
  const auto c = state.coefficients();
  const double dd = static_cast<double>(d);
  std::vector<FringePoint> curve;
  curve.reserve(scan_phases.size());
  for (double theta_p : scan_phases) {
    const double total = fixed_angular_phase + offsets.angular + theta_p + offsets.radial;
    std::complex<double> amp{};
    for (std::size_t j = 0; j < d; ++j) {
      amp += c[j] * std::polar(1.0, static_cast<double>(j) * total);
    }
    curve.push_back({theta_p, dd * std::norm(amp / dd)});
  }
  return curve;
}

std::vector<double> uniform_phases(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
  return out;
}

double fringe_visibility(std::span<const double> intensities) {
  if (intensities.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(intensities.begin(), intensities.end());
  const double denom = *hi + *lo;
  return denom > 0.0 ? (*hi - *lo) / denom : 0.0;
}

double fringe_visibility(std::span<const FringePoint> curve) {
  std::vector<double> values;
  values.reserve(curve.size());
  for (const auto& p : curve) values.push_back(p.intensity);
  return fringe_visibility(values);
}

namespace {

double fringe_at(const ArnsState& state, double fixed, double phase) {
  const double p[1] = {phase};
  return fringe_scan(state, fixed, p)[0].intensity;
}

// Golden-section search for the extremum of f bracketed by [lo, hi].
// Returns {argument, value}.
template <class F>
std::pair<double, double> golden_argextremum(const F& f, double lo, double hi, bool maximum) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  const double sign = maximum ? -1.0 : 1.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = sign * f(c), fd = sign * f(d);
  for (int it = 0; it < 80 && b - a > 1e-14; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = sign * f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = sign * f(d);
    }
  }
  return fc < fd ? std::pair{c, sign * fc} : std::pair{d, sign * fd};
}

template <class F>
double golden_extremum(const F& f, double lo, double hi, bool maximum) {
  return golden_argextremum(f, lo, hi, maximum).second;
}

}  // namespace

namespace {

std::vector<std::complex<double>> harmonic_coefficients(std::span<const double> intensities,
                                                        std::size_t max_harmonic) {
  const std::size_t n = intensities.size();
  if (n < 2 * max_harmonic + 1) {
    throw Error(ErrorCode::InvalidArgument, "too few fringe samples for the harmonic fit");
  }
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  std::vector<std::complex<double>> a(max_harmonic + 1);
  for (std::size_t m = 0; m <= max_harmonic; ++m) {
    std::complex<double> acc{};
    for (std::size_t k = 0; k < n; ++k) {
      acc += intensities[k] * std::polar(1.0, -static_cast<double>(m * k % n) * step);
    }
    a[m] = acc / static_cast<double>(n);
  }
  return a;
}

double harmonic_value(const std::vector<std::complex<double>>& a, double theta) {
  double v = a[0].real();
  for (std::size_t m = 1; m < a.size(); ++m) {
    v += 2.0 * (a[m] * std::polar(1.0, static_cast<double>(m) * theta)).real();
  }
  return v;
}

double contrast(double hi, double lo) { return hi + lo > 0.0 ? (hi - lo) / (hi + lo) : 0.0; }

}  // namespace

FittedFringe fit_fringe(std::span<const double> intensities, std::size_t max_harmonic) {
  const auto a = harmonic_coefficients(intensities, max_harmonic);
  const std::size_t n = intensities.size();
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  const auto fit = [&](double theta) { return harmonic_value(a, theta); };
  std::size_t imin = 0, imax = 0;
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = fit(static_cast<double>(k) * step);
    if (values[k] < values[imin]) imin = k;
    if (values[k] > values[imax]) imax = k;
  }
  FittedFringe out{static_cast<double>(imin) * step, static_cast<double>(imax) * step, values[imin],
                   values[imax], 0.0};
  const auto [amin, vmin] = golden_argextremum(fit, (imin - 1.0) * step, (imin + 1.0) * step, false);
  if (vmin < out.min) out = {amin, out.phase_max, vmin, out.max, 0.0};
  const auto [amax, vmax] = golden_argextremum(fit, (imax - 1.0) * step, (imax + 1.0) * step, true);
  if (vmax > out.max) {
    out.phase_max = amax;
    out.max = vmax;
  }
  out.visibility = contrast(out.max, out.min);
  return out;
}

double fitted_visibility(std::span<const double> intensities, std::size_t max_harmonic) {
  return fit_fringe(intensities, max_harmonic).visibility;
}

double fitted_visibility_at(std::span<const double> intensities, std::size_t max_harmonic,
                            double phase_min, double phase_max) {
  const auto a = harmonic_coefficients(intensities, max_harmonic);
  return contrast(harmonic_value(a, phase_max), harmonic_value(a, phase_min));
}

double state_visibility(const ArnsState& state, const VisibilityOptions& options) {
  const auto phases = uniform_phases(options.scan_points);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(phases.size());
  double best = 0.0;
  for (double fixed : options.fixed_phases) {
    const auto curve = fringe_scan(state, fixed, phases);
    if (!options.refine_extrema) {
      best = std::max(best, fringe_visibility(curve));
      continue;
    }
    const auto at = [&](double phase) { return fringe_at(state, fixed, phase); };
    std::size_t imin = 0, imax = 0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
      if (curve[i].intensity < curve[imin].intensity) imin = i;
      if (curve[i].intensity > curve[imax].intensity) imax = i;
    }
    const double lo = std::min(curve[imin].intensity,
                               golden_extremum(at, phases[imin] - step, phases[imin] + step, false));
    const double hi = std::max(curve[imax].intensity,
                               golden_extremum(at, phases[imax] - step, phases[imax] + step, true));
    const double v = hi + lo > 0.0 ? (hi - std::max(lo, 0.0)) / (hi + std::max(lo, 0.0)) : 0.0;
    best = std::max(best, v);
  }
  return best;
}

DecompositionDensity::DecompositionDensity(std::size_t d) : d_(d), power_(d * d, 0.0) {}

double power_visibility(std::span<const double> powers, std::size_t d) {
  double diag = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      total += powers[i * d + j];
      if (i == j) diag += powers[i * d + j];
    }
  }
  return total > 0.0 ? diag / total : 0.0;
}

double DecompositionDensity::power_visibility() const { return arns::power_visibility(power_, d_); }

std::vector<double> DecompositionDensity::row_normalized() const {
  std::vector<double> out(power_.size(), 0.0);
  for (std::size_t i = 0; i < d_; ++i) {
    double row_max = 0.0;
    for (std::size_t j = 0; j < d_; ++j) row_max = std::max(row_max, (*this)(i, j));
    if (row_max <= 0.0) continue;
    for (std::size_t j = 0; j < d_; ++j) out[i * d_ + j] = (*this)(i, j) / row_max;
  }
  return out;
}

namespace {

// Projection amplitude <probe|target> under the model; physical amplitudes
// are normalized by both modes' self-overlaps under the same weight.
class Projector {
 public:
  explicit Projector(const DecompositionModel& model) : model_(model) {}

  std::complex<double> operator()(ModeIndex probe, ModeIndex target) {
    if (std::holds_alternative<IdealModel>(model_)) {
      return probe == target ? 1.0 : 0.0;
    }
    const auto& phys = std::get<PhysicalModel>(model_);
    QuadratureConfig cfg = phys.quadrature;
    cfg.convention = ProbeConvention::Conjugate;
    const auto raw = overlap(probe, target, phys.geometry, phys.weight, cfg);
    return raw / std::sqrt(self_norm(probe, phys, cfg) * self_norm(target, phys, cfg));
  }

 private:
  double self_norm(ModeIndex m, const PhysicalModel& phys, const QuadratureConfig& cfg) {
    const auto key = std::make_pair(m.l, m.p);
    if (auto it = norms_.find(key); it != norms_.end()) return it->second;
    const double n = std::abs(overlap(m, m, phys.geometry, phys.weight, cfg));
    norms_.emplace(key, n);
    return n;
  }

  const DecompositionModel& model_;
  std::map<std::pair<int, int>, double> norms_;
};

}  // namespace

DecompositionDensity modal_decomposition(const ArnsState& state, const DecompositionModel& model) {
  const std::size_t d = state.dimension();
  const auto modes = state.modes();
  const auto c = state.coefficients();
  Projector project(model);
  DecompositionDensity density(d);
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t j = 0; j < d; ++j) {
      const ModeIndex probe{modes[m].l, modes[j].p};
      std::complex<double> amp{};
      for (std::size_t n = 0; n < d; ++n) {
        if (c[n] == 0.0) continue;
        amp += c[n] * project(probe, modes[n]);
      }
      density(m, j) = std::norm(amp);
    }
  }
  return density;
}

DecompositionDensity decompose_family(std::span<const ModeIndex> family,
                                      const DecompositionModel& model) {
  if (family.empty()) throw Error(ErrorCode::InvalidArgument, "mode family is empty");
  Projector project(model);
  DecompositionDensity density(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = 0; j < family.size(); ++j) {
      density(i, j) = std::norm(project(family[j], family[i]));
    }
  }
  return density;
}

std::string fringe_csv(std::span<const FringePoint> curve) {
  std::ostringstream out;
  out << std::setprecision(17) << "theta_rad,intensity\n";
  for (const auto& p : curve) out << p.phase << "," << p.intensity << "\n";
  return out.str();
}

std::string probability_table_csv(std::span<const JointProbabilityTable> tables) {
  std::ostringstream out;
  out << std::setprecision(17) << "a,b,v,w,p\n";
  for (const auto& t : tables) {
    for (std::size_t v = 0; v < t.dimension(); ++v) {
      for (std::size_t w = 0; w < t.dimension(); ++w) {
        out << t.a() << "," << t.b() << "," << v << "," << w << "," << t(v, w) << "\n";
      }
    }
  }
  return out.str();
}

std::string decomposition_csv(const DecompositionDensity& density) {
  std::ostringstream out;
  out << std::setprecision(17) << "m,j,power,row_normalized\n";
  const auto norm = density.row_normalized();
  const std::size_t d = density.dimension();
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t j = 0; j < d; ++j) {
      out << m << "," << j << "," << density(m, j) << "," << norm[m * d + j] << "\n";
    }
  }
  return out.str();
}

}  // namespace arns
