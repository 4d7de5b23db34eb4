#include "arns/noise.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "arns/cglmp.hpp"
#include "arns/error.hpp"

namespace arns {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double evaluate_cglmp(const std::vector<JointProbabilityTable>& ideal, double scale,
                      std::mt19937_64& engine) {
  std::vector<JointProbabilityTable> noisy;
  noisy.reserve(ideal.size());
  for (const auto& t : ideal) {
    JointProbabilityTable copy = t;
    const auto drawn = poissonize(t.entries(), scale, engine);
    double total = 0.0;
    for (double v : drawn) total += v;
    auto dst = copy.entries();
    for (std::size_t i = 0; i < drawn.size(); ++i) dst[i] = total > 0.0 ? drawn[i] / total : 0.0;
    noisy.push_back(std::move(copy));
  }
  return cglmp_from_tables(noisy).S;
}

}  // namespace

void NoiseConfig::validate() const {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::InvalidArgument, "count scale must be positive");
  }
  if (n_resamples < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 resamples");
}

std::mt19937_64 resample_engine(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed + index * 0x9E3779B97F4A7C15ULL));
}

std::vector<double> poissonize(std::span<const double> intensities, double scale,
                               std::mt19937_64& engine) {
  std::vector<double> out;
  out.reserve(intensities.size());
  for (double value : intensities) {
    if (value < 0.0) throw Error(ErrorCode::InvalidArgument, "intensities must be non-negative");
    const double mean = value * scale;
    if (mean == 0.0) {
      out.push_back(0.0);
      continue;
    }
    std::poisson_distribution<long long> draw(mean);
    out.push_back(static_cast<double>(draw(engine)) / scale);
  }
  return out;
}

std::vector<double> poissonize(std::span<const double> intensities, const NoiseConfig& cfg) {
  cfg.validate();
  auto engine = resample_engine(cfg.seed, 0);
  return poissonize(intensities, cfg.scale, engine);
}

SigmaEstimate estimate_sigma(Quantity quantity, const ArnsState& state, const NoiseConfig& cfg,
                             const SigmaOptions& options) {
  cfg.validate();
  SigmaEstimate est;
  est.n = cfg.n_resamples;
  est.seed = cfg.seed;
  est.samples.reserve(cfg.n_resamples);

  std::vector<JointProbabilityTable> tables;
  std::vector<double> fringe;
  std::vector<double> powers;
  FittedFringe extrema{};
  std::size_t d = state.dimension();
  switch (quantity) {
    case Quantity::CglmpS: {
      const auto ideal = cglmp_s(state);
      tables = ideal.tables;
      est.noiseless = ideal.S;
      break;
    }
    case Quantity::Visibility: {
      // One fixed phase: the intensity set of a single measured scan.
      const double fixed = options.visibility.fixed_phases.empty() ? 0.0 : options.visibility.fixed_phases.front();
      for (const auto& p : fringe_scan(state, fixed, uniform_phases(options.visibility.scan_points))) {
        fringe.push_back(p.intensity);
      }
      extrema = fit_fringe(fringe, d - 1);
      est.noiseless = extrema.visibility;
      break;
    }
    case Quantity::PowerVisibility: {
      const auto density = modal_decomposition(state, options.decomposition);
      powers.assign(density.powers().begin(), density.powers().end());
      est.noiseless = density.power_visibility();
      break;
    }
  }

  for (std::size_t i = 0; i < cfg.n_resamples; ++i) {
    auto engine = resample_engine(cfg.seed, i);
    double value = 0.0;
    switch (quantity) {
      case Quantity::CglmpS: value = evaluate_cglmp(tables, cfg.scale, engine); break;
      case Quantity::Visibility:
        value = fitted_visibility_at(poissonize(fringe, cfg.scale, engine), d - 1, extrema.phase_min,
                                     extrema.phase_max);
        break;
      case Quantity::PowerVisibility: value = power_visibility(poissonize(powers, cfg.scale, engine), d); break;
    }
    est.samples.push_back(value);
  }

  double sum = 0.0;
  for (double v : est.samples) sum += v;
  est.mean = sum / static_cast<double>(est.n);
  double ss = 0.0;
  for (double v : est.samples) ss += (v - est.mean) * (v - est.mean);
  est.sigma = std::sqrt(ss / static_cast<double>(est.n - 1));
  return est;
}

std::string sigma_csv(const SigmaEstimate& estimate) {
  std::ostringstream out;
  out << std::setprecision(17) << "resample_index,value\n";
  for (std::size_t i = 0; i < estimate.samples.size(); ++i) {
    out << i << "," << estimate.samples[i] << "\n";
  }
  out << "# mean,sigma,n,seed\n# " << estimate.mean << "," << estimate.sigma << "," << estimate.n
      << "," << estimate.seed << "\n";
  return out.str();
}

}  // namespace arns
