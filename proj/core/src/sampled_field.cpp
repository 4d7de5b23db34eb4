#include "arns/sampled_field.hpp"

#include <algorithm>
#include <cmath>

#include "arns/error.hpp"

namespace arns {

SampledField::SampledField(std::size_t resolution, double extent)
    : resolution_(resolution), extent_(extent) {
  if (resolution < 2) {
    throw Error(ErrorCode::InvalidArgument, "field resolution must be at least 2");
  }
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw Error(ErrorCode::InvalidArgument, "field extent must be positive");
  }
  samples_.assign(resolution * resolution, Complex{});
}

double SampledField::coord(std::size_t index) const noexcept {
  const auto half = static_cast<double>(resolution_ / 2);
  return (static_cast<double>(index) - half) * spacing();
}

double SampledField::power() const {
  double sum = 0.0;
  for (const auto& s : samples_) sum += std::norm(s);
  const double dx = spacing();
  return sum * dx * dx;
}

double SampledField::peak_amplitude() const {
  double peak = 0.0;
  for (const auto& s : samples_) peak = std::max(peak, std::abs(s));
  return peak;
}

bool SampledField::conformable(const SampledField& other) const noexcept {
  return resolution_ == other.resolution_ &&
         std::abs(extent_ - other.extent_) <= 1e-12 * std::max(extent_, other.extent_);
}

double normalized_correlation(const SampledField& a, const SampledField& b) {
  if (!a.conformable(b)) {
    throw Error(ErrorCode::InvalidArgument, "correlation requires conformable grids");
  }
  Complex inner{};
  double na = 0.0;
  double nb = 0.0;
  const auto sa = a.samples();
  const auto sb = b.samples();
  for (std::size_t i = 0; i < sa.size(); ++i) {
    inner += std::conj(sa[i]) * sb[i];
    na += std::norm(sa[i]);
    nb += std::norm(sb[i]);
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(inner) / std::sqrt(na * nb);
}

}  // namespace arns
