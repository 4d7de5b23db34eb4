#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace arns {

using Complex = std::complex<double>;

/// Complex scalar field on a centered square grid.
///
/// Sample (row, col) sits at x = coord(col), y = coord(row) with
/// coord(i) = (i - N/2) * spacing and spacing = 2 * extent / N, so the
/// optical axis falls exactly on sample (N/2, N/2).
class SampledField {
 public:
  SampledField(std::size_t resolution, double extent);

  std::size_t resolution() const noexcept { return resolution_; }
  double extent() const noexcept { return extent_; }
  double spacing() const noexcept { return 2.0 * extent_ / static_cast<double>(resolution_); }
  double coord(std::size_t index) const noexcept;

  Complex& operator()(std::size_t row, std::size_t col) { return samples_[row * resolution_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return samples_[row * resolution_ + col];
  }

  std::span<Complex> samples() noexcept { return samples_; }
  std::span<const Complex> samples() const noexcept { return samples_; }

  /// Discrete power: sum of |E|^2 times the pixel area.
  double power() const;
  double peak_amplitude() const;

  /// Same grid geometry (resolution and extent).
  bool conformable(const SampledField& other) const noexcept;

 private:
  std::size_t resolution_;
  double extent_;
  std::vector<Complex> samples_;
};

/// |<a|b>| / (|a| |b|) over the shared grid; 0 when either field vanishes.
double normalized_correlation(const SampledField& a, const SampledField& b);

}  // namespace arns
