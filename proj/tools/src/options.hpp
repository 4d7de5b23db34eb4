#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arns/lg_mode.hpp"
#include "arns/overlap.hpp"
#include "arns/state.hpp"

namespace arns::cli {

/// Rejected flag value; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& flag, const std::string& message)
      : std::runtime_error(flag + ": " + message) {}
};

/// Length option in meters; accepts a trailing m, mm, um or nm.
CLI::Option* add_length(CLI::App& app, const std::string& name, double& target,
                        const std::string& description);

struct GeometryArgs {
  double wavelength = 780e-9;
  double waist = 2e-3;
  double z = 0.0;
  std::string waist_mode = "standard";

  BeamGeometry build() const;
};
void add_geometry(CLI::App& app, GeometryArgs& args);

struct FiberArgs {
  double mode_size = 750e-6;  ///< 0 disables the weight

  std::optional<SmfWeight> build() const;
};
void add_fiber(CLI::App& app, FiberArgs& args);

struct QuadratureArgs {
  std::size_t radial_nodes = 256;
  std::size_t angular_nodes = 256;
  double tolerance = 1e-6;
  std::size_t max_radial_nodes = 8192;
  std::string convention = "conjugate";

  QuadratureConfig build() const;
};
void add_quadrature(CLI::App& app, QuadratureArgs& args);

struct StateArgs {
  std::string kind = "mes";
  int d = 3;
  int index = 0;
  double eps0 = 1.0 / 3.0;
  double eps1 = 1.0 / 3.0;
  std::string coeffs;
  std::string modes;

  ArnsState build() const;
  /// Superposition terms; a custom list may hold a single mode.
  std::vector<ModeTerm> build_terms() const;
};
void add_state(CLI::App& app, StateArgs& args, int default_d);

/// "L:P,L:P,..." into mode indices.
std::vector<ModeIndex> parse_modes(const std::string& flag, const std::string& text);
/// "re[:im],..." into complex coefficients.
std::vector<std::complex<double>> parse_coeffs(const std::string& flag, const std::string& text);

void require_positive(const std::string& flag, double value);
void require_at_least(const std::string& flag, const std::string& name, long long value,
                      long long bound);

}  // namespace arns::cli
