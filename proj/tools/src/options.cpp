#include "options.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "arns/error.hpp"

namespace arns::cli {

namespace {

const std::map<std::string, double> kLengthUnits{
    {"m", 1.0}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

double to_double(const std::string& flag, const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError(flag, "'" + s + "' is not a number");
  }
  if (used != s.size()) throw UsageError(flag, "'" + s + "' is not a number");
  return v;
}

int to_int(const std::string& flag, const std::string& s) {
  const double v = to_double(flag, s);
  if (v != std::floor(v)) throw UsageError(flag, "'" + s + "' is not an integer");
  return static_cast<int>(v);
}

}  // namespace

CLI::Option* add_length(CLI::App& app, const std::string& name, double& target,
                        const std::string& description) {
  return app.add_option(name, target, description + " [length, m; suffixes m, mm, um, nm]")
      ->transform(CLI::AsNumberWithUnit(kLengthUnits, CLI::AsNumberWithUnit::CASE_SENSITIVE))
      ->capture_default_str();
}

BeamGeometry GeometryArgs::build() const {
  require_positive("--wavelength", wavelength);
  require_positive("--waist", waist);
  BeamGeometry g;
  g.wavelength = wavelength;
  g.base_waist = waist;
  g.z = z;
  g.waist_mode = waist_mode == "revised" ? WaistMode::Revised : WaistMode::Standard;
  return g;
}

void add_geometry(CLI::App& app, GeometryArgs& args) {
  add_length(app, "--wavelength", args.wavelength, "Optical wavelength");
  add_length(app, "--waist", args.waist, "Fundamental (0,0) beam waist w0");
  add_length(app, "--z", args.z, "Propagation distance from the waist plane");
  app.add_option("--waist-mode", args.waist_mode,
                 "standard: shared w0; revised: w0/sqrt(|L|+2P+1) [enum]")
      ->check(CLI::IsMember({"standard", "revised"}))
      ->capture_default_str();
}

std::optional<SmfWeight> FiberArgs::build() const {
  if (mode_size < 0.0) throw UsageError("--fiber-mode", "fiber mode size must be >= 0");
  if (mode_size == 0.0) return std::nullopt;
  return SmfWeight{mode_size};
}

void add_fiber(CLI::App& app, FiberArgs& args) {
  add_length(app, "--fiber-mode", args.mode_size,
             "Single-mode fiber Gaussian size W at the hologram plane; 0 disables the weight");
}

QuadratureConfig QuadratureArgs::build() const {
  require_at_least("--radial-nodes", "radial nodes", static_cast<long long>(radial_nodes), 2);
  require_at_least("--angular-nodes", "angular nodes", static_cast<long long>(angular_nodes), 2);
  require_positive("--tolerance", tolerance);
  if (max_radial_nodes < radial_nodes) {
    throw UsageError("--max-radial-nodes", "max radial nodes must be >= radial nodes");
  }
  QuadratureConfig cfg;
  cfg.radial_nodes = radial_nodes;
  cfg.angular_nodes = angular_nodes;
  cfg.tolerance = tolerance;
  cfg.max_radial_nodes = max_radial_nodes;
  cfg.convention = convention == "direct" ? ProbeConvention::Direct : ProbeConvention::Conjugate;
  return cfg;
}

void add_quadrature(CLI::App& app, QuadratureArgs& args) {
  app.add_option("--radial-nodes", args.radial_nodes, "Initial Gauss-Legendre radial nodes [count]")
      ->capture_default_str();
  app.add_option("--angular-nodes", args.angular_nodes, "Trapezoid angular nodes [count]")
      ->capture_default_str();
  app.add_option("--tolerance", args.tolerance, "Convergence tolerance on the overlap [dimensionless]")
      ->capture_default_str();
  app.add_option("--max-radial-nodes", args.max_radial_nodes, "Refinement ceiling [count]")
      ->capture_default_str();
  app.add_option("--convention", args.convention,
                 "conjugate: probe enters conjugated; direct: no conjugation [enum]")
      ->check(CLI::IsMember({"conjugate", "direct"}))
      ->capture_default_str();
}

ArnsState StateArgs::build() const {
  if (kind == "custom") {
    if (coeffs.empty()) throw UsageError("--coeffs", "custom state needs --coeffs");
    auto c = parse_coeffs("--coeffs", coeffs);
    require_at_least("--coeffs", "number of coefficients", static_cast<long long>(c.size()), 2);
    std::vector<ModeIndex> m;
    if (!modes.empty()) {
      m = parse_modes("--modes", modes);
      if (m.size() != c.size()) throw UsageError("--modes", "need one mode per coefficient");
    }
    return ArnsState(std::move(c), std::move(m));
  }
  if (kind == "eps") {
    if (!(eps0 >= 0.0 && eps1 >= 0.0 && eps0 + eps1 <= 1.0 + 1e-12)) {
      throw UsageError("--eps0", "eps0, eps1 must be >= 0 with eps0 + eps1 <= 1");
    }
    return make_eps_state(eps0, eps1);
  }
  require_at_least("--d", "d", d, 2);
  if (d > static_cast<int>(kMaxDimension)) {
    throw UsageError("--d", "d must be ≤ " + std::to_string(kMaxDimension));
  }
  if (kind == "product") {
    if (index < 0 || index >= d) throw UsageError("--index", "index must lie in [0, d)");
    return make_product_state(d, index);
  }
  return make_mes(d);
}

std::vector<ModeTerm> StateArgs::build_terms() const {
  if (kind == "custom" && !modes.empty()) {
    auto m = parse_modes("--modes", modes);
    std::vector<std::complex<double>> c =
        coeffs.empty() ? std::vector<std::complex<double>>(m.size(), 1.0)
                       : parse_coeffs("--coeffs", coeffs);
    if (c.size() != m.size()) throw UsageError("--coeffs", "need one coefficient per mode");
    double norm = 0.0;
    for (const auto& x : c) norm += std::norm(x);
    if (norm == 0.0) throw UsageError("--coeffs", "all coefficients are zero");
    std::vector<ModeTerm> terms;
    for (std::size_t i = 0; i < m.size(); ++i) terms.push_back({m[i], c[i] / std::sqrt(norm)});
    return terms;
  }
  ArnsState state = build();
  if (!modes.empty()) {
    auto m = parse_modes("--modes", modes);
    if (m.size() != state.dimension()) throw UsageError("--modes", "need one mode per term");
    state = ArnsState({state.coefficients().begin(), state.coefficients().end()}, std::move(m));
  }
  return state.terms();
}

void add_state(CLI::App& app, StateArgs& args, int default_d) {
  args.d = default_d;
  app.add_option("--state", args.kind,
                 "mes: uniform superposition; product: single term; eps: three-term simplex "
                 "state; custom: --coeffs/--modes [enum]")
      ->check(CLI::IsMember({"mes", "product", "eps", "custom"}))
      ->capture_default_str();
  app.add_option("--d", args.d, "Dimension, 2..16 [count]")->capture_default_str();
  app.add_option("--index", args.index, "Occupied term of a product state [index]")
      ->capture_default_str();
  app.add_option("--eps0", args.eps0, "Weight of term 0 for the eps state [probability]")
      ->capture_default_str();
  app.add_option("--eps1", args.eps1, "Weight of term 1 for the eps state [probability]")
      ->capture_default_str();
  app.add_option("--coeffs", args.coeffs,
                 "Custom coefficients re[:im],... (renormalized) [dimensionless]");
  app.add_option("--modes", args.modes, "Carrier modes L:P,... one per term [indices]");
}

std::vector<ModeIndex> parse_modes(const std::string& flag, const std::string& text) {
  std::vector<ModeIndex> out;
  for (const auto& item : split(text, ',')) {
    const auto lp = split(item, ':');
    if (lp.size() != 2) throw UsageError(flag, "expected L:P, got '" + item + "'");
    ModeIndex m{to_int(flag, lp[0]), to_int(flag, lp[1])};
    if (!m.valid()) throw UsageError(flag, "radial index P must be >= 0");
    out.push_back(m);
  }
  if (out.empty()) throw UsageError(flag, "empty mode list");
  return out;
}

std::vector<std::complex<double>> parse_coeffs(const std::string& flag, const std::string& text) {
  std::vector<std::complex<double>> out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.empty() || parts.size() > 2) throw UsageError(flag, "expected re[:im], got '" + item + "'");
    const double re = to_double(flag, parts[0]);
    const double im = parts.size() == 2 ? to_double(flag, parts[1]) : 0.0;
    out.emplace_back(re, im);
  }
  if (out.empty()) throw UsageError(flag, "empty coefficient list");
  return out;
}

void require_positive(const std::string& flag, double value) {
  if (!(value > 0.0)) throw UsageError(flag, flag.substr(2) + " must be > 0");
}

void require_at_least(const std::string& flag, const std::string& name, long long value,
                      long long bound) {
  if (value < bound) throw UsageError(flag, name + " must be ≥ " + std::to_string(bound));
}

}  // namespace arns::cli
