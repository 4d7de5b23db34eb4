// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "arns/cglmp.hpp"
#include "arns/error.hpp"
#include "arns/hologram.hpp"
#include "arns/lg_mode.hpp"
#include "arns/noise.hpp"
#include "arns/overlap.hpp"
#include "arns/state.hpp"
#include "oracles/cglmp_oracle.hpp"
#include "support/random_state.hpp"

using namespace arns;

namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

// popen wrapper; returns stdout and sets the exit status.
std::string run_cli(const std::string& args, int& status) {
  const std::string cmd = std::string("\"") + ARNS_CLI_PATH + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int raw = pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

Outcome mes_anchor() {
  const auto start = Clock::now();
  int status = 0;
  const auto out = run_cli("cglmp --d 2 --state mes", status);
  const double elapsed = seconds_since(start);
  if (status != 0) return {false, "exit status " + std::to_string(status)};
  const double s = nlohmann::json::parse(out).at("S").get<double>();
  const double err = std::abs(s - 2.0 * std::numbers::sqrt2);
  return {err < 1e-9 && elapsed < 0.1,
          "S=" + fmt(s) + " |err|=" + fmt(err) + " tol=1e-9 runtime=" + fmt(elapsed) + "s limit=0.1s"};
}

Outcome bound_scan() {
  const auto start = Clock::now();
  const auto scan = mes_bound_scan(2, 10);
  const double elapsed = seconds_since(start);
  bool increasing = true;
  double worst = 0.0;
  for (std::size_t i = 0; i < scan.size(); ++i) {
    if (i > 0 && !(scan[i].S > scan[i - 1].S)) increasing = false;
    const auto state = make_mes(scan[i].d);
    const auto c = state.coefficients();
    const double brute = oracle::brute_cglmp({c.begin(), c.end()});
    worst = std::max(worst, std::abs(brute - scan[i].S));
  }
  const bool ok = scan.size() == 9 && increasing && worst < 1e-9 && elapsed < 1.0;
  return {ok, std::string("increasing=") + (increasing ? "yes" : "no") + " max|S-oracle|=" + fmt(worst) +
                  " tol=1e-9 runtime=" + fmt(elapsed) + "s limit=1s"};
}

Outcome product_null() {
  double worst_s = 0.0;
  double worst_v = 0.0;
  const auto scan = uniform_phases(720);
  for (int d = 2; d <= 10; ++d) {
    for (int index = 0; index < d; ++index) {
      const auto state = make_product_state(d, index);
      worst_s = std::max(worst_s, std::abs(cglmp_s(state).S));
      // The four settings shift the angular and radial analyzers by a/2 and
      // +-1/4 of a phase step.
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const double lab = 2.0 * kPi / d * (a / 2.0);
          const double probe = 2.0 * kPi / d * (b == 0 ? 0.25 : -0.25);
          std::vector<double> shifted(scan.begin(), scan.end());
          for (double& p : shifted) p += probe;
          worst_v = std::max(worst_v, fringe_visibility(fringe_scan(state, lab, shifted)));
        }
      }
    }
  }
  return {worst_s < 1e-9 && worst_v < 1e-9,
          "max|S|=" + fmt(worst_s) + " max V=" + fmt(worst_v) + " tol=1e-9"};
}

Outcome conservation() {
  std::mt19937_64 rng(20261014);
  std::uniform_int_distribution<int> dim(2, 10);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const ArnsState state(test::random_coefficients(rng, dim(rng)));
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        worst = std::max(worst, std::abs(joint_probability(state, a, b).sum() - 1.0));
      }
    }
  }
  return {worst < 1e-10, "max|sum-1|=" + fmt(worst) + " tol=1e-10 over 1000 states"};
}

Outcome separability_surface_check() {
  const auto start = Clock::now();
  const auto g = separability_surface(128);
  const double elapsed = seconds_since(start);

  const auto arg = g.argmax_s();
  const double cell = g.cell();
  const bool near_third =
      std::abs(arg.x - 1.0 / 3.0) <= cell + 1e-12 && std::abs(arg.y - 1.0 / 3.0) <= cell + 1e-12;

  const double as = g.area_s_above();
  const double av = g.area_v_above();

  const std::size_t n = g.resolution;
  std::size_t peak = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (g.V.at(i, 0) > g.V.at(peak, 0)) peak = i;
  }
  bool unimodal = peak > 0 && peak + 1 < n;
  for (std::size_t i = 1; i <= peak; ++i) unimodal = unimodal && g.V.at(i, 0) >= g.V.at(i - 1, 0);
  for (std::size_t i = peak + 1; i < n; ++i) unimodal = unimodal && g.V.at(i, 0) <= g.V.at(i - 1, 0);

  const bool ok = near_third && as < av && unimodal && elapsed < 30.0;
  return {ok, "(i) argmax=(" + fmt(arg.x) + "," + fmt(arg.y) + ") within one cell of (1/3,1/3): " +
                  (near_third ? "yes" : "no") + "; (ii) area S>=2 " + fmt(as) + " < area V>=1/sqrt2 " +
                  fmt(av) + ": " + (as < av ? "yes" : "no") + "; (iii) unimodal along eps1=0: " +
                  (unimodal ? "yes" : "no") + "; runtime=" + fmt(elapsed) + "s limit=30s"};
}

Outcome normalization_orthogonality() {
  const BeamGeometry geom{780e-9, 2e-3, 0.0, WaistMode::Standard};
  std::vector<ModeIndex> modes;
  for (int l = -8; l <= 8; ++l) {
    for (int p = 0; p <= 8; ++p) modes.push_back({l, p});
  }
  const auto start = Clock::now();
  const auto m = orthogonality_matrix(modes, modes, geom, std::nullopt, {});
  const double elapsed = seconds_since(start);
  double norm_err = 0.0;
  double cross = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    for (std::size_t j = 0; j < modes.size(); ++j) {
      if (i == j) {
        norm_err = std::max(norm_err, std::abs(m(i, j) - 1.0));
      } else {
        cross = std::max(cross, std::abs(m(i, j)));
      }
    }
  }
  return {norm_err < 1e-6 && cross < 1e-6 && elapsed < 60.0,
          "max|norm-1|=" + fmt(norm_err) + " max|cross|=" + fmt(cross) + " tol=1e-6 runtime=" +
              fmt(elapsed) + "s limit=60s"};
}

std::vector<double> read_fixture_overlaps(const std::string& name) {
  std::ifstream in(std::string(ARNS_FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::string line;
  std::getline(in, line);
  std::vector<double> values;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    int i = 0, j = 0;
    char comma = 0;
    double overlap = 0.0;
    ls >> i >> comma >> j >> comma >> overlap;
    values.push_back(overlap);
  }
  return values;
}

Outcome smf_crosstalk() {
  std::vector<ModeIndex> family;
  for (int p = 0; p <= 10; ++p) family.push_back({0, p});
  double max_ratio[2] = {0.0, 0.0};
  double fixture_err = 0.0;
  const std::pair<WaistMode, const char*> cases[] = {{WaistMode::Standard, "smf_standard_radial.csv"},
                                                     {WaistMode::Revised, "smf_revised_radial.csv"}};
  for (int c = 0; c < 2; ++c) {
    const BeamGeometry geom{780e-9, 1000e-6, 0.0, cases[c].first};
    const auto m = orthogonality_matrix(family, family, geom, SmfWeight{750e-6}, {});
    const auto fixture = read_fixture_overlaps(cases[c].second);
    if (fixture.size() != family.size() * family.size()) throw std::runtime_error("fixture size");
    for (std::size_t i = 0; i < family.size(); ++i) {
      for (std::size_t j = 0; j < family.size(); ++j) {
        fixture_err = std::max(fixture_err, std::abs(m(i, j) - fixture[i * family.size() + j]));
        if (i != j) max_ratio[c] = std::max(max_ratio[c], m.mag2(i, j) / m.mag2(i, i));
      }
    }
  }
  const bool ok = max_ratio[0] > 0.1 && max_ratio[1] < 0.1 && fixture_err < 1e-6;
  return {ok, "standard max offdiag/diag=" + fmt(max_ratio[0]) + " (>0.1) revised=" + fmt(max_ratio[1]) +
                  " (<0.1) max|matrix-fixture|=" + fmt(fixture_err) + " tol=1e-6"};
}

Outcome fringe_curves() {
  const auto state = make_mes(2);
  const auto phases = uniform_phases(720);
  double vis_err = 0.0;
  double residual = 0.0;
  double first_phase[2] = {0.0, 0.0};
  for (int k = 0; k < 2; ++k) {
    std::vector<double> intensity;
    for (const auto& p : fringe_scan(state, k * kPi, phases)) intensity.push_back(p.intensity);
    vis_err = std::max(vis_err, std::abs(fitted_visibility(intensity, 1) - 1.0));
    std::complex<double> a0{}, a1{};
    for (std::size_t i = 0; i < phases.size(); ++i) {
      a0 += intensity[i];
      a1 += intensity[i] * std::polar(1.0, -phases[i]);
    }
    a0 /= static_cast<double>(phases.size());
    a1 /= static_cast<double>(phases.size());
    // Sinusoidal means a0 + 2 Re(a1 e^{i theta}) reproduces every sample.
    for (std::size_t i = 0; i < phases.size(); ++i) {
      const double model = a0.real() + 2.0 * (a1 * std::polar(1.0, phases[i])).real();
      residual = std::max(residual, std::abs(model - intensity[i]));
    }
    first_phase[k] = std::arg(a1);
  }
  double shift = std::remainder(first_phase[1] - first_phase[0], 2.0 * kPi);
  const double shift_err = std::abs(std::abs(shift) - kPi);
  return {vis_err < 1e-9 && shift_err < 1e-9 && residual < 1e-9,
          "max|V-1|=" + fmt(vis_err) + " |shift-pi|=" + fmt(shift_err) + " sinusoid residual=" +
              fmt(residual) + " tol=1e-9"};
}

Outcome poisson_scaling() {
  double worst = 0.0;
  bool deterministic = true;
  for (int d = 2; d <= 10; ++d) {
    const auto state = make_mes(d);
    NoiseConfig lo{1e4, 1000, 7};
    NoiseConfig hi{4e4, 1000, 7};
    const auto a = estimate_sigma(Quantity::CglmpS, state, lo);
    const auto b = estimate_sigma(Quantity::CglmpS, state, hi);
    const auto again = estimate_sigma(Quantity::CglmpS, state, lo);
    deterministic = deterministic && again.samples == a.samples;
    worst = std::max(worst, std::abs(a.sigma / b.sigma / 2.0 - 1.0));
  }
  return {worst <= 0.2 && deterministic, "max|sigma(s)/sigma(4s)/2-1|=" + fmt(worst) +
                                             " tol=0.2 deterministic=" + (deterministic ? "yes" : "no")};
}

Outcome hologram_round_trip() {
  const BeamGeometry geom{780e-9, 2e-3, 0.0, WaistMode::Revised};
  constexpr std::size_t kResolution = 1024;
  constexpr double kExtent = 6e-3;
  constexpr double kPeriodPixels = 10.0;
  ReconstructOptions rc;
  rc.window_half_width = 0.5;
  double worst = 1.0;
  double slowest = 0.0;
  int ordering_violations = 0;
  for (int l = -6; l <= 6; ++l) {
    double previous = 2.0;
    for (int p = 0; p <= 6; ++p) {
      const auto start = Clock::now();
      RenderOptions ro;
      ro.resolution = kResolution;
      ro.extent = kExtent;
      const std::vector<ModeTerm> terms{{{l, p}, 1.0}};
      const auto target = normalize_to_peak(render_field(terms, geom, ro));
      const auto holo = encode(target, kPeriodPixels * target.spacing(), target.spacing());
      const auto rec = reconstruct(holo, plane_wave(holo), rc);
      const double c = normalized_correlation(target, rec);
      slowest = std::max(slowest, seconds_since(start));
      worst = std::min(worst, c);
      if (c > previous) ++ordering_violations;
      previous = c;
    }
  }
  return {worst >= 0.95 && ordering_violations == 0 && slowest < 60.0,
          "min correlation=" + fmt(worst) + " (>=0.95) P-ordering violations=" +
              std::to_string(ordering_violations) + " slowest mode=" + fmt(slowest) + "s limit=60s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 CGLMP MES anchor", mes_anchor},
      {"2 CGLMP bound scan", bound_scan},
      {"3 product-state null", product_null},
      {"4 probability conservation", conservation},
      {"5 separability surface", separability_surface_check},
      {"6 LG normalization and orthogonality", normalization_orthogonality},
      {"7 SMF-weight effect", smf_crosstalk},
      {"8 fringe curves", fringe_curves},
      {"9 Poisson machinery", poisson_scaling},
      {"10 hologram round trip", hologram_round_trip},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
