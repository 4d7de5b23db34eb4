#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "arns/cglmp.hpp"
#include "arns/error.hpp"
#include "arns/hologram.hpp"
#include "arns/io.hpp"
#include "arns/lg_mode.hpp"
#include "arns/noise.hpp"
#include "arns/overlap.hpp"
#include "arns/state.hpp"
#include "options.hpp"

namespace arns::cli {

namespace {

using nlohmann::json;

/// Writes `contents` when `path` is set and records it in the summary.
void emit(json& summary, const std::string& path, const std::string& contents) {
  if (path.empty()) return;
  write_file_atomic(path, contents);
  summary["outputs"].push_back(path);
}

std::vector<ModeIndex> family(const std::string& kind, int fixed, int count) {
  std::vector<ModeIndex> f;
  for (int i = 0; i <= count; ++i) {
    f.push_back(kind == "angular" ? ModeIndex{i, fixed} : ModeIndex{fixed, i});
  }
  return f;
}

void add_family(CLI::App& app, std::string& kind, int& fixed, int& max_index) {
  app.add_option("--family", kind,
                 "radial: (fixed, P) for P = 0..max; angular: (L, fixed) for L = 0..max [enum]")
      ->check(CLI::IsMember({"radial", "angular"}))
      ->capture_default_str();
  app.add_option("--fixed", fixed, "Index held fixed across the family [index]")
      ->capture_default_str();
  app.add_option("--max-index", max_index, "Largest varying index [index]")->capture_default_str();
}

void check_family(const std::string& kind, int fixed, int max_index) {
  require_at_least("--max-index", "max index", max_index, 0);
  if (kind == "radial") return;
  require_at_least("--fixed", "fixed radial index", fixed, 0);
}

std::map<int, std::pair<std::string, std::string>> read_measured(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read " + path);
  std::map<int, std::pair<std::string, std::string>> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string d, s, sigma;
    std::getline(ls, d, ',');
    std::getline(ls, s, ',');
    std::getline(ls, sigma, ',');
    try {
      std::stod(s);
      std::stod(sigma);
      rows[std::stoi(d)] = {s, sigma};
    } catch (const std::exception&) {
      throw Error(ErrorCode::IoFailure, "malformed row in " + path + ": " + line);
    }
  }
  return rows;
}

Command render_command(CLI::App& root) {
  struct Args {
    GeometryArgs geometry;
    StateArgs state;
    std::size_t resolution = 512;
    double extent = 0.0;
    double min_samples = 8.0;
    std::string csv, pgm;
  };
  auto a = std::make_shared<Args>();
  CLI::App* app = root.add_subcommand("render", "Sample a superposition of LG modes on a grid");
  add_geometry(*app, a->geometry);
  add_state(*app, a->state, 3);
  app->add_option("--resolution", a->resolution, "Grid samples per axis [count]")
      ->capture_default_str();
  add_length(*app, "--extent", a->extent, "Grid half-width; 0 picks 4x the widest mode footprint");
  app->add_option("--min-samples-per-ring", a->min_samples,
                  "Samples required across the narrowest ring [count]")
      ->capture_default_str();
  app->add_option("--csv", a->csv, "Field dump x_m,y_m,re,im [path]");
  app->add_option("--pgm", a->pgm, "8-bit intensity image [path]");
  return {app, [a] {
            require_at_least("--resolution", "resolution", static_cast<long long>(a->resolution), 2);
            if (a->extent < 0.0) throw UsageError("--extent", "extent must be >= 0");
            const BeamGeometry geom = a->geometry.build();
            const auto terms = a->state.build_terms();
            RenderOptions opts;
            opts.resolution = a->resolution;
            if (a->extent > 0.0) opts.extent = a->extent;
            opts.min_samples_per_ring = a->min_samples;
            const SampledField f = render_field(terms, geom, opts);
            json s{{"command", "render"},
                   {"resolution", f.resolution()},
                   {"extent_m", f.extent()},
                   {"power", f.power()},
                   {"peak_amplitude", f.peak_amplitude()},
                   {"outputs", json::array()}};
            emit(s, a->csv, field_csv(f));
            emit(s, a->pgm, intensity_pgm(f));
            return s;
          }};
}

Command overlap_command(CLI::App& root) {
  struct Args {
    GeometryArgs geometry{780e-9, 1000e-6, 0.0, "standard"};
    FiberArgs fiber;
    QuadratureArgs quadrature;
    std::string family = "radial";
    int fixed = 0;
    int max_index = 10;
    std::string normalization = "raw";
    std::string out;
  };
  auto a = std::make_shared<Args>();
  CLI::App* app =
      root.add_subcommand("overlap-matrix", "Fiber-weighted overlap matrix of a mode family");
  add_geometry(*app, a->geometry);
  add_fiber(*app, a->fiber);
  add_quadrature(*app, a->quadrature);
  add_family(*app, a->family, a->fixed, a->max_index);
  app->add_option("--normalization", a->normalization,
                  "raw, or self: divide by the weighted self-overlaps [enum]")
      ->check(CLI::IsMember({"raw", "self"}))
      ->capture_default_str();
  app->add_option("--out", a->out, "Matrix CSV [path]");
  return {app, [a] {
            check_family(a->family, a->fixed, a->max_index);
            const auto modes = family(a->family, a->fixed, a->max_index);
            const auto m = orthogonality_matrix(
                modes, modes, a->geometry.build(), a->fiber.build(), a->quadrature.build(),
                a->normalization == "self" ? OverlapNormalization::SelfNormalized
                                           : OverlapNormalization::Raw);
            const auto rn = m.row_normalized_mag2();
            double worst = 0.0;
            for (std::size_t i = 0; i < m.rows(); ++i) {
              for (std::size_t j = 0; j < m.cols(); ++j) {
                if (i != j) worst = std::max(worst, m.mag2(i, j) / m.mag2(i, i));
              }
            }
            json s{{"command", "overlap-matrix"},
                   {"size", m.rows()},
                   {"max_offdiag_over_diag", worst},
                   {"outputs", json::array()}};
            emit(s, a->out, overlap_matrix_csv(m));
            return s;
          }};
}

Command decompose_command(CLI::App& root) {
  struct Args {
    GeometryArgs geometry{780e-9, 1000e-6, 0.0, "revised"};
    FiberArgs fiber;
    QuadratureArgs quadrature;
    StateArgs state;
    std::string model = "ideal";
    std::string family;
    int fixed = 0;
    int max_index = 5;
    std::string out;
  };
  auto a = std::make_shared<Args>();
  CLI::App* app = root.add_subcommand("decompose", "Modal decomposition power density");
  add_geometry(*app, a->geometry);
  add_fiber(*app, a->fiber);
  add_quadrature(*app, a->quadrature);
  add_state(*app, a->state, 6);
  app->add_option("--model", a->model,
                  "ideal: exact orthonormal projections; physical: fiber-weighted overlaps [enum]")
      ->check(CLI::IsMember({"ideal", "physical"}))
      ->capture_default_str();
  app->add_option("--family", a->family,
                  "Decompose single-mode inputs of a family (radial|angular) instead of the state "
                  "[enum]")
      ->check(CLI::IsMember({"radial", "angular"}));
  app->add_option("--fixed", a->fixed, "Index held fixed across the family [index]")
      ->capture_default_str();
  app->add_option("--max-index", a->max_index, "Largest varying index [index]")
      ->capture_default_str();
  app->add_option("--out", a->out, "Density CSV m,j,power,row_normalized [path]");
  return {app, [a] {
            DecompositionModel model = IdealModel{};
            if (a->model == "physical") {
              model = PhysicalModel{a->geometry.build(), a->fiber.build(), a->quadrature.build()};
            }
            DecompositionDensity density(1);
            if (!a->family.empty()) {
              check_family(a->family, a->fixed, a->max_index);
              const auto modes = family(a->family, a->fixed, a->max_index);
              density = decompose_family(modes, model);
            } else {
              density = modal_decomposition(a->state.build(), model);
            }
            json s{{"command", "decompose"},
                   {"d", density.dimension()},
                   {"power_visibility", density.power_visibility()},
                   {"outputs", json::array()}};
            emit(s, a->out, decomposition_csv(density));
            return s;
          }};
}

void add_offsets(CLI::App& app, PhaseOffsets& o) {
  app.add_option("--offset-angular", o.angular, "Phase offset added to the angular analyzer [rad]")
      ->capture_default_str();
  app.add_option("--offset-radial", o.radial, "Phase offset added to the radial analyzer [rad]")
      ->capture_default_str();
}

Command fringe_command(CLI::App& root) {
  struct Args {
    StateArgs state;
    PhaseOffsets offsets;
    double theta_l = 0.0;
    std::size_t points = 720;
    std::string out;
  };
  auto a = std::make_shared<Args>();
  CLI::App* app = root.add_subcommand("fringe", "Coincidence fringe as the radial phase is scanned");
  add_state(*app, a->state, 2);
  add_offsets(*app, a->offsets);
  app->add_option("--theta-l", a->theta_l, "Fixed angular analyzer phase [rad]")
      ->capture_default_str();
  app->add_option("--points", a->points, "Scan samples over [0, 2pi) [count]")
      ->capture_default_str();
  app->add_option("--out", a->out, "Fringe CSV theta_rad,intensity [path]");
  return {app, [a] {
            require_at_least("--points", "points", static_cast<long long>(a->points), 2);
            const ArnsState state = a->state.build();
            const auto curve =
                fringe_scan(state, a->theta_l, uniform_phases(a->points), a->offsets);
            json s{{"command", "fringe"},
                   {"d", state.dimension()},
                   {"visibility", fringe_visibility(curve)},
                   {"outputs", json::array()}};
            emit(s, a->out, fringe_csv(curve));
            return s;
          }};
}

Command cglmp_command(CLI::App& root) {
  struct Args {
    StateArgs state;
    PhaseOffsets offsets;
    bool scan = false;
    int d_min = 2;
    int d_max = 10;
    std::string compare;
    std::string out;
    std::string tables;
    std::string compare_out;
  };
  auto a = std::make_shared<Args>();
  CLI::App* app = root.add_subcommand("cglmp", "CGLMP Bell parameter S_d");
  add_state(*app, a->state, 3);
  add_offsets(*app, a->offsets);
  app->add_flag("--scan", a->scan, "Scan the maximally non-separable state over d-min..d-max");
  app->add_option("--d-min", a->d_min, "Smallest scanned dimension [count]")->capture_default_str();
  app->add_option("--d-max", a->d_max, "Largest scanned dimension [count]")->capture_default_str();
  app->add_option("--compare", a->compare,
                  "Measured values CSV d,S_measured,sigma merged into --compare-out [path]");
  app->add_option("--compare-out", a->compare_out,
                  "Comparison CSV d,S_computed,S_measured,sigma [path]");
  app->add_option("--out", a->out, "Result CSV d,S,term_k... [path]");
  app->add_option("--tables", a->tables, "Joint probability tables a,b,v,w,p [path]");
  return {app, [a] {
            std::vector<CglmpResult> results;
            if (a->scan) {
              require_at_least("--d-min", "d", a->d_min, 2);
              if (a->d_max < a->d_min) throw UsageError("--d-max", "d-max must be ≥ d-min");
              if (a->d_max > static_cast<int>(kMaxDimension)) {
                throw UsageError("--d-max", "d must be ≤ " + std::to_string(kMaxDimension));
              }
              for (int d = a->d_min; d <= a->d_max; ++d) {
                results.push_back(cglmp_s(make_mes(d), a->offsets));
              }
            } else {
              results.push_back(cglmp_s(a->state.build(), a->offsets));
            }
            json s{{"command", "cglmp"}, {"outputs", json::array()}};
            if (a->scan) {
              json scan = json::array();
              for (const auto& r : results) scan.push_back({{"d", r.d}, {"S", r.S}});
              s["scan"] = scan;
            } else {
              s["d"] = results[0].d;
              s["S"] = results[0].S;
              s["terms"] = results[0].terms;
              s["violates_local_bound"] = results[0].S > kLocalBound;
            }
            emit(s, a->out, cglmp_scan_csv(results));
            if (!a->tables.empty()) {
              std::vector<JointProbabilityTable> all;
              for (const auto& r : results) all.insert(all.end(), r.tables.begin(), r.tables.end());
              emit(s, a->tables, probability_table_csv(all));
            }
            if (!a->compare.empty()) {
              const auto measured = read_measured(a->compare);
              std::ostringstream csv;
              csv << std::setprecision(17) << "d,S_computed,S_measured,sigma\n";
              for (const auto& r : results) {
                csv << r.d << ',' << r.S << ',';
                const auto it = measured.find(static_cast<int>(r.d));
                if (it != measured.end()) csv << it->second.first << ',' << it->second.second;
                else csv << ',';
                csv << '\n';
              }
              if (a->compare_out.empty()) {
                throw UsageError("--compare-out", "--compare needs an output path");
              }
              emit(s, a->compare_out, csv.str());
            }
            return s;
          }};
}

std::string sibling(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
  return path.substr(0, dot) + suffix;
}

Command surface_command(CLI::App& root) {
  struct Args {
    std::size_t resolution = 128;
    std::size_t points = 720;
    std::string out;
    std::string s_boundary;
    std::string v_boundary;
  };
  auto a = std::make_shared<Args>();
  CLI::App* app = root.add_subcommand(
      "surface", "S and visibility over the three-term simplex with their threshold boundaries");
  app->add_option("--resolution", a->resolution, "Samples per simplex axis, >= 16 [count]")
      ->capture_default_str();
  app->add_option("--points", a->points, "Fringe samples per visibility evaluation [count]")
      ->capture_default_str();
  app->add_option("--out", a->out, "Surface CSV eps0,eps1,S,V [path]");
  app->add_option("--s-boundary", a->s_boundary,
                  "S = 2 boundary polylines; default <out>_s_boundary.csv [path]");
  app->add_option("--v-boundary", a->v_boundary,
                  "V = 1/sqrt(2) boundary polylines; default <out>_v_boundary.csv [path]");
  return {app, [a] {
            require_at_least("--resolution", "resolution", static_cast<long long>(a->resolution),
                             16);
            require_at_least("--points", "points", static_cast<long long>(a->points), 2);
            SurfaceOptions opts;
            opts.visibility.scan_points = a->points;
            const SurfaceGrid g = separability_surface(a->resolution, opts);
            const Point2 best = g.argmax_s();
            json s{{"command", "surface"},
                   {"resolution", g.resolution},
                   {"area_s_above", g.area_s_above()},
                   {"area_v_above", g.area_v_above()},
                   {"argmax_s", {best.x, best.y}},
                   {"outputs", json::array()}};
            emit(s, a->out, surface_csv(g));
            const std::string sb =
                a->s_boundary.empty() && !a->out.empty() ? sibling(a->out, "_s_boundary.csv")
                                                         : a->s_boundary;
            const std::string vb =
                a->v_boundary.empty() && !a->out.empty() ? sibling(a->out, "_v_boundary.csv")
                                                         : a->v_boundary;
            emit(s, sb, polyline_csv(g.s_boundary));
            emit(s, vb, polyline_csv(g.v_boundary));
            return s;
          }};
}

Command hologram_command(CLI::App& root) {
  struct Args {
    GeometryArgs geometry{780e-9, 2e-3, 0.0, "revised"};
    StateArgs state;
    std::size_t resolution = 1024;
    double extent = 6e-3;
    double period = 0.0;
    double period_px = 10.0;
    int bits = 8;
    double window = 0.5;
    std::string out;
    std::string target_csv;
    std::string reconstruction_csv;
  };
  auto a = std::make_shared<Args>();
  CLI::App* app =
      root.add_subcommand("hologram", "Encode a phase-only hologram and check its reconstruction");
  add_geometry(*app, a->geometry);
  add_state(*app, a->state, 6);
  app->add_option("--resolution", a->resolution, "SLM pixels per axis [count]")
      ->capture_default_str();
  add_length(*app, "--extent", a->extent, "SLM half-width; pitch = 2 extent / resolution");
  add_length(*app, "--period", a->period, "Blazed grating period; 0 uses --period-px");
  app->add_option("--period-px", a->period_px, "Blazed grating period [pixels]")
      ->capture_default_str();
  app->add_option("--bits", a->bits, "PGM bit depth, 8 or 16 [bits]")
      ->check(CLI::IsMember({8, 16}))
      ->capture_default_str();
  app->add_option("--window", a->window,
                  "First-order window half-width as a fraction of the grating frequency "
                  "[dimensionless]")
      ->capture_default_str();
  app->add_option("--out", a->out, "Hologram phase image, binary PGM [path]");
  app->add_option("--target-csv", a->target_csv, "Target field dump [path]");
  app->add_option("--reconstruction-csv", a->reconstruction_csv,
                  "First-order reconstruction dump [path]");
  return {app, [a] {
            require_at_least("--resolution", "resolution", static_cast<long long>(a->resolution), 2);
            require_positive("--extent", a->extent);
            require_positive("--window", a->window);
            const BeamGeometry geom = a->geometry.build();
            RenderOptions ro;
            ro.resolution = a->resolution;
            ro.extent = a->extent;
            const SampledField target = normalize_to_peak(render_field(a->state.build_terms(), geom, ro));
            const double pitch = target.spacing();
            double period = a->period;
            if (period <= 0.0) {
              require_positive("--period-px", a->period_px);
              period = a->period_px * pitch;
            }
            Hologram holo = encode(target, period, pitch);
            holo.bit_depth = a->bits;
            ReconstructOptions rc;
            rc.window_half_width = a->window;
            const SampledField rec = reconstruct(holo, plane_wave(holo), rc);
            json s{{"command", "hologram"},
                   {"resolution", holo.resolution},
                   {"pitch_m", pitch},
                   {"grating_period_m", period},
                   {"correlation", normalized_correlation(target, rec)},
                   {"outputs", json::array()}};
            emit(s, a->out, hologram_pgm(holo, a->bits));
            emit(s, a->target_csv, field_csv(target));
            emit(s, a->reconstruction_csv, field_csv(rec));
            return s;
          }};
}

Command sigma_command(CLI::App& root) {
  struct Args {
    StateArgs state;
    std::string quantity = "cglmp";
    double scale = 1e4;
    std::size_t resamples = 1000;
    std::uint64_t seed = NoiseConfig{}.seed;
    double target_sigma = 0.0;
    std::string out;
  };
  auto a = std::make_shared<Args>();
  CLI::App* app = root.add_subcommand("sigma", "Poisson-resampled uncertainty of a quantity");
  add_state(*app, a->state, 2);
  app->add_option("--quantity", a->quantity, "cglmp, visibility or power-visibility [enum]")
      ->check(CLI::IsMember({"cglmp", "visibility", "power-visibility"}))
      ->capture_default_str();
  app->add_option("--scale", a->scale, "Mean counts per unit normalized intensity [counts]")
      ->capture_default_str();
  app->add_option("--resamples", a->resamples, "Number of resamples, >= 2 [count]")
      ->capture_default_str();
  app->add_option("--seed", a->seed, "Master RNG seed [integer]")->capture_default_str();
  app->add_option("--target-sigma", a->target_sigma,
                  "Search the count scale at which sigma reaches this value; 0 skips [same units "
                  "as the quantity]")
      ->capture_default_str();
  app->add_option("--out", a->out, "Resample CSV resample_index,value plus summary [path]");
  return {app, [a] {
            require_positive("--scale", a->scale);
            require_at_least("--resamples", "resamples", static_cast<long long>(a->resamples), 2);
            if (a->target_sigma < 0.0) throw UsageError("--target-sigma", "target sigma must be >= 0");
            const Quantity q = a->quantity == "visibility"         ? Quantity::Visibility
                               : a->quantity == "power-visibility" ? Quantity::PowerVisibility
                                                                   : Quantity::CglmpS;
            const ArnsState state = a->state.build();
            NoiseConfig cfg{a->scale, a->resamples, a->seed};
            const SigmaEstimate est = estimate_sigma(q, state, cfg);
            json s{{"command", "sigma"},
                   {"quantity", a->quantity},
                   {"noiseless", est.noiseless},
                   {"mean", est.mean},
                   {"sigma", est.sigma},
                   {"n", est.n},
                   {"seed", est.seed},
                   {"scale", a->scale},
                   {"outputs", json::array()}};
            if (a->target_sigma > 0.0) {
              // sigma falls as 1/sqrt(scale); bisect in log scale.
              double lo = std::log(1.0), hi = std::log(1e12);
              for (int it = 0; it < 40; ++it) {
                const double mid = 0.5 * (lo + hi);
                NoiseConfig probe{std::exp(mid), a->resamples, a->seed};
                if (estimate_sigma(q, state, probe).sigma > a->target_sigma) lo = mid;
                else hi = mid;
              }
              s["scale_for_target_sigma"] = std::exp(0.5 * (lo + hi));
            }
            emit(s, a->out, sigma_csv(est));
            return s;
          }};
}

}  // namespace

std::vector<Command> register_commands(CLI::App& app) {
  return {render_command(app),  overlap_command(app), decompose_command(app),
          fringe_command(app),  cglmp_command(app),   surface_command(app),
          hologram_command(app), sigma_command(app)};
}

}  // namespace arns::cli
