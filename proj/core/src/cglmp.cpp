#include "arns/cglmp.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "arns/error.hpp"

namespace arns {

namespace {

const JointProbabilityTable& find_table(std::span<const JointProbabilityTable> tables, int a, int b) {
  for (const auto& t : tables) {
    if (t.a() == a && t.b() == b) return t;
  }
  throw Error(ErrorCode::InvalidArgument, "CGLMP needs all four (a, b) tables");
}

}  // namespace

CglmpResult cglmp_from_tables(std::span<const JointProbabilityTable> tables) {
  if (tables.size() != 4) throw Error(ErrorCode::InvalidArgument, "CGLMP needs four tables");
  const auto& a1b1 = find_table(tables, 0, 0);
  const auto& a1b2 = find_table(tables, 0, 1);
  const auto& a2b1 = find_table(tables, 1, 0);
  const auto& a2b2 = find_table(tables, 1, 1);
  const std::size_t d = a1b1.dimension();
  for (const auto& t : tables) {
    if (t.dimension() != d) throw Error(ErrorCode::InvalidArgument, "CGLMP tables differ in d");
  }

  CglmpResult result;
  result.d = d;
  result.tables.assign(tables.begin(), tables.end());
  const int kmax = static_cast<int>(d) / 2;
  for (int k = 0; k < kmax; ++k) {
    const double weight = 1.0 - 2.0 * k / (static_cast<double>(d) - 1.0);
    const double positive = a1b1.prob_a_equals_b_plus(k) + a2b1.prob_b_equals_a_plus(k + 1) +
                            a2b2.prob_a_equals_b_plus(k) + a1b2.prob_b_equals_a_plus(k);
    const double negative = a1b1.prob_a_equals_b_plus(-k - 1) + a2b1.prob_b_equals_a_plus(-k) +
                            a2b2.prob_a_equals_b_plus(-k - 1) + a1b2.prob_b_equals_a_plus(-k - 1);
    result.terms.push_back(weight * (positive - negative));
  }
  for (double t : result.terms) result.S += t;
  return result;
}

CglmpResult cglmp_s(const ArnsState& state, const PhaseOffsets& offsets) {
  std::vector<JointProbabilityTable> tables;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) tables.push_back(joint_probability(state, a, b, offsets));
  }
  return cglmp_from_tables(tables);
}

std::vector<MesBound> mes_bound_scan(int d_min, int d_max) {
  if (d_min < 2 || d_max > static_cast<int>(kMaxDimension) || d_min > d_max) {
    std::ostringstream msg;
    msg << "dimension range [" << d_min << ", " << d_max << "] outside [2, " << kMaxDimension << "]";
    throw Error(ErrorCode::DimensionOutOfRange, msg.str());
  }
  std::vector<MesBound> out;
  for (int d = d_min; d <= d_max; ++d) out.push_back({d, cglmp_s(make_mes(d)).S});
  return out;
}

namespace {

double area_above(const ScalarGrid& g, double level, double cell) {
  std::size_t count = 0;
  for (double v : g.values) {
    if (!std::isnan(v) && v >= level) ++count;
  }
  return static_cast<double>(count) * cell * cell;
}

}  // namespace

double SurfaceGrid::area_s_above() const { return area_above(S, s_level, cell()); }
double SurfaceGrid::area_v_above() const { return area_above(V, v_level, cell()); }

Point2 SurfaceGrid::argmax_s() const {
  double best = -std::numeric_limits<double>::infinity();
  Point2 at{0.0, 0.0};
  for (std::size_t i = 0; i < S.nx; ++i) {
    for (std::size_t j = 0; j < S.ny; ++j) {
      const double v = S.at(i, j);
      if (!std::isnan(v) && v > best) {
        best = v;
        at = {S.x0 + S.dx * static_cast<double>(i), S.y0 + S.dy * static_cast<double>(j)};
      }
    }
  }
  return at;
}

SurfaceGrid separability_surface(std::size_t resolution, const SurfaceOptions& options) {
  if (resolution < 16) {
    throw Error(ErrorCode::ResolutionTooLow, "surface resolution must be at least 16 per axis");
  }
  SurfaceGrid surface;
  surface.resolution = resolution;
  surface.s_level = options.s_level;
  surface.v_level = options.v_level;
  const double step = 1.0 / static_cast<double>(resolution - 1);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (ScalarGrid* g : {&surface.S, &surface.V}) {
    g->nx = resolution;
    g->ny = resolution;
    g->dx = step;
    g->dy = step;
    g->values.assign(resolution * resolution, nan);
  }
  for (std::size_t i = 0; i < resolution; ++i) {
    for (std::size_t j = 0; i + j < resolution; ++j) {
      const double eps0 = step * static_cast<double>(i);
      const double eps1 = step * static_cast<double>(j);
      const auto state = make_eps_state(eps0, std::min(eps1, 1.0 - eps0));
      surface.S.values[i * resolution + j] = cglmp_s(state).S;
      surface.V.values[i * resolution + j] = state_visibility(state, options.visibility);
    }
  }
  surface.s_boundary = extract_level_set(surface.S, options.s_level);
  surface.v_boundary = extract_level_set(surface.V, options.v_level);
  return surface;
}

std::string cglmp_scan_csv(std::span<const CglmpResult> results) {
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.terms.size());
  std::ostringstream out;
  out << std::setprecision(17) << "d,S";
  for (std::size_t k = 0; k < width; ++k) out << ",term_" << k;
  out << "\n";
  for (const auto& r : results) {
    out << r.d << "," << r.S;
    for (std::size_t k = 0; k < width; ++k) {
      out << ",";
      if (k < r.terms.size()) out << r.terms[k];
    }
    out << "\n";
  }
  return out.str();
}

std::string surface_csv(const SurfaceGrid& surface) {
  std::ostringstream out;
  out << std::setprecision(17) << "eps0,eps1,S,V\n";
  const auto& g = surface.S;
  for (std::size_t i = 0; i < g.nx; ++i) {
    for (std::size_t j = 0; j < g.ny; ++j) {
      const double s = g.at(i, j);
      if (std::isnan(s)) continue;
      out << g.x0 + g.dx * static_cast<double>(i) << "," << g.y0 + g.dy * static_cast<double>(j)
          << "," << s << "," << surface.V.at(i, j) << "\n";
    }
  }
  return out.str();
}

std::string polyline_csv(std::span<const Polyline> lines) {
  std::ostringstream out;
  out << std::setprecision(17) << "line,eps0,eps1\n";
  for (std::size_t l = 0; l < lines.size(); ++l) {
    for (const auto& p : lines[l]) out << l << "," << p.x << "," << p.y << "\n";
  }
  return out.str();
}

}  // namespace arns
