#include "arns/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "arns/error.hpp"
#include "arns/quadrature.hpp"

namespace arns {

namespace {

std::string describe_pair(ModeIndex a, ModeIndex b) {
  std::ostringstream out;
  out << "(" << a.l << "," << a.p << ")x(" << b.l << "," << b.p << ")";
  return out.str();
}

}  // namespace

double SmfWeight::operator()(double r) const {
  return std::sqrt(2.0 / std::numbers::pi) / mode_size * std::exp(-r * r / (mode_size * mode_size));
}

std::complex<double> overlap_at(ModeIndex probe, ModeIndex target, const BeamGeometry& geom,
                                const std::optional<SmfWeight>& weight, std::size_t radial_nodes,
                                std::size_t angular_nodes, ProbeConvention convention) {
  const double z = geom.z;
  const double s = std::max(beam_radius(probe, geom, z), beam_radius(target, geom, z));
  const int n_max = std::max(probe.order(), target.order());
  // r_max = 6 s sqrt(N_max)  =>  u_max = 36 N_max
  const double u_max = 36.0 * n_max;

  const auto& rule = gauss_legendre(radial_nodes);
  std::complex<double> radial{};
  for (std::size_t i = 0; i < radial_nodes; ++i) {
    const double u = 0.5 * u_max * (rule.nodes[i] + 1.0);
    const double r = s * std::sqrt(u);
    auto a = radial_profile(probe, geom, r, z);
    if (convention == ProbeConvention::Conjugate) a = std::conj(a);
    auto term = a * radial_profile(target, geom, r, z);
    if (weight) term *= (*weight)(r);
    radial += rule.weights[i] * term;
  }
  // r dr = (s^2 / 2) du, and du = (u_max / 2) dt on the reference interval.
  radial *= 0.5 * s * s * 0.5 * u_max;

  const int winding =
      convention == ProbeConvention::Conjugate ? target.l - probe.l : target.l + probe.l;
  const double dphi = 2.0 * std::numbers::pi / static_cast<double>(angular_nodes);
  std::complex<double> angular{};
  for (std::size_t j = 0; j < angular_nodes; ++j) {
    angular += std::polar(dphi, winding * dphi * static_cast<double>(j));
  }
  return radial * angular;
}

std::complex<double> overlap(ModeIndex probe, ModeIndex target, const BeamGeometry& geom,
                             const std::optional<SmfWeight>& weight, const QuadratureConfig& cfg) {
  geom.validate();
  if (!probe.valid() || !target.valid()) {
    throw Error(ErrorCode::InvalidArgument, "invalid mode index in " + describe_pair(probe, target));
  }
  if (weight && !(weight->mode_size > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "SMF mode size must be positive");
  }
  std::size_t nr = std::max<std::size_t>(cfg.radial_nodes, 2);
  std::size_t na = std::max<std::size_t>(cfg.angular_nodes, 2);
  auto previous = overlap_at(probe, target, geom, weight, nr, na, cfg.convention);
  while (nr * 2 <= cfg.max_radial_nodes) {
    nr *= 2;
    na *= 2;
    const auto current = overlap_at(probe, target, geom, weight, nr, na, cfg.convention);
    if (std::abs(current - previous) < cfg.tolerance) return current;
    previous = current;
  }
  std::ostringstream msg;
  msg << "overlap " << describe_pair(probe, target) << " did not converge to " << cfg.tolerance
      << " within " << cfg.max_radial_nodes << " radial nodes";
  throw Error(ErrorCode::QuadratureNotConverged, msg.str());
}

OverlapMatrix::OverlapMatrix(std::vector<ModeIndex> probes, std::vector<ModeIndex> targets)
    : probes_(std::move(probes)), targets_(std::move(targets)) {
  if (probes_.empty() || targets_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "overlap matrix needs non-empty mode lists");
  }
  entries_.assign(probes_.size() * targets_.size(), {});
}

std::vector<double> OverlapMatrix::row_normalized_mag2() const {
  std::vector<double> out(rows() * cols());
  for (std::size_t i = 0; i < rows(); ++i) {
    double row_max = 0.0;
    for (std::size_t j = 0; j < cols(); ++j) row_max = std::max(row_max, mag2(i, j));
    for (std::size_t j = 0; j < cols(); ++j) {
      out[i * cols() + j] = row_max > 0.0 ? mag2(i, j) / row_max : 0.0;
    }
  }
  return out;
}

OverlapMatrix orthogonality_matrix(std::span<const ModeIndex> probes,
                                   std::span<const ModeIndex> targets, const BeamGeometry& geom,
                                   const std::optional<SmfWeight>& weight,
                                   const QuadratureConfig& cfg,
                                   OverlapNormalization normalization) {
  OverlapMatrix m({probes.begin(), probes.end()}, {targets.begin(), targets.end()});

  std::vector<double> probe_norm(probes.size(), 1.0);
  std::vector<double> target_norm(targets.size(), 1.0);
  if (normalization == OverlapNormalization::SelfNormalized) {
    QuadratureConfig self_cfg = cfg;
    self_cfg.convention = ProbeConvention::Conjugate;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      probe_norm[i] = std::sqrt(std::abs(overlap(probes[i], probes[i], geom, weight, self_cfg)));
    }
    for (std::size_t j = 0; j < targets.size(); ++j) {
      target_norm[j] = std::sqrt(std::abs(overlap(targets[j], targets[j], geom, weight, self_cfg)));
    }
  }

  for (std::size_t i = 0; i < probes.size(); ++i) {
    for (std::size_t j = 0; j < targets.size(); ++j) {
      try {
        m(i, j) = overlap(probes[i], targets[j], geom, weight, cfg) / (probe_norm[i] * target_norm[j]);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::QuadratureNotConverged) throw;
        std::ostringstream msg;
        msg << "matrix entry (" << i << "," << j << ") " << describe_pair(probes[i], targets[j])
            << ": " << e.what();
        throw Error(ErrorCode::QuadratureNotConverged, msg.str());
      }
    }
  }
  return m;
}

std::string overlap_matrix_csv(const OverlapMatrix& m, bool include_row_normalized) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "probe_L,probe_P,target_L,target_P,re,im,mag2";
  if (include_row_normalized) out << ",mag2_row_norm";
  out << "\n";
  const auto row_norm = m.row_normalized_mag2();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& a = m.probes()[i];
      const auto& b = m.targets()[j];
      const auto v = m(i, j);
      out << a.l << "," << a.p << "," << b.l << "," << b.p << "," << v.real() << "," << v.imag()
          << "," << std::norm(v);
      if (include_row_normalized) out << "," << row_norm[i * m.cols() + j];
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace arns
