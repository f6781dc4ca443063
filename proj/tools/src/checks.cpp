#include "hartree_cli/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hartree/potential.hpp"
#include "hartree/profiles.hpp"

namespace hartree::cli {

std::vector<ComplexRadialField> seeded_fields(const RadialModel& model, int count, std::uint64_t seed,
                                              bool complex_valued) {
  std::mt19937_64 rng(seed);
  profiles::RandomFieldOptions opts;
  opts.complex_valued = complex_valued;
  opts.envelope = model.params().rho;
  opts.max_center = std::min(4.0, 0.25 * model.grid().r_max());
  std::vector<ComplexRadialField> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(profiles::random_smooth(model.grid_ptr(), rng, opts));
  return out;
}

HardyReport hardy_suite(const RadialModel& model, const std::vector<ComplexRadialField>& fields) {
  HardyReport rep;
  const int d = model.params().d;
  rep.bound = std::pow(2.0 / (d - 2.0), 2);
  for (const auto& u : fields) {
    const double ratio = hardy_ratio(model, u);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (!(ratio <= rep.bound)) ++rep.violations;
  }
  return rep;
}

RearrangementReport rearrangement_suite(const RadialModel& model, const std::vector<ComplexRadialField>& fields,
                                        double mass_tolerance, double slack) {
  RearrangementReport rep;
  rep.min_lv_ratio = std::numeric_limits<double>::infinity();
  for (const auto& u : fields) {
    const ComplexRadialField v = rearrange_decreasing(u);
    const double m0 = mass(model, u);
    const double mass_error = std::abs(mass(model, v) - m0) / m0;
    const double grad_ratio = gradient_norm_sq(model, v) / gradient_norm_sq(model, u);
    const double lv_ratio = model.kernel().quartic(v) / model.kernel().quartic(u);
    rep.max_mass_error = std::max(rep.max_mass_error, mass_error);
    rep.max_gradient_ratio = std::max(rep.max_gradient_ratio, grad_ratio);
    rep.min_lv_ratio = std::min(rep.min_lv_ratio, lv_ratio);
    if (!(mass_error <= mass_tolerance) || !(grad_ratio <= 1.0 + slack) || !(lv_ratio >= 1.0 - slack)) {
      ++rep.violations;
    }
  }
  return rep;
}

HlsReport hls_suite(const RadialModel& model, const std::vector<ComplexRadialField>& fields, double slack) {
  HlsReport rep;
  const int d = model.params().d;
  const double c = sharp_hls_constant(d);
  const double p = 2.0 * d / (d - 1.0);
  for (const auto& u : fields) {
    const double norm = lp_norm(model, u, p);
    const double ratio = 4.0 * model.kernel().quartic(u) / (c * std::pow(norm, 4));
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (!(ratio <= 1.0 + slack)) ++rep.violations;
  }
  return rep;
}

RotationReport rotation_suite(const RadialModel& model, const std::vector<ComplexRadialField>& fields, double M_gs,
                              double theta_radius, const std::vector<double>& s_values, double mismatch_tolerance) {
  RotationReport rep;
  const RadialProfile theta = bump_profile(theta_radius);
  for (const auto& f : fields) {
    ComplexRadialField u = f;
    u *= std::sqrt(M_gs / mass(model, u));
    for (double s : s_values) {
      const RotatedEnergyReport r = rotated_energy_check(model, u, theta, s, M_gs);
      ++rep.checked;
      rep.max_mismatch = std::max(rep.max_mismatch, r.mismatch);
      if (r.curvature > 0.0 && r.energy > 0.0) {
        rep.max_discriminant_ratio =
            std::max(rep.max_discriminant_ratio, r.linear * r.linear / (4.0 * r.energy * r.curvature));
      }
      if (!r.at_threshold || !r.discriminant_ok || !(r.mismatch <= mismatch_tolerance)) ++rep.violations;
    }
  }
  return rep;
}

double virial_deviation(const Trajectory& trajectory, double E0) {
  const auto& s = trajectory.samples;
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    const double h0 = s[k].t - s[k - 1].t;
    const double h1 = s[k + 1].t - s[k].t;
    if (!(h0 > 0.0) || !(h1 > 0.0)) continue;
    const double g2 = 2.0 *
                      (h0 * s[k + 1].virial.gamma - (h0 + h1) * s[k].virial.gamma + h1 * s[k - 1].virial.gamma) /
                      (h0 * h1 * (h0 + h1));
    worst = std::max(worst, std::abs(g2 / (16.0 * E0) - 1.0));
  }
  return worst;
}

bool resolved(const RadialModel& model, double H, double cells) {
  const double scale = 1.0 / std::sqrt(H);
  return scale >= cells * model.grid().cell_size(scale);
}

}  // namespace hartree::cli
