#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hartree/evolution.hpp"
#include "hartree/functionals.hpp"

namespace hartree::cli {

/// One named pass/fail gate with the measured value and the bound it was held to.
struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double bound = 0.0;
};

/// Seeded smooth random fields carrying the origin behaviour r^{-rho} of the model.
std::vector<ComplexRadialField> seeded_fields(const RadialModel& model, int count, std::uint64_t seed,
                                              bool complex_valued = true);

struct HardyReport {
  int violations = 0;
  double max_ratio = 0.0;
  double bound = 0.0;  // (2/(d-2))^2
};
HardyReport hardy_suite(const RadialModel& model, const std::vector<ComplexRadialField>& fields);

struct RearrangementReport {
  int violations = 0;
  double max_mass_error = 0.0;  // |M(u*) - M(u)| / M(u)
  double max_gradient_ratio = 0.0;  // int |grad u*|^2 / int |grad u|^2
  double min_lv_ratio = 0.0;  // L_V(u*) / L_V(u)
};
/// Mass must agree to mass_tolerance; the gradient may not grow and L_V may
/// not shrink by more than the relative tolerance `slack`.
RearrangementReport rearrangement_suite(const RadialModel& model, const std::vector<ComplexRadialField>& fields,
                                        double mass_tolerance = 1e-12, double slack = 1e-9);

struct HlsReport {
  int violations = 0;
  /// max of 4 L_V / (C ||u||_{2d/(d-1)}^4); the sharp inequality keeps it at most 1.
  double max_ratio = 0.0;
};
HlsReport hls_suite(const RadialModel& model, const std::vector<ComplexRadialField>& fields, double slack = 1e-9);

struct RotationReport {
  int checked = 0;
  int violations = 0;
  double max_mismatch = 0.0;
  /// max of B^2 / (4 E C); at most 1 when the discriminant is non-positive.
  double max_discriminant_ratio = 0.0;
};
/// Scales every field to mass M_gs and checks the quadratic identity for
/// E(u e^{i s theta}) and the sign of its discriminant for each s.
RotationReport rotation_suite(const RadialModel& model, const std::vector<ComplexRadialField>& fields, double M_gs,
                              double theta_radius, const std::vector<double>& s_values,
                              double mismatch_tolerance = 1e-8);

/// Second derivative of Gamma by centred differences on a possibly
/// non-uniform time grid, compared against 16 E(u0): max relative deviation.
double virial_deviation(const Trajectory& trajectory, double E0);

/// Samples whose focusing scale 1/sqrt(H) spans at least `cells` grid cells.
bool resolved(const RadialModel& model, double H, double cells);

}  // namespace hartree::cli
