#include <gtest/gtest.h>

#include <numbers>

#include "hartree/potential.hpp"
#include "hartree/profiles.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace hartree;
using hartree::test::rel;
using hartree::test::smooth_model;

TEST(Kernel, SphereAveragesMatchOracle) {
  EXPECT_LT(rel(kernel(3, 2.0, 1.0), oracle::kKernelD3R2S1), 1e-13);
  EXPECT_LT(rel(kernel(4, 2.0, 1.0), oracle::kKernelD4R2S1), 1e-14);
  const double s_values[] = {0.3, 0.7, 0.95};
  const double d5[] = {oracle::kKernelD5R1p0S0p3, oracle::kKernelD5R1p0S0p7, oracle::kKernelD5R1p0S0p95};
  const double d6[] = {oracle::kKernelD6R1p0S0p3, oracle::kKernelD6R1p0S0p7, oracle::kKernelD6R1p0S0p95};
  const double d7[] = {oracle::kKernelD7R1p0S0p3, oracle::kKernelD7R1p0S0p7, oracle::kKernelD7R1p0S0p95};
  for (int i = 0; i < 3; ++i) {
    EXPECT_LT(rel(kernel(5, 1.0, s_values[i]), d5[i]), 1e-12) << "d=5 s=" << s_values[i];
    EXPECT_LT(rel(kernel(6, 1.0, s_values[i]), d6[i]), 1e-12) << "d=6 s=" << s_values[i];
    EXPECT_LT(rel(kernel(7, 1.0, s_values[i]), d7[i]), 1e-12) << "d=7 s=" << s_values[i];
  }
  EXPECT_LT(rel(kernel(5, 2.5, 1.0), oracle::kKernelD5R2p5S1p0), 1e-12);
  EXPECT_LT(rel(kernel(6, 2.5, 1.0), oracle::kKernelD6R2p5S1p0), 1e-12);
  EXPECT_LT(rel(kernel(7, 2.5, 1.0), oracle::kKernelD7R2p5S1p0), 1e-12);
}

TEST(Kernel, SymmetricInItsArguments) {
  for (int d : {3, 4, 5, 6}) EXPECT_NEAR(kernel(d, 0.7, 1.9), kernel(d, 1.9, 0.7), 1e-15);
}

TEST(Kernel, LogarithmicDiagonalInThreeDimensions) {
  EXPECT_THROW(kernel(3, 1.0, 1.0), std::domain_error);
  EXPECT_GT(kernel(3, 1.0, 1.0 + 1e-9), kernel(3, 1.0, 1.0 + 1e-3));
  EXPECT_NEAR(kernel(4, 1.0, 1.0), 1.0, 1e-15);
}

TEST(KernelMatrix, GaussianQuarticTermMatchesClosedForm) {
  const RadialModel& m3 = smooth_model(3, 0.0, 256, 20.0, 2.0);
  const double lv3 = m3.kernel().quartic(profiles::gaussian(m3.grid_ptr(), 1.0));
  EXPECT_NEAR(oracle::kGaussD3Lv, std::pow(std::numbers::pi, 3) / 4.0, 1e-15);
  EXPECT_LT(rel(lv3, oracle::kGaussD3Lv), 1e-6);

  const RadialModel& m4 = smooth_model(4, 0.0, 256, 20.0, 2.0);
  const double lv4 = m4.kernel().quartic(profiles::gaussian(m4.grid_ptr(), 1.0));
  EXPECT_LT(rel(lv4, oracle::kGaussD4Lv), 1e-6);
}

TEST(KernelMatrix, AgreesWithMonteCarloEstimates) {
  struct McCase {
    int d;
    double c, s, mean, stderr_;
  };
  for (const McCase& mc : {McCase{3, oracle::kMcBumpD3C, oracle::kMcBumpD3S, oracle::kMcBumpD3Mean,
                                  oracle::kMcBumpD3StdErr},
                           McCase{4, oracle::kMcBumpD4C, oracle::kMcBumpD4S, oracle::kMcBumpD4Mean,
                                  oracle::kMcBumpD4StdErr}}) {
    const RadialModel& m = smooth_model(mc.d, 0.0, 256, 20.0, 2.0);
    const auto u = ComplexRadialField::sample(m.grid_ptr(), [&](double r) {
      return Complex((1.0 + mc.c * r * r) * std::exp(-r * r / (2.0 * mc.s * mc.s)), 0.0);
    });
    const double lv = m.kernel().quartic(u);
    EXPECT_LT(std::abs(lv - mc.mean), 3.0 * mc.stderr_) << "d=" << mc.d << " grid " << lv << " mc " << mc.mean;
  }
}

TEST(KernelMatrix, SymmetricPositiveForm) {
  const RadialModel& m = smooth_model(3, 0.0, 128, 15.0, 2.0);
  const RealMatrix w = m.kernel().symmetric_form();
  EXPECT_LT((w - w.transpose()).norm(), 1e-14 * w.norm());
  EXPECT_GT(w.minCoeff(), 0.0);
  EXPECT_LT(m.kernel().assembly_asymmetry(), 1e-4);
}

TEST(KernelMatrix, PotentialOfGaussianDecaysLikeMassOverRSquared) {
  const RadialModel& m = smooth_model(4, 0.0, 256, 40.0, 2.0);
  const auto u = profiles::gaussian(m.grid_ptr(), 1.0);
  const RealVector phi = m.kernel().potential(u);
  // in d = 4 the sphere average is exactly 1/max(r,s)^2, so Phi(r) = int |u|^2 / r^2 outside the support
  const double total = 2.0 * mass(m, u);
  const int j = m.grid().size() - 1;
  EXPECT_LT(rel(phi(j), total / (40.0 * 40.0)), 1e-10);
  for (int k = 1; k < phi.size(); ++k) EXPECT_LE(phi(k), phi(k - 1) * (1 + 1e-12));
}

TEST(SharpHls, ConstantMatchesExtremizerQuotient) {
  EXPECT_LT(rel(sharp_hls_constant(3), oracle::kHlsD3), 1e-12);
  EXPECT_LT(rel(sharp_hls_constant(4), oracle::kHlsD4), 1e-12);
}

TEST(SharpHls, GaussianSatisfiesTheInequality) {
  for (int d : {3, 4}) {
    const RadialModel& m = smooth_model(d, 0.0, 256, 20.0, 2.0);
    const auto u = profiles::gaussian(m.grid_ptr(), 1.0);
    const double lhs = 4.0 * m.kernel().quartic(u);
    const double rhs = sharp_hls_constant(d) * std::pow(lp_norm(m, u, 2.0 * d / (d - 1.0)), 4);
    EXPECT_LT(lhs, rhs);
  }
}
