#include <gtest/gtest.h>

#include <random>

#include <boost/math/special_functions/bessel.hpp>

#include "hartree/profiles.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace hartree;
using hartree::test::cached_model;
using hartree::test::rel;
using hartree::test::smooth_model;

namespace {

struct Case {
  int d;
  double a;
};

class TransformCases : public ::testing::TestWithParam<Case> {};

}  // namespace

TEST_P(TransformCases, RoundTripIsExact) {
  const RadialModel& m = cached_model(GetParam().d, GetParam().a, 256, 20.0, 3.0);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    const ComplexRadialField u = profiles::random_smooth(m.grid_ptr(), rng, {.envelope = m.params().rho});
    const ComplexRadialField back = m.plan().inverse(m.plan().forward(u));
    EXPECT_LT((back.values() - u.values()).norm() / u.values().norm(), 1e-12);
  }
}

TEST_P(TransformCases, ParsevalHolds) {
  const RadialModel& m = cached_model(GetParam().d, GetParam().a, 256, 20.0, 3.0);
  std::mt19937_64 rng(12);
  const ComplexRadialField u = profiles::random_smooth(m.grid_ptr(), rng, {.envelope = m.params().rho});
  const double coeff = m.plan().forward(u).squaredNorm();
  EXPECT_NEAR(coeff, 2.0 * mass(m, u) / m.omega(), 1e-12 * coeff);
}

TEST_P(TransformCases, OperatorIsSelfAdjointAndPositive) {
  const RadialModel& m = cached_model(GetParam().d, GetParam().a, 256, 20.0, 3.0);
  EXPECT_GT(m.plan().eigenvalues().minCoeff(), 0.0);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 10; ++i) {
    const ComplexRadialField u = profiles::random_smooth(m.grid_ptr(), rng, {.envelope = m.params().rho});
    const ComplexRadialField v = profiles::random_smooth(m.grid_ptr(), rng, {.envelope = m.params().rho});
    const ComplexRadialField lu = m.plan().apply_La(u);
    const ComplexRadialField lv = m.plan().apply_La(v);
    const double lhs = m.plan().inner_product(lu, v);
    const double rhs = m.plan().inner_product(u, lv);
    const double scale = std::sqrt(m.plan().inner_product(lu, lu) * m.plan().inner_product(v, v));
    EXPECT_LT(std::abs(lhs - rhs), 1e-9 * scale);
    EXPECT_GT(m.plan().inner_product(u, lu), 0.0);
    EXPECT_NEAR(m.plan().inner_product(u, lu), m.plan().quadratic_form(u), 1e-9 * m.plan().quadratic_form(u));
  }
}

INSTANTIATE_TEST_SUITE_P(Models, TransformCases,
                         ::testing::Values(Case{3, -0.1}, Case{3, -0.2}, Case{4, -0.5}, Case{3, 0.4}));

TEST(Transform, GaussianQuadraticTermsMatchOracle) {
  const RadialModel& m3 = smooth_model(3, 0.0, 200, 20.0, 2.0);
  const auto g3 = profiles::gaussian(m3.grid_ptr(), 1.0);
  EXPECT_LT(rel(gradient_norm_sq(m3, g3), oracle::kGaussD3Grad), 1e-11);
  EXPECT_LT(rel(inverse_square_norm(m3, g3), oracle::kGaussD3InvSq), 1e-11);
  EXPECT_LT(rel(mass(m3, g3), oracle::kGaussD3Mass), 1e-12);

  const RadialModel& m4 = smooth_model(4, 0.0, 200, 20.0, 2.0);
  const auto g4 = profiles::gaussian(m4.grid_ptr(), 1.0);
  EXPECT_LT(rel(gradient_norm_sq(m4, g4), oracle::kGaussD4Grad), 1e-11);
  EXPECT_LT(rel(inverse_square_norm(m4, g4), oracle::kGaussD4InvSq), 1e-11);
  EXPECT_LT(rel(mass(m4, g4), oracle::kGaussD4Mass), 1e-12);
}

TEST(Transform, GaussianEnergyWithInverseSquareTerm) {
  const RadialModel& m = smooth_model(3, -0.2475, 200, 20.0, 2.0);
  const auto g = profiles::gaussian(m.grid_ptr(), 1.0);
  EXPECT_LT(rel(hamiltonian(m, g), oracle::kGaussD3H02475), 1e-10);
}

TEST(Transform, EigenmodesSolveTheOperator) {
  const RadialModel& m = cached_model(3, -0.1, 128, 10.0, 0.0);
  for (int k : {0, 3, 10}) {
    const ComplexRadialField phi = m.plan().mode(k);
    const ComplexRadialField lphi = m.plan().apply_La(phi);
    const double k2 = m.plan().eigenvalues()(k);
    EXPECT_LT((lphi.values() - k2 * phi.values()).norm(), 1e-9 * k2 * phi.values().norm());
  }
}

TEST(Transform, LowestEigenvaluesAreBesselZeros) {
  // radial eigenfunctions r^{-(d-2)/2} J_nu(k r) with J_nu(k R) = 0
  const RadialModel& m = cached_model(3, -0.1, 128, 10.0, 0.0);
  const double nu = m.params().nu;
  for (int k = 0; k < 5; ++k) {
    const double zero = boost::math::cyl_bessel_j_zero(nu, k + 1);
    EXPECT_LT(rel(m.plan().eigenvalues()(k), zero * zero / 100.0), 1e-10) << "mode " << k;
  }
}
