#include <gtest/gtest.h>

#include <cmath>

#include "hartree/field.hpp"
#include "hartree/grid.hpp"
#include "oracle_values.hpp"

using namespace hartree;

TEST(Grid, LastNodeIsTheBoundary) {
  const GridPtr g = RadialGrid::build(3, 64, 12.0, {2.0, 0.0});
  EXPECT_EQ(g->size(), 64);
  EXPECT_EQ(g->interior_size(), 63);
  EXPECT_DOUBLE_EQ(g->nodes()(63), 12.0);
  for (int j = 1; j < g->size(); ++j) EXPECT_LT(g->nodes()(j - 1), g->nodes()(j));
  EXPECT_GT(g->nodes()(0), 0.0);
}

TEST(Grid, QuadratureIntegratesGaussianMoment) {
  for (double stretch : {0.0, 3.0}) {
    const GridPtr g = RadialGrid::build(3, 200, 20.0, {stretch, 0.0});
    double s = 0.0;
    for (int j = 0; j < g->size(); ++j) s += g->volume_weights()(j) * std::exp(-g->nodes()(j) * g->nodes()(j));
    EXPECT_NEAR(s, oracle::kGaussMomentD3, 1e-13) << "stretch " << stretch;
  }
}

TEST(Grid, QuadratureIsExactForSingularPowerAtTheOrigin) {
  // with origin exponent rho_g, r^{-2 rho_g} p(r^2) r^{d-1} is integrated exactly
  const double rho = 0.45;
  const GridPtr g = RadialGrid::build(3, 40, 1.0, {0.0, rho});
  double s = 0.0;
  for (int j = 0; j < g->size(); ++j) {
    const double r = g->nodes()(j);
    s += g->volume_weights()(j) * std::pow(r, -2.0 * rho) * (1.0 + r * r);
  }
  const double exact = 1.0 / (3.0 - 2.0 * rho) + 1.0 / (5.0 - 2.0 * rho);
  EXPECT_NEAR(s, exact, 1e-13);
}

TEST(Grid, InterpolationReproducesSmoothProfiles) {
  const GridPtr g = RadialGrid::build(3, 128, 15.0, {3.0, 0.0});
  const ComplexRadialField u =
      ComplexRadialField::sample(g, [](double r) { return Complex(std::exp(-r * r / 2), 0.0); });
  for (double r : {0.013, 0.5, 1.7, 3.3, 7.0}) {
    EXPECT_NEAR(u(r).real(), std::exp(-r * r / 2), 1e-11) << "r=" << r;
  }
  EXPECT_EQ(u(16.0), Complex(0.0, 0.0));
}

TEST(Grid, CellSizeShrinksTowardTheOriginWhenStretched) {
  const GridPtr g = RadialGrid::build(3, 256, 20.0, {3.0, 0.0});
  EXPECT_LT(g->cell_size(0.05), g->cell_size(10.0));
  EXPECT_GT(g->cell_size(0.05), 0.0);
}

TEST(Grid, RejectsBadArguments) {
  EXPECT_THROW(RadialGrid::build(2, 64, 10.0), std::invalid_argument);
  EXPECT_THROW(RadialGrid::build(3, 8, 10.0), std::invalid_argument);
  EXPECT_THROW(RadialGrid::build(3, 64, -1.0), std::invalid_argument);
  EXPECT_THROW(RadialGrid::build(3, 64, 10.0, {60.0, 0.0}), std::invalid_argument);
}

TEST(Field, ArithmeticAndGridChecks) {
  const GridPtr g = RadialGrid::build(3, 32, 5.0);
  const GridPtr h = RadialGrid::build(3, 48, 5.0);
  ComplexRadialField u = ComplexRadialField::sample(g, [](double r) { return Complex(r, 1.0); });
  const ComplexRadialField v = 2.0 * u;
  EXPECT_NEAR(std::abs((v - u - u).values().norm()), 0.0, 1e-15);
  EXPECT_EQ(u.values()(31), Complex(0.0, 0.0));
  ComplexRadialField w(h);
  EXPECT_THROW(u += w, MismatchError);
  u.values()(3) = Complex(std::nan(""), 0.0);
  EXPECT_FALSE(u.all_finite());
  EXPECT_THROW(u.require_finite("test"), NonFiniteError);
}

TEST(Field, ResampleMovesBetweenGrids) {
  const GridPtr g = RadialGrid::build(3, 96, 12.0, {2.0, 0.0});
  const GridPtr h = RadialGrid::build(3, 150, 12.0, {1.0, 0.0});
  const auto f = [](double r) { return Complex(std::exp(-r * r / 3), 0.2 * std::exp(-r * r)); };
  const ComplexRadialField u = ComplexRadialField::sample(g, f);
  const ComplexRadialField v = resample(u, h);
  for (int j = 0; j < h->interior_size(); ++j) EXPECT_NEAR(std::abs(v.values()(j) - f(h->nodes()(j))), 0.0, 1e-10);
}
