#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hartree/model.hpp"
#include "oracle_values.hpp"

using namespace hartree;

TEST(Model, ExponentsMatchOracle) {
  const ModelParams p4 = make_params(4, -0.75);
  EXPECT_NEAR(p4.rho, oracle::kParamsD4A075Rho, 1e-14);
  EXPECT_NEAR(p4.nu, oracle::kParamsD4A075Nu, 1e-14);
  const ModelParams p3 = make_params(3, -0.2475);
  EXPECT_NEAR(p3.rho, oracle::kParamsD3A02475Rho, 1e-14);
  EXPECT_NEAR(p3.nu, oracle::kParamsD3A02475Nu, 1e-14);
}

TEST(Model, FreeOperatorHasNoOriginSingularity) {
  const ModelParams p = make_params(3, 0.0);
  EXPECT_DOUBLE_EQ(p.rho, 0.0);
  EXPECT_DOUBLE_EQ(p.nu, 0.5);
  EXPECT_DOUBLE_EQ(p.hardy_threshold(), 0.25);
  EXPECT_TRUE(p.attractive());
  EXPECT_FALSE(make_params(3, 0.3).attractive());
}

TEST(Model, RejectsInvalidParameters) {
  EXPECT_THROW(make_params(2, 0.0), std::invalid_argument);
  EXPECT_THROW(make_params(3, -0.25), std::invalid_argument);
  EXPECT_THROW(make_params(3, -1.0), std::invalid_argument);
  EXPECT_THROW(make_params(4, -1.0), std::invalid_argument);
  EXPECT_NO_THROW(make_params(4, -0.999));
}

TEST(Model, SphereArea) {
  EXPECT_NEAR(sphere_area(3), 4.0 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(sphere_area(4), 2.0 * std::numbers::pi * std::numbers::pi, 1e-14);
  EXPECT_NEAR(sphere_area(5), 8.0 * std::pow(std::numbers::pi, 2) / 3.0, 1e-13);
}
