#include <gtest/gtest.h>

#include <cmath>

#include "hartree/quadrature.hpp"

using namespace hartree;

namespace {

// int_{-1}^{1} (1-t)^alpha (1+t)^(beta+k) dt
double jacobi_moment(double alpha, double beta, int k) {
  return std::pow(2.0, alpha + beta + k + 1.0) * std::beta(alpha + 1.0, beta + k + 1.0);
}

double integrate(const quad::Rule& rule, int k) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(1.0 + rule.nodes[i], k);
  return s;
}

}  // namespace

TEST(Quadrature, JacobiMassMatchesBetaFunction) {
  for (auto [alpha, beta] : {std::pair{0.0, 0.0}, {0.5, -0.3}, {0.0, 2.5}, {-0.45, 0.05}}) {
    EXPECT_NEAR(quad::jacobi_mass(alpha, beta), jacobi_moment(alpha, beta, 0), 1e-14 * jacobi_moment(alpha, beta, 0));
  }
}

TEST(Quadrature, GaussJacobiIsExactToDegreeTwoNMinusOne) {
  const int n = 12;
  for (auto [alpha, beta] : {std::pair{0.0, 0.5}, {0.0, -0.45}, {0.0, 1.0}}) {
    const quad::Rule rule = quad::gauss_jacobi(n, alpha, beta);
    ASSERT_EQ(rule.nodes.size(), std::size_t(n));
    for (int k = 0; k <= 2 * n - 1; ++k) {
      const double exact = jacobi_moment(alpha, beta, k);
      EXPECT_NEAR(integrate(rule, k), exact, 1e-12 * exact) << "alpha=" << alpha << " beta=" << beta << " k=" << k;
    }
  }
}

TEST(Quadrature, RadauRuleEndsAtOneAndIsExactToDegreeTwoNMinusTwo) {
  const int n = 10;
  const quad::Rule rule = quad::gauss_radau_jacobi(n, 0.0, 0.25);
  EXPECT_DOUBLE_EQ(rule.nodes.back(), 1.0);
  for (std::size_t i = 1; i < rule.nodes.size(); ++i) EXPECT_LT(rule.nodes[i - 1], rule.nodes[i]);
  for (int k = 0; k <= 2 * n - 2; ++k) {
    const double exact = jacobi_moment(0.0, 0.25, k);
    EXPECT_NEAR(integrate(rule, k), exact, 1e-12 * exact) << "k=" << k;
  }
}

TEST(Quadrature, GaussLegendreIntegratesCosine) {
  const quad::Rule rule = quad::gauss_legendre(20);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::cos(rule.nodes[i]);
  EXPECT_NEAR(s, 2.0 * std::sin(1.0), 1e-15);
}
