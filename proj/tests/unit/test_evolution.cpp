#include <gtest/gtest.h>

#include <random>

#include "hartree/evolution.hpp"
#include "hartree/profiles.hpp"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace hartree;
using hartree::test::cached_ground_state;
using hartree::test::cached_model;
using hartree::test::rel;
using hartree::test::smooth_model;

namespace {
const RadialModel& model() { return cached_model(3, -0.1, 256, 20.0, 3.0); }
}  // namespace

TEST(Evolution, LinearModesRotateWithTheirEigenvalue) {
  IntegratorConfig cfg;
  cfg.nonlinear = false;
  for (int k : {0, 5, 40}) {
    const ComplexRadialField phi = model().plan().mode(k);
    const double k2 = model().plan().eigenvalues()(k);
    const ComplexRadialField out = step(model(), phi, 0.01, cfg);
    const ComplexVector expected = std::polar(1.0, k2 * 0.01) * phi.values();
    EXPECT_LT((out.values() - expected).norm(), 1e-12 * phi.values().norm()) << "mode " << k;
  }
}

TEST(Evolution, GroundStateIsAStandingWaveWithFrequencyMinusOne) {
  const GroundStateResult& gs = cached_ground_state(model());
  for (Scheme scheme : {Scheme::StrangSplit, Scheme::MidpointRelaxation}) {
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.5;
    cfg.output_stride = 100;
    cfg.scheme = scheme;
    const Trajectory tr = evolve(model(), gs.Q, cfg);
    ASSERT_TRUE(tr.final_state.has_value());
    const ComplexVector expected = std::polar(1.0, -0.5) * gs.Q.values();
    const ComplexVector wrong_sign = std::polar(1.0, 0.5) * gs.Q.values();
    const double err = (tr.final_state->values() - expected).norm() / gs.Q.values().norm();
    EXPECT_LT(err, 1e-4) << to_string(scheme);
    EXPECT_GT((tr.final_state->values() - wrong_sign).norm() / gs.Q.values().norm(), 0.5);
  }
}

TEST(Evolution, BothSchemesConserveMassAndEnergy) {
  const GroundStateResult& gs = cached_ground_state(model());
  auto u = profiles::gaussian(model().grid_ptr(), 1.0, 1.0, model().params().rho);
  u *= std::sqrt(0.6 * gs.M_gs / mass(model(), u));
  for (Scheme scheme : {Scheme::StrangSplit, Scheme::MidpointRelaxation}) {
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.3;
    cfg.output_stride = 50;
    cfg.scheme = scheme;
    const Trajectory tr = evolve(model(), u, cfg);
    const Quantities& q0 = tr.samples.front().q;
    for (const Sample& s : tr.samples) {
      EXPECT_LT(rel(s.q.M, q0.M), 1e-11) << to_string(scheme);
      EXPECT_LT(rel(s.q.E, q0.E), 1e-4) << to_string(scheme);
    }
    EXPECT_EQ(tr.stop, StopReason::TEnd);
    EXPECT_NEAR(tr.samples.back().t, 0.3, 1e-12);
  }
}

TEST(Evolution, StrangSplittingIsSecondOrder) {
  const GroundStateResult& gs = cached_ground_state(model());
  auto u = profiles::gaussian(model().grid_ptr(), 1.0, 1.0, model().params().rho);
  u *= std::sqrt(0.5 * gs.M_gs / mass(model(), u));
  auto run = [&](double dt) {
    IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.t_end = 0.2;
    cfg.output_stride = 1000000;
    return *evolve(model(), u, cfg).final_state;
  };
  const ComplexRadialField a = run(1e-3);
  const ComplexRadialField b = run(5e-4);
  const ComplexRadialField c = run(2.5e-4);
  const double ratio = (a.values() - b.values()).norm() / (b.values() - c.values()).norm();
  EXPECT_GT(ratio, 3.5);
  EXPECT_LT(ratio, 4.5);
}

TEST(Evolution, IsDeterministic) {
  const GroundStateResult& gs = cached_ground_state(model());
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.05;
  auto u = gs.Q;
  u *= 0.9;
  const Trajectory a = evolve(model(), u, cfg);
  const Trajectory b = evolve(model(), u, cfg);
  EXPECT_EQ(a.final_state->values(), b.final_state->values());
}

TEST(Evolution, StopsAtTheHThreshold) {
  const GroundStateResult& gs = cached_ground_state(model());
  auto u = gs.Q;
  u *= 1.3;  // above the threshold mass and negative energy: focusing
  IntegratorConfig cfg;
  cfg.dt = 1e-4;
  cfg.t_end = 5.0;
  cfg.output_stride = 10;
  cfg.h_threshold = 5.0 * hamiltonian(model(), u);
  const Trajectory tr = evolve(model(), u, cfg);
  EXPECT_EQ(tr.stop, StopReason::HThreshold);
  EXPECT_GT(tr.samples.back().q.H, cfg.h_threshold);
  EXPECT_LT(tr.samples.back().t, 5.0);
}

TEST(Evolution, ConfigValidationAndSchedule) {
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.dt_schedule = {{0.0, 2e-3}, {0.5, 1e-3}, {0.9, 5e-4}};
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_DOUBLE_EQ(cfg.dt_at(0.1), 2e-3);
  EXPECT_DOUBLE_EQ(cfg.dt_at(0.7), 1e-3);
  EXPECT_DOUBLE_EQ(cfg.dt_at(0.95), 5e-4);
  cfg.dt_schedule = {{0.5, 1e-3}, {0.2, 1e-3}};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  IntegratorConfig bad;
  bad.dt = -1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  EXPECT_THROW(parse_scheme("rk4"), std::invalid_argument);
  EXPECT_EQ(parse_scheme("midpoint-relaxation"), Scheme::MidpointRelaxation);
}

TEST(Virial, GaussianMomentsAndChirp) {
  const RadialModel& m = smooth_model(3, 0.0, 256, 20.0, 2.0);
  const auto g = profiles::gaussian(m.grid_ptr(), 1.0);
  const VirialValues v = virial(m, g);
  EXPECT_LT(rel(v.gamma, oracle::kGaussD3Gamma), 1e-11);
  EXPECT_NEAR(v.gamma_prime, 0.0, 1e-12);
  EXPECT_FALSE(v.boundary_flag);
  // u e^{i beta r^2} has Gamma' = -8 beta Gamma
  const double beta = 0.3;
  auto chirped = g;
  for (int j = 0; j < chirped.size(); ++j) {
    const double r = m.grid().nodes()(j);
    chirped.values()(j) *= std::polar(1.0, beta * r * r);
  }
  EXPECT_LT(rel(virial(m, chirped).gamma_prime, -8.0 * beta * oracle::kGaussD3Gamma), 1e-9);
}

TEST(Virial, FlagsMassNearTheBoundary) {
  const RadialModel& m = smooth_model(3, 0.0, 256, 20.0, 2.0);
  const auto shell = profiles::shell(m.grid_ptr(), 18.5, 0.5);
  EXPECT_TRUE(virial(m, shell).boundary_flag);
}

TEST(Windows, RadiusAndLabels) {
  const WindowRule fixed = WindowRule::fixed(1.5);
  EXPECT_DOUBLE_EQ(fixed.radius(0.3), 1.5);
  EXPECT_EQ(fixed.label(), "conc@1.5");
  const WindowRule root = WindowRule::sqrt_to_blowup(1.0, 2.0);
  EXPECT_DOUBLE_EQ(root.radius(0.75), 1.0);
  EXPECT_EQ(root.label(), "conc@2*sqrt(1-t)");
  EXPECT_THROW(WindowRule::fixed(0.0), std::invalid_argument);
  const auto u = cached_ground_state(model()).Q;
  EXPECT_DOUBLE_EQ(concentration(model(), u, 2.0), partial_mass(model(), u, 2.0));
}

TEST(BumpProfile, DerivativeAndSupport) {
  const RadialProfile b = bump_profile(2.0);
  EXPECT_DOUBLE_EQ(b.value(0.0), 1.0);
  EXPECT_EQ(b.value(2.5), 0.0);
  EXPECT_EQ(b.derivative(2.5), 0.0);
  for (double r : {0.3, 1.0, 1.7}) {
    const double h = 1e-6;
    EXPECT_NEAR(b.derivative(r), (b.value(r + h) - b.value(r - h)) / (2 * h), 1e-8);
  }
}

TEST(RotatedEnergy, QuadraticIdentityAndDiscriminantAtThreshold) {
  const RadialModel& m = cached_model(3, -0.1, 512, 20.0, 3.0);
  const GroundStateResult& gs = cached_ground_state(m);
  std::mt19937_64 rng(21);
  auto u = profiles::random_smooth(m.grid_ptr(), rng, {.envelope = m.params().rho});
  u *= std::sqrt(gs.M_gs / mass(m, u));
  for (double s : {-1.0, 0.5, 2.0}) {
    const RotatedEnergyReport r = rotated_energy_check(m, u, bump_profile(3.0), s, gs.M_gs);
    EXPECT_LT(r.mismatch, 1e-8);
    EXPECT_TRUE(r.at_threshold);
    EXPECT_TRUE(r.discriminant_ok);
    EXPECT_GE(r.energy, 0.0);
  }
}

TEST(PseudoConformal, EnergyAndVarianceLaw) {
  // The compressed, chirped profile at t > 0 needs the blow-up grid.
  const RadialModel& fine = cached_model(3, -0.1, 512, 15.0, 6.0);
  const GroundStateResult& gs = cached_ground_state(fine);
  const double mu = 2.0;
  const double gamma_q = virial(fine, gs.Q).gamma;
  const double energy = gamma_q / (8.0 * mu * mu);
  for (double t : {0.0, 0.3}) {
    const auto u = pseudo_conformal_family(fine, gs.Q, 1.0, mu, t);
    const Quantities q = functionals(fine, u);
    EXPECT_LT(rel(q.M, gs.M_gs), 1e-6);
    EXPECT_LT(rel(q.E, energy), 1e-4) << "t=" << t;
    EXPECT_LT(rel(virial(fine, u).gamma, 8.0 * energy * (1 - t) * (1 - t)), 1e-4) << "t=" << t;
  }
  EXPECT_THROW(pseudo_conformal_family(fine, gs.Q, 1.0, mu, 1.0), std::invalid_argument);
}
