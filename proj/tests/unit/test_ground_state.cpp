#include <gtest/gtest.h>

#include <sstream>

#include "hartree/profiles.hpp"
#include "support.hpp"

using namespace hartree;
using hartree::test::cached_ground_state;
using hartree::test::cached_model;
using hartree::test::rel;

namespace {
const RadialModel& model() { return cached_model(3, -0.1, 256, 20.0, 3.0); }
}  // namespace

TEST(GroundState, SatisfiesTheEulerLagrangeEquationAndPohozaevIdentities) {
  const GroundStateResult& gs = cached_ground_state(model());
  EXPECT_LT(gs.residual, 1e-6);
  EXPECT_NEAR(el_residual(model(), gs.Q), gs.residual, 1e-12);
  const PohozaevReport p = pohozaev(gs.quantities, gs.M_gs);
  EXPECT_LT(p.m_minus_h, 1e-6);
  EXPECT_LT(p.m_minus_lv, 1e-6);
  EXPECT_LT(p.h_minus_lv, 1e-6);
  ASSERT_TRUE(gs.quantities.J.has_value());
  EXPECT_DOUBLE_EQ(*gs.quantities.J, gs.M_gs);
}

TEST(GroundState, IsRealAndNonNegative) {
  const GroundStateResult& gs = cached_ground_state(model());
  for (int j = 0; j < gs.Q.size(); ++j) {
    EXPECT_EQ(gs.Q.values()(j).imag(), 0.0);
    EXPECT_GE(gs.Q.values()(j).real(), 0.0);
  }
  EXPECT_GT(gs.Q.values()(0).real(), gs.Q.values()(100).real());
}

TEST(GroundState, FlowTraceNeverIncreases) {
  const GroundStateResult& gs = cached_ground_state(model());
  ASSERT_FALSE(gs.trace.empty());
  double previous = std::numeric_limits<double>::infinity();
  for (const TraceEntry& e : gs.trace) {
    if (e.phase == SolverPhase::Polish) continue;
    // Steps are accepted up to a few ulps of rounding in the quotient.
    EXPECT_LE(e.J, previous * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) << "iteration " << e.iteration;
    previous = e.J;
  }
}

TEST(GroundState, IndependentOfTheInitialGuess) {
  const GroundStateResult& gs = cached_ground_state(model());
  GroundStateOptions opts;
  opts.guess = InitialGuess::Sech;
  opts.guess_width = 2.0;
  const GroundStateResult other = solve_ground_state(model(), opts);
  EXPECT_LT(rel(other.M_gs, gs.M_gs), 1e-6);

  GroundStateOptions custom;
  custom.custom_guess = profiles::shell(model().grid_ptr(), 1.5, 0.7, 1.0, model().params().rho);
  EXPECT_LT(rel(solve_ground_state(model(), custom).M_gs, gs.M_gs), 1e-6);
}

TEST(GroundState, ReportsNonConvergenceWithTheTrace) {
  GroundStateOptions opts;
  opts.max_iterations = 3;
  opts.polish = false;
  try {
    solve_ground_state(model(), opts);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_FALSE(e.trace().empty());
  }
}

TEST(GroundState, RequiresAnAttractiveOrFreeCoupling) {
  const RadialModel& repulsive = cached_model(3, 0.3, 64, 10.0, 0.0);
  EXPECT_THROW(solve_ground_state(repulsive), std::invalid_argument);
  EXPECT_THROW(solve_ground_state(make_params(3, -0.2), model()), MismatchError);
}

TEST(GroundState, TextFormatRoundTrip) {
  const GroundStateResult& gs = cached_ground_state(model());
  std::stringstream buffer;
  write_ground_state(buffer, model(), gs);
  const std::string text = buffer.str();
  EXPECT_NE(text.find("# columns: r Q"), std::string::npos);
  const GroundStateFile f = read_ground_state(buffer);
  EXPECT_EQ(f.params.d, 3);
  EXPECT_DOUBLE_EQ(f.params.a, -0.1);
  EXPECT_EQ(f.n, 256);
  EXPECT_DOUBLE_EQ(f.M_gs, gs.M_gs);
  EXPECT_TRUE(f.Q.grid().same_layout(model().grid()));
  EXPECT_EQ(f.Q.values(), gs.Q.values());
}

TEST(GroundState, ReaderRejectsMalformedFiles) {
  std::istringstream empty("");
  EXPECT_THROW(read_ground_state(empty), std::runtime_error);

  const GroundStateResult& gs = cached_ground_state(model());
  std::stringstream buffer;
  write_ground_state(buffer, model(), gs);
  std::string text = buffer.str();
  // drop the last data row
  text.erase(text.rfind('\n', text.size() - 2) + 1);
  std::istringstream truncated(text);
  EXPECT_THROW(read_ground_state(truncated), std::runtime_error);
}

TEST(GnAudit, FlagsFieldsBelowTheThreshold) {
  const GroundStateResult& gs = cached_ground_state(model());
  std::vector<ComplexRadialField> fields{gs.Q, profiles::gaussian(model().grid_ptr(), 1.0, 1.0, model().params().rho)};
  const GnAuditReport ok = gn_audit(model(), fields, gs.M_gs);
  EXPECT_EQ(ok.violations, 0);
  EXPECT_NEAR(ok.entries[0].ratio, 1.0, 1e-12);
  EXPECT_GT(ok.entries[1].ratio, 1.0);
  const GnAuditReport bad = gn_audit(model(), fields, 1.5 * gs.M_gs);
  EXPECT_GE(bad.violations, 1);
  EXPECT_TRUE(bad.entries[0].violation);
}
