#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "holo/adiabatic.hpp"
#include "holo/errors.hpp"
#include "support.hpp"

namespace holo {
namespace {

using namespace std::complex_literals;
using test::mat2;
using test::near;

constexpr double kPi = std::numbers::pi;

Loop reference_loop(int steps = 1000) {
  Loop loop;
  CoordVector a{}, b{}, c{}, d{};
  a[theta(Pair::p24).flat()] = kPi / 4;
  b[phi(Pair::p24).flat()] = kPi;
  c[theta(Pair::p24).flat()] = -kPi / 4;
  d[phi(Pair::p24).flat()] = -kPi;
  loop.segments = {a, b, c, d};
  loop.steps_per_segment = steps;
  return loop;
}

Loop constant_loop(const GrassmannianPoint& p) {
  Loop loop;
  loop.base = p;
  loop.segments = {CoordVector{}, CoordVector{}};
  return loop;
}

CMat4 block_diag(const CMat2& a, const CMat2& b) {
  CMat4 m = CMat4::Zero();
  m.topLeftCorner<2, 2>() = a;
  m.bottomRightCorner<2, 2>() = b;
  return m;
}

TEST(Schedule, Validation) {
  Schedule s{reference_loop(), 10.0, 99};
  EXPECT_THROW(s.validate(), Error);
  s.time_steps = 100;
  EXPECT_NO_THROW(s.validate());
  s.total_time = 0.0;
  EXPECT_THROW(s.validate(), Error);
  s.total_time = 1.0;
  s.loop.segments.pop_back();
  try {
    s.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::loop_not_closed);
  }
}

TEST(Schedule, EqualTimePerSegment) {
  Schedule s{reference_loop(), 8.0, 100};
  const auto quarter = s.point_at(2.0);
  EXPECT_NEAR(quarter.theta(Pair::p24), kPi / 4, 1e-15);
  EXPECT_NEAR(quarter.phi(Pair::p24), 0.0, 1e-15);
  EXPECT_NEAR(s.point_at(4.0).phi(Pair::p24), kPi, 1e-15);
  EXPECT_NEAR(s.point_at(8.0).theta(Pair::p24), 0.0, 1e-15);
  EXPECT_NEAR(s.point_at(1.0).theta(Pair::p24), kPi / 8, 1e-15);

  EXPECT_EQ(profile_fraction(SpeedProfile::smoothstep, 0.0), 0.0);
  EXPECT_EQ(profile_fraction(SpeedProfile::smoothstep, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(profile_fraction(SpeedProfile::smoothstep, 0.25), 0.15625);
  EXPECT_EQ(profile_fraction(SpeedProfile::uniform, 0.25), 0.25);
}

TEST(Evolve, ConstantHamiltonianIsExact) {
  const auto p = test::generic_point();
  const double T = 3.7, omega = 1.3;
  const CMat4 u = evolve({constant_loop(p), T, 100}, omega);
  const CMat4 frame = build_unitary(p);
  CMat4 phases = CMat4::Zero();
  phases.diagonal() << std::exp(-0.5i * omega * T), std::exp(-0.5i * omega * T),
      std::exp(0.5i * omega * T), std::exp(0.5i * omega * T);
  EXPECT_TRUE(near<4>(u, CMat4(frame * phases * frame.adjoint()), 1e-12));
}

TEST(Evolve, ShortTimeIsIdentity) {
  const CMat4 u = evolve({reference_loop(), 1e-9, 100});
  EXPECT_TRUE(near<4>(u, identity<4>(), 1e-8));
}

TEST(Evolve, SecondOrderInTimeStep) {
  const Loop loop = reference_loop();
  auto at = [&](int n) { return evolve({loop, 5.0, n}); };
  const CMat4 a = at(200), b = at(400), c = at(800);
  EXPECT_LE(unitarity_residual<4>(a), 1e-12);
  const double ratio = max_abs_difference<4>(a, b) / max_abs_difference<4>(b, c);
  EXPECT_GE(ratio, 3.5);
  EXPECT_LE(ratio, 4.5);
}

TEST(Evolve, FrozenReferenceRun) {
  // tests/oracles/generate.py: adaptive RK solution at T = 100, rtol 1e-11.
  const CMat4 u = evolve({reference_loop(), 100.0, 40000});
  EXPECT_NEAR(off_block_norm(u), 0.04175333375262263, 1e-6);
  const CMat2 plus = std::exp(50.0i) * subspace_block(u, Subspace::plus);
  EXPECT_NEAR(std::abs(plus(0, 0)), 1.0, 1e-3);
  EXPECT_NEAR(std::abs(plus(1, 1) - Complex(0.17947712989176953, 0.9833190171038709)), 0.0, 1e-5);
}

TEST(ExtractGeometric, StripsDynamicalPhase) {
  const double T = 12.0;
  const CMat2 gp = mat2(0.6, 0.8i, 0.8i, 0.6);
  const CMat2 gm = mat2(1i, 0, 0, -1i);
  const CMat4 u = block_diag(std::exp(-0.5i * T) * gp, std::exp(0.5i * T) * gm);
  HolonomyPair expected{gp, gm};
  const auto r = extract_geometric(u, T, 1.0, expected);
  EXPECT_LE(r.leakage, 1e-15);
  EXPECT_FALSE(r.unprojected);
  EXPECT_LE(r.holonomy_error_plus, 1e-12);
  EXPECT_LE(r.holonomy_error_minus, 1e-12);
  EXPECT_TRUE(std::isnan(extract_geometric(u, T).holonomy_error_plus));
}

TEST(ExtractGeometric, RejectsNonUnitary) {
  CMat4 u = identity<4>();
  u(0, 0) = 1.0 + 1e-6;
  try {
    extract_geometric(u, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_unitary);
  }
}

TEST(ExtractGeometric, HeavyLeakageIsReportedUnprojected) {
  // Swap levels 2 and 3: the diagonal blocks lose half their norm.
  CMat4 u = CMat4::Zero();
  u(0, 0) = 1;
  u(1, 2) = 1;
  u(2, 1) = 1;
  u(3, 3) = 1;
  const auto r = extract_geometric(u, 0.0);
  EXPECT_TRUE(r.unprojected);
  EXPECT_NEAR(r.leakage, std::sqrt(2.0), 1e-15);
}

TEST(Adiabatic, DegenerateLoopHasNoGeometricPart) {
  const Loop loop = constant_loop(test::generic_point());
  const auto rows = convergence_study(loop, 1.0, {5.0, 10.0, 20.0});
  for (const auto& row : rows) {
    EXPECT_LE(row.err_plus, 1e-6);
    EXPECT_LE(row.err_minus, 1e-6);
    EXPECT_LE(row.leakage, 1e-6);
  }
}

TEST(Adiabatic, LeakageFallsWithTotalTime) {
  const auto rows = convergence_study(reference_loop(), 1.0, {10.0, 40.0, 160.0});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_GT(rows[0].leakage, rows[1].leakage);
  EXPECT_GT(rows[1].leakage, rows[2].leakage);
  EXPECT_GT(rows[0].err_plus, rows[2].err_plus);
  EXPECT_EQ(rows[2].steps, 32000);
}

TEST(Adiabatic, PredictionCarriesSchrodingerSign) {
  const auto pred = adiabatic_prediction(reference_loop(10000));
  EXPECT_TRUE(near<2>(pred.gamma_plus, mat2(1, 0, 0, 1i), 1e-6));
  EXPECT_TRUE(near<2>(pred.gamma_minus, mat2(1, 0, 0, -1i), 1e-6));
}

TEST(Adiabatic, StudyValidatesTimes) {
  EXPECT_THROW(convergence_study(reference_loop(), 1.0, {1.0, 2.0}), Error);
  EXPECT_THROW(convergence_study(reference_loop(), 1.0, {1.0, 3.0, 2.0}), Error);
  EXPECT_THROW(convergence_study(reference_loop(), 0.0, {1.0, 2.0, 3.0}), Error);
}

TwoLevelLoop two_level_rectangle() {
  TwoLevelLoop loop;
  loop.segments = {{kPi / 4, 0.0}, {0.0, kPi / 2}, {-kPi / 4, 0.0}, {0.0, -kPi / 2}};
  loop.steps_per_segment = 1000;
  return loop;
}

TEST(TwoLevel, PhasesAreOppositeAndApproachSolidAngle) {
  const auto [stokes_plus, stokes_minus] = berry_phase_stokes(0.0, kPi / 4, 0.0, kPi / 2);
  const auto r = evolve_two_level(two_level_rectangle(), 1.0, 1000.0, 200000);
  EXPECT_NEAR(r.phi_plus, -r.phi_minus, 1e-9);
  EXPECT_LE(unitarity_residual<2>(r.propagator), 1e-10);
  EXPECT_NEAR(std::abs(r.phi_plus), stokes_plus, 2e-2);
  EXPECT_NEAR(std::abs(r.phi_minus), -stokes_minus, 2e-2);
}

TEST(TwoLevel, OpenLoopRejected) {
  TwoLevelLoop loop = two_level_rectangle();
  loop.segments.pop_back();
  EXPECT_THROW(evolve_two_level(loop, 1.0, 10.0, 1000), Error);
}

}  // namespace
}  // namespace holo
