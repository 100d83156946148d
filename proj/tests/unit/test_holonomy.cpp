#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "holo/errors.hpp"
#include "holo/holonomy.hpp"
#include "support.hpp"

namespace holo {
namespace {

using namespace std::complex_literals;
using test::mat2;
using test::near;

constexpr double kPi = std::numbers::pi;
constexpr auto P13 = Pair::p13, P14 = Pair::p14, P23 = Pair::p23, P24 = Pair::p24;
constexpr auto kPlus = Subspace::plus, kMinus = Subspace::minus;

PlanarRegion reference_region() {
  PlanarRegion r;
  r.sigma = theta(P24);
  r.sigma_prime = phi(P24);
  r.sigma_range = {0.0, kPi / 4};
  r.prime_range = {0.0, kPi};
  return r;
}

PlanarRegion exchange_region() {
  PlanarRegion r;
  r.sigma = theta(P24);
  r.sigma_prime = phi(P13);
  r.fixed = {{0.9, 0.6, 0.8, 0.0, 0.0, 0.4, 1.1, 0.3}};
  r.sigma_range = {0.2, 1.0};
  r.prime_range = {0.0, 1.0};
  return r;
}

TEST(Loop, ClosureAndReverse) {
  Loop loop = loop_boundary(reference_region(), 400);
  EXPECT_EQ(loop.segments.size(), 4u);
  EXPECT_EQ(loop.steps_per_segment, 100);
  EXPECT_EQ(loop.total_steps(), 400u);
  EXPECT_TRUE(loop.closed());
  const Loop back = loop.reversed();
  EXPECT_TRUE(back.closed());
  EXPECT_EQ(back.segments.front()[phi(P24).flat()], kPi);

  loop.segments.pop_back();
  try {
    loop.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::loop_not_closed);
  }
  EXPECT_THROW(holonomy_ordered(loop), Error);
}

TEST(Loop, BoundaryNeedsFourSteps) {
  EXPECT_THROW(loop_boundary(reference_region(), 3), Error);
}

TEST(HolonomyOrdered, RetracedPathIsIdentity) {
  Loop loop;
  loop.base = test::generic_point();
  CoordVector out{};
  out[phi(P13).flat()] = 0.7;
  out[theta(P23).flat()] = -0.4;
  CoordVector back{};
  back[phi(P13).flat()] = -0.7;
  back[theta(P23).flat()] = 0.4;
  loop.segments = {out, back};
  loop.steps_per_segment = 200;
  const auto g = holonomy_ordered(loop);
  EXPECT_TRUE(near<2>(g.gamma_plus, identity<2>(), 1e-9));
  EXPECT_TRUE(near<2>(g.gamma_minus, identity<2>(), 1e-9));
}

TEST(HolonomyOrdered, ReferenceRectangle) {
  const auto g = holonomy_ordered(loop_boundary(reference_region(), 40000));
  EXPECT_TRUE(near<2>(g.gamma_plus, mat2(1, 0, 0, -1i), 1e-6));
  EXPECT_TRUE(near<2>(g.gamma_minus, mat2(1, 0, 0, 1i), 1e-6));
  // Opposite phases on the two subspaces.
  EXPECT_NEAR(std::arg(g.gamma_plus(1, 1)), -std::arg(g.gamma_minus(1, 1)), 1e-8);
}

TEST(HolonomyOrdered, AnalyticSourceAndSchrodingerSign) {
  const Loop loop = loop_boundary(reference_region(), 4000);
  OrderedOptions analytic;
  analytic.source = ConnectionSource::analytic;
  const auto a = holonomy_ordered(loop, {}, analytic);
  const auto n = holonomy_ordered(loop);
  EXPECT_TRUE(near<2>(a.gamma_plus, n.gamma_plus, 1e-8));
  EXPECT_TRUE(near<2>(a.gamma_minus, n.gamma_minus, 1e-8));

  OrderedOptions physical;
  physical.sign = ExponentSign::schrodinger;
  const auto s = holonomy_ordered(loop, {}, physical);
  EXPECT_TRUE(near<2>(s.gamma_plus, mat2(1, 0, 0, 1i), 1e-6));
}

TEST(HolonomyOrdered, FrozenExchangeRectangle) {
  // tests/oracles/generate.py: adaptive ODE solution of dG = A G, rtol 1e-12.
  const auto g = holonomy_ordered(loop_boundary(exchange_region(), 10000));
  const CMat2 plus = mat2(Complex(0.9676176540967518, 0.046778238475847424),
                          Complex(-0.0034979796646067395, 0.24802345861561043),
                          Complex(0.06874554314209907, 0.23833153837351115),
                          Complex(0.9210739847195878, -0.30015802969005));
  const CMat2 minus = mat2(Complex(0.9702958918969875, -0.030112938087312052),
                           Complex(-0.15498044168024472, -0.18330345284297225),
                           Complex(0.1978135000051635, -0.13597393994170132),
                           Complex(0.9280499751592352, 0.2847879043769338));
  EXPECT_TRUE(near<2>(g.gamma_plus, plus, 1e-8));
  EXPECT_TRUE(near<2>(g.gamma_minus, minus, 1e-8));
  EXPECT_GT(std::abs(g.gamma_plus(0, 1)), 0.1);
}

TEST(HolonomyOrdered, SecondOrderConvergence) {
  const auto region = exchange_region();
  auto at = [&](int steps) { return holonomy_ordered(loop_boundary(region, steps)).gamma_plus; };
  const CMat2 g1 = at(40), g2 = at(80), g3 = at(160), g4 = at(320);
  const double d1 = unitary_distance<2>(g1, g2), d2 = unitary_distance<2>(g2, g3),
               d3 = unitary_distance<2>(g3, g4);
  EXPECT_GE(d1 / d2, 3.0);
  EXPECT_GE(d2 / d3, 3.0);
}

TEST(HolonomyOrdered, ReparameterisationInvariance) {
  const Loop coarse = loop_boundary(exchange_region(), 12000);
  Loop split = coarse;
  split.segments.clear();
  for (const auto& seg : coarse.segments) {
    CoordVector a{}, b{};
    for (int k = 0; k < 8; ++k) {
      a[k] = 0.3 * seg[k];
      b[k] = 0.7 * seg[k];
    }
    split.segments.push_back(a);
    split.segments.push_back(b);
  }
  split.steps_per_segment = 2000;
  const auto g1 = holonomy_ordered(coarse), g2 = holonomy_ordered(split);
  EXPECT_LE(unitary_distance<2>(g1.gamma_plus, g2.gamma_plus), 1e-6);
  EXPECT_LE(unitary_distance<2>(g1.gamma_minus, g2.gamma_minus), 1e-6);
}

TEST(HolonomyOrdered, ReversalGivesDagger) {
  std::mt19937_64 rng(21);
  Loop loop;
  loop.base = test::random_point(rng);
  std::uniform_real_distribution<double> d(-0.6, 0.6);
  CoordVector sum{};
  for (int s = 0; s < 5; ++s) {
    CoordVector seg{};
    for (auto& x : seg) x = d(rng);
    for (int k = 0; k < 8; ++k) sum[k] += seg[k];
    loop.segments.push_back(seg);
  }
  CoordVector close{};
  for (int k = 0; k < 8; ++k) close[k] = -sum[k];
  loop.segments.push_back(close);
  loop.steps_per_segment = 2000;
  ASSERT_TRUE(loop.closed());

  const auto g = holonomy_ordered(loop);
  const auto r = holonomy_ordered(loop.reversed());
  for (Subspace s : {kPlus, kMinus}) {
    EXPECT_LE(unitarity_residual<2>(g[s]), 1e-9);
    EXPECT_TRUE(near<2>(r[s], CMat2(g[s].adjoint()), 1e-8));
  }
}

TEST(HolonomyStokes, ZeroAreaIsIdentity) {
  PlanarRegion r = reference_region();
  r.sigma_range = {0.3, 0.3};
  EXPECT_EQ(holonomy_stokes(r, kPlus), identity<2>());
  const auto g = holonomy_ordered(loop_boundary(r, 400));
  EXPECT_TRUE(near<2>(g.gamma_plus, identity<2>(), 1e-12));
}

TEST(HolonomyStokes, ReferenceRectangle) {
  EXPECT_TRUE(near<2>(holonomy_stokes(reference_region(), kPlus), mat2(1, 0, 0, -1i), 1e-7));
  EXPECT_TRUE(near<2>(holonomy_stokes(reference_region(), kMinus), mat2(1, 0, 0, 1i), 1e-7));
}

TEST(HolonomyStokes, NonCommutingPlaneRejected) {
  PlanarRegion r;
  r.sigma = theta(P23);
  r.sigma_prime = phi(P13);
  r.fixed = test::generic_point();
  r.sigma_range = {0.5, 0.9};
  r.prime_range = {0.1, 0.6};
  try {
    holonomy_stokes(r, kMinus);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::non_commuting_plane);
  }
}

TEST(HolonomyStokes, PointwiseCommutingIsNotEnoughOnExchangePlane) {
  // A_theta24 vanishes here, so the pointwise check passes, but A_phi13 at
  // different points does not commute: the abelian formula is off.
  const auto region = exchange_region();
  EXPECT_LE(plane_commutator(region, kPlus, {}, CommutationCheck::pointwise), 1e-6);
  EXPECT_GT(plane_commutator(region, kPlus, {}, CommutationCheck::along_plane), 1e-2);
  StokesOptions strict;
  strict.check = CommutationCheck::along_plane;
  EXPECT_THROW(holonomy_stokes(region, kPlus, {}, strict), Error);

  const auto ordered = holonomy_ordered(loop_boundary(region, 10000));
  EXPECT_GT(unitary_distance<2>(ordered.gamma_plus, holonomy_stokes(region, kPlus)), 1e-2);
}

// Planes on which every generator commutes with every other, so the abelian
// Stokes formula is exact.
struct AbelianPlane {
  CoordinateIndex sigma, sigma_prime;
  Subspace s;
};

TEST(HolonomyStokes, AgreesWithOrderedOnPathAbelianPlanes) {
  const AbelianPlane planes[] = {
      {theta(P24), phi(P24), kPlus},  {theta(P24), phi(P24), kMinus},
      {theta(P23), phi(P23), kPlus},  {theta(P14), phi(P14), kMinus},
      {theta(P24), phi(P14), kMinus}, {theta(P24), phi(P23), kPlus},
  };
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> side(0.2, 0.7), start(0.2, 1.0);
  for (const auto& pl : planes) {
    PlanarRegion r;
    r.sigma = pl.sigma;
    r.sigma_prime = pl.sigma_prime;
    r.fixed = test::random_point(rng, 0.2, 1.3);
    const double a = start(rng), b = start(rng);
    r.sigma_range = {a, a + side(rng)};
    r.prime_range = {b, b + side(rng)};
    ASSERT_LE(r.area(), 0.5);
    ASSERT_LE(plane_commutator(r, pl.s, {}, CommutationCheck::along_plane), 1e-6);
    const CMat2 ordered = holonomy_ordered(loop_boundary(r, 10000))[pl.s];
    EXPECT_LE(unitary_distance<2>(ordered, holonomy_stokes(r, pl.s)), 1e-5)
        << name(pl.sigma) << "," << name(pl.sigma_prime);
  }
}

TEST(BerryPhase, ClosedForm) {
  auto [p0, m0] = berry_phase_stokes(0.3, 0.3, 0.0, 1.0);
  EXPECT_EQ(p0, 0.0);
  EXPECT_EQ(m0, 0.0);
  auto [p1, m1] = berry_phase_stokes(0.0, kPi / 4, 0.0, kPi / 2);
  EXPECT_NEAR(p1, kPi / 4, 1e-15);
  EXPECT_EQ(m1, -p1);
  auto [p2, m2] = berry_phase_stokes(0.0, kPi / 2, 0.0, 2 * kPi);
  EXPECT_NEAR(p2, 2 * kPi, 1e-14);
  EXPECT_NEAR(m2, -2 * kPi, 1e-14);
  EXPECT_THROW(berry_phase_stokes(1.0, 0.0, 0.0, 1.0), Error);
}

TEST(RegionFromLoop, RoundTripAndOrientation) {
  const auto region = exchange_region();
  const auto found = region_from_loop(loop_boundary(region, 40));
  ASSERT_TRUE(found);
  EXPECT_FALSE(found->second);
  EXPECT_EQ(found->first.sigma, region.sigma);
  EXPECT_DOUBLE_EQ(found->first.sigma_range[1], region.sigma_range[1]);

  // Walked backwards the loop starts along sigma', so the axes come back
  // swapped and the orientation relative to them is again positive.
  const auto reversed = region_from_loop(loop_boundary(region, 40).reversed());
  ASSERT_TRUE(reversed);
  EXPECT_EQ(reversed->first.sigma, region.sigma_prime);
  EXPECT_FALSE(reversed->second);

  Loop clockwise = loop_boundary(region, 40);
  for (auto& seg : clockwise.segments) seg[region.sigma.flat()] = -seg[region.sigma.flat()];
  clockwise.base.coords[region.sigma.flat()] = region.sigma_range[1];
  const auto cw = region_from_loop(clockwise);
  ASSERT_TRUE(cw);
  EXPECT_TRUE(cw->second);
  EXPECT_DOUBLE_EQ(cw->first.sigma_range[0], region.sigma_range[0]);

  Loop diagonal;
  CoordVector a{}, b{};
  a[0] = 1.0;
  a[1] = 1.0;
  b[0] = -1.0;
  b[1] = -1.0;
  diagonal.segments = {a, b};
  EXPECT_FALSE(region_from_loop(diagonal));
}

TEST(PlanarRegion, Validation) {
  PlanarRegion r = reference_region();
  r.sigma_prime = r.sigma;
  EXPECT_THROW(r.validate(), Error);
  r = reference_region();
  r.prime_range = {1.0, 0.0};
  EXPECT_THROW(r.validate(), Error);
}

}  // namespace
}  // namespace holo
