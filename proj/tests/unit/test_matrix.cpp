#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "holo/errors.hpp"
#include "holo/matrix.hpp"
#include "support.hpp"

namespace holo {
namespace {

using namespace std::complex_literals;
using test::mat2;
using test::near;

CMat4 random_antihermitian(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> d(-scale, scale);
  CMat4 m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = Complex(d(rng), d(rng));
  }
  return antihermitian_part<4>(m);
}

TEST(Dagger, IdentityAndPureImaginary) {
  EXPECT_EQ(dagger<2>(identity<2>()), identity<2>());
  EXPECT_EQ(dagger<2>(mat2(1i, 0, 0, -1i)), mat2(-1i, 0, 0, 1i));
}

TEST(Dagger, InvolutionIsBitExactAndIsometric) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    CMat4 m;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) m(i, j) = Complex(d(rng), d(rng));
    }
    EXPECT_EQ(dagger<4>(dagger<4>(m)), m);
    EXPECT_DOUBLE_EQ(dagger<4>(m).norm(), m.norm());
    EXPECT_EQ(dagger<4>(m)(1, 2), std::conj(m(2, 1)));
  }
}

TEST(Expm, ZeroGivesIdentity) {
  EXPECT_TRUE(near<2>(expm_antihermitian(CMat2(CMat2::Zero())), identity<2>(), 1e-15));
  EXPECT_TRUE(near<4>(expm_antihermitian(CMat4(CMat4::Zero())), identity<4>(), 1e-15));
}

TEST(Expm, DiagonalPhase) {
  const CMat2 m = mat2(0, 0, 0, -0.5i * std::numbers::pi);
  EXPECT_TRUE(near<2>(expm_antihermitian(m), mat2(1, 0, 0, -1i), 1e-15));
}

TEST(Expm, PauliXRotationByPi) {
  const double pi = std::numbers::pi;
  const CMat2 m = mat2(0, 1i * pi, 1i * pi, 0);
  EXPECT_TRUE(near<2>(expm_antihermitian(m), -identity<2>(), 1e-14));
}

TEST(Expm, MatchesEigenSeriesForSmallInput) {
  // exp(a) = I + a + a^2/2 + a^3/6 + ..., summed far enough for |a| ~ 0.1
  std::mt19937_64 rng(5);
  const CMat4 a = random_antihermitian(rng, 0.05);
  CMat4 term = identity<4>(), series = identity<4>();
  for (int k = 1; k < 20; ++k) {
    term = (term * a / static_cast<double>(k)).eval();
    series += term;
  }
  EXPECT_TRUE(near<4>(expm_antihermitian(a), series, 1e-14));
}

TEST(Expm, UnitaryAndInverseForLargeEntries) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const CMat4 m = random_antihermitian(rng, 10.0);
    const CMat4 u = expm_antihermitian(m);
    EXPECT_LE(unitarity_residual<4>(u), 1e-12);
    EXPECT_LE(max_abs_difference<4>(u * expm_antihermitian(CMat4(-m)), identity<4>()), 1e-11);
  }
}

TEST(Expm, RejectsNonAntiHermitian) {
  try {
    expm_antihermitian(mat2(1, 0, 0, 0));
    FAIL() << "expected not_anti_hermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_anti_hermitian);
  }
  // Just inside the default tolerance is accepted.
  EXPECT_NO_THROW(expm_antihermitian(mat2(5e-13, 0, 0, 0)));
  EXPECT_THROW(expm_antihermitian(mat2(5e-13, 0, 0, 0), 1e-14), Error);
}

TEST(UnitaryDistance, FrobeniusExamples) {
  EXPECT_DOUBLE_EQ(unitary_distance<2>(identity<2>(), identity<2>()), 0.0);
  EXPECT_DOUBLE_EQ(unitary_distance<2>(identity<2>(), -identity<2>()), std::sqrt(8.0));
  EXPECT_DOUBLE_EQ(unitary_distance<2>(mat2(1, 0, 0, -1i), mat2(1, 0, 0, 1i)), 2.0);
  EXPECT_DOUBLE_EQ(unitary_distance<4>(identity<4>(), -identity<4>()), 4.0);
}

TEST(UnitaryDistance, Symmetric) {
  const CMat2 a = mat2(1, 2i, 3, 4), b = mat2(0, 1, 1i, -2);
  EXPECT_DOUBLE_EQ(unitary_distance<2>(a, b), unitary_distance<2>(b, a));
}

TEST(SubspaceBlock, DiagonalAndIdentity) {
  CMat4 d = CMat4::Zero();
  d.diagonal() << 1.0, 2.0, 3.0, 4.0;
  EXPECT_EQ(subspace_block(d, Subspace::plus), mat2(1, 0, 0, 2));
  EXPECT_EQ(subspace_block(d, Subspace::minus), mat2(3, 0, 0, 4));
  EXPECT_EQ(subspace_block(identity<4>(), Subspace::plus), identity<2>());
}

TEST(SubspaceBlock, OffBlockNorm) {
  CMat4 m = identity<4>();
  EXPECT_DOUBLE_EQ(off_block_norm(m), 0.0);
  m(0, 2) = 3.0;
  m(3, 1) = 4.0i;
  EXPECT_DOUBLE_EQ(off_block_norm(m), 5.0);
}

TEST(PolarUnitary, ProjectsNearUnitary) {
  const CMat2 u = expm_antihermitian(mat2(0.3i, 0.2, -0.2, -0.1i));
  const CMat2 noisy = 1.01 * u;
  EXPECT_TRUE(near<2>(polar_unitary(noisy), u, 1e-14));
  EXPECT_THROW(polar_unitary(CMat2(CMat2::Zero())), Error);
}

TEST(HermitianEigenvalues, Ascending) {
  const CMat2 h = mat2(0, 1, 1, 0);
  const auto ev = hermitian_eigenvalues(h);
  EXPECT_NEAR(ev(0), -1.0, 1e-15);
  EXPECT_NEAR(ev(1), 1.0, 1e-15);
}

}  // namespace
}  // namespace holo
