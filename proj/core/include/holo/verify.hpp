#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holo/holonomy.hpp"
#include "holo/manifold.hpp"

namespace holo {

inline constexpr int kMinSamples = 20;
inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr double kPoleMargin = 0.1;

/// Seeded random points with every theta at least kPoleMargin away from a
/// multiple of pi/2, so no tan or cot of the tables is near its pole.
/// Angles are drawn from [0, 2 pi).
std::vector<GrassmannianPoint> sample_points(int samples, std::uint64_t seed);

struct ConventionScore {
  RotationConvention convention{};
  double total_residual = 0.0;  // sum over the 16 blocks of the worst elementwise residual
};

struct ConventionSearch {
  RotationConvention best{};
  std::vector<ConventionScore> table{};  // lexicographic candidate order
  /// Candidates within 1e-12 of the best total, best included.
  std::vector<RotationConvention> tied{};
  /// runner-up total / best total, the runner-up being the best candidate
  /// that is not tied. Infinite when the best total is zero.
  double margin = 0.0;
};

inline constexpr double kTieTol = 1e-12;

/// Throws invalid_argument for samples < 20.
ConventionSearch convention_search(int samples, std::uint64_t seed);

struct FormulaResult {
  std::string id;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::optional<std::string> repair{};  // "global_minus", "conjugate", "subspace_swap"
};

struct StructuralCheck {
  std::string name;
  double worst = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct ConformanceReport {
  RotationConvention convention{};
  std::uint64_t seed = kDefaultSeed;
  int samples = 0;
  double tol_connection = 1e-6;
  double tol_field = 1e-5;
  std::vector<FormulaResult> formulas{};
  std::vector<StructuralCheck> structural{};

  bool structural_pass() const;
  bool formulas_pass() const;
  bool all_pass() const { return structural_pass() && formulas_pass(); }
  const FormulaResult* find(const std::string& id) const;
};

/// Every tabulated formula against its numeric oracle, plus the structural
/// suite. Failing formulas carry the first repair that makes them pass, if any.
ConformanceReport run_conformance(const RotationConvention& conv, int samples, std::uint64_t seed,
                                  double tol_connection = 1e-6, double tol_field = 1e-5);

std::string to_json(const ConformanceReport& report);
std::string to_text(const ConformanceReport& report);

struct TriangleResult {
  /// Ordered-vs-Stokes distance per subspace; empty when the plane does not
  /// commute on that subspace and it was skipped.
  std::optional<double> plus{};
  std::optional<double> minus{};
};

/// Throws non_commuting_plane when neither subspace passes the commutator check.
TriangleResult stokes_triangle(const PlanarRegion& region, const RotationConvention& conv = {},
                               int steps = 10000, const StokesOptions& options = {});

}  // namespace holo
