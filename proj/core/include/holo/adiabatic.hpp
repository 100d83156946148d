#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "holo/holonomy.hpp"
#include "holo/manifold.hpp"
#include "holo/matrix.hpp"

namespace holo {

/// Speed along each segment. Every segment gets the same share of the total
/// time; smoothstep (3u^2 - 2u^3) starts and stops each side at rest, so the
/// corners of a polygonal loop do not kick the state.
enum class SpeedProfile { uniform, smoothstep };

struct Schedule {
  Loop loop{};
  double total_time = 1.0;  // units of 1/omega
  int time_steps = 100;
  SpeedProfile profile = SpeedProfile::smoothstep;

  static constexpr int kMinSteps = 100;

  /// Throws invalid_argument (bad T or N) or loop_not_closed.
  void validate() const;
  GrassmannianPoint point_at(double t) const;
};

/// Fraction of a segment covered after local time fraction u in [0, 1].
double profile_fraction(SpeedProfile profile, double u);

/// Time-ordered propagator of i d/dt psi = H(t) psi with one exact
/// exponential of the midpoint Hamiltonian per step. Because H = U H0 U^dagger
/// that exponential is U diag(e^{-i w dt/2}, .., e^{+i w dt/2}) U^dagger.
CMat4 evolve(const Schedule& sched, double omega = 1.0, const RotationConvention& conv = {});

struct AdiabaticResult {
  CMat4 total_unitary = CMat4::Identity();
  HolonomyPair geometric{};
  double leakage = 0.0;
  /// Distances to a supplied prediction; NaN when none was given.
  double holonomy_error_plus = 0.0;
  double holonomy_error_minus = 0.0;
  /// True when a block was too far from unitary (> 0.05) to be projected and
  /// is reported as-is.
  bool unprojected = false;
};

inline constexpr double kPolarProjectionLimit = 0.05;

/// Strips e^{-+i w T / 2} from the two diagonal blocks of a propagator written
/// in the eigenbasis of H at the loop base. Throws not_unitary when
/// ||u^dagger u - I||_F > 1e-9.
AdiabaticResult extract_geometric(const CMat4& u_total, double total_time, double omega = 1.0,
                                  const std::optional<HolonomyPair>& prediction = std::nullopt);

struct ConvergenceRow {
  double total_time = 0.0;
  int steps = 0;
  double leakage = 0.0;
  double err_plus = 0.0;
  double err_minus = 0.0;
  HolonomyPair geometric{};
};

struct ConvergenceOptions {
  double steps_per_unit_time = 200.0;  // N = this * omega * T (at least 100)
  SpeedProfile profile = SpeedProfile::smoothstep;
  /// Override N for every T when > 0.
  int fixed_steps = 0;
};

/// Path-ordered prediction a driven state should follow on this loop.
HolonomyPair adiabatic_prediction(const Loop& loop, const RotationConvention& conv = {});

/// A single run at total time T, compared with `prediction` in the eigenbasis
/// at the loop base.
ConvergenceRow adiabatic_run(const Loop& loop, double omega, double total_time,
                             const HolonomyPair& prediction, const RotationConvention& conv = {},
                             const ConvergenceOptions& options = {});

/// One adiabatic run per T, run concurrently and returned in T order. The
/// prediction is the path-ordered holonomy with the sign a driven state
/// actually acquires (ExponentSign::schrodinger).
std::vector<ConvergenceRow> convergence_study(const Loop& loop, double omega,
                                              const std::vector<double>& times,
                                              const RotationConvention& conv = {},
                                              const ConvergenceOptions& options = {});

// ---------------------------------------------------------------------------
// Two-level baseline
// ---------------------------------------------------------------------------

/// Closed polygon in the (theta, phi) plane of a single two-level system.
struct TwoLevelLoop {
  double theta0 = 0.0;
  double phi0 = 0.0;
  std::vector<std::pair<double, double>> segments{};  // (dtheta, dphi)
  int steps_per_segment = 1;

  void validate() const;
};

struct TwoLevelResult {
  CMat2 propagator = CMat2::Identity();
  double phi_plus = 0.0;
  double phi_minus = 0.0;
};

/// Simulates H = w/2 K sigma_z K^dagger with K the 2x2 kernel of `kernel`
/// (the convention selected for the four-level model by default), then reads
/// the phases off the diagonal in the eigenbasis at the loop base after
/// removing e^{-+i w T / 2}.
TwoLevelResult evolve_two_level(const TwoLevelLoop& loop, double omega, double total_time,
                                int time_steps, const RotationConvention& kernel = {},
                                SpeedProfile profile = SpeedProfile::smoothstep);

}  // namespace holo
