#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "holo/connection.hpp"
#include "holo/manifold.hpp"
#include "holo/matrix.hpp"

namespace holo {

/// Closed piecewise-linear path: starts at `base` and walks each segment
/// offset in turn. Every segment is split into `steps_per_segment` pieces.
struct Loop {
  GrassmannianPoint base{};
  std::vector<CoordVector> segments{};
  int steps_per_segment = 1;

  static constexpr double kClosureTol = 1e-12;

  /// Largest |sum of offsets| over the eight coordinates.
  double closure_gap() const;
  bool closed(double tol = kClosureTol) const { return closure_gap() <= tol; }

  /// Throws invalid_argument for steps_per_segment < 1 and loop_not_closed
  /// for an open path.
  void validate() const;

  /// Same geometric path traversed backwards.
  Loop reversed() const;

  /// Start of segment k; vertex(segments.size()) is the end point.
  GrassmannianPoint vertex(std::size_t k) const;

  std::size_t total_steps() const {
    return segments.size() * static_cast<std::size_t>(steps_per_segment);
  }
};

/// Rectangle [sigma_range] x [prime_range] in the (sigma, sigma') plane; the
/// remaining six coordinates are taken from `fixed`.
struct PlanarRegion {
  CoordinateIndex sigma{};
  CoordinateIndex sigma_prime{};
  std::array<double, 2> sigma_range{};
  std::array<double, 2> prime_range{};
  GrassmannianPoint fixed{};

  void validate() const;
  double area() const {
    return (sigma_range[1] - sigma_range[0]) * (prime_range[1] - prime_range[0]);
  }
  GrassmannianPoint point(double s, double t) const;
};

struct HolonomyPair {
  CMat2 gamma_plus = CMat2::Identity();
  CMat2 gamma_minus = CMat2::Identity();

  const CMat2& operator[](Subspace s) const { return s == Subspace::plus ? gamma_plus : gamma_minus; }
  CMat2& operator[](Subspace s) { return s == Subspace::plus ? gamma_plus : gamma_minus; }
};

enum class ConnectionSource { numeric, analytic };

/// geometric: P exp(+oint A), the holonomy as defined.
/// schrodinger: P exp(-oint A), the factor an adiabatically driven state
/// actually picks up in the frame U(sigma0) (A = U^dagger dU enters the
/// rotating-frame Hamiltonian as +i A).
enum class ExponentSign { geometric, schrodinger };

struct OrderedOptions {
  ConnectionSource source = ConnectionSource::numeric;
  ExponentSign sign = ExponentSign::geometric;
  double h = kConnectionStep;
};

/// Midpoint product integrator; later points multiply on the left.
/// Throws loop_not_closed for an open loop and pole_at_point when the analytic
/// source hits a chart singularity.
HolonomyPair holonomy_ordered(const Loop& loop, const RotationConvention& conv = {},
                              const OrderedOptions& options = {});
CMat2 holonomy_ordered(const Loop& loop, Subspace s, const RotationConvention& conv = {},
                       const OrderedOptions& options = {});

enum class CommutationCheck {
  pointwise,    // [A_sigma(x), A_sigma'(x)] at each grid point x
  along_plane,  // every pair of generators over the grid, at different points too
};

struct StokesOptions {
  double quad_tol = 1e-7;
  int max_depth = 5;
  CommutationCheck check = CommutationCheck::pointwise;
  double commutator_tol = 1e-6;
  int check_grid = 5;  // points per axis for the commutator sampling
  double h = kFieldStep;
};

/// Largest commutator found by the requested sampling over the region.
double plane_commutator(const PlanarRegion& region, Subspace s, const RotationConvention& conv,
                        CommutationCheck check, int grid = 5);

/// Adaptive Gauss-Legendre integral of the numeric F_{sigma sigma'} over the region.
CMat2 curvature_flux(const PlanarRegion& region, Subspace s, const RotationConvention& conv = {},
                     const StokesOptions& options = {});

/// exp(curvature_flux). Zero area gives the identity without any check;
/// otherwise throws non_commuting_plane when the commutator sampling exceeds
/// options.commutator_tol.
CMat2 holonomy_stokes(const PlanarRegion& region, Subspace s, const RotationConvention& conv = {},
                      const StokesOptions& options = {});

/// Closed-form two-level phases (phi+, phi-) = (+-) int int sin 2theta.
std::pair<double, double> berry_phase_stokes(double theta_lo, double theta_hi, double phi_lo,
                                             double phi_hi);

/// Counterclockwise boundary: sigma forward, sigma' forward, sigma back,
/// sigma' back, with steps / 4 pieces per side.
Loop loop_boundary(const PlanarRegion& region, int steps);

/// The rectangle traced by a four-sided axis-aligned loop, if it is one.
/// `second` is true when the loop runs clockwise relative to the returned
/// (sigma, sigma') orientation.
std::optional<std::pair<PlanarRegion, bool>> region_from_loop(const Loop& loop);

}  // namespace holo
