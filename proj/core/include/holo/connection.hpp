#pragma once

#include "holo/manifold.hpp"
#include "holo/matrix.hpp"

namespace holo {

/// One component A_c restricted to a degenerate subspace.
struct ConnectionBlock {
  CoordinateIndex coord{};
  Subspace subspace = Subspace::plus;
  CMat2 matrix = CMat2::Zero();
  /// ||M + M^dagger||_F before anti-hermitisation (0 for analytic blocks).
  double raw_antihermiticity = 0.0;
};

struct FieldStrengthBlock {
  CoordinateIndex mu{};
  CoordinateIndex nu{};
  Subspace subspace = Subspace::plus;
  CMat2 matrix = CMat2::Zero();
};

enum class Method { numeric, analytic };

// First derivatives of U use a small step; the curvature differences an
// already differenced quantity, so both of its levels use the larger one.
inline constexpr double kConnectionStep = 1e-6;
inline constexpr double kFieldStep = 1e-4;

/// Full 4x4 U^dagger (dU/dsigma_c) by central differences, not projected and
/// not anti-hermitised.
CMat4 connection_generator(const GrassmannianPoint& p, CoordinateIndex c,
                           const RotationConvention& conv = {}, double h = kConnectionStep);

/// U^dagger times the directional derivative of U along `offset`, scaled by
/// |offset|. Equals sum_c A_c offset^c up to O(h^2).
CMat4 directional_generator(const GrassmannianPoint& p, const CoordVector& offset,
                            const RotationConvention& conv = {}, double h = kConnectionStep);

/// Block of U^dagger dU projected on a subspace and anti-hermitised.
ConnectionBlock connection_numeric(const GrassmannianPoint& p, CoordinateIndex c, Subspace s,
                                   const RotationConvention& conv = {},
                                   double h = kConnectionStep);

/// Transcribed closed form. Throws ErrorKind::pole_at_point on chart singularities.
ConnectionBlock connection_analytic(const GrassmannianPoint& p, CoordinateIndex c, Subspace s);

/// F_{mu nu} = d_mu A_nu - d_nu A_mu + [A_mu, A_nu].
/// Numeric: nested central differences with step h, computed in a canonical
/// (mu, nu) order so that swapping the arguments flips the sign exactly.
/// Analytic: throws ErrorKind::not_tabulated for components that are not printed.
FieldStrengthBlock field_strength(const GrassmannianPoint& p, CoordinateIndex mu,
                                  CoordinateIndex nu, Subspace s,
                                  const RotationConvention& conv = {},
                                  Method method = Method::numeric, double h = kFieldStep);

/// ||[A_mu, A_nu]||_F from numeric connections.
double commutator_norm(const GrassmannianPoint& p, CoordinateIndex mu, CoordinateIndex nu,
                       Subspace s, const RotationConvention& conv = {},
                       double h = kConnectionStep);

}  // namespace holo
