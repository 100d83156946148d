#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "holo/matrix.hpp"

namespace holo {

// ---------------------------------------------------------------------------
// Coordinates of the control manifold
// ---------------------------------------------------------------------------

/// The four allowed two-level couplings |i> <-> |j>, i in {1,2}, j in {3,4}.
/// There are no couplings inside a degenerate pair.
enum class Pair { p13 = 0, p14 = 1, p23 = 2, p24 = 3 };

inline constexpr std::array<Pair, 4> kAllPairs = {Pair::p13, Pair::p14, Pair::p23, Pair::p24};

/// 1-based level indices (i, j) of a coupling.
constexpr std::pair<int, int> levels(Pair p) {
  switch (p) {
    case Pair::p13: return {1, 3};
    case Pair::p14: return {1, 4};
    case Pair::p23: return {2, 3};
    case Pair::p24: return {2, 4};
  }
  return {0, 0};
}

enum class CoordKind { theta = 0, phi = 1 };

/// One of the eight real coordinates theta_ij / phi_ij.
struct CoordinateIndex {
  CoordKind kind = CoordKind::theta;
  Pair pair = Pair::p13;

  /// Flat position: theta13, theta14, theta23, theta24, phi13, phi14, phi23, phi24.
  constexpr int flat() const {
    return static_cast<int>(kind) * 4 + static_cast<int>(pair);
  }
  static constexpr CoordinateIndex from_flat(int k) {
    return {static_cast<CoordKind>(k / 4), static_cast<Pair>(k % 4)};
  }

  constexpr auto operator<=>(const CoordinateIndex& other) const { return flat() <=> other.flat(); }
  constexpr bool operator==(const CoordinateIndex& other) const { return flat() == other.flat(); }
};

constexpr CoordinateIndex theta(Pair p) { return {CoordKind::theta, p}; }
constexpr CoordinateIndex phi(Pair p) { return {CoordKind::phi, p}; }

inline constexpr std::array<CoordinateIndex, 8> kAllCoordinates = {
    theta(Pair::p13), theta(Pair::p14), theta(Pair::p23), theta(Pair::p24),
    phi(Pair::p13),   phi(Pair::p14),   phi(Pair::p23),   phi(Pair::p24)};

/// "theta13", ..., "phi24".
std::string name(CoordinateIndex c);
std::optional<CoordinateIndex> parse_coordinate(std::string_view text);
/// Comma separated list of the eight valid names, for diagnostics.
std::string coordinate_names();

using CoordVector = std::array<double, 8>;

/// A point sigma of the control manifold. Raw points are not canonicalised;
/// angles are plain radians and may lie anywhere on the real line.
struct GrassmannianPoint {
  CoordVector coords{};

  double operator[](CoordinateIndex c) const { return coords[c.flat()]; }
  double& operator[](CoordinateIndex c) { return coords[c.flat()]; }

  double theta(Pair p) const { return coords[static_cast<int>(p)]; }
  double phi(Pair p) const { return coords[4 + static_cast<int>(p)]; }

  GrassmannianPoint shifted(CoordinateIndex c, double delta) const {
    GrassmannianPoint out = *this;
    out[c] += delta;
    return out;
  }

  GrassmannianPoint displaced(const CoordVector& offset, double fraction = 1.0) const;

  bool operator==(const GrassmannianPoint&) const = default;
};

/// theta wrapped into [0, pi), phi into [0, 2 pi). Never applied implicitly.
GrassmannianPoint canonicalized(const GrassmannianPoint& p);

// ---------------------------------------------------------------------------
// Two-level kernel conventions
// ---------------------------------------------------------------------------

enum class AngleScale { full, half };
enum class OffdiagPhase { plus_i, minus_i };
enum class PhaseOrientation { e_plus_iphi_upper, e_minus_iphi_upper };

/// Which 2x2 unitary is embedded for each coupling:
///   [[cos a, c e^{+-i phi} sin a], [c e^{-+i phi} sin a, cos a]]
/// with a = theta (full) or theta/2 (half), c = +i or -i, and the sign of the
/// phase in the upper-right entry chosen by the orientation.
struct RotationConvention {
  AngleScale angle_scale = AngleScale::full;
  OffdiagPhase offdiag_phase = OffdiagPhase::plus_i;
  PhaseOrientation phase_orientation = PhaseOrientation::e_plus_iphi_upper;

  auto operator<=>(const RotationConvention&) const = default;
};

/// The eight candidates in lexicographic order (the default convention first).
std::array<RotationConvention, 8> all_conventions();

/// e.g. "full/plus_i/e_plus_iphi_upper".
std::string to_string(const RotationConvention& conv);
std::optional<RotationConvention> parse_convention(std::string_view text);

// ---------------------------------------------------------------------------
// Unitaries and Hamiltonians
// ---------------------------------------------------------------------------

/// The 2x2 kernel of a convention.
CMat2 rotation_kernel(double theta, double phi, const RotationConvention& conv);

/// Identity on four levels except rows/cols (i, j), which carry the kernel.
/// Throws ErrorKind::invalid_pair unless i in {1,2} and j in {3,4}.
CMat4 elementary_rotation(int i, int j, double theta, double phi,
                          const RotationConvention& conv = {});
CMat4 elementary_rotation(Pair p, double theta, double phi, const RotationConvention& conv = {});

/// U(sigma) = U(z13) U(z14) U(z23) U(z24), multiplied left to right.
CMat4 build_unitary(const GrassmannianPoint& p, const RotationConvention& conv = {});

/// The two-level unitary [[cos(t/2), i e^{i phi} sin(t/2)], [i e^{-i phi} sin(t/2), cos(t/2)]].
CMat2 build_two_level(double theta, double phi);

/// H0 = omega/2 diag(1, 1, -1, -1).
CMat4 bare_hamiltonian(double omega);

/// H = U(sigma) H0 U(sigma)^dagger. Throws invalid_argument unless omega > 0.
CMat4 hamiltonian(const GrassmannianPoint& p, double omega, const RotationConvention& conv = {});

}  // namespace holo
