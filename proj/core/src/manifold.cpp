#include "holo/manifold.hpp"

#include <cmath>
#include <numbers>

#include "holo/errors.hpp"

namespace holo {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::parse: return "ParseError";
    case ErrorKind::not_anti_hermitian: return "NotAntiHermitian";
    case ErrorKind::not_unitary: return "NotUnitary";
    case ErrorKind::invalid_pair: return "InvalidPair";
    case ErrorKind::pole_at_point: return "PoleAtPoint";
    case ErrorKind::not_tabulated: return "NotTabulated";
    case ErrorKind::loop_not_closed: return "LoopNotClosed";
    case ErrorKind::non_commuting_plane: return "NonCommutingPlane";
  }
  return "Unknown";
}

namespace {

constexpr std::array<std::string_view, 8> kCoordinateNames = {
    "theta13", "theta14", "theta23", "theta24", "phi13", "phi14", "phi23", "phi24"};

double wrap(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  // fmod of a tiny negative can round up to exactly `period`.
  return r >= period ? 0.0 : r;
}

}  // namespace

std::string name(CoordinateIndex c) { return std::string(kCoordinateNames[c.flat()]); }

std::optional<CoordinateIndex> parse_coordinate(std::string_view text) {
  for (int k = 0; k < 8; ++k) {
    if (kCoordinateNames[k] == text) return CoordinateIndex::from_flat(k);
  }
  return std::nullopt;
}

std::string coordinate_names() {
  std::string out;
  for (auto n : kCoordinateNames) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

GrassmannianPoint GrassmannianPoint::displaced(const CoordVector& offset, double fraction) const {
  GrassmannianPoint out = *this;
  for (int k = 0; k < 8; ++k) out.coords[k] += fraction * offset[k];
  return out;
}

GrassmannianPoint canonicalized(const GrassmannianPoint& p) {
  GrassmannianPoint out = p;
  for (int k = 0; k < 4; ++k) out.coords[k] = wrap(p.coords[k], std::numbers::pi);
  for (int k = 4; k < 8; ++k) out.coords[k] = wrap(p.coords[k], 2.0 * std::numbers::pi);
  return out;
}

std::array<RotationConvention, 8> all_conventions() {
  std::array<RotationConvention, 8> out;
  int k = 0;
  for (auto scale : {AngleScale::full, AngleScale::half}) {
    for (auto offdiag : {OffdiagPhase::plus_i, OffdiagPhase::minus_i}) {
      for (auto orient :
           {PhaseOrientation::e_plus_iphi_upper, PhaseOrientation::e_minus_iphi_upper}) {
        out[k++] = RotationConvention{scale, offdiag, orient};
      }
    }
  }
  return out;
}

std::string to_string(const RotationConvention& conv) {
  std::string out = conv.angle_scale == AngleScale::full ? "full" : "half";
  out += conv.offdiag_phase == OffdiagPhase::plus_i ? "/plus_i" : "/minus_i";
  out += conv.phase_orientation == PhaseOrientation::e_plus_iphi_upper ? "/e_plus_iphi_upper"
                                                                       : "/e_minus_iphi_upper";
  return out;
}

std::optional<RotationConvention> parse_convention(std::string_view text) {
  for (const auto& conv : all_conventions()) {
    if (to_string(conv) == text) return conv;
  }
  return std::nullopt;
}

CMat2 rotation_kernel(double theta, double phi, const RotationConvention& conv) {
  const double angle = conv.angle_scale == AngleScale::full ? theta : 0.5 * theta;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Complex prefactor =
      conv.offdiag_phase == OffdiagPhase::plus_i ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
  const double upper_sign =
      conv.phase_orientation == PhaseOrientation::e_plus_iphi_upper ? 1.0 : -1.0;
  const Complex upper = std::polar(1.0, upper_sign * phi);

  CMat2 k;
  k(0, 0) = c;
  k(0, 1) = prefactor * upper * s;
  k(1, 0) = prefactor * std::conj(upper) * s;
  k(1, 1) = c;
  return k;
}

CMat4 elementary_rotation(int i, int j, double theta, double phi, const RotationConvention& conv) {
  if (!((i == 1 || i == 2) && (j == 3 || j == 4))) {
    raise(ErrorKind::invalid_pair,
          "elementary_rotation: (" + std::to_string(i) + "," + std::to_string(j) +
              ") is not an allowed coupling; i must be 1 or 2 and j must be 3 or 4");
  }
  const CMat2 k = rotation_kernel(theta, phi, conv);
  CMat4 u = CMat4::Identity();
  const int a = i - 1;
  const int b = j - 1;
  u(a, a) = k(0, 0);
  u(a, b) = k(0, 1);
  u(b, a) = k(1, 0);
  u(b, b) = k(1, 1);
  return u;
}

CMat4 elementary_rotation(Pair p, double theta, double phi, const RotationConvention& conv) {
  const auto [i, j] = levels(p);
  return elementary_rotation(i, j, theta, phi, conv);
}

CMat4 build_unitary(const GrassmannianPoint& p, const RotationConvention& conv) {
  CMat4 u = elementary_rotation(Pair::p13, p.theta(Pair::p13), p.phi(Pair::p13), conv);
  for (Pair pair : {Pair::p14, Pair::p23, Pair::p24}) {
    u = u * elementary_rotation(pair, p.theta(pair), p.phi(pair), conv);
  }
  return u;
}

CMat2 build_two_level(double theta, double phi) {
  return rotation_kernel(theta, phi,
                         RotationConvention{AngleScale::half, OffdiagPhase::plus_i,
                                            PhaseOrientation::e_plus_iphi_upper});
}

CMat4 bare_hamiltonian(double omega) {
  CMat4 h = CMat4::Zero();
  h(0, 0) = h(1, 1) = 0.5 * omega;
  h(2, 2) = h(3, 3) = -0.5 * omega;
  return h;
}

CMat4 hamiltonian(const GrassmannianPoint& p, double omega, const RotationConvention& conv) {
  if (!(omega > 0.0)) {
    raise(ErrorKind::invalid_argument, "hamiltonian: omega must be positive");
  }
  const CMat4 u = build_unitary(p, conv);
  return u * bare_hamiltonian(omega) * u.adjoint();
}

}  // namespace holo
