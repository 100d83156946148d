#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "holo/manifold.hpp"
#include "holo/matrix.hpp"

namespace holo {

/// Closed-form connection and field-strength components, stored as data so a
/// failing comparison can be traced back to the exact printed expression.
///
/// A formula is   prefactor * [[e11, e12], [e21, e22]]
/// where every entry is a sum of terms
///   coefficient * phase(phi) * prod_k trig_k(multiple_k * theta_pair_k)^power_k.
/// Entries printed as "(X)_21 = (X)_12^*" are stored as the anti-hermitian
/// partner -conj(e12), which is what the printed matrices must satisfy.
namespace formulas {

enum class Trig { sin, cos, tan, cot };

struct TrigFactor {
  Trig fn = Trig::sin;
  Pair pair = Pair::p13;
  int multiple = 1;
  int power = 1;
};

/// exp(i k.phi), cos(k.phi), sin(k.phi) or 1, with k indexed by pair
/// (phi13, phi14, phi23, phi24).
struct PhaseFactor {
  enum class Kind { none, exp, cos, sin };
  Kind kind = Kind::none;
  std::array<int, 4> k{};
};

struct Term {
  Complex coefficient{1.0, 0.0};
  PhaseFactor phase{};
  std::vector<TrigFactor> trig{};
};

using Entry = std::vector<Term>;  // empty entry == 0

enum class Kind { connection, field_strength };

struct Formula {
  std::string id;  // "A+_theta13", "F-_theta24_phi13", ...
  Kind kind = Kind::connection;
  Subspace subspace = Subspace::plus;
  CoordinateIndex mu{};
  std::optional<CoordinateIndex> nu{};  // field strengths only
  Term prefactor{};
  std::array<Entry, 4> entries{};  // row-major 11, 12, 21, 22
  bool lower_is_partner = false;   // e21 := -conj(e12)
  bool identically_zero() const;
};

/// Every transcribed formula: the sixteen connection blocks followed by the
/// field-strength components (including the stated zero identities).
const std::vector<Formula>& table();

const Formula* find_connection(CoordinateIndex c, Subspace s);

/// Field-strength lookup honouring antisymmetry; `sign` is -1 when the table
/// stores the (nu, mu) ordering.
struct FieldLookup {
  const Formula* formula = nullptr;
  double sign = 1.0;
};
std::optional<FieldLookup> find_field(CoordinateIndex mu, CoordinateIndex nu, Subspace s);

/// Denominators closer to zero than this raise ErrorKind::pole_at_point.
inline constexpr double kPoleEpsilon = 1e-12;

/// Evaluate at a point. Throws ErrorKind::pole_at_point when a tan or cot
/// factor sits on its singularity.
CMat2 evaluate(const Formula& f, const GrassmannianPoint& p);

/// Human readable expression of one formula, used by reports.
std::string describe(const Formula& f);

}  // namespace formulas
}  // namespace holo
