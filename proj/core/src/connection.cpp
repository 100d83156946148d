#include "holo/connection.hpp"

#include <cmath>

#include "holo/errors.hpp"
#include "holo/formulas.hpp"

namespace holo {
namespace {

void require_step(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) raise(ErrorKind::invalid_argument, "step size must be > 0");
}

void require_distinct(CoordinateIndex mu, CoordinateIndex nu) {
  if (mu == nu) {
    raise(ErrorKind::invalid_argument, "field strength needs two distinct coordinates, got " +
                                           name(mu) + " twice");
  }
}

// One projected block, anti-hermitised.
CMat2 numeric_block(const GrassmannianPoint& p, CoordinateIndex c, Subspace s,
                    const RotationConvention& conv, double h) {
  return antihermitian_part<2>(subspace_block(connection_generator(p, c, conv, h), s));
}

CMat2 numeric_field(const GrassmannianPoint& p, CoordinateIndex mu, CoordinateIndex nu,
                    Subspace s, const RotationConvention& conv, double h) {
  const CMat2 a_mu = numeric_block(p, mu, s, conv, h);
  const CMat2 a_nu = numeric_block(p, nu, s, conv, h);
  const CMat2 d_mu_a_nu =
      (numeric_block(p.shifted(mu, h), nu, s, conv, h) -
       numeric_block(p.shifted(mu, -h), nu, s, conv, h)) / (2.0 * h);
  const CMat2 d_nu_a_mu =
      (numeric_block(p.shifted(nu, h), mu, s, conv, h) -
       numeric_block(p.shifted(nu, -h), mu, s, conv, h)) / (2.0 * h);
  return antihermitian_part<2>(d_mu_a_nu - d_nu_a_mu + commutator<2>(a_mu, a_nu));
}

}  // namespace

CMat4 connection_generator(const GrassmannianPoint& p, CoordinateIndex c,
                           const RotationConvention& conv, double h) {
  require_step(h);
  const CMat4 u = build_unitary(p, conv);
  const CMat4 du = (build_unitary(p.shifted(c, h), conv) - build_unitary(p.shifted(c, -h), conv)) /
                   (2.0 * h);
  return u.adjoint() * du;
}

CMat4 directional_generator(const GrassmannianPoint& p, const CoordVector& offset,
                            const RotationConvention& conv, double h) {
  require_step(h);
  double length = 0.0;
  for (double x : offset) length += x * x;
  length = std::sqrt(length);
  if (length == 0.0) return CMat4::Zero();

  CoordVector step{};
  for (std::size_t k = 0; k < step.size(); ++k) step[k] = offset[k] / length;
  const CMat4 u = build_unitary(p, conv);
  const CMat4 du =
      (build_unitary(p.displaced(step, h), conv) - build_unitary(p.displaced(step, -h), conv)) /
      (2.0 * h);
  return length * (u.adjoint() * du);
}

ConnectionBlock connection_numeric(const GrassmannianPoint& p, CoordinateIndex c, Subspace s,
                                   const RotationConvention& conv, double h) {
  const CMat2 raw = subspace_block(connection_generator(p, c, conv, h), s);
  return {c, s, antihermitian_part<2>(raw), antihermiticity_residual<2>(raw)};
}

ConnectionBlock connection_analytic(const GrassmannianPoint& p, CoordinateIndex c, Subspace s) {
  const auto* f = formulas::find_connection(c, s);
  // All sixteen blocks are tabulated; a miss is a table bug.
  if (f == nullptr) raise(ErrorKind::not_tabulated, "no connection formula for " + name(c));
  return {c, s, formulas::evaluate(*f, p), 0.0};
}

FieldStrengthBlock field_strength(const GrassmannianPoint& p, CoordinateIndex mu,
                                  CoordinateIndex nu, Subspace s, const RotationConvention& conv,
                                  Method method, double h) {
  require_distinct(mu, nu);
  FieldStrengthBlock out{mu, nu, s, CMat2::Zero()};

  if (method == Method::analytic) {
    const auto hit = formulas::find_field(mu, nu, s);
    if (!hit) {
      raise(ErrorKind::not_tabulated, std::string("F") + (s == Subspace::plus ? '+' : '-') + "_" +
                                          name(mu) + "_" + name(nu) + " is not tabulated");
    }
    out.matrix = hit->sign * formulas::evaluate(*hit->formula, p);
    return out;
  }

  require_step(h);
  if (mu < nu) {
    out.matrix = numeric_field(p, mu, nu, s, conv, h);
  } else {
    out.matrix = -numeric_field(p, nu, mu, s, conv, h);
  }
  return out;
}

double commutator_norm(const GrassmannianPoint& p, CoordinateIndex mu, CoordinateIndex nu,
                       Subspace s, const RotationConvention& conv, double h) {
  require_distinct(mu, nu);
  const CMat2 a_mu = numeric_block(p, mu, s, conv, h);
  const CMat2 a_nu = numeric_block(p, nu, s, conv, h);
  return commutator<2>(a_mu, a_nu).norm();
}

}  // namespace holo
