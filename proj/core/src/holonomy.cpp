#include "holo/holonomy.hpp"

#include <algorithm>
#include <cmath>

#include "holo/errors.hpp"

namespace holo {
namespace {

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGLNodes = {
    -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGLWeights = {
    0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
    0.2369268850561891};

struct Panel {
  double s0, s1, t0, t1;
};

CMat2 gauss_panel(const PlanarRegion& region, const Panel& panel, Subspace s,
                  const RotationConvention& conv, double h) {
  const double hs = 0.5 * (panel.s1 - panel.s0), ms = 0.5 * (panel.s1 + panel.s0);
  const double ht = 0.5 * (panel.t1 - panel.t0), mt = 0.5 * (panel.t1 + panel.t0);
  CMat2 sum = CMat2::Zero();
  for (std::size_t i = 0; i < kGLNodes.size(); ++i) {
    for (std::size_t j = 0; j < kGLNodes.size(); ++j) {
      const auto p = region.point(ms + hs * kGLNodes[i], mt + ht * kGLNodes[j]);
      const auto f = field_strength(p, region.sigma, region.sigma_prime, s, conv, Method::numeric, h);
      sum += (kGLWeights[i] * kGLWeights[j]) * f.matrix;
    }
  }
  return (hs * ht) * sum;
}

// Accept a panel once its four children agree with it; children are visited
// in a fixed order so the sum is reproducible bit for bit.
CMat2 adaptive(const PlanarRegion& region, const Panel& panel, const CMat2& estimate, int depth,
               double tol, Subspace s, const RotationConvention& conv,
               const StokesOptions& options) {
  const double sm = 0.5 * (panel.s0 + panel.s1), tm = 0.5 * (panel.t0 + panel.t1);
  const std::array<Panel, 4> kids = {Panel{panel.s0, sm, panel.t0, tm}, Panel{sm, panel.s1, panel.t0, tm},
                                     Panel{panel.s0, sm, tm, panel.t1}, Panel{sm, panel.s1, tm, panel.t1}};
  std::array<CMat2, 4> parts;
  CMat2 refined = CMat2::Zero();
  for (std::size_t k = 0; k < kids.size(); ++k) {
    parts[k] = gauss_panel(region, kids[k], s, conv, options.h);
    refined += parts[k];
  }
  if (depth >= options.max_depth || max_abs_difference<2>(refined, estimate) <= tol) return refined;

  CMat2 total = CMat2::Zero();
  for (std::size_t k = 0; k < kids.size(); ++k) {
    total += adaptive(region, kids[k], parts[k], depth + 1, 0.25 * tol, s, conv, options);
  }
  return total;
}

void check_commuting(const PlanarRegion& region, Subspace s, const RotationConvention& conv,
                     const StokesOptions& options) {
  const double worst = plane_commutator(region, s, conv, options.check, options.check_grid);
  if (worst > options.commutator_tol) {
    raise(ErrorKind::non_commuting_plane,
          "connection components on the (" + name(region.sigma) + ", " + name(region.sigma_prime) +
              ") plane do not commute on the " + (s == Subspace::plus ? "plus" : "minus") +
              " subspace (commutator norm " + std::to_string(worst) + ")");
  }
}

bool single_axis(const CoordVector& v, int& axis) {
  axis = -1;
  for (int k = 0; k < 8; ++k) {
    if (v[k] == 0.0) continue;
    if (axis >= 0) return false;
    axis = k;
  }
  return axis >= 0;
}

}  // namespace

double Loop::closure_gap() const {
  CoordVector net{};
  for (const auto& seg : segments) {
    for (int k = 0; k < 8; ++k) net[k] += seg[k];
  }
  double gap = 0.0;
  for (double x : net) gap = std::max(gap, std::abs(x));
  return gap;
}

void Loop::validate() const {
  if (steps_per_segment < 1) raise(ErrorKind::invalid_argument, "steps_per_segment must be >= 1");
  for (const auto& seg : segments) {
    for (double x : seg) {
      if (!std::isfinite(x)) raise(ErrorKind::invalid_argument, "segment offsets must be finite");
    }
  }
  const double gap = closure_gap();
  if (gap > kClosureTol) {
    raise(ErrorKind::loop_not_closed,
          "loop is not closed: net offset " + std::to_string(gap) + " rad");
  }
}

Loop Loop::reversed() const {
  Loop out;
  out.base = base;
  out.steps_per_segment = steps_per_segment;
  out.segments.reserve(segments.size());
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
    CoordVector back{};
    for (int k = 0; k < 8; ++k) back[k] = -(*it)[k];
    out.segments.push_back(back);
  }
  return out;
}

GrassmannianPoint Loop::vertex(std::size_t k) const {
  GrassmannianPoint p = base;
  for (std::size_t i = 0; i < std::min(k, segments.size()); ++i) p = p.displaced(segments[i]);
  return p;
}

void PlanarRegion::validate() const {
  if (sigma == sigma_prime) {
    raise(ErrorKind::invalid_argument, "plane needs two distinct coordinates, got " + name(sigma));
  }
  for (double x : {sigma_range[0], sigma_range[1], prime_range[0], prime_range[1]}) {
    if (!std::isfinite(x)) raise(ErrorKind::invalid_argument, "region bounds must be finite");
  }
  if (sigma_range[0] > sigma_range[1] || prime_range[0] > prime_range[1]) {
    raise(ErrorKind::invalid_argument, "region bounds must be ordered (min <= max)");
  }
}

GrassmannianPoint PlanarRegion::point(double s, double t) const {
  GrassmannianPoint p = fixed;
  p[sigma] = s;
  p[sigma_prime] = t;
  return p;
}

HolonomyPair holonomy_ordered(const Loop& loop, const RotationConvention& conv,
                              const OrderedOptions& options) {
  loop.validate();
  const double sign = options.sign == ExponentSign::geometric ? 1.0 : -1.0;
  const double n = static_cast<double>(loop.steps_per_segment);

  HolonomyPair gamma;
  GrassmannianPoint start = loop.base;
  for (const auto& seg : loop.segments) {
    CoordVector step{};
    for (int k = 0; k < 8; ++k) step[k] = seg[k] / n;

    for (int i = 0; i < loop.steps_per_segment; ++i) {
      const auto mid = start.displaced(seg, (i + 0.5) / n);
      CMat4 g = CMat4::Zero();
      if (options.source == ConnectionSource::numeric) {
        g = directional_generator(mid, step, conv, options.h);
      }
      for (Subspace s : {Subspace::plus, Subspace::minus}) {
        CMat2 l = CMat2::Zero();
        if (options.source == ConnectionSource::numeric) {
          l = antihermitian_part<2>(subspace_block(g, s));
        } else {
          for (auto c : kAllCoordinates) {
            if (step[c.flat()] != 0.0) l += step[c.flat()] * connection_analytic(mid, c, s).matrix;
          }
        }
        gamma[s] = expm_antihermitian(CMat2(sign * l)) * gamma[s];
      }
    }
    start = start.displaced(seg);
  }
  return gamma;
}

CMat2 holonomy_ordered(const Loop& loop, Subspace s, const RotationConvention& conv,
                       const OrderedOptions& options) {
  return holonomy_ordered(loop, conv, options)[s];
}

double plane_commutator(const PlanarRegion& region, Subspace s, const RotationConvention& conv,
                        CommutationCheck check, int grid) {
  region.validate();
  grid = std::max(grid, 2);
  std::vector<CMat2> sigma_gen, prime_gen;
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double u = static_cast<double>(i) / (grid - 1), v = static_cast<double>(j) / (grid - 1);
      const auto p = region.point(region.sigma_range[0] + u * (region.sigma_range[1] - region.sigma_range[0]),
                                  region.prime_range[0] + v * (region.prime_range[1] - region.prime_range[0]));
      if (check == CommutationCheck::pointwise) {
        worst = std::max(worst, commutator_norm(p, region.sigma, region.sigma_prime, s, conv));
      } else {
        sigma_gen.push_back(connection_numeric(p, region.sigma, s, conv).matrix);
        prime_gen.push_back(connection_numeric(p, region.sigma_prime, s, conv).matrix);
      }
    }
  }
  if (check == CommutationCheck::along_plane) {
    std::vector<CMat2> all = sigma_gen;
    all.insert(all.end(), prime_gen.begin(), prime_gen.end());
    for (std::size_t a = 0; a < all.size(); ++a) {
      for (std::size_t b = a + 1; b < all.size(); ++b) {
        worst = std::max(worst, commutator<2>(all[a], all[b]).norm());
      }
    }
  }
  return worst;
}

CMat2 curvature_flux(const PlanarRegion& region, Subspace s, const RotationConvention& conv,
                     const StokesOptions& options) {
  region.validate();
  if (region.area() == 0.0) return CMat2::Zero();
  const Panel whole{region.sigma_range[0], region.sigma_range[1], region.prime_range[0],
                    region.prime_range[1]};
  const CMat2 coarse = gauss_panel(region, whole, s, conv, options.h);
  return antihermitian_part<2>(adaptive(region, whole, coarse, 1, options.quad_tol, s, conv, options));
}

CMat2 holonomy_stokes(const PlanarRegion& region, Subspace s, const RotationConvention& conv,
                      const StokesOptions& options) {
  region.validate();
  if (region.area() == 0.0) return CMat2::Identity();
  check_commuting(region, s, conv, options);
  return expm_antihermitian(curvature_flux(region, s, conv, options));
}

std::pair<double, double> berry_phase_stokes(double theta_lo, double theta_hi, double phi_lo,
                                             double phi_hi) {
  if (theta_lo > theta_hi || phi_lo > phi_hi) {
    raise(ErrorKind::invalid_argument, "rectangle bounds must be ordered");
  }
  // int sin 2theta dtheta = (cos 2theta_lo - cos 2theta_hi) / 2
  const double plus = (phi_hi - phi_lo) * 0.5 * (std::cos(2.0 * theta_lo) - std::cos(2.0 * theta_hi));
  return {plus, -plus};
}

Loop loop_boundary(const PlanarRegion& region, int steps) {
  region.validate();
  if (steps < 4) raise(ErrorKind::invalid_argument, "loop_boundary needs steps >= 4");
  const double ds = region.sigma_range[1] - region.sigma_range[0];
  const double dt = region.prime_range[1] - region.prime_range[0];

  Loop loop;
  loop.base = region.point(region.sigma_range[0], region.prime_range[0]);
  loop.steps_per_segment = steps / 4;
  CoordVector seg{};
  seg[region.sigma.flat()] = ds;
  loop.segments.push_back(seg);
  seg = {};
  seg[region.sigma_prime.flat()] = dt;
  loop.segments.push_back(seg);
  seg = {};
  seg[region.sigma.flat()] = -ds;
  loop.segments.push_back(seg);
  seg = {};
  seg[region.sigma_prime.flat()] = -dt;
  loop.segments.push_back(seg);
  return loop;
}

std::optional<std::pair<PlanarRegion, bool>> region_from_loop(const Loop& loop) {
  if (loop.segments.size() != 4) return std::nullopt;
  std::array<int, 4> axis{};
  for (std::size_t k = 0; k < 4; ++k) {
    if (!single_axis(loop.segments[k], axis[k])) return std::nullopt;
  }
  if (axis[0] != axis[2] || axis[1] != axis[3] || axis[0] == axis[1]) return std::nullopt;
  const double a = loop.segments[0][axis[0]], b = loop.segments[1][axis[1]];
  if (loop.segments[2][axis[0]] != -a || loop.segments[3][axis[1]] != -b) return std::nullopt;

  PlanarRegion region;
  region.sigma = CoordinateIndex::from_flat(axis[0]);
  region.sigma_prime = CoordinateIndex::from_flat(axis[1]);
  region.fixed = loop.base;
  const double s0 = loop.base.coords[axis[0]], t0 = loop.base.coords[axis[1]];
  region.sigma_range = {std::min(s0, s0 + a), std::max(s0, s0 + a)};
  region.prime_range = {std::min(t0, t0 + b), std::max(t0, t0 + b)};
  const bool clockwise = (a > 0.0) != (b > 0.0);
  return std::make_pair(region, clockwise);
}

}  // namespace holo
