#include "holo/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "holo/errors.hpp"

namespace holo {
namespace {

using namespace std::complex_literals;

constexpr double kUnitaryTol = 1e-9;

void require_time(double total_time, int steps) {
  if (!(total_time > 0.0) || !std::isfinite(total_time)) {
    raise(ErrorKind::invalid_argument, "total time must be > 0");
  }
  if (steps < Schedule::kMinSteps) {
    raise(ErrorKind::invalid_argument,
          "time_steps must be >= " + std::to_string(Schedule::kMinSteps));
  }
}

void require_omega(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) raise(ErrorKind::invalid_argument, "omega must be > 0");
}

// Which segment is active at time t, and the covered fraction within it.
std::pair<std::size_t, double> locate(std::size_t segments, double t, double total_time,
                                      SpeedProfile profile) {
  const double per = total_time / static_cast<double>(segments);
  const double x = std::clamp(t / per, 0.0, static_cast<double>(segments));
  auto k = static_cast<std::size_t>(x);
  if (k >= segments) k = segments - 1;
  return {k, profile_fraction(profile, x - static_cast<double>(k))};
}

}  // namespace

double profile_fraction(SpeedProfile profile, double u) {
  u = std::clamp(u, 0.0, 1.0);
  if (profile == SpeedProfile::uniform) return u;
  return u * u * (3.0 - 2.0 * u);
}

void Schedule::validate() const {
  loop.validate();
  require_time(total_time, time_steps);
}

GrassmannianPoint Schedule::point_at(double t) const {
  if (loop.segments.empty()) return loop.base;
  const auto [k, f] = locate(loop.segments.size(), t, total_time, profile);
  return loop.vertex(k).displaced(loop.segments[k], f);
}

CMat4 evolve(const Schedule& sched, double omega, const RotationConvention& conv) {
  sched.validate();
  require_omega(omega);
  const double dt = sched.total_time / sched.time_steps;
  const Complex up = std::exp(-0.5i * omega * dt);
  const Complex down = std::conj(up);
  const Eigen::Vector4cd phases(up, up, down, down);

  CMat4 total = CMat4::Identity();
  for (int i = 0; i < sched.time_steps; ++i) {
    const CMat4 u = build_unitary(sched.point_at((i + 0.5) * dt), conv);
    total = (u * phases.asDiagonal() * u.adjoint() * total).eval();
  }
  return total;
}

AdiabaticResult extract_geometric(const CMat4& u_total, double total_time, double omega,
                                  const std::optional<HolonomyPair>& prediction) {
  const double residual = unitarity_residual<4>(u_total);
  if (!(residual <= kUnitaryTol)) {
    raise(ErrorKind::not_unitary,
          "propagator is not unitary (residual " + std::to_string(residual) + ")");
  }

  AdiabaticResult out;
  out.total_unitary = u_total;
  out.leakage = off_block_norm(u_total);
  const Complex strip = std::exp(0.5i * omega * total_time);
  for (Subspace s : {Subspace::plus, Subspace::minus}) {
    const Complex f = s == Subspace::plus ? strip : std::conj(strip);
    CMat2 block = f * subspace_block(u_total, s);
    if (unitarity_residual<2>(block) <= kPolarProjectionLimit) {
      block = polar_unitary(block);
    } else {
      out.unprojected = true;
    }
    out.geometric[s] = block;
  }

  if (prediction) {
    out.holonomy_error_plus = unitary_distance<2>(out.geometric.gamma_plus, prediction->gamma_plus);
    out.holonomy_error_minus = unitary_distance<2>(out.geometric.gamma_minus, prediction->gamma_minus);
  } else {
    out.holonomy_error_plus = std::numeric_limits<double>::quiet_NaN();
    out.holonomy_error_minus = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

HolonomyPair adiabatic_prediction(const Loop& loop, const RotationConvention& conv) {
  OrderedOptions ordered;
  ordered.sign = ExponentSign::schrodinger;
  return holonomy_ordered(loop, conv, ordered);
}

ConvergenceRow adiabatic_run(const Loop& loop, double omega, double total_time,
                             const HolonomyPair& prediction, const RotationConvention& conv,
                             const ConvergenceOptions& options) {
  Schedule sched;
  sched.loop = loop;
  sched.total_time = total_time;
  sched.profile = options.profile;
  sched.time_steps =
      options.fixed_steps > 0
          ? options.fixed_steps
          : std::max(Schedule::kMinSteps,
                     static_cast<int>(std::lround(options.steps_per_unit_time * omega * total_time)));
  // Propagators are compared in the eigenbasis at the loop base.
  const CMat4 frame = build_unitary(loop.base, conv);
  const CMat4 u = frame.adjoint() * evolve(sched, omega, conv) * frame;
  const auto res = extract_geometric(u, total_time, omega, prediction);
  return {total_time, sched.time_steps, res.leakage, res.holonomy_error_plus,
          res.holonomy_error_minus, res.geometric};
}

std::vector<ConvergenceRow> convergence_study(const Loop& loop, double omega,
                                              const std::vector<double>& times,
                                              const RotationConvention& conv,
                                              const ConvergenceOptions& options) {
  require_omega(omega);
  loop.validate();
  if (times.size() < 3) raise(ErrorKind::invalid_argument, "convergence study needs >= 3 times");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] > 0.0) || (k > 0 && !(times[k] > times[k - 1]))) {
      raise(ErrorKind::invalid_argument, "times must be positive and strictly increasing");
    }
  }

  const HolonomyPair prediction = adiabatic_prediction(loop, conv);
  auto run = [&](double total_time) {
    return adiabatic_run(loop, omega, total_time, prediction, conv, options);
  };

  std::vector<std::future<ConvergenceRow>> jobs;
  jobs.reserve(times.size());
  for (double t : times) jobs.push_back(std::async(std::launch::async, run, t));
  std::vector<ConvergenceRow> rows;
  rows.reserve(times.size());
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

void TwoLevelLoop::validate() const {
  if (steps_per_segment < 1) raise(ErrorKind::invalid_argument, "steps_per_segment must be >= 1");
  double dt = 0.0, dp = 0.0;
  for (const auto& [a, b] : segments) {
    dt += a;
    dp += b;
  }
  if (std::max(std::abs(dt), std::abs(dp)) > Loop::kClosureTol) {
    raise(ErrorKind::loop_not_closed, "two-level loop is not closed");
  }
}

TwoLevelResult evolve_two_level(const TwoLevelLoop& loop, double omega, double total_time,
                                int time_steps, const RotationConvention& kernel,
                                SpeedProfile profile) {
  loop.validate();
  require_omega(omega);
  require_time(total_time, time_steps);

  auto point = [&](double t) -> std::pair<double, double> {
    double theta = loop.theta0, phi = loop.phi0;
    if (loop.segments.empty()) return {theta, phi};
    const auto [k, f] = locate(loop.segments.size(), t, total_time, profile);
    for (std::size_t i = 0; i < k; ++i) {
      theta += loop.segments[i].first;
      phi += loop.segments[i].second;
    }
    return {theta + f * loop.segments[k].first, phi + f * loop.segments[k].second};
  };

  const double dt = total_time / time_steps;
  const Complex up = std::exp(-0.5i * omega * dt);
  const Eigen::Vector2cd phases(up, std::conj(up));

  CMat2 total = CMat2::Identity();
  for (int i = 0; i < time_steps; ++i) {
    const auto [theta, phi] = point((i + 0.5) * dt);
    const CMat2 k = rotation_kernel(theta, phi, kernel);
    total = (k * phases.asDiagonal() * k.adjoint() * total).eval();
  }

  const CMat2 frame = rotation_kernel(loop.theta0, loop.phi0, kernel);
  const CMat2 v = frame.adjoint() * total * frame;
  const Complex strip = std::exp(0.5i * omega * total_time);
  TwoLevelResult out;
  out.propagator = total;
  out.phi_plus = std::arg(strip * v(0, 0));
  out.phi_minus = std::arg(std::conj(strip) * v(1, 1));
  return out;
}

}  // namespace holo
