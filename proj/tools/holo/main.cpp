// holo: connections, curvature and holonomies on the G(4,2) control manifold.
//
//   holo connection --point p.json --coord theta24 --subspace plus --method both
//   holo field      --point p.json --mu theta24 --nu phi24
//   holo holonomy   --loop loop.json --method both
//   holo verify     --samples 200 --out-dir reports
//   holo adiabatic  --loop loop.json --times 100,200,400,800 --output csv
//
// Exit status: 0 ok, 1 conformance failure, 2 usage or parse error, 3 pole,
// 4 loop not closed, 5 non-commuting plane.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "holo/errors.hpp"

namespace {

using holo::ErrorKind;

int exit_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument:
    case ErrorKind::parse:
    case ErrorKind::invalid_pair:
    case ErrorKind::not_tabulated:
      return 2;
    case ErrorKind::pole_at_point: return 3;
    case ErrorKind::loop_not_closed: return 4;
    case ErrorKind::non_commuting_plane: return 5;
    case ErrorKind::not_anti_hermitian:
    case ErrorKind::not_unitary:
      return 1;
  }
  return 1;
}

void add_common(CLI::App* cmd, holo::cli::Common& common) {
  cmd->add_option("--output", common.output, "Output format: text, json or csv")
      ->capture_default_str();
  cmd->add_option("--convention", common.convention,
                  "Two-level kernel convention, e.g. full/plus_i/e_plus_iphi_upper, or auto")
      ->capture_default_str();
  cmd->add_option("--out", common.out_path, "Write the result to this file instead of stdout");
  cmd->add_option("--seed", common.seed, "Random seed (default 42, or $HOLO_SEED)");
}

}  // namespace

int main(int argc, char** argv) {
  holo::cli::Common common;
  if (const char* env = std::getenv("HOLO_SEED")) {
    try {
      std::size_t used = 0;
      common.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      std::cerr << "holo: HOLO_SEED must be a non-negative integer, got \"" << env << "\"\n";
      return 2;
    }
  }

  CLI::App app{"Wilczek-Zee connections and holonomies on the G(4,2) control manifold"};
  app.require_subcommand(1);

  holo::cli::ConnectionArgs conn;
  auto* c = app.add_subcommand("connection", "Evaluate one connection component A_c");
  c->add_option("--point", conn.point, "Point JSON file")->required();
  c->add_option("--coord", conn.coord, "Coordinate name, theta13 ... phi24")->required();
  c->add_option("--subspace", conn.subspace, "plus, minus or both")->capture_default_str();
  c->add_option("--method", conn.method, "numeric, analytic or both")->capture_default_str();
  c->add_option("--step", conn.h, "Finite-difference step")->capture_default_str();
  add_common(c, common);

  holo::cli::FieldArgs field;
  auto* f = app.add_subcommand("field", "Evaluate one field-strength component F_{mu nu}");
  f->add_option("--point", field.point, "Point JSON file")->required();
  f->add_option("--mu", field.mu, "First coordinate")->required();
  f->add_option("--nu", field.nu, "Second coordinate")->required();
  f->add_option("--subspace", field.subspace, "plus, minus or both")->capture_default_str();
  f->add_option("--method", field.method, "numeric, analytic or both")->capture_default_str();
  f->add_option("--step", field.h, "Finite-difference step (both levels)")->capture_default_str();
  add_common(f, common);

  holo::cli::HolonomyArgs hol;
  auto* h = app.add_subcommand("holonomy", "Holonomy of a closed loop");
  h->add_option("--loop", hol.loop, "Loop JSON file")->required();
  h->add_option("--method", hol.method, "ordered, stokes or both")->capture_default_str();
  h->add_option("--subspace", hol.subspace, "plus, minus or both")->capture_default_str();
  h->add_option("--source", hol.source, "Connection source for ordered: numeric or analytic")
      ->capture_default_str();
  h->add_option("--steps", hol.steps, "Steps per segment (overrides the loop file)");
  h->add_option("--quad-tol", hol.quad_tol, "Surface quadrature tolerance")->capture_default_str();
  h->add_flag("--strict-stokes", hol.strict_stokes,
              "Require the plane's generators to commute across points, not just pointwise");
  add_common(h, common);

  holo::cli::VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Check every closed-form formula against the numeric oracle");
  v->add_option("--samples", ver.samples, "Random points (>= 20)")->capture_default_str();
  v->add_option("--tol-connection", ver.tol_connection)->capture_default_str();
  v->add_option("--tol-field", ver.tol_field)->capture_default_str();
  v->add_option("--out-dir", ver.out_dir, "Where report.json and report.txt go")
      ->capture_default_str();
  add_common(v, common);

  holo::cli::AdiabaticArgs adi;
  auto* a = app.add_subcommand("adiabatic", "Adiabatic Schroedinger evolution around a loop");
  a->add_option("--loop", adi.loop, "Loop JSON file")->required();
  a->add_option("--omega", adi.omega, "Gap omega")->capture_default_str();
  a->add_option("--times", adi.times, "Total times, comma separated")->delimiter(',');
  a->add_option("--steps-per-time", adi.steps_per_time, "Time steps per unit time")
      ->capture_default_str();
  a->add_option("--steps", adi.steps, "Fixed number of time steps for every T");
  a->add_option("--profile", adi.profile, "smoothstep or uniform")->capture_default_str();
  a->add_flag("--two-level", adi.two_level, "Run the two-level Berry baseline instead");
  a->add_option("--total-time", adi.total_time, "Total time in two-level mode")
      ->capture_default_str();
  a->add_option("--kernel", adi.kernel, "Two-level kernel: selected, or a convention name")
      ->capture_default_str();
  add_common(a, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : 2;
  }

  try {
    if (*c) return holo::cli::run_connection(common, conn);
    if (*f) return holo::cli::run_field(common, field);
    if (*h) return holo::cli::run_holonomy(common, hol);
    if (*v) return holo::cli::run_verify(common, ver);
    if (*a) return holo::cli::run_adiabatic(common, adi);
  } catch (const holo::Error& e) {
    std::cerr << "holo: " << e.what() << "\n";
    return exit_status(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "holo: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
