#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "output.hpp"

namespace holo::cli {

struct Common {
  std::string output = "text";
  std::string convention = "full/plus_i/e_plus_iphi_upper";  // or "auto"
  std::string out_path;                                       // empty: stdout
  std::uint64_t seed = 42;
};

struct ConnectionArgs {
  std::string point;
  std::string coord;
  std::string subspace = "both";
  std::string method = "both";
  double h = 1e-6;
};

struct FieldArgs {
  std::string point;
  std::string mu;
  std::string nu;
  std::string subspace = "both";
  std::string method = "both";
  double h = 1e-4;
};

struct HolonomyArgs {
  std::string loop;
  std::string method = "ordered";  // ordered | stokes | both
  std::string subspace = "both";
  std::string source = "numeric";
  int steps = 0;  // per segment; 0 keeps the loop file's value
  double quad_tol = 1e-7;
  bool strict_stokes = false;
};

struct VerifyArgs {
  int samples = 200;
  double tol_connection = 1e-6;
  double tol_field = 1e-5;
  std::string out_dir = ".";
};

struct AdiabaticArgs {
  std::string loop;
  double omega = 1.0;
  std::vector<double> times{100, 200, 400, 800};
  double steps_per_time = 200.0;
  int steps = 0;  // fixed N for every T when > 0
  std::string profile = "smoothstep";
  bool two_level = false;
  double total_time = 1000.0;  // two-level mode
  std::string kernel = "selected";
};

// Each returns the process exit status; library errors propagate as holo::Error.
int run_connection(const Common& common, const ConnectionArgs& args);
int run_field(const Common& common, const FieldArgs& args);
int run_holonomy(const Common& common, const HolonomyArgs& args);
int run_verify(const Common& common, const VerifyArgs& args);
int run_adiabatic(const Common& common, const AdiabaticArgs& args);

}  // namespace holo::cli
