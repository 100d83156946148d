#pragma once

#include <string>

#include "holo/adiabatic.hpp"
#include "holo/holonomy.hpp"
#include "holo/manifold.hpp"

namespace holo {

// JSON formats. Points are flat objects keyed by coordinate name ("theta13",
// ..., "phi24"), radians, missing keys 0. Loops are
//   {"base": {point}, "segments": [{offsets}, ...], "steps_per_segment": n}
// Two-level loops use the keys "theta" and "phi" instead of coordinate names.
// Malformed input throws ErrorKind::parse.

GrassmannianPoint parse_point(const std::string& text);
Loop parse_loop(const std::string& text);
TwoLevelLoop parse_two_level_loop(const std::string& text);

std::string to_json(const GrassmannianPoint& p);
std::string to_json(const Loop& loop);

/// Whole file as a string; throws ErrorKind::parse when it cannot be read.
std::string read_file(const std::string& path);

}  // namespace holo
