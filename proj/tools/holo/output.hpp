#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "holo/matrix.hpp"

namespace holo::cli {

enum class Format { text, json, csv };

Format parse_format(const std::string& s);

/// [[ [re, im], [re, im] ], [ ... ]]
nlohmann::ordered_json matrix_json(const CMat2& m);

/// re11, im11, re12, im12, re21, im21, re22, im22
std::vector<std::string> matrix_csv(const CMat2& m);

/// Two aligned rows of "re+imi" entries, each prefixed by `indent`.
std::string matrix_text(const CMat2& m, const std::string& indent = "  ");

/// Shortest round-trip representation.
std::string num(double x);

std::string csv_line(const std::vector<std::string>& cells);

}  // namespace holo::cli
