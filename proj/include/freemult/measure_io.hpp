#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "freemult/measure.hpp"

namespace freemult {

/// Reads the TOML measure format:
///
///   atoms = [["1/2", "1/2"], [1.5, 0.5]]
///
///   [[pieces]]
///   lo = 0
///   hi = "1/2"
///   kind = "uniform"          # uniform | polynomial | table
///   weight = "1/4"
///   params = []               # polynomial: [c0, c1, ...]; table: [[x, f], ...]
///
/// Numbers may be TOML numbers or strings holding decimals or fractions;
/// their spelling is preserved. Throws ParseError on malformed input.
MeasureSpec parse_measure(std::string_view toml_text);

MeasureSpec read_measure_file(const std::filesystem::path& path);

/// Canonical TOML text. Every number is written with its original spelling,
/// so parse -> validate -> serialize echoes rational input exactly.
std::string serialize_measure(const Measure& m);

}  // namespace freemult
