#pragma once
// Text format for structure constants, shared by the CLI and the catalog
// data files:
//
//   # comment            (a leading "# name: <id>" comment names the algebra)
//   dim 7
//   [1,2] = 30*e3
//   [2,3] = e5 + e6      (bare e_k means coefficient 1; fractions like 1/2 ok)
//
// Omitted pairs are zero brackets. Parsing is exact; structural errors carry
// line numbers. Semantic checks (Jacobi, nilpotency) are left to validate.

#include "nilcert/liealg.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace nilcert {

// Throws std::invalid_argument with a "line N: ..." message on bad input.
StructureConstants parse_algebra(const std::string& text);

// Inverse of parse_algebra up to whitespace: parse_algebra(emit_algebra(sc))
// reproduces sc exactly, including the name.
std::string emit_algebra(const StructureConstants& sc);

// Render a coordinate vector as a basis combination, e.g. "e1 + e2 - 2*e7"
// ("0" for the zero vector).
std::string format_combination(const Vec& v);

// FNV-1a 64-bit content digest, used for input fingerprints in reports and
// catalog data-file checksums.
uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

// Whole-file read; throws std::runtime_error when unreadable.
std::string read_text_file(const std::string& path);

} // namespace nilcert
