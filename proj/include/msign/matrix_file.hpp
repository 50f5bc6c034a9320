#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "msign/qual.hpp"

namespace msign {

struct NamedMatrix {
  std::string name;
  MixedMatrix value;
  std::size_t line = 0;  // 1-based line of the '@name' header
};

/// Parses the text format:
///
///   # comment
///   @A
///   - + 0
///   0 - 1.5
///
/// Tokens '+', '-', '0', '?' (and the symbols U+2295, U+2296, U+2299) are sign
/// entries; anything else must be a finite decimal literal. A block ends at a
/// blank line or at the next '@'. Throws ParseError with the offending line.
std::vector<NamedMatrix> parse_matrix_file(std::string_view text);

/// Inverse of parse_matrix_file. A real zero is written "0.0" so it is not read
/// back as the sign token.
std::string format_matrix_file(const std::vector<NamedMatrix>& blocks);

std::string format_entry(const MixedEntry& e);

}  // namespace msign
