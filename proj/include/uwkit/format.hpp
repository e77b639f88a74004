#pragma once

#include <string>
#include <string_view>

namespace uwkit {

/// Shortest decimal text that parses back to exactly `v`
/// ("nan", "inf" and "-inf" for non-finite values).
std::string format_double(double v);

/// Strict full-string parses; false on trailing text, overflow or empty input.
bool parse_double(std::string_view text, double& out);
bool parse_int(std::string_view text, int& out);

std::string_view trim(std::string_view s);

}  // namespace uwkit
