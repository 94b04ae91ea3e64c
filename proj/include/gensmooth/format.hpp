#pragma once

#include <string>
#include <string_view>

namespace gensmooth {

/// Shortest decimal text that parses back to the same double.
/// Non-finite values print as nan, inf and -inf.
std::string format_double(double v);

/// Inverse of format_double. Accepts a leading '+'; returns false on
/// trailing garbage or empty input.
bool parse_double(std::string_view text, double& out);

}  // namespace gensmooth
