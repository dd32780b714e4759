#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace bardsl::dsl {

/// Parses `-?[0-9]+(\.[0-9]+)?` exactly; anything else (exponents, leading
/// '+', bare '.') is rejected.
std::optional<double> parse_decimal(std::string_view token);

/// Shortest decimal text that reads back to the same double; no exponent,
/// no trailing zeros, no decimal point for integral values, "-0" printed as "0".
std::string format_decimal(double value);

/// Fixed-point with at most `max_decimals` digits, trailing zeros stripped.
std::string format_fixed(double value, int max_decimals);

}  // namespace bardsl::dsl
