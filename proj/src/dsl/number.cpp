#include "bardsl/dsl/number.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace bardsl::dsl {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

void strip_trailing_zeros(std::string& s) {
    const auto dot = s.find('.');
    if (dot == std::string::npos) return;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
}

std::string normalize_negative_zero(std::string s) {
    if (s == "-0") return "0";
    return s;
}

}  // namespace

std::optional<double> parse_decimal(std::string_view token) {
    std::size_t i = 0;
    if (i < token.size() && token[i] == '-') ++i;
    const std::size_t int_start = i;
    while (i < token.size() && is_digit(token[i])) ++i;
    if (i == int_start) return std::nullopt;
    if (i < token.size()) {
        if (token[i] != '.') return std::nullopt;
        ++i;
        const std::size_t frac_start = i;
        while (i < token.size() && is_digit(token[i])) ++i;
        if (i == frac_start || i != token.size()) return std::nullopt;
    }
    double value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    if (value == 0) value = 0;  // drop the sign of -0
    return value;
}

std::string format_decimal(double value) {
    if (value == 0) return "0";
    std::array<char, 512> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed);
    if (ec != std::errc{}) return format_fixed(value, 6);
    std::string s(buf.data(), ptr);
    strip_trailing_zeros(s);
    return normalize_negative_zero(std::move(s));
}

std::string format_fixed(double value, int max_decimals) {
    std::array<char, 512> buf{};
    const auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, max_decimals);
    std::string s = ec == std::errc{} ? std::string(buf.data(), ptr) : std::string("0");
    strip_trailing_zeros(s);
    return normalize_negative_zero(std::move(s));
}

}  // namespace bardsl::dsl
