#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace bardsl::text {

/// Decodes UTF-8; each ill-formed byte sequence becomes U+FFFD.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);

/// Re-encodes with ill-formed sequences replaced by U+FFFD.
std::string sanitize_utf8(std::string_view s);

std::size_t scalar_count(std::string_view s);

bool is_whitespace(char32_t c);

/// Unicode NFC.
std::string nfc(std::string_view s);

/// Runs of whitespace become one ASCII space; leading/trailing runs dropped.
std::string collapse_whitespace(std::string_view s);

/// NFC followed by whitespace collapsing: the form used for label matching.
std::string normalize_label(std::string_view s);

}  // namespace bardsl::text
