#pragma once

#include <string>
#include <string_view>

#include "bardsl/dsl/program.hpp"
#include "bardsl/result.hpp"

namespace bardsl::dsl {

enum class ParseErrorKind {
    UnknownKeyword,
    MalformedNumber,
    UnterminatedString,
    ArityMismatch,
    ZeroSegment,
    BadRowOrder,
    BadSide,
    EmptyProgram,
};

const char* to_string(ParseErrorKind kind);

/// First error in the source. Line and column are 1-based; the column counts
/// bytes within the line.
struct ParseError {
    int line = 1;
    int column = 1;
    ParseErrorKind kind = ParseErrorKind::EmptyProgram;
    std::string message;

    /// `<source>:<line>:<column>: <Kind>: <message>`
    [[nodiscard]] std::string format(std::string_view source_name = "<input>") const;
};

/// Upper bounds accepted by the parser; larger values are MalformedNumber.
inline constexpr int kMaxRowIndex = 1000;
inline constexpr double kMaxMagnitude = 1e6;

/// Total over arbitrary bytes: returns a Program or the first located error.
Result<Program, ParseError> parse(std::string_view source, std::optional<std::string> source_name = std::nullopt);

}  // namespace bardsl::dsl
