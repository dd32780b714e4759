#pragma once

#include <string>
#include <string_view>

#include "bardsl/dsl/program.hpp"

namespace bardsl::dsl {

/// Quotes a label, escaping only '"' and '\'.
std::string quote(std::string_view text);

std::string print_statement(const Statement& s);

/// Canonical text: one statement per line, single spaces, shortest numbers,
/// trailing newline. This is the interchange form fed to code metrics.
std::string canonical_print(const Program& p);

}  // namespace bardsl::dsl
