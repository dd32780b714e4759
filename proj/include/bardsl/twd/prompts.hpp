#pragma once

#include <span>
#include <string>

#include "bardsl/dsl/program.hpp"
#include "bardsl/verify/diagnostic.hpp"

namespace bardsl::twd {

extern const char* const kAdapterPreamble;

/// First drafting request: analysis, then exactly one ```dsl block.
std::string draft_prompt(const std::string& problem);

/// Re-prompt after a failed attempt. `problems` lists parse errors or diagnostics.
std::string repair_prompt(const std::string& problem, const std::string& previous_response,
                          std::span<const std::string> problems);

/// Second stage: the drafting context (explanation and canonical draft) plus
/// a request for a refined explanation, final DSL and an `Answer:` line.
std::string solve_prompt(const std::string& problem, const std::string& explanation, const dsl::Program& draft);

}  // namespace bardsl::twd
