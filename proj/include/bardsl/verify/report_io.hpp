#pragma once

#include <string>

#include <json.hpp>

#include "bardsl/result.hpp"
#include "bardsl/verify/problem_meta.hpp"
#include "bardsl/verify/verifier.hpp"

namespace bardsl::verify {

/// One diagnostic per line: `severity check_id stmt:<n> message`, with
/// `stmt:-` when a diagnostic is not tied to a statement. Followed by a
/// summary line with the rubric score and dims.
std::string to_text(const VerificationReport& r);
std::string to_text(const Diagnostic& d);

nlohmann::json to_json(const Dims& d);
nlohmann::json to_json(const Diagnostic& d);
nlohmann::json to_json(const VerificationReport& r);
Result<Dims, std::string> dims_from_json(const nlohmann::json& j);
Result<VerificationReport, std::string> report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ProblemMeta& m);
/// Reads `givens`, `query_marker`, `answer`, `schema`, `difficulty`; all optional.
Result<ProblemMeta, std::string> meta_from_json(const nlohmann::json& j);

/// Pretty-prints with ill-formed UTF-8 replaced rather than throwing.
std::string dump_json(const nlohmann::json& j, int indent = 2);

}  // namespace bardsl::verify
