#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "bardsl/result.hpp"
#include "bardsl/twd/loop.hpp"

namespace bardsl::twd {

/// Stable-keyed record. Renders are summarized, not embedded.
nlohmann::ordered_json to_json(const DraftTrace& t);

/// Writes via a temporary file and rename so readers never see partial output.
Result<bool, std::string> write_atomic(const std::filesystem::path& path, const std::string& bytes);

/// `<id>.trace.json`, plus `<id>.svg` / `<id>.pgm` for the final draft when rendered.
Result<bool, std::string> write_trace_artifacts(const DraftTrace& t, const std::filesystem::path& dir);

}  // namespace bardsl::twd
