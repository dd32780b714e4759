#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bardsl/dsl/program.hpp"
#include "bardsl/result.hpp"
#include "bardsl/verify/problem_meta.hpp"

namespace bardsl::corpus {

enum class Split { Train, Test };

const char* to_string(Split s);
std::optional<Split> split_from_string(std::string_view s);

struct Instance {
    std::string id;
    std::string problem;
    std::optional<std::string> image_path;
    std::string dsl;           ///< reference program text as stored
    dsl::Program program;      ///< parsed and macro-expanded
    verify::ProblemMeta meta;
    Split split = Split::Train;
};

struct IngestError {
    std::size_t line = 0;  ///< 1-based; 0 for file-level failures
    std::string cause;
};

struct Manifest {
    std::vector<Instance> instances;
    std::vector<IngestError> failures;
};

/// Parses newline-delimited JSON records. Bad records are collected with
/// their line numbers; the call fails only if nothing loads.
Result<Manifest, IngestError> parse_manifest(std::string_view text);
Result<Manifest, IngestError> load_manifest(const std::filesystem::path& path);

/// Parses one record. `line` only labels errors.
Result<Instance, IngestError> parse_record(std::string_view line_text, std::size_t line);

/// Serializes an instance with fields in manifest order, no trailing newline.
std::string to_record_line(const Instance& inst);
std::string save_manifest_text(const std::vector<Instance>& instances);

/// Number of statements after macro expansion.
std::size_t operation_length(const dsl::Program& p);

}  // namespace bardsl::corpus
