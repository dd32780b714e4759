#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bardsl/dsl/program.hpp"
#include "bardsl/result.hpp"
#include "bardsl/scene/scene.hpp"
#include "bardsl/verify/diagnostic.hpp"
#include "bardsl/verify/problem_meta.hpp"

namespace bardsl::verify {

/// The five verifier dimensions, each in [0, 1].
struct Dims {
    double align = 1;
    double cover = 1;
    double num = 1;
    double norm = 1;
    double leak = 1;  ///< 1 means no leakage

    [[nodiscard]] double mean() const { return (align + cover + num + norm + leak) / 5.0; }
    bool operator==(const Dims&) const = default;
};

struct VerificationReport {
    std::vector<Diagnostic> diagnostics;
    double rubric_score = 1;
    Dims dims;
    std::vector<std::string> notes;  ///< skipped checks and similar

    [[nodiscard]] bool has_critical() const;
    bool operator==(const VerificationReport&) const = default;
};

/// Assembles rubric score and rule-based dims from a set of diagnostics.
/// `cover` is passed through since it depends on how many givens were found.
VerificationReport make_report(std::vector<Diagnostic> diags, double cover, std::vector<std::string> notes = {});

/// Runs every applicable check on an already-built scene.
VerificationReport verify_scene(const dsl::Program& p, const scene::Scene& s, const std::optional<ProblemMeta>& meta);

/// Builds the scene and verifies. `p` must be macro-free.
Result<VerificationReport, scene::SceneError> verify(const dsl::Program& p, const std::optional<ProblemMeta>& meta = std::nullopt);

}  // namespace bardsl::verify
