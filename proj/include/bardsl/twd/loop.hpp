#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bardsl/corpus/manifest.hpp"
#include "bardsl/dsl/program.hpp"
#include "bardsl/render/config.hpp"
#include "bardsl/render/render.hpp"
#include "bardsl/result.hpp"
#include "bardsl/twd/adapter.hpp"
#include "bardsl/verify/verifier.hpp"

namespace bardsl::twd {

/// Response split into prose and the extracted DSL block.
struct Extracted {
    std::string explanation;
    std::optional<std::string> dsl;
};

/// First block fenced as ```dsl, else the first fenced block. Everything
/// outside that block is explanation.
Extracted extract_dsl(const std::string& response);

/// Value of the last line of the form `Answer: <value>`.
std::optional<std::string> extract_answer(const std::string& response);

/// Numeric reading of an answer such as "132", "$1,320$" or "4.5 kg".
std::optional<double> parse_answer_number(const std::string& answer);

struct Attempt {
    std::string response;
    std::string explanation;
    std::optional<std::string> dsl_text;
    std::optional<dsl::Program> draft;  ///< macro-expanded
    std::optional<std::string> error;   ///< parse, expansion or scene failure
    std::optional<verify::VerificationReport> verification;
    std::optional<render::RenderOutput> render;

    [[nodiscard]] bool clean() const { return verification && !verification->has_critical(); }
};

struct DraftTrace {
    std::string instance_id;
    std::vector<Attempt> attempts;
    std::optional<std::string> final_answer;
    std::optional<std::string> stage2_response;
    std::optional<std::string> stage2_explanation;
    std::optional<dsl::Program> stage2_draft;
    std::optional<verify::VerificationReport> stage2_verification;
    std::optional<verify::VerificationReport> leakage;
    std::optional<render::RenderOutput> stage2_render;
    std::vector<std::string> notes;

    /// Last attempt that produced a program, if any.
    [[nodiscard]] const Attempt* best_attempt() const;
};

enum class LoopErrorKind { Exhausted, Adapter, MalformedStage2, NoDraft };
const char* to_string(LoopErrorKind k);

struct LoopError {
    LoopErrorKind kind = LoopErrorKind::Exhausted;
    std::string message;
    DraftTrace trace;
};

struct LoopOptions {
    int max_repairs = 2;
    bool feed_render = false;                    ///< pass the stage-1 raster to stage 2
    std::optional<std::filesystem::path> scratch_dir;  ///< where fed renders are written
    render::RenderConfig render;
    bool keep_renders = true;
};

/// Parses, expands, verifies and renders one DSL text.
Attempt evaluate_draft(std::string response, const verify::ProblemMeta& meta, const LoopOptions& opts);

Result<DraftTrace, LoopError> run_stage1(const corpus::Instance& instance, ModelAdapter& adapter,
                                         const LoopOptions& opts = {});

Result<DraftTrace, LoopError> run_stage2(DraftTrace trace, const corpus::Instance& instance, ModelAdapter& adapter,
                                         const LoopOptions& opts = {});

/// Stage 1 then stage 2.
Result<DraftTrace, LoopError> run_instance(const corpus::Instance& instance, ModelAdapter& adapter,
                                           const LoopOptions& opts = {});

/// C5 on the stage-2 draft with the loop's own numeric answer.
verify::VerificationReport leakage_guard(const DraftTrace& trace, const verify::ProblemMeta& meta);

}  // namespace bardsl::twd
