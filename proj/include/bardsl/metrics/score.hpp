#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bardsl/dsl/program.hpp"
#include "bardsl/render/config.hpp"
#include "bardsl/result.hpp"
#include "bardsl/verify/problem_meta.hpp"
#include "bardsl/verify/verifier.hpp"

namespace bardsl::metrics {

/// The three components of the overall score. Any missing component makes
/// the composite unavailable.
struct CompositeInputs {
    std::optional<double> chrf;
    std::optional<double> ssim;
    std::optional<double> judge_avg;
};

struct MissingComponent {
    std::string component;
};

/// (chrF + SSIM + judge average) / 3 at full precision.
Result<double, MissingComponent> composite(const CompositeInputs& in);

/// Half-away-from-zero rounding to two decimals, for display.
double round2(double v);

/// judge_avg on the 0..100 scale: 100 x mean of the five dims.
double judge_average(const verify::Dims& d);

struct ScoreReport {
    double bleu = 0;
    double rouge_l = 0;
    double chrf = 0;
    double ssim = 0;
    double psnr = 0;
    verify::Dims dims;
    double judge_avg = 0;
    std::optional<double> composite;
    std::optional<double> rubric_score;  ///< only for rule-based dims
    // LPIPS needs a learned network and is always reported as unavailable.

    bool operator==(const ScoreReport&) const = default;
};

enum class DimsSource { RuleBased, Judge };

/// Supplies the five dims from an external judge for one candidate.
using DimsProvider = std::function<Result<verify::Dims, std::string>(const dsl::Program& candidate)>;

struct ScoreError {
    std::string stage;  ///< "scene", "verify" or "judge"
    std::string message;
};

/// Code metrics on canonical text, image metrics on canonical rasters, dims
/// from the rule-based verifier or the judge. Both programs must be macro-free.
Result<ScoreReport, ScoreError> score_pair(const dsl::Program& candidate, const dsl::Program& reference,
                                           const std::optional<verify::ProblemMeta>& meta,
                                           const render::RenderConfig& cfg = {},
                                           DimsSource dims_source = DimsSource::RuleBased,
                                           const DimsProvider& judge = {});

struct ScoreJob {
    const dsl::Program* candidate = nullptr;
    const dsl::Program* reference = nullptr;
    std::optional<verify::ProblemMeta> meta;
};

using ScoreResult = Result<ScoreReport, ScoreError>;

/// Scores every job, OpenMP-parallel across pairs with at most `jobs`
/// threads (0 = runtime default). Output order matches input order.
std::vector<ScoreResult> score_batch(std::span<const ScoreJob> batch, const render::RenderConfig& cfg = {},
                                     int jobs = 0);

/// Serial reference of score_batch.
std::vector<ScoreResult> score_batch_serial(std::span<const ScoreJob> batch, const render::RenderConfig& cfg = {});

/// Per-metric means over successful reports, in the corpus table layout.
struct ScoreSummary {
    std::size_t count = 0;
    std::size_t failures = 0;
    ScoreReport mean;
};

ScoreSummary summarize(std::span<const ScoreResult> results);

nlohmann::json to_json(const ScoreReport& r);
Result<ScoreReport, std::string> score_from_json(const nlohmann::json& j);

std::string csv_header();
std::string to_csv_row(const std::string& id, const ScoreReport& r);

/// Aligned text table: BLEU ROUGE-L chrF LPIPS SSIM PSNR Align Cover Num Norm Leak Avg. Overall.
std::string summary_table(const ScoreSummary& s);

}  // namespace bardsl::metrics
