#include "bardsl/metrics/score.hpp"

#include <cmath>
#include <sstream>

#include "bardsl/dsl/number.hpp"
#include "bardsl/dsl/printer.hpp"
#include "bardsl/metrics/image_metrics.hpp"
#include "bardsl/metrics/text_metrics.hpp"
#include "bardsl/render/render.hpp"
#include "bardsl/scene/scene.hpp"
#include "bardsl/verify/report_io.hpp"

#ifdef BARDSL_HAVE_OPENMP
#include <omp.h>
#endif

namespace bardsl::metrics {

using nlohmann::json;

Result<double, MissingComponent> composite(const CompositeInputs& in) {
    if (!in.chrf) return fail(MissingComponent{"chrf"});
    if (!in.ssim) return fail(MissingComponent{"ssim"});
    if (!in.judge_avg) return fail(MissingComponent{"judge_avg"});
    return (*in.chrf + *in.ssim + *in.judge_avg) / 3.0;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

double judge_average(const verify::Dims& d) { return 100.0 * d.mean(); }

Result<ScoreReport, ScoreError> score_pair(const dsl::Program& candidate, const dsl::Program& reference,
                                           const std::optional<verify::ProblemMeta>& meta,
                                           const render::RenderConfig& cfg, DimsSource dims_source,
                                           const DimsProvider& judge) {
    ScoreReport r;
    const std::string cand_text = dsl::canonical_print(candidate);
    const std::string ref_text = dsl::canonical_print(reference);
    r.bleu = bleu(cand_text, ref_text);
    r.rouge_l = rouge_l(cand_text, ref_text);
    r.chrf = chrf(cand_text, ref_text);

    auto cand_scene = scene::build_scene(candidate);
    if (!cand_scene) return fail(ScoreError{"scene", "candidate: " + cand_scene.error().message});
    auto ref_scene = scene::build_scene(reference);
    if (!ref_scene) return fail(ScoreError{"scene", "reference: " + ref_scene.error().message});

    const auto cand_img = render::render_raster(*cand_scene, cfg);
    const auto ref_img = render::render_raster(*ref_scene, cfg);
    r.ssim = ssim(cand_img, ref_img);
    r.psnr = psnr(cand_img, ref_img);

    if (dims_source == DimsSource::RuleBased) {
        const auto report = verify::verify_scene(candidate, *cand_scene, meta);
        r.dims = report.dims;
        r.rubric_score = report.rubric_score;
    } else {
        if (!judge) return fail(ScoreError{"judge", "judge dims requested but no judge configured"});
        auto dims = judge(candidate);
        if (!dims) return fail(ScoreError{"judge", dims.error()});
        r.dims = *dims;
    }
    r.judge_avg = judge_average(r.dims);
    r.composite = composite({r.chrf, r.ssim, r.judge_avg}).value();
    return r;
}

std::vector<ScoreResult> score_batch_serial(std::span<const ScoreJob> batch, const render::RenderConfig& cfg) {
    std::vector<ScoreResult> out;
    out.reserve(batch.size());
    for (const auto& job : batch) out.push_back(score_pair(*job.candidate, *job.reference, job.meta, cfg));
    return out;
}

std::vector<ScoreResult> score_batch(std::span<const ScoreJob> batch, const render::RenderConfig& cfg, int jobs) {
    std::vector<std::optional<ScoreResult>> slots(batch.size());
    const auto n = static_cast<long>(batch.size());
#ifdef BARDSL_HAVE_OPENMP
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#else
    (void)jobs;
#endif
    for (long i = 0; i < n; ++i) {
        const auto& job = batch[static_cast<std::size_t>(i)];
        slots[static_cast<std::size_t>(i)].emplace(score_pair(*job.candidate, *job.reference, job.meta, cfg));
    }
    std::vector<ScoreResult> out;
    out.reserve(batch.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

ScoreSummary summarize(std::span<const ScoreResult> results) {
    ScoreSummary s;
    ScoreReport& m = s.mean;
    m.dims = verify::Dims{0, 0, 0, 0, 0};
    double composite_sum = 0;
    for (const auto& r : results) {
        if (!r) {
            ++s.failures;
            continue;
        }
        ++s.count;
        m.bleu += r->bleu;
        m.rouge_l += r->rouge_l;
        m.chrf += r->chrf;
        m.ssim += r->ssim;
        m.psnr += r->psnr;
        m.dims.align += r->dims.align;
        m.dims.cover += r->dims.cover;
        m.dims.num += r->dims.num;
        m.dims.norm += r->dims.norm;
        m.dims.leak += r->dims.leak;
        m.judge_avg += r->judge_avg;
        composite_sum += r->composite.value_or(0);
    }
    if (s.count == 0) {
        m = ScoreReport{};
        m.composite.reset();
        return s;
    }
    const auto n = static_cast<double>(s.count);
    m.bleu /= n;
    m.rouge_l /= n;
    m.chrf /= n;
    m.ssim /= n;
    m.psnr /= n;
    m.dims.align /= n;
    m.dims.cover /= n;
    m.dims.num /= n;
    m.dims.norm /= n;
    m.dims.leak /= n;
    m.judge_avg /= n;
    m.composite = composite_sum / n;
    return s;
}

json to_json(const ScoreReport& r) {
    json j{{"bleu", r.bleu},
           {"rouge_l", r.rouge_l},
           {"chrf", r.chrf},
           {"lpips", nullptr},
           {"ssim", r.ssim},
           {"psnr", r.psnr},
           {"dims", verify::to_json(r.dims)},
           {"judge_avg", r.judge_avg}};
    j["composite"] = r.composite ? json(*r.composite) : json(nullptr);
    j["rubric_score"] = r.rubric_score ? json(*r.rubric_score) : json(nullptr);
    return j;
}

Result<ScoreReport, std::string> score_from_json(const json& j) {
    try {
        ScoreReport r;
        r.bleu = j.at("bleu").get<double>();
        r.rouge_l = j.at("rouge_l").get<double>();
        r.chrf = j.at("chrf").get<double>();
        r.ssim = j.at("ssim").get<double>();
        r.psnr = j.at("psnr").get<double>();
        auto dims = verify::dims_from_json(j.at("dims"));
        if (!dims) return fail(dims.error());
        r.dims = *dims;
        r.judge_avg = j.at("judge_avg").get<double>();
        if (!j.at("composite").is_null()) r.composite = j.at("composite").get<double>();
        if (j.contains("rubric_score") && !j.at("rubric_score").is_null()) {
            r.rubric_score = j.at("rubric_score").get<double>();
        }
        return r;
    } catch (const json::exception& e) {
        return fail(std::string("score report: ") + e.what());
    }
}

std::string csv_header() {
    return "id,bleu,rouge_l,chrf,lpips,ssim,psnr,align,cover,num,norm,leak,judge_avg,composite";
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string f4(double v) { return dsl::format_fixed(v, 4); }

}  // namespace

std::string to_csv_row(const std::string& id, const ScoreReport& r) {
    std::ostringstream os;
    os << csv_field(id) << ',' << f4(r.bleu) << ',' << f4(r.rouge_l) << ',' << f4(r.chrf) << ",NA," << f4(r.ssim) << ','
       << f4(r.psnr) << ',' << f4(r.dims.align) << ',' << f4(r.dims.cover) << ',' << f4(r.dims.num) << ','
       << f4(r.dims.norm) << ',' << f4(r.dims.leak) << ',' << f4(r.judge_avg) << ','
       << (r.composite ? f4(*r.composite) : std::string("NA"));
    return os.str();
}

std::string summary_table(const ScoreSummary& s) {
    const char* heads[] = {"BLEU", "ROUGE-L", "chrF", "LPIPS", "SSIM", "PSNR", "Align",
                           "Cover", "Num", "Norm", "Leak", "Avg.", "Overall"};
    const ScoreReport& m = s.mean;
    auto two = [](double v) {
        std::ostringstream os;
        os.setf(std::ios::fixed);
        os.precision(2);
        os << v;
        return os.str();
    };
    const std::string vals[] = {two(m.bleu),       two(m.rouge_l),    two(m.chrf),      "NA",
                                two(m.ssim),       two(m.psnr),       two(m.dims.align), two(m.dims.cover),
                                two(m.dims.num),   two(m.dims.norm),  two(m.dims.leak), two(m.judge_avg),
                                m.composite ? two(*m.composite) : std::string("NA")};
    std::ostringstream os;
    for (const char* h : heads) {
        os.width(9);
        os << h;
    }
    os << "\n";
    for (const auto& v : vals) {
        os.width(9);
        os << v;
    }
    os << "\n" << "pairs scored: " << s.count << ", failed: " << s.failures << "\n";
    return os.str();
}

}  // namespace bardsl::metrics
