#include "bardsl/verify/verifier.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "bardsl/verify/checks.hpp"

namespace bardsl::verify {

const char* to_string(Schema s) {
    switch (s) {
        case Schema::ProportionalDistribution: return "ProportionalDistribution";
        case Schema::RatePercentage: return "RatePercentage";
        case Schema::ChangeRevert: return "ChangeRevert";
        case Schema::SumSplit: return "SumSplit";
        case Schema::DifferenceAnalysis: return "DifferenceAnalysis";
    }
    return "?";
}

const char* display_name(Schema s) {
    switch (s) {
        case Schema::ProportionalDistribution: return "Proportional Distribution";
        case Schema::RatePercentage: return "Rate & Percentage";
        case Schema::ChangeRevert: return "Change & Revert";
        case Schema::SumSplit: return "Sum & Split";
        case Schema::DifferenceAnalysis: return "Difference Analysis";
    }
    return "?";
}

const char* to_string(Difficulty d) {
    switch (d) {
        case Difficulty::Easy: return "Easy";
        case Difficulty::Medium: return "Medium";
        case Difficulty::Hard: return "Hard";
    }
    return "?";
}

std::optional<Schema> schema_from_string(std::string_view s) {
    for (Schema v : kAllSchemas) {
        if (s == to_string(v)) return v;
    }
    return std::nullopt;
}

std::optional<Difficulty> difficulty_from_string(std::string_view s) {
    for (Difficulty v : kAllDifficulties) {
        if (s == to_string(v)) return v;
    }
    return std::nullopt;
}

const char* to_string(CheckId id) {
    constexpr const char* names[] = {"C1", "C2", "C3", "C4", "C5", "C6", "N1", "N2", "N3", "N4"};
    return names[static_cast<int>(id)];
}

const char* description(CheckId id) {
    switch (id) {
        case CheckId::C1: return "alignment";
        case CheckId::C2: return "completeness";
        case CheckId::C3: return "numerical-consistency";
        case CheckId::C4: return "transfer";
        case CheckId::C5: return "leakage";
        case CheckId::C6: return "vb-vl-usage";
        case CheckId::N1: return "reduction-convention";
        case CheckId::N2: return "multiplicative-structure";
        case CheckId::N3: return "semantic-decomposition";
        case CheckId::N4: return "label-conciseness";
    }
    return "?";
}

const char* to_string(Severity s) { return s == Severity::Critical ? "critical" : "noncritical"; }

std::optional<CheckId> check_from_string(std::string_view s) {
    for (CheckId id : kAllChecks) {
        if (s == to_string(id)) return id;
    }
    return std::nullopt;
}

std::optional<Severity> severity_from_string(std::string_view s) {
    if (s == "critical") return Severity::Critical;
    if (s == "noncritical") return Severity::NonCritical;
    return std::nullopt;
}

Diagnostic make_diagnostic(CheckId id, std::optional<std::size_t> statement, std::optional<int> row, std::string message) {
    return Diagnostic{id, severity_of(id), statement, row, std::move(message)};
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
    std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        const auto key = [](const Diagnostic& d) {
            return std::make_tuple(d.statement.has_value() ? 0 : 1, d.statement.value_or(0), static_cast<int>(d.check_id));
        };
        if (key(a) != key(b)) return key(a) < key(b);
        return a.message < b.message;
    });
}

double rubric_score(std::span<const Diagnostic> diags) {
    std::set<CheckId> failed_noncritical;
    for (const auto& d : diags) {
        if (d.severity == Severity::Critical) return 0.0;
        failed_noncritical.insert(d.check_id);
    }
    const auto k = static_cast<int>(failed_noncritical.size());
    return std::max(0, 10 - k) / 10.0;
}

bool VerificationReport::has_critical() const {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Critical; });
}

VerificationReport make_report(std::vector<Diagnostic> diags, double cover, std::vector<std::string> notes) {
    sort_diagnostics(diags);
    VerificationReport r;
    r.rubric_score = rubric_score(diags);
    auto any = [&](CheckId id) {
        return std::any_of(diags.begin(), diags.end(), [&](const Diagnostic& d) { return d.check_id == id; });
    };
    std::set<CheckId> failed_n;
    for (const auto& d : diags) {
        if (d.severity == Severity::NonCritical) failed_n.insert(d.check_id);
    }
    r.dims.align = any(CheckId::C1) ? 0.0 : 1.0;
    r.dims.cover = cover;
    r.dims.num = any(CheckId::C3) ? 0.0 : 1.0;
    r.dims.norm = std::max(0.0, 1.0 - 0.25 * static_cast<double>(failed_n.size()));
    r.dims.leak = any(CheckId::C5) ? 0.0 : 1.0;
    r.diagnostics = std::move(diags);
    r.notes = std::move(notes);
    return r;
}

VerificationReport verify_scene(const dsl::Program& p, const scene::Scene& s, const std::optional<ProblemMeta>& meta) {
    std::vector<Diagnostic> diags;
    std::vector<std::string> notes;
    auto append = [&](std::vector<Diagnostic> more) {
        diags.insert(diags.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    };

    append(check_alignment(s));
    append(check_vb_vl_usage(s));
    append(check_numeric_consistency(s));
    append(check_noncritical(s));

    double cover = 1.0;
    if (meta) {
        std::size_t found = 0;
        append(check_completeness(p, *meta, &found));
        if (!meta->givens.empty()) cover = static_cast<double>(found) / static_cast<double>(meta->givens.size());
        if (meta->answer) {
            append(check_leakage(p, *meta));
        } else {
            notes.emplace_back("leakage check skipped: no answer in problem metadata");
        }
        if (meta->schema == Schema::ChangeRevert) {
            append(check_transfer(s, *meta));
        }
    } else {
        notes.emplace_back("completeness check skipped: no problem metadata");
        notes.emplace_back("leakage check skipped: no problem metadata");
    }
    return make_report(std::move(diags), cover, std::move(notes));
}

Result<VerificationReport, scene::SceneError> verify(const dsl::Program& p, const std::optional<ProblemMeta>& meta) {
    auto s = scene::build_scene(p);
    if (!s) return fail(std::move(s).error());
    return verify_scene(p, *s, meta);
}

}  // namespace bardsl::verify
