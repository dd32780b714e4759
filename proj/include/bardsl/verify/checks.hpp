#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bardsl/dsl/program.hpp"
#include "bardsl/scene/scene.hpp"
#include "bardsl/verify/diagnostic.hpp"
#include "bardsl/verify/problem_meta.hpp"

namespace bardsl::verify {

struct VisibleLabel {
    std::size_t statement = 0;
    std::string text;
};

/// Quoted strings only; segment lengths and coordinates are never visible text.
std::vector<VisibleLabel> visible_labels(const dsl::Program& p);

/// Maximal ASCII digit runs with an optional ".digits" tail, e.g. "1320 kg" -> {1320}.
std::vector<double> numeric_tokens(std::string_view label);

/// C1: brace endpoints and link positions sit on bar boundaries; no dangling rows.
std::vector<Diagnostic> check_alignment(const scene::Scene& s);

/// C2: every given appears in some label, and some label carries "?".
/// `found` (optional) receives the number of givens located.
std::vector<Diagnostic> check_completeness(const dsl::Program& p, const ProblemMeta& meta, std::size_t* found = nullptr);

/// C5: the answer does not appear among the numeric tokens of any label.
/// Returns no diagnostics when meta.answer is absent.
std::vector<Diagnostic> check_leakage(const dsl::Program& p, const ProblemMeta& meta);

/// C6: VB spans at least two bars; VL sits on a boundary shared by two spanned bars.
std::vector<Diagnostic> check_vb_vl_usage(const scene::Scene& s);

/// C4 (ChangeRevert only): paired -t/+t across two rows joined by a VL at a shared boundary.
std::vector<Diagnostic> check_transfer(const scene::Scene& s, const ProblemMeta& meta);

/// C3: pure-number labels agree with the geometry they annotate.
std::vector<Diagnostic> check_numeric_consistency(const scene::Scene& s);

/// N1..N4.
std::vector<Diagnostic> check_noncritical(const scene::Scene& s);

inline constexpr std::size_t kMaxLabelLength = 40;

}  // namespace bardsl::verify
