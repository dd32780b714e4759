#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bardsl::metrics {

inline constexpr int kChrfMaxOrder = 6;
inline constexpr double kChrfBeta = 2.0;
inline constexpr int kBleuMaxOrder = 4;

/// Character n-gram F-score (n = 1..6, beta = 2) over whitespace-stripped
/// text, in [0, 100].
double chrf(std::string_view candidate, std::string_view reference);

/// Sentence BLEU-4 over whitespace tokens, add-one smoothing on orders with
/// no matches, brevity penalty; in [0, 100]. An empty candidate scores 0.
double bleu(std::string_view candidate, std::string_view reference);

/// Token-level LCS F1, in [0, 100].
double rouge_l(std::string_view candidate, std::string_view reference);

std::vector<std::string> whitespace_tokens(std::string_view s);

}  // namespace bardsl::metrics
