#include "bardsl/metrics/text_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "bardsl/text/unicode.hpp"

namespace bardsl::metrics {

namespace {

std::u32string strip_whitespace(std::string_view s) {
    std::u32string out;
    for (char32_t c : text::decode_utf8(s)) {
        if (!text::is_whitespace(c)) out.push_back(c);
    }
    return out;
}

using NgramCounts = std::unordered_map<std::u32string_view, int>;

NgramCounts char_ngrams(const std::u32string& s, std::size_t n) {
    NgramCounts counts;
    if (s.size() < n) return counts;
    const std::u32string_view view(s);
    for (std::size_t i = 0; i + n <= s.size(); ++i) ++counts[view.substr(i, n)];
    return counts;
}

/// Interns tokens of both sides into small integer ids.
struct TokenIds {
    std::vector<int> cand;
    std::vector<int> ref;
};

TokenIds intern(std::string_view candidate, std::string_view reference) {
    std::unordered_map<std::string, int> ids;
    TokenIds out;
    auto map = [&](std::string_view s, std::vector<int>& dst) {
        for (auto& tok : whitespace_tokens(s)) {
            const auto [it, inserted] = ids.try_emplace(std::move(tok), static_cast<int>(ids.size()));
            dst.push_back(it->second);
        }
    };
    map(candidate, out.cand);
    map(reference, out.ref);
    return out;
}

std::map<std::vector<int>, int> token_ngrams(const std::vector<int>& toks, std::size_t n) {
    std::map<std::vector<int>, int> counts;
    for (std::size_t i = 0; i + n <= toks.size(); ++i) {
        ++counts[std::vector<int>(toks.begin() + static_cast<std::ptrdiff_t>(i),
                                  toks.begin() + static_cast<std::ptrdiff_t>(i + n))];
    }
    return counts;
}

}  // namespace

std::vector<std::string> whitespace_tokens(std::string_view s) {
    std::vector<std::string> out;
    std::u32string cur;
    for (char32_t c : text::decode_utf8(s)) {
        if (text::is_whitespace(c)) {
            if (!cur.empty()) out.push_back(text::encode_utf8(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(text::encode_utf8(cur));
    return out;
}

double chrf(std::string_view candidate, std::string_view reference) {
    const std::u32string cand = strip_whitespace(candidate);
    const std::u32string ref = strip_whitespace(reference);
    if (cand.empty() || ref.empty()) return 0.0;

    double prec_sum = 0, rec_sum = 0;
    int prec_orders = 0, rec_orders = 0;
    for (std::size_t n = 1; n <= kChrfMaxOrder; ++n) {
        const auto c = char_ngrams(cand, n);
        const auto r = char_ngrams(ref, n);
        const double c_total = cand.size() >= n ? static_cast<double>(cand.size() - n + 1) : 0.0;
        const double r_total = ref.size() >= n ? static_cast<double>(ref.size() - n + 1) : 0.0;
        double matches = 0;
        for (const auto& [gram, count] : c) {
            if (const auto it = r.find(gram); it != r.end()) matches += std::min(count, it->second);
        }
        if (c_total > 0) {
            prec_sum += matches / c_total;
            ++prec_orders;
        }
        if (r_total > 0) {
            rec_sum += matches / r_total;
            ++rec_orders;
        }
    }
    const double p = prec_sum / prec_orders;
    const double r = rec_sum / rec_orders;
    if (p == 0 && r == 0) return 0.0;
    const double b2 = kChrfBeta * kChrfBeta;
    return 100.0 * (1 + b2) * p * r / (b2 * p + r);
}

double bleu(std::string_view candidate, std::string_view reference) {
    const TokenIds t = intern(candidate, reference);
    const auto c_len = static_cast<double>(t.cand.size());
    const auto r_len = static_cast<double>(t.ref.size());
    if (t.cand.empty()) return 0.0;

    double log_sum = 0;
    for (std::size_t n = 1; n <= kBleuMaxOrder; ++n) {
        const auto c = token_ngrams(t.cand, n);
        const auto r = token_ngrams(t.ref, n);
        const double total = t.cand.size() >= n ? static_cast<double>(t.cand.size() - n + 1) : 0.0;
        double matches = 0;
        for (const auto& [gram, count] : c) {
            if (const auto it = r.find(gram); it != r.end()) matches += std::min(count, it->second);
        }
        const double p = matches == 0 ? 1.0 / (total + 1.0) : matches / total;
        log_sum += std::log(p);
    }
    const double bp = c_len < r_len ? std::exp(1.0 - r_len / c_len) : 1.0;
    return 100.0 * bp * std::exp(log_sum / kBleuMaxOrder);
}

double rouge_l(std::string_view candidate, std::string_view reference) {
    const TokenIds t = intern(candidate, reference);
    if (t.cand.empty() || t.ref.empty()) return 0.0;
    const std::size_t m = t.ref.size();
    std::vector<int> prev(m + 1, 0), cur(m + 1, 0);
    for (int a : t.cand) {
        for (std::size_t j = 1; j <= m; ++j) {
            cur[j] = a == t.ref[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    const double lcs = prev[m];
    if (lcs == 0) return 0.0;
    const double p = lcs / static_cast<double>(t.cand.size());
    const double r = lcs / static_cast<double>(m);
    return 100.0 * 2 * p * r / (p + r);
}

}  // namespace bardsl::metrics
