#pragma once
// Independent reference computations used as test oracles. Written from the
// metric definitions, sharing no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oracle {

/// Codepoints of a UTF-8 string without any whitespace (ASCII set is enough
/// for the oracle inputs).
inline std::u32string strip_ws(const std::string& s) {
    std::u32string out;
    for (std::size_t i = 0; i < s.size();) {
        const auto c = static_cast<unsigned char>(s[i]);
        char32_t cp = c;
        std::size_t len = 1;
        if (c >= 0xF0) {
            cp = c & 0x07;
            len = 4;
        } else if (c >= 0xE0) {
            cp = c & 0x0F;
            len = 3;
        } else if (c >= 0xC0) {
            cp = c & 0x1F;
            len = 2;
        }
        for (std::size_t k = 1; k < len && i + k < s.size(); ++k) cp = (cp << 6) | (s[i + k] & 0x3F);
        i += len;
        if (cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\v' || cp == '\f') continue;
        out.push_back(cp);
    }
    return out;
}

template <typename Seq>
std::map<Seq, int> all_ngrams(const Seq& s, std::size_t n) {
    std::map<Seq, int> m;
    for (std::size_t i = 0; i + n <= s.size(); ++i) m[Seq(s.begin() + i, s.begin() + i + n)]++;
    return m;
}

template <typename Seq>
int clipped_matches(const std::map<Seq, int>& c, const std::map<Seq, int>& r) {
    int m = 0;
    for (const auto& [g, k] : c) {
        auto it = r.find(g);
        if (it != r.end()) m += std::min(k, it->second);
    }
    return m;
}

template <typename Seq>
int total(const std::map<Seq, int>& m) {
    int t = 0;
    for (const auto& [g, k] : m) t += k;
    return t;
}

/// Character n-gram F-score, beta = 2, orders 1..6, whitespace removed.
inline double chrf(const std::string& cand, const std::string& ref) {
    const auto c = strip_ws(cand), r = strip_ws(ref);
    double psum = 0, rsum = 0;
    int pn = 0, rn = 0;
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto cg = all_ngrams(c, n), rg = all_ngrams(r, n);
        const int m = clipped_matches(cg, rg);
        if (total(cg) > 0) {
            psum += double(m) / total(cg);
            ++pn;
        }
        if (total(rg) > 0) {
            rsum += double(m) / total(rg);
            ++rn;
        }
    }
    if (pn == 0 || rn == 0) return 0;
    const double P = psum / pn, R = rsum / rn;
    if (P == 0 && R == 0) return 0;
    return 100.0 * 5.0 * P * R / (4.0 * P + R);
}

inline std::vector<std::string> tokens(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\v' || ch == '\f') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

/// BLEU-4, add-one smoothing on orders without matches, brevity penalty.
inline double bleu(const std::string& cand, const std::string& ref) {
    const auto c = tokens(cand), r = tokens(ref);
    if (c.empty()) return 0;
    double prod = 1;
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto cg = all_ngrams(c, n), rg = all_ngrams(r, n);
        const int m = clipped_matches(cg, rg);
        const int t = total(cg);
        prod *= m == 0 ? 1.0 / (t + 1) : double(m) / t;
    }
    const double bp = c.size() < r.size() ? std::exp(1.0 - double(r.size()) / double(c.size())) : 1.0;
    return 100.0 * bp * std::pow(prod, 0.25);
}

/// LCS length by exhaustive subsequence search over the shorter side when
/// small, else plain recursion with memo.
inline int lcs_len(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    const auto& s = a.size() <= b.size() ? a : b;
    const auto& t = a.size() <= b.size() ? b : a;
    if (s.size() <= 14) {
        int best = 0;
        for (std::uint32_t mask = 0; mask < (1u << s.size()); ++mask) {
            const int bits = __builtin_popcount(mask);
            if (bits <= best) continue;
            std::size_t j = 0;
            bool ok = true;
            for (std::size_t i = 0; i < s.size() && ok; ++i) {
                if (!(mask >> i & 1u)) continue;
                while (j < t.size() && t[j] != s[i]) ++j;
                if (j == t.size()) ok = false;
                else ++j;
            }
            if (ok) best = bits;
        }
        return best;
    }
    std::vector<std::vector<int>> memo(s.size() + 1, std::vector<int>(t.size() + 1, -1));
    auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> int {
        if (i == s.size() || j == t.size()) return 0;
        int& m = memo[i][j];
        if (m >= 0) return m;
        m = s[i] == t[j] ? 1 + self(self, i + 1, j + 1) : std::max(self(self, i + 1, j), self(self, i, j + 1));
        return m;
    };
    return rec(rec, 0, 0);
}

inline double rouge_l(const std::string& cand, const std::string& ref) {
    const auto c = tokens(cand), r = tokens(ref);
    if (c.empty() || r.empty()) return 0;
    const int L = lcs_len(c, r);
    if (L == 0) return 0;
    const double P = double(L) / c.size(), R = double(L) / r.size();
    return 100.0 * 2 * P * R / (P + R);
}

struct Image {
    int w = 0, h = 0;
    std::vector<int> px;
    int at(int x, int y) const { return px[std::size_t(y) * w + x]; }
};

/// Mean SSIM with an 11x11 Gaussian (sigma 1.5) evaluated directly at every
/// window fully inside the image. Both images must have the same size.
inline double ssim(const Image& a, const Image& b) {
    const double C1 = std::pow(0.01 * 255, 2), C2 = std::pow(0.03 * 255, 2);
    double g[11][11];
    double sum = 0;
    for (int i = 0; i < 11; ++i)
        for (int j = 0; j < 11; ++j) {
            const double di = i - 5, dj = j - 5;
            g[i][j] = std::exp(-(di * di + dj * dj) / (2 * 1.5 * 1.5));
            sum += g[i][j];
        }
    double acc = 0;
    int count = 0;
    for (int y = 0; y + 11 <= a.h; ++y)
        for (int x = 0; x + 11 <= a.w; ++x) {
            double ma = 0, mb = 0, saa = 0, sbb = 0, sab = 0;
            for (int i = 0; i < 11; ++i)
                for (int j = 0; j < 11; ++j) {
                    const double w = g[i][j] / sum;
                    const double va = a.at(x + j, y + i), vb = b.at(x + j, y + i);
                    ma += w * va;
                    mb += w * vb;
                    saa += w * va * va;
                    sbb += w * vb * vb;
                    sab += w * va * vb;
                }
            const double va = saa - ma * ma, vb = sbb - mb * mb, cov = sab - ma * mb;
            acc += ((2 * ma * mb + C1) * (2 * cov + C2)) / ((ma * ma + mb * mb + C1) * (va + vb + C2));
            ++count;
        }
    return acc / count;
}

/// Scoring rule: 0 with any critical failure, else 1 - 0.1 per non-critical failure.
inline double rubric(int critical_fails, int noncritical_fails) {
    return critical_fails > 0 ? 0.0 : 1.0 - 0.1 * noncritical_fails;
}

}  // namespace oracle
