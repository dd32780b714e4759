#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "bardsl/metrics/image_metrics.hpp"

namespace bardsl::metrics {

namespace {

std::array<double, kSsimWindow> gaussian_1d() {
    std::array<double, kSsimWindow> g{};
    constexpr int half = kSsimWindow / 2;
    double sum = 0;
    for (int i = 0; i < kSsimWindow; ++i) {
        const double d = i - half;
        g[i] = std::exp(-(d * d) / (2 * kSsimSigma * kSsimSigma));
        sum += g[i];
    }
    for (double& v : g) v /= sum;
    return g;
}

struct PaddedPair {
    GrayImage a;
    GrayImage b;
};

PaddedPair pad_pair(const GrayImage& a, const GrayImage& b, int min_size) {
    const int w = std::max({a.width, b.width, min_size});
    const int h = std::max({a.height, b.height, min_size});
    return {pad_to(a, w, h), pad_to(b, w, h)};
}

double ssim_from_moments(double mu_a, double mu_b, double saa, double sbb, double sab) {
    const double var_a = saa - mu_a * mu_a;
    const double var_b = sbb - mu_b * mu_b;
    const double cov = sab - mu_a * mu_b;
    return ((2 * mu_a * mu_b + kSsimC1) * (2 * cov + kSsimC2)) /
           ((mu_a * mu_a + mu_b * mu_b + kSsimC1) * (var_a + var_b + kSsimC2));
}

}  // namespace

GrayImage pad_to(const GrayImage& img, int w, int h, std::uint8_t fill) {
    if (img.width == w && img.height == h) return img;
    GrayImage out(w, h, fill);
    for (int y = 0; y < std::min(h, img.height); ++y) {
        for (int x = 0; x < std::min(w, img.width); ++x) out.at(x, y) = img.at(x, y);
    }
    return out;
}

double ssim_index(const GrayImage& a_in, const GrayImage& b_in) {
    const auto [a, b] = pad_pair(a_in, b_in, kSsimWindow);
    const auto g = gaussian_1d();
    const int w = a.width;
    const int h = a.height;
    const int ow = w - kSsimWindow + 1;
    const int oh = h - kSsimWindow + 1;

    // Horizontal pass: five moment planes of size h x ow.
    const auto plane = static_cast<std::size_t>(h) * ow;
    std::vector<double> ha(plane), hb(plane), haa(plane), hbb(plane), hab(plane);
#ifdef BARDSL_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < ow; ++x) {
            double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
            for (int k = 0; k < kSsimWindow; ++k) {
                const double pa = a.at(x + k, y);
                const double pb = b.at(x + k, y);
                sa += g[k] * pa;
                sb += g[k] * pb;
                saa += g[k] * pa * pa;
                sbb += g[k] * pb * pb;
                sab += g[k] * pa * pb;
            }
            const auto idx = static_cast<std::size_t>(y) * ow + x;
            ha[idx] = sa;
            hb[idx] = sb;
            haa[idx] = saa;
            hbb[idx] = sbb;
            hab[idx] = sab;
        }
    }

    // Vertical pass and per-window SSIM; row sums are reduced in order so the
    // result is identical for any thread count.
    std::vector<double> row_sums(static_cast<std::size_t>(oh), 0.0);
#ifdef BARDSL_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int y = 0; y < oh; ++y) {
        double acc = 0;
        for (int x = 0; x < ow; ++x) {
            double mu_a = 0, mu_b = 0, saa = 0, sbb = 0, sab = 0;
            for (int k = 0; k < kSsimWindow; ++k) {
                const auto idx = static_cast<std::size_t>(y + k) * ow + x;
                mu_a += g[k] * ha[idx];
                mu_b += g[k] * hb[idx];
                saa += g[k] * haa[idx];
                sbb += g[k] * hbb[idx];
                sab += g[k] * hab[idx];
            }
            acc += ssim_from_moments(mu_a, mu_b, saa, sbb, sab);
        }
        row_sums[static_cast<std::size_t>(y)] = acc;
    }
    const double total = std::accumulate(row_sums.begin(), row_sums.end(), 0.0);
    return total / (static_cast<double>(ow) * oh);
}

double ssim(const GrayImage& a, const GrayImage& b) { return std::clamp(100.0 * ssim_index(a, b), 0.0, 100.0); }

namespace reference {

double ssim_index(const GrayImage& a_in, const GrayImage& b_in) {
    const auto [a, b] = pad_pair(a_in, b_in, kSsimWindow);
    const auto g = gaussian_1d();
    const int ow = a.width - kSsimWindow + 1;
    const int oh = a.height - kSsimWindow + 1;
    double total = 0;
    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            double mu_a = 0, mu_b = 0, saa = 0, sbb = 0, sab = 0;
            for (int j = 0; j < kSsimWindow; ++j) {
                for (int i = 0; i < kSsimWindow; ++i) {
                    const double wgt = g[i] * g[j];
                    const double pa = a.at(x + i, y + j);
                    const double pb = b.at(x + i, y + j);
                    mu_a += wgt * pa;
                    mu_b += wgt * pb;
                    saa += wgt * pa * pa;
                    sbb += wgt * pb * pb;
                    sab += wgt * pa * pb;
                }
            }
            total += ssim_from_moments(mu_a, mu_b, saa, sbb, sab);
        }
    }
    return total / (static_cast<double>(ow) * oh);
}

}  // namespace reference

}  // namespace bardsl::metrics
