#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "bardsl/metrics/image_metrics.hpp"

namespace bardsl::metrics {

double mse(const GrayImage& a_in, const GrayImage& b_in) {
    const int w = std::max(a_in.width, b_in.width);
    const int h = std::max(a_in.height, b_in.height);
    if (w == 0 || h == 0) return 0.0;
    const GrayImage a = pad_to(a_in, w, h);
    const GrayImage b = pad_to(b_in, w, h);
    std::vector<double> row_sums(static_cast<std::size_t>(h), 0.0);
#ifdef BARDSL_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int y = 0; y < h; ++y) {
        double acc = 0;
        for (int x = 0; x < w; ++x) {
            const double d = static_cast<double>(a.at(x, y)) - b.at(x, y);
            acc += d * d;
        }
        row_sums[static_cast<std::size_t>(y)] = acc;
    }
    return std::accumulate(row_sums.begin(), row_sums.end(), 0.0) / (static_cast<double>(w) * h);
}

double psnr(const GrayImage& a, const GrayImage& b) {
    const double e = mse(a, b);
    if (e == 0) return kPsnrCapDb;
    return std::min(kPsnrCapDb, 10.0 * std::log10(255.0 * 255.0 / e));
}

namespace reference {

double mse(const GrayImage& a_in, const GrayImage& b_in) {
    const int w = std::max(a_in.width, b_in.width);
    const int h = std::max(a_in.height, b_in.height);
    if (w == 0 || h == 0) return 0.0;
    const GrayImage a = pad_to(a_in, w, h);
    const GrayImage b = pad_to(b_in, w, h);
    double total = 0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = static_cast<double>(a.pixels[i]) - b.pixels[i];
        total += d * d;
    }
    return total / (static_cast<double>(w) * h);
}

}  // namespace reference

}  // namespace bardsl::metrics
