#pragma once

#include "bardsl/render/image.hpp"

namespace bardsl::metrics {

using render::GrayImage;

inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimC1 = (0.01 * 255) * (0.01 * 255);
inline constexpr double kSsimC2 = (0.03 * 255) * (0.03 * 255);
inline constexpr double kPsnrCapDb = 99.0;
inline constexpr std::uint8_t kPadValue = 255;

/// Copy of `img` enlarged to w x h, new pixels set to `fill`, anchored top-left.
GrayImage pad_to(const GrayImage& img, int w, int h, std::uint8_t fill = kPadValue);

/// Mean SSIM in [-1, 1] over all 11x11 Gaussian windows (sigma 1.5) lying
/// fully inside the padded image pair. Both images are first padded with 255
/// to their union size, and to at least one window. Separable filtering,
/// parallelised across rows with OpenMP; the result does not depend on the
/// thread count.
double ssim_index(const GrayImage& a, const GrayImage& b);

/// Mean SSIM x 100, clamped to [0, 100].
double ssim(const GrayImage& a, const GrayImage& b);

/// PSNR in dB on the padded pair; identical images (and anything above the
/// cap) report 99 dB.
double psnr(const GrayImage& a, const GrayImage& b);

/// Mean squared error on the padded pair.
double mse(const GrayImage& a, const GrayImage& b);

namespace reference {

/// Serial, direct per-window evaluation of the same quantities. Kept as the
/// baseline the parallel kernels are tested and benchmarked against.
double ssim_index(const GrayImage& a, const GrayImage& b);
double mse(const GrayImage& a, const GrayImage& b);

}  // namespace reference

}  // namespace bardsl::metrics
