#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bardsl/result.hpp"

namespace bardsl::render {

/// 8-bit grayscale, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

    [[nodiscard]] std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    [[nodiscard]] bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }

    bool operator==(const GrayImage&) const = default;
};

/// Binary PGM (P5, maxval 255).
std::string encode_pgm(const GrayImage& img);
Result<GrayImage, std::string> decode_pgm(std::string_view bytes);

}  // namespace bardsl::render
