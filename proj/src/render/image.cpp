#include "bardsl/render/image.hpp"

#include <cctype>
#include <charconv>

namespace bardsl::render {

std::string encode_pgm(const GrayImage& img) {
    std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
    return out;
}

Result<GrayImage, std::string> decode_pgm(std::string_view bytes) {
    std::size_t pos = 0;
    auto skip_space = [&] {
        while (pos < bytes.size()) {
            if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
                ++pos;
            } else {
                break;
            }
        }
    };
    auto read_int = [&](int& out) {
        skip_space();
        const auto [ptr, ec] = std::from_chars(bytes.data() + pos, bytes.data() + bytes.size(), out);
        if (ec != std::errc{}) return false;
        pos = static_cast<std::size_t>(ptr - bytes.data());
        return true;
    };
    if (bytes.substr(0, 2) != "P5") return fail(std::string("not a binary PGM (missing P5 magic)"));
    pos = 2;
    int w = 0, h = 0, maxval = 0;
    if (!read_int(w) || !read_int(h) || !read_int(maxval)) return fail(std::string("truncated PGM header"));
    if (w < 0 || h < 0 || maxval != 255) return fail(std::string("unsupported PGM dimensions or maxval"));
    ++pos;  // single whitespace byte before the raster
    const auto n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    if (bytes.size() < pos + n) return fail(std::string("truncated PGM raster"));
    GrayImage img(w, h, 0);
    std::copy(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.begin() + static_cast<std::ptrdiff_t>(pos + n),
              img.pixels.begin());
    return img;
}

}  // namespace bardsl::render
