#include "retseg/image.hpp"

#include <cmath>

namespace retseg {

std::uint8_t to_byte(double sample) {
    double v = std::lround(sample * 255.0);
    if (v < 0.0) v = 0.0;
    if (v > 255.0) v = 255.0;
    return static_cast<std::uint8_t>(v);
}

Channels split_channels(const RgbImage& img) {
    const int w = img.width();
    const int h = img.height();
    Channels out{GrayImage(w, h), GrayImage(w, h), GrayImage(w, h)};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            out.red.at(x, y) = img.at(x, y, 0) / 255.0;
            out.green.at(x, y) = img.at(x, y, 1) / 255.0;
            out.blue.at(x, y) = img.at(x, y, 2) / 255.0;
        }
    }
    return out;
}

RgbImage merge_channels(const GrayImage& red, const GrayImage& green, const GrayImage& blue) {
    if (!red.same_size(green) || !red.same_size(blue))
        throw std::invalid_argument("merge_channels: channel dimensions differ");
    RgbImage out(red.width(), red.height());
    for (int y = 0; y < red.height(); ++y) {
        for (int x = 0; x < red.width(); ++x) {
            out.at(x, y, 0) = to_byte(red.at(x, y));
            out.at(x, y, 1) = to_byte(green.at(x, y));
            out.at(x, y, 2) = to_byte(blue.at(x, y));
        }
    }
    return out;
}

GrayImage invert(const GrayImage& img) {
    GrayImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i)
        out.samples()[i] = 1.0 - img.samples()[i];
    return out;
}

GrayImage apply_mask(const GrayImage& img, const BinaryMask& mask) {
    if (!img.same_size(mask))
        throw std::invalid_argument("apply_mask: image and mask dimensions differ");
    GrayImage out = img;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!mask.samples()[i]) out.samples()[i] = 0.0;
    return out;
}

BinaryMask erode_mask(const BinaryMask& mask, int radius) {
    if (radius < 0)
        throw std::invalid_argument("erode_mask: radius must be non-negative");
    if (radius == 0) return mask;

    // Disk offsets, dx^2+dy^2 <= radius^2.
    std::vector<std::pair<int, int>> offsets;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            if (dx * dx + dy * dy <= radius * radius) offsets.emplace_back(dx, dy);

    const int w = mask.width();
    const int h = mask.height();
    BinaryMask out(w, h, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            bool all = true;
            for (auto [dx, dy] : offsets) {
                const int xx = x + dx;
                const int yy = y + dy;
                if (xx < 0 || xx >= w || yy < 0 || yy >= h || !mask.at(xx, yy)) {
                    all = false;
                    break;
                }
            }
            out.at(x, y) = all ? 1 : 0;
        }
    }
    return out;
}

}  // namespace retseg
