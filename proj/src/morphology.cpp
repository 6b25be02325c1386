#include "retseg/morphology.hpp"

#include <algorithm>

namespace retseg {

namespace {

inline int clamp_index(int i, int n) {
    if (i < 0) return 0;
    if (i >= n) return n - 1;
    return i;
}

template <typename Compare>
GrayImage morph_extremum(const GrayImage& img, const StructuringElement& se, Compare better) {
    const int w = img.width();
    const int h = img.height();
    GrayImage out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double best = img.at(clamp_index(x + se.offsets[0].first, w),
                                 clamp_index(y + se.offsets[0].second, h));
            for (std::size_t i = 1; i < se.offsets.size(); ++i) {
                const auto [dx, dy] = se.offsets[i];
                const double v = img.at(clamp_index(x + dx, w), clamp_index(y + dy, h));
                if (better(v, best)) best = v;
            }
            out.at(x, y) = best;
        }
    }
    return out;
}

}  // namespace

StructuringElement disk_se(int diameter) {
    if (diameter < 1 || diameter % 2 == 0)
        throw std::invalid_argument("disk_se: diameter must be odd and positive");
    const int r = (diameter - 1) / 2;
    StructuringElement se;
    se.diameter = diameter;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            if (dx * dx + dy * dy <= r * r) se.offsets.emplace_back(dx, dy);
    return se;
}

GrayImage erode(const GrayImage& img, const StructuringElement& se) {
    return morph_extremum(img, se, std::less<double>{});
}

GrayImage dilate(const GrayImage& img, const StructuringElement& se) {
    return morph_extremum(img, se, std::greater<double>{});
}

GrayImage open(const GrayImage& img, const StructuringElement& se) {
    return dilate(erode(img, se), se);
}

GrayImage white_top_hat(const GrayImage& img, const StructuringElement& se) {
    GrayImage opened = open(img, se);
    GrayImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i)
        out.samples()[i] = std::clamp(img.samples()[i] - opened.samples()[i], 0.0, 1.0);
    return out;
}

}  // namespace retseg
