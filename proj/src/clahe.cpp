#include "retseg/clahe.hpp"

#include <algorithm>
#include <cmath>

namespace retseg {

namespace detail {

void clip_and_redistribute(std::vector<std::int64_t>& counts, std::int64_t cap) {
    std::int64_t excess = 0;
    for (auto& c : counts) {
        if (c > cap) {
            excess += c - cap;
            c = cap;
        }
    }
    if (excess == 0) return;
    const auto bins = static_cast<std::int64_t>(counts.size());
    const std::int64_t base = excess / bins;
    const std::int64_t rem = excess % bins;
    for (std::int64_t b = 0; b < bins; ++b)
        counts[b] += base + (b < rem ? 1 : 0);
}

}  // namespace detail

namespace {

struct TileMapping {
    bool identity = false;           // single occupied bin: value maps to itself
    std::vector<double> levels;      // cdf[b] / tile_pixels otherwise
};

inline int bin_of(double v, int bins) {
    int b = static_cast<int>(v * bins);
    return std::min(b, bins - 1);
}

inline double map_value(const TileMapping& m, double v, int bins) {
    return m.identity ? v : m.levels[bin_of(v, bins)];
}

// Neighbor pair along one axis: tile indices (lo, hi) and the blend weight of hi.
struct AxisBlend {
    int lo;
    int hi;
    double w;
};

AxisBlend axis_blend(double coord, const std::vector<double>& centers) {
    const int n = static_cast<int>(centers.size());
    if (coord <= centers.front()) return {0, 0, 0.0};
    if (coord >= centers.back()) return {n - 1, n - 1, 0.0};
    int lo = 0;
    while (lo + 1 < n && centers[lo + 1] <= coord) ++lo;
    const double span = centers[lo + 1] - centers[lo];
    return {lo, lo + 1, (coord - centers[lo]) / span};
}

}  // namespace

GrayImage clahe(const GrayImage& img, const ClaheConfig& cfg) {
    if (cfg.tiles_x < 1 || cfg.tiles_y < 1)
        throw std::invalid_argument("clahe: tile grid must be at least 1x1");
    if (cfg.bins < 2)
        throw std::invalid_argument("clahe: need at least 2 bins");
    if (!(cfg.clip_limit > 0.0))
        throw std::invalid_argument("clahe: clip_limit must be positive");
    const int w = img.width();
    const int h = img.height();
    if (w < cfg.tiles_x || h < cfg.tiles_y)
        throw std::invalid_argument("clahe: image smaller than the tile grid");

    const int tx_n = cfg.tiles_x;
    const int ty_n = cfg.tiles_y;
    const auto x_lo = [&](int t) { return t * w / tx_n; };
    const auto y_lo = [&](int t) { return t * h / ty_n; };

    std::vector<TileMapping> tiles(static_cast<std::size_t>(tx_n) * ty_n);
    std::vector<double> centers_x(tx_n), centers_y(ty_n);
    for (int t = 0; t < tx_n; ++t) centers_x[t] = (x_lo(t) + x_lo(t + 1) - 1) / 2.0;
    for (int t = 0; t < ty_n; ++t) centers_y[t] = (y_lo(t) + y_lo(t + 1) - 1) / 2.0;

    for (int ty = 0; ty < ty_n; ++ty) {
        for (int tx = 0; tx < tx_n; ++tx) {
            std::vector<std::int64_t> hist(cfg.bins, 0);
            std::int64_t npix = 0;
            for (int y = y_lo(ty); y < y_lo(ty + 1); ++y)
                for (int x = x_lo(tx); x < x_lo(tx + 1); ++x, ++npix)
                    ++hist[bin_of(img.at(x, y), cfg.bins)];

            TileMapping& m = tiles[static_cast<std::size_t>(ty) * tx_n + tx];
            const int occupied = static_cast<int>(std::count_if(
                hist.begin(), hist.end(), [](std::int64_t c) { return c > 0; }));
            if (occupied <= 1) {
                m.identity = true;
                continue;
            }

            const auto cap = std::max<std::int64_t>(
                1, static_cast<std::int64_t>(cfg.clip_limit * static_cast<double>(npix)));
            detail::clip_and_redistribute(hist, cap);

            m.levels.resize(cfg.bins);
            std::int64_t cum = 0;
            for (int b = 0; b < cfg.bins; ++b) {
                cum += hist[b];
                m.levels[b] = static_cast<double>(cum) / static_cast<double>(npix);
            }
        }
    }

    GrayImage out(w, h);
    for (int y = 0; y < h; ++y) {
        const AxisBlend by = axis_blend(y, centers_y);
        for (int x = 0; x < w; ++x) {
            const AxisBlend bx = axis_blend(x, centers_x);
            const double v = img.at(x, y);
            const double v00 = map_value(tiles[static_cast<std::size_t>(by.lo) * tx_n + bx.lo], v, cfg.bins);
            const double v01 = map_value(tiles[static_cast<std::size_t>(by.lo) * tx_n + bx.hi], v, cfg.bins);
            const double v10 = map_value(tiles[static_cast<std::size_t>(by.hi) * tx_n + bx.lo], v, cfg.bins);
            const double v11 = map_value(tiles[static_cast<std::size_t>(by.hi) * tx_n + bx.hi], v, cfg.bins);
            const double top = v00 + (v01 - v00) * bx.w;
            const double bot = v10 + (v11 - v10) * bx.w;
            out.at(x, y) = std::clamp(top + (bot - top) * by.w, 0.0, 1.0);
        }
    }
    return out;
}

}  // namespace retseg
