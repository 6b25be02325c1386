#pragma once

#include <cstdint>
#include <vector>

#include "retseg/image.hpp"

namespace retseg {

/// Contrast-limited adaptive histogram equalization parameters.
///
/// clip_limit is the per-bin cap expressed as a fraction of the tile pixel
/// count: a bin may hold at most clip_limit * tile_pixels counts before the
/// excess is redistributed. clip_limit >= 1 therefore disables clipping.
struct ClaheConfig {
    int tiles_x = 8;
    int tiles_y = 8;
    double clip_limit = 0.04;
    int bins = 256;
};

/// CLAHE over the full image rectangle.
///
/// Per tile: histogram over cfg.bins bins, clip at clip_limit * tile_pixels
/// with uniform single-pass redistribution, then a CDF mapping. Each pixel is
/// mapped by bilinear interpolation of the four surrounding tile mappings;
/// pixels beyond the outermost tile centers fall back to the reduced neighbor
/// set. A tile whose histogram is concentrated in a single bin maps values to
/// themselves, so constant regions pass through unchanged.
///
/// Throws std::invalid_argument for a bad config or an image smaller than the
/// tile grid.
GrayImage clahe(const GrayImage& img, const ClaheConfig& cfg);

namespace detail {

/// Clip each bin at `cap` and spread the excess uniformly; the integer
/// remainder goes one count per bin from bin 0 upward. Total mass is
/// preserved exactly.
void clip_and_redistribute(std::vector<std::int64_t>& counts, std::int64_t cap);

}  // namespace detail

}  // namespace retseg
