#pragma once

#include <cstdint>
#include <vector>

#include "retseg/image.hpp"

namespace retseg {

/// Intensity histogram over [0,1]; carrier for Otsu's method.
struct Histogram {
    int bins = 256;
    std::vector<std::int64_t> counts;

    std::int64_t total() const;
    int occupied() const;
};

/// Histogram of the samples where fov is true. Sample v lands in bin
/// min(bins-1, floor(v*bins)).
Histogram fov_histogram(const GrayImage& img, const BinaryMask& fov, int bins = 256);

/// Otsu's global threshold over FOV pixels only.
///
/// Returns the bin boundary (split_index + 1) / bins maximizing the
/// between-class variance w0*w1*(mu0-mu1)^2; ties resolve to the lowest
/// qualifying split. Throws if fewer than two bins are occupied (the image is
/// unthresholdable).
double otsu_threshold(const GrayImage& img, const BinaryMask& fov, int bins = 256);

/// True where fov is true and sample > t. With t = 1.0 the prediction is
/// empty, matching the ROC sweep convention.
BinaryMask binarize(const GrayImage& img, double t, const BinaryMask& fov);

}  // namespace retseg
