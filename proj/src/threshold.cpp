#include "retseg/threshold.hpp"

#include <algorithm>

namespace retseg {

std::int64_t Histogram::total() const {
    std::int64_t n = 0;
    for (auto c : counts) n += c;
    return n;
}

int Histogram::occupied() const {
    return static_cast<int>(
        std::count_if(counts.begin(), counts.end(), [](std::int64_t c) { return c > 0; }));
}

Histogram fov_histogram(const GrayImage& img, const BinaryMask& fov, int bins) {
    if (bins < 2) throw std::invalid_argument("fov_histogram: need at least 2 bins");
    if (!img.same_size(fov))
        throw std::invalid_argument("fov_histogram: image and FOV dimensions differ");
    Histogram h;
    h.bins = bins;
    h.counts.assign(bins, 0);
    for (std::size_t i = 0; i < img.size(); ++i) {
        if (!fov.samples()[i]) continue;
        const int b = std::min(static_cast<int>(img.samples()[i] * bins), bins - 1);
        ++h.counts[b];
    }
    return h;
}

double otsu_threshold(const GrayImage& img, const BinaryMask& fov, int bins) {
    const Histogram h = fov_histogram(img, fov, bins);
    if (h.occupied() < 2)
        throw std::runtime_error("otsu_threshold: histogram is degenerate, image unthresholdable");

    const auto total = h.total();
    std::int64_t sum_all = 0;
    for (int b = 0; b < bins; ++b) sum_all += static_cast<std::int64_t>(b) * h.counts[b];

    int best_split = -1;
    double best_var = -1.0;
    std::int64_t n0 = 0;
    std::int64_t sum0 = 0;
    for (int k = 0; k + 1 < bins; ++k) {
        n0 += h.counts[k];
        sum0 += static_cast<std::int64_t>(k) * h.counts[k];
        const std::int64_t n1 = total - n0;
        if (n0 == 0 || n1 == 0) continue;
        const double w0 = static_cast<double>(n0) / static_cast<double>(total);
        const double w1 = static_cast<double>(n1) / static_cast<double>(total);
        const double mu0 = static_cast<double>(sum0) / static_cast<double>(n0);
        const double mu1 = static_cast<double>(sum_all - sum0) / static_cast<double>(n1);
        const double var = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if (var > best_var) {
            best_var = var;
            best_split = k;
        }
    }
    return static_cast<double>(best_split + 1) / static_cast<double>(bins);
}

BinaryMask binarize(const GrayImage& img, double t, const BinaryMask& fov) {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("binarize: threshold must be in [0,1]");
    if (!img.same_size(fov))
        throw std::invalid_argument("binarize: image and FOV dimensions differ");
    BinaryMask out(img.width(), img.height(), 0);
    for (std::size_t i = 0; i < img.size(); ++i)
        out.samples()[i] = (fov.samples()[i] && img.samples()[i] > t) ? 1 : 0;
    return out;
}

}  // namespace retseg
