#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace retseg {

/// Generic row-major 2D sample plane. Index with (x, y); storage is y*width + x.
template <typename T>
class Image2D {
public:
    Image2D() = default;

    Image2D(int width, int height, T fill = T{})
        : width_(width), height_(height),
          samples_(checked_size(width, height), fill) {}

    Image2D(int width, int height, std::vector<T> samples)
        : width_(width), height_(height), samples_(std::move(samples)) {
        if (samples_.size() != checked_size(width, height))
            throw std::invalid_argument("Image2D: sample count does not match dimensions");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }

    T& at(int x, int y) { return samples_[static_cast<std::size_t>(y) * width_ + x]; }
    const T& at(int x, int y) const { return samples_[static_cast<std::size_t>(y) * width_ + x]; }

    std::vector<T>& samples() { return samples_; }
    const std::vector<T>& samples() const { return samples_; }

    bool same_size(int w, int h) const { return width_ == w && height_ == h; }

    template <typename U>
    bool same_size(const Image2D<U>& other) const {
        return width_ == other.width() && height_ == other.height();
    }

    friend bool operator==(const Image2D&, const Image2D&) = default;

private:
    static std::size_t checked_size(int width, int height) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("Image2D: dimensions must be positive");
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> samples_;
};

/// Grayscale plane with samples normalized to [0,1].
using GrayImage = Image2D<double>;

/// Boolean plane (0/1). Used for FOV masks, ground truth and segmentation output.
using BinaryMask = Image2D<std::uint8_t>;

/// Complex-valued plane, the result of filtering with a complex kernel.
using ComplexField = Image2D<std::complex<double>>;

/// Real-valued plane without the [0,1] constraint (e.g. raw filter magnitudes).
using RealField = Image2D<double>;

/// 8-bit RGB image, interleaved row-major triples.
class RgbImage {
public:
    RgbImage() = default;

    RgbImage(int width, int height)
        : width_(width), height_(height),
          samples_(checked_size(width, height), 0) {}

    RgbImage(int width, int height, std::vector<std::uint8_t> samples)
        : width_(width), height_(height), samples_(std::move(samples)) {
        if (samples_.size() != checked_size(width, height))
            throw std::invalid_argument("RgbImage: sample count does not match dimensions");
    }

    int width() const { return width_; }
    int height() const { return height_; }

    std::uint8_t& at(int x, int y, int channel) {
        return samples_[(static_cast<std::size_t>(y) * width_ + x) * 3 + channel];
    }
    std::uint8_t at(int x, int y, int channel) const {
        return samples_[(static_cast<std::size_t>(y) * width_ + x) * 3 + channel];
    }

    std::vector<std::uint8_t>& samples() { return samples_; }
    const std::vector<std::uint8_t>& samples() const { return samples_; }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
    static std::size_t checked_size(int width, int height) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("RgbImage: dimensions must be positive");
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> samples_;
};

struct Channels {
    GrayImage red;
    GrayImage green;
    GrayImage blue;
};

/// Split an RGB image into three scalar channels, 8-bit value v mapped to v/255.
Channels split_channels(const RgbImage& img);

/// Inverse of split_channels on 8-bit data: scalar s maps back to round(s*255).
RgbImage merge_channels(const GrayImage& red, const GrayImage& green, const GrayImage& blue);

/// Pointwise 1 - sample.
GrayImage invert(const GrayImage& img);

/// Zero out samples where the mask is false; dimensions must agree.
GrayImage apply_mask(const GrayImage& img, const BinaryMask& mask);

/// Binary erosion with a discrete disk of the given radius. Pixels within
/// `radius` of the image border see out-of-bounds as false, so a mask shrinks
/// from the frame edge as well. radius 0 is the identity.
BinaryMask erode_mask(const BinaryMask& mask, int radius);

/// round(s*255) with clamping to [0,255].
std::uint8_t to_byte(double sample);

}  // namespace retseg
