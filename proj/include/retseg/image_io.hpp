#pragma once

#include <filesystem>
#include <variant>

#include "retseg/image.hpp"

namespace retseg {

/// Decoded raster: RGB or grayscale depending on the file contents.
using LoadedImage = std::variant<RgbImage, GrayImage>;

/// Decode a PNG (8-bit gray or RGB; palettes expand, alpha is stripped) or a
/// binary PGM/PPM with maxval 255. The codec is chosen by content, not
/// extension. 8-bit value v maps to scalar v/255 for grayscale files.
/// Throws std::runtime_error for unreadable, truncated or unsupported files.
LoadedImage load_image(const std::filesystem::path& path);

/// As load_image, but a grayscale file is promoted to RGB by channel
/// replication.
RgbImage load_rgb(const std::filesystem::path& path);

/// As load_image, but an RGB file contributes its green channel.
GrayImage load_gray(const std::filesystem::path& path);

/// load_gray followed by binarization at 0.5 (sample > 0.5 is true).
BinaryMask load_mask(const std::filesystem::path& path);

/// 8-bit PNG encoders. Gray samples are quantized by round(s*255); masks
/// write 0/255.
void save_png(const std::filesystem::path& path, const GrayImage& img);
void save_png(const std::filesystem::path& path, const RgbImage& img);
void save_png(const std::filesystem::path& path, const BinaryMask& mask);

}  // namespace retseg
