#pragma once

#include <utility>
#include <vector>

#include "retseg/image.hpp"

namespace retseg {

/// Discrete disk neighborhood for grayscale morphology.
///
/// Offsets fill { (dx,dy) : dx^2 + dy^2 <= r^2 } with r = (diameter-1)/2, so the
/// element fits inside a diameter x diameter window and any structure of width
/// >= diameter can contain it. Always contains (0,0) and is symmetric under
/// negation.
struct StructuringElement {
    std::vector<std::pair<int, int>> offsets;
    int diameter = 1;

    int radius() const { return (diameter - 1) / 2; }
};

/// Disk structuring element of odd diameter (a diameter of 11 gives 81 offsets).
StructuringElement disk_se(int diameter);

/// Grayscale erosion: output(p) = min over offsets o of input(p+o).
/// Out-of-bounds samples replicate the nearest edge pixel.
GrayImage erode(const GrayImage& img, const StructuringElement& se);

/// Grayscale dilation: max in place of min, same border policy.
GrayImage dilate(const GrayImage& img, const StructuringElement& se);

/// Morphological opening: dilate(erode(img)).
GrayImage open(const GrayImage& img, const StructuringElement& se);

/// White top-hat: img - open(img, se), clamped to [0,1]. Retains bright
/// structures narrower than the element; anti-extensivity of the opening keeps
/// the result non-negative.
GrayImage white_top_hat(const GrayImage& img, const StructuringElement& se);

}  // namespace retseg
