#pragma once

#include <complex>
#include <vector>

#include "retseg/image.hpp"

namespace retseg {

/// Parameters of one 2D Gabor wavelet.
///
/// omega0 is the radial frequency in radians per pixel, theta the orientation
/// of the carrier axis in radians ([0, pi)), K the octave-bandwidth constant.
/// scale_a is the wavelet scale; the frequency sweep makes it redundant, so it
/// is fixed at 1.
struct GaborParams {
    double omega0 = 0.7;
    double theta = 0.0;
    double K = 2.2;
    double scale_a = 1.0;
};

/// Discretized, L2-normalized complex Gabor kernel of size (2*radius+1)^2.
///
/// Coefficients sample, at integer offsets (x,y) centered on (0,0),
///
///   (omega0 / (sqrt(2*pi)*K)) * exp(-(omega0^2/(8K^2)) * (4u^2 + v^2))
///     * [exp(i*omega0*u) - exp(-K^2/2)]
///
/// with u = x*cos(theta) + y*sin(theta), v = -x*sin(theta) + y*cos(theta),
/// then divided by the discrete L2 norm. The -exp(-K^2/2) term keeps the
/// kernel approximately DC-free.
struct ComplexKernel {
    int radius = 0;
    std::vector<std::complex<double>> coefficients;  // row-major, (2r+1)^2
    GaborParams params;

    int side() const { return 2 * radius + 1; }
    std::complex<double> at(int dx, int dy) const {
        return coefficients[static_cast<std::size_t>(dy + radius) * side() + (dx + radius)];
    }
};

/// Filter-bank parameter grid. The defaults are the published operating
/// point: omega0 in {0.7, 0.9, 1.1, 1.3}, theta from 0 to 180 (exclusive) in
/// 20-degree steps, K = 2.2, envelope truncated at 3.5 sigma.
struct BankConfig {
    std::vector<double> omega0_values = {0.7, 0.9, 1.1, 1.3};
    double theta_start_deg = 0.0;
    double theta_stop_deg = 180.0;
    double theta_step_deg = 20.0;
    double K = 2.2;
    double truncation_sigmas = 3.5;
    int max_radius = 128;
};

/// Convolution evaluation strategy. Both produce image-sized output with
/// reflect padding; `fft` must agree with `direct` within 1e-6 absolute.
enum class ConvMethod { direct, fft };

/// Synthesize one kernel. The radius is ceil(truncation_sigmas * 2K/omega0),
/// the envelope's major standard deviation; a radius above max_radius signals
/// an unreasonable omega0 and throws.
ComplexKernel gabor_kernel(const GaborParams& p, double truncation_sigmas, int max_radius = 128);

/// One kernel per (omega0, theta) grid point; defaults give 4 x 9 = 36.
std::vector<ComplexKernel> build_bank(const BankConfig& cfg);

/// Cross-correlation of the image with the kernel:
/// output(x0,y0) = sum over (x,y) of img(x0+x, y0+y) * k(x,y),
/// with reflect padding at the borders. Output dimensions equal the image's.
ComplexField convolve(const GrayImage& img, const ComplexKernel& k,
                      ConvMethod method = ConvMethod::direct);

/// Per-pixel maximum of |convolve(img, k)| over the bank.
RealField max_response(const GrayImage& img, const std::vector<ComplexKernel>& bank,
                       ConvMethod method = ConvMethod::fft);

struct NormalizeResult {
    GrayImage image;
    bool degenerate = false;  // max == min inside the FOV; output is all zero there
};

/// Affine rescale of the field to [0,1] using min/max taken over FOV pixels
/// only; samples outside the FOV become 0.
NormalizeResult normalize01(const RealField& field, const BinaryMask& fov);

}  // namespace retseg
