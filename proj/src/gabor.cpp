#include "retseg/gabor.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace retseg {

namespace {

constexpr double kPi = std::numbers::pi;

// Symmetric reflection (…, 1, 0 | 0, 1, …, n-1 | n-1, n-2, …), folds any index.
inline int reflect_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n;
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - 1 - i;
}

// --- FFT fast path -----------------------------------------------------------

// FFTW's planner is not thread-safe; plan creation/destruction is serialized.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwArray {
    explicit FftwArray(std::size_t n)
        : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))), size(n) {
        if (!data) throw std::bad_alloc();
        std::fill_n(&data[0][0], 2 * n, 0.0);
    }
    ~FftwArray() { fftw_free(data); }
    FftwArray(const FftwArray&) = delete;
    FftwArray& operator=(const FftwArray&) = delete;

    fftw_complex* data;
    std::size_t size;
};

void run_fft(int ny, int nx, FftwArray& in, FftwArray& out, int sign) {
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_2d(ny, nx, in.data, out.data, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
}

// Smallest size >= n with no prime factor above 7.
int next_fast_size(int n) {
    for (;; ++n) {
        int m = n;
        for (int f : {2, 3, 5, 7})
            while (m % f == 0) m /= f;
        if (m == 1) return n;
    }
}

// Spectrum of the image reflect-padded by `radius` on every side.
struct PaddedSpectrum {
    int ny = 0, nx = 0;  // FFT dimensions
    std::unique_ptr<FftwArray> spectrum;
};

PaddedSpectrum forward_padded(const GrayImage& img, int radius) {
    const int w = img.width();
    const int h = img.height();
    const int wp = w + 2 * radius;
    const int hp = h + 2 * radius;
    PaddedSpectrum out;
    out.nx = next_fast_size(wp);
    out.ny = next_fast_size(hp);
    const std::size_t n = static_cast<std::size_t>(out.nx) * out.ny;
    FftwArray padded(n);
    for (int y = 0; y < hp; ++y) {
        const int sy = reflect_index(y - radius, h);
        for (int x = 0; x < wp; ++x) {
            padded.data[static_cast<std::size_t>(y) * out.nx + x][0] =
                img.at(reflect_index(x - radius, w), sy);
        }
    }
    out.spectrum = std::make_unique<FftwArray>(n);
    run_fft(out.ny, out.nx, padded, *out.spectrum, FFTW_FORWARD);
    return out;
}

// Correlation via the convolution theorem: the kernel is flipped and wrapped
// into the FFT grid, multiplied in the spectrum, and the inverse transform is
// cropped at the pad offset.
ComplexField correlate_spectrum(const PaddedSpectrum& ps, const GrayImage& img,
                                const ComplexKernel& k) {
    const int r = k.radius;
    const int nx = ps.nx;
    const int ny = ps.ny;
    const std::size_t n = static_cast<std::size_t>(nx) * ny;

    FftwArray kernel_grid(n);
    for (int dy = -r; dy <= r; ++dy) {
        const int gy = ((-dy) % ny + ny) % ny;
        for (int dx = -r; dx <= r; ++dx) {
            const int gx = ((-dx) % nx + nx) % nx;
            const std::complex<double> c = k.at(dx, dy);
            kernel_grid.data[static_cast<std::size_t>(gy) * nx + gx][0] = c.real();
            kernel_grid.data[static_cast<std::size_t>(gy) * nx + gx][1] = c.imag();
        }
    }
    FftwArray kernel_spec(n);
    run_fft(ny, nx, kernel_grid, kernel_spec, FFTW_FORWARD);

    FftwArray product(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = ps.spectrum->data[i][0];
        const double ai = ps.spectrum->data[i][1];
        const double br = kernel_spec.data[i][0];
        const double bi = kernel_spec.data[i][1];
        product.data[i][0] = ar * br - ai * bi;
        product.data[i][1] = ar * bi + ai * br;
    }
    FftwArray result(n);
    run_fft(ny, nx, product, result, FFTW_BACKWARD);

    const double scale = 1.0 / static_cast<double>(n);
    ComplexField out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const std::size_t i = static_cast<std::size_t>(y + r) * nx + (x + r);
            out.at(x, y) = {result.data[i][0] * scale, result.data[i][1] * scale};
        }
    }
    return out;
}

ComplexField convolve_direct(const GrayImage& img, const ComplexKernel& k) {
    const int w = img.width();
    const int h = img.height();
    const int r = k.radius;
    ComplexField out(w, h);
    for (int y0 = 0; y0 < h; ++y0) {
        for (int x0 = 0; x0 < w; ++x0) {
            double re = 0.0, im = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                const int sy = reflect_index(y0 + dy, h);
                const std::complex<double>* row =
                    &k.coefficients[static_cast<std::size_t>(dy + r) * k.side()];
                for (int dx = -r; dx <= r; ++dx) {
                    const double v = img.at(reflect_index(x0 + dx, w), sy);
                    re += v * row[dx + r].real();
                    im += v * row[dx + r].imag();
                }
            }
            out.at(x0, y0) = {re, im};
        }
    }
    return out;
}

}  // namespace

ComplexKernel gabor_kernel(const GaborParams& p, double truncation_sigmas, int max_radius) {
    if (!(p.omega0 > 0.0)) throw std::invalid_argument("gabor_kernel: omega0 must be positive");
    if (!(p.K > 0.0)) throw std::invalid_argument("gabor_kernel: K must be positive");
    if (p.theta < 0.0 || p.theta >= kPi)
        throw std::invalid_argument("gabor_kernel: theta must lie in [0, pi)");
    if (p.scale_a != 1.0)
        throw std::invalid_argument("gabor_kernel: scale_a is fixed at 1");
    if (!(truncation_sigmas > 0.0))
        throw std::invalid_argument("gabor_kernel: truncation must be positive");

    const double sigma_major = 2.0 * p.K / p.omega0;
    const int radius = static_cast<int>(std::ceil(truncation_sigmas * sigma_major));
    if (radius > max_radius)
        throw std::invalid_argument("gabor_kernel: kernel radius exceeds cap, omega0 too small");

    ComplexKernel k;
    k.radius = radius;
    k.params = p;
    k.coefficients.resize(static_cast<std::size_t>(k.side()) * k.side());

    const double amplitude = p.omega0 / (std::sqrt(2.0 * kPi) * p.K);
    const double envelope_scale = p.omega0 * p.omega0 / (8.0 * p.K * p.K);
    const double dc_term = std::exp(-p.K * p.K / 2.0);
    const double c = std::cos(p.theta);
    const double s = std::sin(p.theta);

    double norm_sq = 0.0;
    std::size_t i = 0;
    for (int y = -radius; y <= radius; ++y) {
        for (int x = -radius; x <= radius; ++x, ++i) {
            const double u = x * c + y * s;
            const double v = -x * s + y * c;
            const double env = amplitude * std::exp(-envelope_scale * (4.0 * u * u + v * v));
            const std::complex<double> carrier(std::cos(p.omega0 * u) - dc_term,
                                               std::sin(p.omega0 * u));
            k.coefficients[i] = env * carrier;
            norm_sq += std::norm(k.coefficients[i]);
        }
    }
    const double inv_norm = 1.0 / std::sqrt(norm_sq);
    for (auto& coeff : k.coefficients) coeff *= inv_norm;
    return k;
}

std::vector<ComplexKernel> build_bank(const BankConfig& cfg) {
    if (cfg.omega0_values.empty())
        throw std::invalid_argument("build_bank: empty omega0 grid");
    if (!(cfg.theta_step_deg > 0.0))
        throw std::invalid_argument("build_bank: theta step must be positive");

    std::vector<double> thetas_deg;
    for (double t = cfg.theta_start_deg; t < cfg.theta_stop_deg - 1e-9; t += cfg.theta_step_deg)
        thetas_deg.push_back(t);
    if (thetas_deg.empty())
        throw std::invalid_argument("build_bank: empty theta grid");
    for (double t : thetas_deg)
        if (t < 0.0 || t >= 180.0)
            throw std::invalid_argument("build_bank: theta grid must stay within [0, 180)");

    std::vector<ComplexKernel> bank;
    bank.reserve(cfg.omega0_values.size() * thetas_deg.size());
    for (double omega0 : cfg.omega0_values)
        for (double theta_deg : thetas_deg)
            bank.push_back(gabor_kernel({omega0, theta_deg * kPi / 180.0, cfg.K, 1.0},
                                        cfg.truncation_sigmas, cfg.max_radius));
    return bank;
}

ComplexField convolve(const GrayImage& img, const ComplexKernel& k, ConvMethod method) {
    if (img.width() < 1 || img.height() < 1 || img.size() <= 1)
        throw std::invalid_argument("convolve: image must be larger than 1x1");
    if (method == ConvMethod::direct) return convolve_direct(img, k);
    const PaddedSpectrum ps = forward_padded(img, k.radius);
    return correlate_spectrum(ps, img, k);
}

RealField max_response(const GrayImage& img, const std::vector<ComplexKernel>& bank,
                       ConvMethod method) {
    if (bank.empty()) throw std::invalid_argument("max_response: empty bank");

    RealField out(img.width(), img.height(), 0.0);
    // Kernels of equal radius share the padded-image spectrum.
    std::map<int, PaddedSpectrum> spectra;
    for (const ComplexKernel& k : bank) {
        ComplexField resp;
        if (method == ConvMethod::fft) {
            auto it = spectra.find(k.radius);
            if (it == spectra.end())
                it = spectra.emplace(k.radius, forward_padded(img, k.radius)).first;
            resp = correlate_spectrum(it->second, img, k);
        } else {
            resp = convolve(img, k, method);
        }
        for (std::size_t i = 0; i < out.size(); ++i)
            out.samples()[i] = std::max(out.samples()[i], std::abs(resp.samples()[i]));
    }
    return out;
}

NormalizeResult normalize01(const RealField& field, const BinaryMask& fov) {
    if (!field.same_size(fov))
        throw std::invalid_argument("normalize01: field and FOV dimensions differ");

    double lo = 0.0, hi = 0.0;
    bool seen = false;
    for (std::size_t i = 0; i < field.size(); ++i) {
        if (!fov.samples()[i]) continue;
        const double v = field.samples()[i];
        if (!seen) {
            lo = hi = v;
            seen = true;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!seen) throw std::invalid_argument("normalize01: FOV contains no pixels");

    NormalizeResult res{GrayImage(field.width(), field.height(), 0.0), hi <= lo};
    if (res.degenerate) return res;

    const double inv_span = 1.0 / (hi - lo);
    for (std::size_t i = 0; i < field.size(); ++i)
        if (fov.samples()[i])
            res.image.samples()[i] = std::clamp((field.samples()[i] - lo) * inv_span, 0.0, 1.0);
    return res;
}

}  // namespace retseg
