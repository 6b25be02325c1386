#include "retseg/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

namespace retseg {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error(path.string() + ": " + what);
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// --- PNG ---------------------------------------------------------------------

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

LoadedImage load_png(const std::filesystem::path& path) {
    FilePtr fp(std::fopen(path.string().c_str(), "rb"));
    if (!fp) fail(path, "cannot open file");

    PngReader r;
    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!r.png) fail(path, "png_create_read_struct failed");
    r.info = png_create_info_struct(r.png);
    if (!r.info) fail(path, "png_create_info_struct failed");

    std::vector<std::uint8_t> pixels;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(r.png))) fail(path, "PNG decode error (corrupt or truncated file)");

    png_init_io(r.png, fp.get());
    png_read_info(r.png, r.info);

    const png_uint_32 width = png_get_image_width(r.png, r.info);
    const png_uint_32 height = png_get_image_height(r.png, r.info);
    const int bit_depth = png_get_bit_depth(r.png, r.info);
    const int color_type = png_get_color_type(r.png, r.info);
    if (width == 0 || height == 0) fail(path, "zero-dimension image");
    if (bit_depth == 16) fail(path, "16-bit PNG unsupported");

    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(r.png);
    if (png_get_valid(r.png, r.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(r.png);
    png_set_strip_alpha(r.png);
    png_read_update_info(r.png, r.info);

    const int channels = png_get_channels(r.png, r.info);
    if (channels != 1 && channels != 3) fail(path, "unsupported PNG channel layout");

    pixels.resize(static_cast<std::size_t>(width) * height * channels);
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y)
        rows[y] = pixels.data() + static_cast<std::size_t>(y) * width * channels;
    png_read_image(r.png, rows.data());
    png_read_end(r.png, nullptr);

    const int w = static_cast<int>(width);
    const int h = static_cast<int>(height);
    if (channels == 3) return RgbImage(w, h, std::move(pixels));

    GrayImage gray(w, h);
    for (std::size_t i = 0; i < gray.size(); ++i) gray.samples()[i] = pixels[i] / 255.0;
    return gray;
}

void save_png_bytes(const std::filesystem::path& path, int width, int height, int channels,
                    const std::vector<std::uint8_t>& pixels) {
    FilePtr fp(std::fopen(path.string().c_str(), "wb"));
    if (!fp) fail(path, "cannot open file for writing");

    PngWriter w;
    w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!w.png) fail(path, "png_create_write_struct failed");
    w.info = png_create_info_struct(w.png);
    if (!w.info) fail(path, "png_create_info_struct failed");

    std::vector<png_const_bytep> rows(height);
    if (setjmp(png_jmpbuf(w.png))) fail(path, "PNG encode error");

    png_init_io(w.png, fp.get());
    png_set_IHDR(w.png, w.info, width, height, 8,
                 channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(w.png, w.info);
    for (int y = 0; y < height; ++y)
        rows[y] = pixels.data() + static_cast<std::size_t>(y) * width * channels;
    png_write_rows(w.png, const_cast<png_bytepp>(rows.data()), height);
    png_write_end(w.png, w.info);
}

// --- PNM (binary PGM/PPM, maxval 255) -----------------------------------------

// Header fields are whitespace-separated with '#' comments running to
// end-of-line; a single whitespace byte separates the header from the raster.
class PnmParser {
public:
    PnmParser(const std::filesystem::path& path, const std::vector<char>& bytes)
        : path_(path), bytes_(bytes) {}

    int next_int() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(static_cast<unsigned char>(bytes_[pos_])))
            fail(path_, "malformed PNM header");
        long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > 1 << 30) fail(path_, "PNM header value out of range");
            ++pos_;
        }
        return static_cast<int>(v);
    }

    const std::uint8_t* raster(std::size_t expected) {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
            fail(path_, "malformed PNM header");
        ++pos_;  // single whitespace before the raster
        if (bytes_.size() - pos_ < expected) fail(path_, "truncated PNM raster");
        return reinterpret_cast<const std::uint8_t*>(bytes_.data() + pos_);
    }

    void advance(std::size_t n) { pos_ += n; }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::filesystem::path& path_;
    const std::vector<char>& bytes_;
    std::size_t pos_ = 2;  // past the magic
};

LoadedImage load_pnm(const std::filesystem::path& path, const std::vector<char>& bytes) {
    const bool color = bytes[1] == '6';
    PnmParser p(path, bytes);
    const int width = p.next_int();
    const int height = p.next_int();
    const int maxval = p.next_int();
    if (width <= 0 || height <= 0) fail(path, "zero-dimension image");
    if (maxval != 255) fail(path, "PNM maxval must be 255");

    const int channels = color ? 3 : 1;
    const std::size_t n = static_cast<std::size_t>(width) * height * channels;
    const std::uint8_t* data = p.raster(n);

    if (color) return RgbImage(width, height, std::vector<std::uint8_t>(data, data + n));
    GrayImage gray(width, height);
    for (std::size_t i = 0; i < n; ++i) gray.samples()[i] = data[i] / 255.0;
    return gray;
}

GrayImage green_of(const RgbImage& rgb) {
    GrayImage g(rgb.width(), rgb.height());
    for (int y = 0; y < rgb.height(); ++y)
        for (int x = 0; x < rgb.width(); ++x) g.at(x, y) = rgb.at(x, y, 1) / 255.0;
    return g;
}

}  // namespace

LoadedImage load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open file");
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() >= 8 && std::memcmp(bytes.data(), "\x89PNG\r\n\x1a\n", 8) == 0)
        return load_png(path);
    if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6'))
        return load_pnm(path, bytes);
    fail(path, "unsupported raster format (expect PNG or binary PGM/PPM)");
}

RgbImage load_rgb(const std::filesystem::path& path) {
    LoadedImage img = load_image(path);
    if (auto* rgb = std::get_if<RgbImage>(&img)) return std::move(*rgb);
    const auto& gray = std::get<GrayImage>(img);
    RgbImage out(gray.width(), gray.height());
    for (int y = 0; y < gray.height(); ++y) {
        for (int x = 0; x < gray.width(); ++x) {
            const std::uint8_t v = to_byte(gray.at(x, y));
            out.at(x, y, 0) = out.at(x, y, 1) = out.at(x, y, 2) = v;
        }
    }
    return out;
}

GrayImage load_gray(const std::filesystem::path& path) {
    LoadedImage img = load_image(path);
    if (auto* gray = std::get_if<GrayImage>(&img)) return std::move(*gray);
    return green_of(std::get<RgbImage>(img));
}

BinaryMask load_mask(const std::filesystem::path& path) {
    const GrayImage gray = load_gray(path);
    BinaryMask mask(gray.width(), gray.height(), 0);
    for (std::size_t i = 0; i < gray.size(); ++i)
        mask.samples()[i] = gray.samples()[i] > 0.5 ? 1 : 0;
    return mask;
}

void save_png(const std::filesystem::path& path, const GrayImage& img) {
    std::vector<std::uint8_t> bytes(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) bytes[i] = to_byte(img.samples()[i]);
    save_png_bytes(path, img.width(), img.height(), 1, bytes);
}

void save_png(const std::filesystem::path& path, const RgbImage& img) {
    save_png_bytes(path, img.width(), img.height(), 3, img.samples());
}

void save_png(const std::filesystem::path& path, const BinaryMask& mask) {
    std::vector<std::uint8_t> bytes(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i) bytes[i] = mask.samples()[i] ? 255 : 0;
    save_png_bytes(path, mask.width(), mask.height(), 1, bytes);
}

}  // namespace retseg
