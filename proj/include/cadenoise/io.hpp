#pragma once

// Image file I/O. Binary PGM (P5, maxval 255) is the lossless interchange
// format; 8-bit grayscale and RGB PNG are accepted for convenience. Link
// against cadenoise::io (libpng).

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"

namespace cadenoise {

/// An image as one GrayImage per channel: 1 plane (gray) or 3 (R, G, B).
struct PlanarImage {
    std::vector<GrayImage> channels;

    std::size_t width() const { return channels.front().width(); }
    std::size_t height() const { return channels.front().height(); }
    bool is_gray() const { return channels.size() == 1; }
};

enum class ImageFormat { pgm, png };

namespace detail {

inline std::vector<unsigned char> read_file_bytes(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("error reading '" + path.string() + "'");
    return bytes;
}

class PnmHeaderParser {
public:
    explicit PnmHeaderParser(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

    std::size_t next_number(const char* field)
    {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
            throw DataError(std::string("PGM: missing or malformed ") + field);
        }
        std::size_t value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
            if (value > (1u << 24)) throw DataError(std::string("PGM: ") + field + " too large");
            ++pos_;
        }
        return value;
    }

    /// Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_offset()
    {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw DataError("PGM: expected whitespace before raster data");
        }
        return pos_ + 1;
    }

private:
    void skip_space_and_comments()
    {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<unsigned char>& bytes_;
    std::size_t pos_ = 2; // past the magic number
};

} // namespace detail

inline GrayImage decode_pgm(const std::vector<unsigned char>& bytes)
{
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
        throw DataError("PGM: not a binary (P5) graymap");
    }
    detail::PnmHeaderParser header(bytes);
    const std::size_t width = header.next_number("width");
    const std::size_t height = header.next_number("height");
    const std::size_t maxval = header.next_number("maxval");
    if (width == 0 || height == 0) throw DataError("PGM: zero width or height");
    if (maxval != 255) {
        throw DataError("PGM: only maxval 255 is supported (got " + std::to_string(maxval) + ")");
    }
    const std::size_t offset = header.raster_offset();
    const std::size_t count = width * height;
    if (bytes.size() < offset + count) {
        throw DataError("PGM: truncated raster (expected " + std::to_string(count) + " bytes)");
    }
    std::vector<Intensity> pixels(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                                  bytes.begin() + static_cast<std::ptrdiff_t>(offset + count));
    return GrayImage(width, height, std::move(pixels));
}

inline std::vector<unsigned char> encode_pgm(const GrayImage& img)
{
    const std::string header =
        "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    std::vector<unsigned char> out(header.begin(), header.end());
    out.insert(out.end(), img.pixels().begin(), img.pixels().end());
    return out;
}

namespace detail {

struct PngImageGuard {
    png_image image{};
    PngImageGuard()
    {
        image.version = PNG_IMAGE_VERSION;
    }
    ~PngImageGuard() { png_image_free(&image); }
    PngImageGuard(const PngImageGuard&) = delete;
    PngImageGuard& operator=(const PngImageGuard&) = delete;
};

} // namespace detail

inline PlanarImage decode_png(const std::vector<unsigned char>& bytes)
{
    detail::PngImageGuard guard;
    png_image& image = guard.image;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
        throw DataError(std::string("PNG: ") + image.message);
    }
    if (image.format & PNG_FORMAT_FLAG_LINEAR) throw DataError("PNG: only 8-bit images are supported");
    if (image.format & PNG_FORMAT_FLAG_ALPHA) throw DataError("PNG: images with alpha are not supported");

    const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    const std::size_t channels = color ? 3 : 1;
    const std::size_t width = image.width;
    const std::size_t height = image.height;
    std::vector<unsigned char> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        throw DataError(std::string("PNG: ") + image.message);
    }

    PlanarImage out;
    for (std::size_t c = 0; c < channels; ++c) {
        GrayImage plane(width, height);
        auto dst = plane.pixels();
        for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = buffer[k * channels + c];
        out.channels.push_back(std::move(plane));
    }
    return out;
}

inline std::vector<unsigned char> encode_png(const PlanarImage& img)
{
    const std::size_t channels = img.channels.size();
    if (channels != 1 && channels != 3) throw DataError("PNG: expected 1 or 3 channels");
    std::vector<unsigned char> interleaved(img.width() * img.height() * channels);
    for (std::size_t c = 0; c < channels; ++c) {
        const auto src = img.channels[c].pixels();
        for (std::size_t k = 0; k < src.size(); ++k) interleaved[k * channels + c] = src[k];
    }

    detail::PngImageGuard guard;
    png_image& image = guard.image;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&image, nullptr, &size, 0, interleaved.data(), 0, nullptr)) {
        throw DataError(std::string("PNG: ") + image.message);
    }
    std::vector<unsigned char> out(size);
    if (!png_image_write_to_memory(&image, out.data(), &size, 0, interleaved.data(), 0, nullptr)) {
        throw DataError(std::string("PNG: ") + image.message);
    }
    out.resize(size);
    return out;
}

/// Picks the output format from the file extension (.pgm or .png).
inline ImageFormat format_for_path(const std::filesystem::path& path)
{
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".pgm") return ImageFormat::pgm;
    if (ext == ".png") return ImageFormat::png;
    throw DataError("unsupported output extension '" + ext + "' (use .pgm or .png)");
}

/// Reads a PGM or PNG file, detected from its signature.
inline PlanarImage read_image(const std::filesystem::path& path)
{
    const auto bytes = detail::read_file_bytes(path);
    static constexpr std::array<unsigned char, 8> png_sig{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') {
        return PlanarImage{{decode_pgm(bytes)}};
    }
    if (bytes.size() >= png_sig.size() && std::equal(png_sig.begin(), png_sig.end(), bytes.begin())) {
        return decode_png(bytes);
    }
    if (bytes.size() >= 2 && bytes[0] == 0xff && bytes[1] == 0xd8) {
        throw DataError("'" + path.string() + "': JPEG input is not supported (lossy compression "
                        "distorts impulse noise); convert to PGM or PNG");
    }
    throw DataError("'" + path.string() + "': unrecognised image format (expected PGM P5 or PNG)");
}

inline void write_image(const std::filesystem::path& path, const PlanarImage& img)
{
    std::vector<unsigned char> bytes;
    if (format_for_path(path) == ImageFormat::pgm) {
        if (!img.is_gray()) throw DataError("PGM output requires a single-channel image");
        bytes = encode_pgm(img.channels.front());
    } else {
        bytes = encode_png(img);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) throw IoError("error writing '" + path.string() + "'");
}

inline GrayImage read_gray(const std::filesystem::path& path)
{
    auto img = read_image(path);
    if (!img.is_gray()) throw DataError("'" + path.string() + "': expected a grayscale image");
    return std::move(img.channels.front());
}

inline void write_gray(const std::filesystem::path& path, const GrayImage& img)
{
    write_image(path, PlanarImage{{img}});
}

/// Rec. 601 luma, rounded to nearest.
inline GrayImage to_grayscale(const PlanarImage& img)
{
    if (img.is_gray()) return img.channels.front();
    const auto r = img.channels[0].pixels();
    const auto g = img.channels[1].pixels();
    const auto b = img.channels[2].pixels();
    GrayImage out(img.width(), img.height());
    auto dst = out.pixels();
    for (std::size_t k = 0; k < dst.size(); ++k) {
        const double y = 0.299 * r[k] + 0.587 * g[k] + 0.114 * b[k];
        dst[k] = static_cast<Intensity>(std::clamp(std::floor(y + 0.5), 0.0, 255.0));
    }
    return out;
}

} // namespace cadenoise
