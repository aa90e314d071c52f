#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cadenoise {

using Intensity = std::uint8_t;

inline constexpr Intensity kMinState = 0;
inline constexpr Intensity kMaxState = 255;

/// 8-bit grayscale raster, row-major, addressed as (row i, column j).
///
/// Doubles as the CA lattice: each pixel is one cell whose state is its
/// intensity. Cells outside the raster read as 0 (zero boundary).
class GrayImage {
public:
    GrayImage(std::size_t width, std::size_t height, Intensity fill = 0)
        : width_(width), height_(height), pixels_(checked_area(width, height), fill) {}

    GrayImage(std::size_t width, std::size_t height, std::vector<Intensity> pixels)
        : width_(width), height_(height), pixels_(std::move(pixels))
    {
        if (pixels_.size() != checked_area(width, height)) {
            throw std::invalid_argument("GrayImage: pixel count " + std::to_string(pixels_.size()) +
                                        " does not match " + std::to_string(width) + "x" +
                                        std::to_string(height));
        }
    }

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }

    Intensity operator()(std::size_t i, std::size_t j) const noexcept
    {
        assert(i < height_ && j < width_);
        return pixels_[i * width_ + j];
    }

    Intensity& operator()(std::size_t i, std::size_t j) noexcept
    {
        assert(i < height_ && j < width_);
        return pixels_[i * width_ + j];
    }

    std::span<const Intensity> pixels() const noexcept { return pixels_; }
    std::span<Intensity> pixels() noexcept { return pixels_; }

    std::span<const Intensity> row(std::size_t i) const noexcept
    {
        assert(i < height_);
        return {pixels_.data() + i * width_, width_};
    }

    std::span<Intensity> row(std::size_t i) noexcept
    {
        assert(i < height_);
        return {pixels_.data() + i * width_, width_};
    }

    bool same_shape(const GrayImage& other) const noexcept
    {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    static std::size_t checked_area(std::size_t width, std::size_t height)
    {
        if (width == 0 || height == 0) {
            throw std::invalid_argument("GrayImage: width and height must be at least 1");
        }
        return width * height;
    }

    std::size_t width_;
    std::size_t height_;
    std::vector<Intensity> pixels_;
};

inline Intensity get_pixel(const GrayImage& img, std::size_t i, std::size_t j) noexcept
{
    return img(i, j);
}

/// Zero-boundary read: coordinates outside the raster yield 0.
inline Intensity pixel_or_zero(const GrayImage& img, std::ptrdiff_t i, std::ptrdiff_t j) noexcept
{
    if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= img.height() ||
        static_cast<std::size_t>(j) >= img.width()) {
        return 0;
    }
    return img(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
}

/// The eight Moore neighbours of a cell (centre excluded), sorted ascending.
struct NeighborhoodSample {
    std::array<Intensity, 8> values{};

    Intensity b_min() const noexcept { return values.front(); }
    Intensity b_max() const noexcept { return values.back(); }
};

/// Range-1 Moore neighbourhood of (i, j) under the zero boundary condition.
inline NeighborhoodSample moore_sample(const GrayImage& img, std::size_t i, std::size_t j) noexcept
{
    assert(i < img.height() && j < img.width());
    NeighborhoodSample sample;
    std::size_t k = 0;
    const auto ci = static_cast<std::ptrdiff_t>(i);
    const auto cj = static_cast<std::ptrdiff_t>(j);
    for (std::ptrdiff_t di = -1; di <= 1; ++di) {
        for (std::ptrdiff_t dj = -1; dj <= 1; ++dj) {
            if (di == 0 && dj == 0) continue;
            sample.values[k++] = pixel_or_zero(img, ci + di, cj + dj);
        }
    }
    std::sort(sample.values.begin(), sample.values.end());
    return sample;
}

} // namespace cadenoise
