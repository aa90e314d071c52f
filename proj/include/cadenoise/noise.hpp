#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

#include "grid.hpp"

namespace cadenoise {

/// Name of the generator behind add_salt_pepper, recorded in benchmark metadata.
/// std::mt19937_64 is fully specified by the standard, and uniforms are
/// derived from its raw 64-bit output (no std:: distributions), so a seed
/// reproduces the same corruption on every platform.
inline constexpr std::string_view kNoiseGenerator = "std::mt19937_64 (53-bit uniform from raw output)";

struct NoiseSpec {
    double density = 0.0;       // probability that a pixel is corrupted
    double salt_fraction = 0.5; // share of corrupted pixels set to 255
    std::uint64_t seed = 0;

    void validate() const
    {
        if (!(density >= 0.0 && density <= 1.0)) {
            throw std::invalid_argument("noise density must lie in [0, 1]");
        }
        if (!(salt_fraction >= 0.0 && salt_fraction <= 1.0)) {
            throw std::invalid_argument("salt fraction must lie in [0, 1]");
        }
    }
};

namespace detail {

inline double unit_uniform(std::mt19937_64& gen)
{
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

} // namespace detail

/// Independent per-pixel salt-and-pepper corruption.
///
/// Each pixel draws one uniform u; if u < density it is corrupted and a second
/// uniform decides salt (255) vs pepper (0). Uncorrupted pixels are copied.
inline GrayImage add_salt_pepper(const GrayImage& img, const NoiseSpec& spec)
{
    spec.validate();
    GrayImage out = img;
    std::mt19937_64 gen(spec.seed);
    for (auto& px : out.pixels()) {
        if (detail::unit_uniform(gen) < spec.density) {
            px = detail::unit_uniform(gen) < spec.salt_fraction ? kMaxState : kMinState;
        }
    }
    return out;
}

inline std::size_t count_extreme_pixels(const GrayImage& img) noexcept
{
    std::size_t n = 0;
    for (Intensity px : img.pixels()) {
        n += (px == kMinState || px == kMaxState) ? 1 : 0;
    }
    return n;
}

/// Fraction of pixels sitting at 0 or 255. Over-estimates on images that
/// already contain pure black or white; callers can override it.
inline double estimate_noise_density(const GrayImage& img) noexcept
{
    return static_cast<double>(count_extreme_pixels(img)) / static_cast<double>(img.size());
}

/// Iteration budget for a noise level of n percent: floor(n / 10) + 1.
inline int iterations_for(double density)
{
    if (!(density >= 0.0 && density <= 1.0)) {
        throw std::invalid_argument("noise density must lie in [0, 1]");
    }
    // 1e-9 absorbs representation error, e.g. 0.7 * 10 landing just below 7.
    const int n = static_cast<int>(std::floor(density * 10.0 + 1e-9)) + 1;
    return n < 1 ? 1 : n;
}

} // namespace cadenoise
