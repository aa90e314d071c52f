#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"

namespace cadenoise {

/// Full-reference quality of a restored image.
struct QualityReport {
    double psnr_db = 0.0; // +infinity when the images are identical
    double ssim = 0.0;

    bool psnr_is_infinite() const noexcept { return std::isinf(psnr_db); }
};

/// Window and stabilising constants of the standard SSIM.
struct SsimParams {
    static constexpr int window = 11;
    static constexpr double sigma = 1.5;
    static constexpr double k1 = 0.01;
    static constexpr double k2 = 0.03;
    static constexpr double dynamic_range = 255.0;
    static constexpr double c1 = (k1 * dynamic_range) * (k1 * dynamic_range);
    static constexpr double c2 = (k2 * dynamic_range) * (k2 * dynamic_range);
};

namespace detail {

inline void require_same_shape(const GrayImage& a, const GrayImage& b, const char* what)
{
    if (!a.same_shape(b)) {
        throw DataError(std::string(what) + ": dimension mismatch (" + std::to_string(a.width()) +
                        "x" + std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                        "x" + std::to_string(b.height()) + ")");
    }
}

} // namespace detail

inline double mean_squared_error(const GrayImage& reference, const GrayImage& restored)
{
    detail::require_same_shape(reference, restored, "mse");
    const auto a = reference.pixels();
    const auto b = restored.pixels();
    // Squared 8-bit differences fit in 17 bits; exact integer accumulation.
    std::uint64_t total = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const int d = static_cast<int>(a[k]) - static_cast<int>(b[k]);
        total += static_cast<std::uint64_t>(d * d);
    }
    return static_cast<double>(total) / static_cast<double>(a.size());
}

/// 10 log10(255^2 / MSE); +infinity for identical images.
inline double psnr(const GrayImage& reference, const GrayImage& restored)
{
    const double mse = mean_squared_error(reference, restored);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

namespace detail {

inline std::array<double, SsimParams::window> gaussian_window()
{
    std::array<double, SsimParams::window> w{};
    constexpr int half = SsimParams::window / 2;
    double total = 0.0;
    for (int k = 0; k < SsimParams::window; ++k) {
        const double x = k - half;
        w[k] = std::exp(-(x * x) / (2.0 * SsimParams::sigma * SsimParams::sigma));
        total += w[k];
    }
    for (double& v : w) v /= total;
    return w;
}

inline double ssim_from_moments(double mu_a, double mu_b, double var_a, double var_b, double cov)
{
    constexpr double c1 = SsimParams::c1;
    constexpr double c2 = SsimParams::c2;
    return ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) /
           ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
}

/// Separable "valid" Gaussian filtering of a plane: output is
/// (height - window + 1) x (width - window + 1).
inline std::vector<double> filter_valid(const std::vector<double>& plane, std::size_t width,
                                        std::size_t height,
                                        const std::array<double, SsimParams::window>& w)
{
    constexpr std::size_t n = SsimParams::window;
    const std::size_t ow = width - n + 1;
    const std::size_t oh = height - n + 1;
    std::vector<double> horizontal(height * ow);
    for (std::size_t i = 0; i < height; ++i) {
        const double* line = plane.data() + i * width;
        for (std::size_t j = 0; j < ow; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += w[k] * line[j + k];
            horizontal[i * ow + j] = acc;
        }
    }
    std::vector<double> out(oh * ow);
    for (std::size_t i = 0; i < oh; ++i) {
        for (std::size_t j = 0; j < ow; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += w[k] * horizontal[(i + k) * ow + j];
            out[i * ow + j] = acc;
        }
    }
    return out;
}

inline double ssim_global(const GrayImage& a, const GrayImage& b)
{
    const auto pa = a.pixels();
    const auto pb = b.pixels();
    const double n = static_cast<double>(pa.size());
    double sa = 0.0, sb = 0.0;
    for (std::size_t k = 0; k < pa.size(); ++k) {
        sa += pa[k];
        sb += pb[k];
    }
    const double mu_a = sa / n;
    const double mu_b = sb / n;
    double vaa = 0.0, vbb = 0.0, vab = 0.0;
    for (std::size_t k = 0; k < pa.size(); ++k) {
        const double da = pa[k] - mu_a;
        const double db = pb[k] - mu_b;
        vaa += da * da;
        vbb += db * db;
        vab += da * db;
    }
    return ssim_from_moments(mu_a, mu_b, vaa / n, vbb / n, vab / n);
}

} // namespace detail

/// Mean SSIM over every 11x11 Gaussian window (sigma 1.5) lying fully inside
/// the image. Images narrower or shorter than 11 pixels fall back to a single
/// window spanning the whole image with uniform weights.
inline double ssim(const GrayImage& reference, const GrayImage& restored)
{
    detail::require_same_shape(reference, restored, "ssim");
    constexpr std::size_t n = SsimParams::window;
    const std::size_t w = reference.width();
    const std::size_t h = reference.height();
    if (w < n || h < n) return detail::ssim_global(reference, restored);

    const auto pa = reference.pixels();
    const auto pb = restored.pixels();
    std::vector<double> a(pa.size()), b(pa.size()), aa(pa.size()), bb(pa.size()), ab(pa.size());
    for (std::size_t k = 0; k < pa.size(); ++k) {
        a[k] = pa[k];
        b[k] = pb[k];
        aa[k] = a[k] * a[k];
        bb[k] = b[k] * b[k];
        ab[k] = a[k] * b[k];
    }
    const auto g = detail::gaussian_window();
    const auto mu_a = detail::filter_valid(a, w, h, g);
    const auto mu_b = detail::filter_valid(b, w, h, g);
    const auto e_aa = detail::filter_valid(aa, w, h, g);
    const auto e_bb = detail::filter_valid(bb, w, h, g);
    const auto e_ab = detail::filter_valid(ab, w, h, g);

    double total = 0.0;
    for (std::size_t k = 0; k < mu_a.size(); ++k) {
        const double var_a = e_aa[k] - mu_a[k] * mu_a[k];
        const double var_b = e_bb[k] - mu_b[k] * mu_b[k];
        const double cov = e_ab[k] - mu_a[k] * mu_b[k];
        total += detail::ssim_from_moments(mu_a[k], mu_b[k], var_a, var_b, cov);
    }
    return total / static_cast<double>(mu_a.size());
}

inline QualityReport evaluate(const GrayImage& reference, const GrayImage& restored)
{
    return {psnr(reference, restored), ssim(reference, restored)};
}

} // namespace cadenoise
