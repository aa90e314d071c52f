#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

#include "grid.hpp"
#include "noise.hpp"
#include "parallel.hpp"

namespace cadenoise {

/// Parameters of the denoising automaton.
struct DenoiseConfig {
    static constexpr Intensity min_state = kMinState;
    static constexpr Intensity max_state = kMaxState;

    /// Number of synchronous steps; empty means AUTO (derive from the noise level).
    std::optional<int> iterations;
    /// AUTO only: use this noise density instead of estimating it from the input.
    std::optional<double> noise_density;
    /// Threads per step; 0 uses every hardware thread. Never changes the result.
    unsigned workers = 0;

    static DenoiseConfig automatic() { return {}; }

    static DenoiseConfig fixed(int steps, unsigned workers = 0)
    {
        DenoiseConfig cfg;
        cfg.iterations = steps;
        cfg.workers = workers;
        return cfg;
    }
};

constexpr bool is_noisy(Intensity value) noexcept
{
    return value == DenoiseConfig::min_state || value == DenoiseConfig::max_state;
}

namespace detail {

/// Rounded mean (ties away from zero) of `count` surviving neighbours, or
/// max_state when nothing survived.
constexpr Intensity survivor_mean(std::uint32_t sum, std::uint32_t count) noexcept
{
    if (count == 0) return DenoiseConfig::max_state;
    return static_cast<Intensity>((2 * sum + count) / (2 * count));
}

} // namespace detail

/// Replacement value for a noisy cell given its sorted neighbourhood.
///
/// Every 0 and 255 in the sample is discarded and the rest are averaged.
/// When b_min > 0 and b_max < 255 nothing is discarded, so this is the plain
/// mean of all eight. A neighbourhood made only of extremes yields 255.
inline Intensity cnew(const NeighborhoodSample& sample) noexcept
{
    std::uint32_t sum = 0;
    std::uint32_t count = 0;
    for (Intensity v : sample.values) {
        if (!is_noisy(v)) {
            sum += v;
            ++count;
        }
    }
    return detail::survivor_mean(sum, count);
}

/// Local rule for one cell: clean cells keep their state, noisy cells take cnew.
inline Intensity transition(const GrayImage& img, std::size_t i, std::size_t j,
                            const DenoiseConfig& /*cfg*/ = {}) noexcept
{
    const Intensity current = img(i, j);
    if (!is_noisy(current)) return current;
    return cnew(moore_sample(img, i, j));
}

namespace detail {

// Virtual boundary cells hold 0 and would be discarded by cnew anyway, so
// out-of-raster neighbours are simply skipped.
inline void step_rows(const GrayImage& in, GrayImage& out, std::size_t row_begin,
                      std::size_t row_end) noexcept
{
    const std::size_t w = in.width();
    const std::size_t h = in.height();
    const Intensity* src = in.pixels().data();
    Intensity* dst = out.pixels().data();

    for (std::size_t i = row_begin; i < row_end; ++i) {
        const std::size_t i0 = i == 0 ? 0 : i - 1;
        const std::size_t i1 = i + 1 == h ? i : i + 1;
        for (std::size_t j = 0; j < w; ++j) {
            const Intensity current = src[i * w + j];
            if (!is_noisy(current)) {
                dst[i * w + j] = current;
                continue;
            }
            const std::size_t j0 = j == 0 ? 0 : j - 1;
            const std::size_t j1 = j + 1 == w ? j : j + 1;
            std::uint32_t sum = 0;
            std::uint32_t count = 0;
            for (std::size_t r = i0; r <= i1; ++r) {
                const Intensity* line = src + r * w;
                for (std::size_t c = j0; c <= j1; ++c) {
                    const Intensity v = line[c];
                    // The centre is noisy here, so it never passes this test.
                    if (!is_noisy(v)) {
                        sum += v;
                        ++count;
                    }
                }
            }
            dst[i * w + j] = survivor_mean(sum, count);
        }
    }
}

} // namespace detail

/// One synchronous generation: every cell of `out` is computed from `in`.
/// `out` must have the same shape as `in` and must not alias it.
inline void step_into(const GrayImage& in, GrayImage& out, unsigned workers = 0)
{
    if (!in.same_shape(out)) {
        throw std::invalid_argument("step_into: output shape differs from input");
    }
    parallel_rows(in.height(), workers, [&](std::size_t begin, std::size_t end) {
        detail::step_rows(in, out, begin, end);
    });
}

inline GrayImage step(const GrayImage& img, const DenoiseConfig& cfg = {})
{
    GrayImage out(img.width(), img.height());
    step_into(img, out, cfg.workers);
    return out;
}

/// Number of steps denoise will run for `img` under `cfg`.
inline int resolve_iterations(const GrayImage& img, const DenoiseConfig& cfg)
{
    if (cfg.iterations) {
        if (*cfg.iterations < 1) {
            throw std::invalid_argument("iteration count must be positive");
        }
        return *cfg.iterations;
    }
    return iterations_for(cfg.noise_density ? *cfg.noise_density : estimate_noise_density(img));
}

/// Runs the automaton for resolve_iterations(img, cfg) steps, ping-ponging
/// between two buffers.
inline GrayImage denoise(const GrayImage& img, const DenoiseConfig& cfg = {})
{
    const int steps = resolve_iterations(img, cfg);
    GrayImage current = img;
    GrayImage next(img.width(), img.height());
    for (int t = 0; t < steps; ++t) {
        step_into(current, next, cfg.workers);
        std::swap(current, next);
    }
    return current;
}

} // namespace cadenoise
