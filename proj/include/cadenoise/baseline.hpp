#pragma once

#include <algorithm>
#include <array>
#include <cstddef>

#include "grid.hpp"
#include "parallel.hpp"

namespace cadenoise {

/// Plain single-pass 3x3 median filter (SMF). Unlike the automaton, the
/// window includes the centre pixel and every pixel is filtered. Cells outside
/// the image count as 0.
inline GrayImage median_filter_3x3(const GrayImage& img, unsigned workers = 0)
{
    GrayImage out(img.width(), img.height());
    parallel_rows(img.height(), workers, [&](std::size_t begin, std::size_t end) {
        std::array<Intensity, 9> window;
        for (std::size_t i = begin; i < end; ++i) {
            const auto ci = static_cast<std::ptrdiff_t>(i);
            for (std::size_t j = 0; j < img.width(); ++j) {
                const auto cj = static_cast<std::ptrdiff_t>(j);
                std::size_t k = 0;
                for (std::ptrdiff_t di = -1; di <= 1; ++di) {
                    for (std::ptrdiff_t dj = -1; dj <= 1; ++dj) {
                        window[k++] = pixel_or_zero(img, ci + di, cj + dj);
                    }
                }
                std::nth_element(window.begin(), window.begin() + 4, window.end());
                out(i, j) = window[4];
            }
        }
    });
    return out;
}

} // namespace cadenoise
