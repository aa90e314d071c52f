#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace cadenoise {

/// 0 means "one worker per hardware thread".
inline unsigned resolve_workers(unsigned requested) noexcept
{
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Splits [0, rows) into contiguous bands and runs fn(begin, end) on each,
/// one thread per band. Returns after every band has finished.
template <typename Fn>
void parallel_rows(std::size_t rows, unsigned workers, Fn&& fn)
{
    const std::size_t bands = std::min<std::size_t>(resolve_workers(workers), rows);
    if (bands <= 1) {
        fn(std::size_t{0}, rows);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(bands - 1);
    const std::size_t base = rows / bands;
    const std::size_t extra = rows % bands;
    std::size_t begin = 0;
    for (std::size_t b = 0; b < bands; ++b) {
        const std::size_t end = begin + base + (b < extra ? 1 : 0);
        if (b + 1 == bands) {
            fn(begin, end);
        } else {
            pool.emplace_back([&fn, begin, end] { fn(begin, end); });
        }
        begin = end;
    }
}

} // namespace cadenoise
