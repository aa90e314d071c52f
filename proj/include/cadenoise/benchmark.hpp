#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "baseline.hpp"
#include "ca.hpp"
#include "grid.hpp"
#include "metrics.hpp"
#include "noise.hpp"

namespace cadenoise {

enum class Filter { ca, smf };

inline std::string_view filter_name(Filter f) noexcept
{
    return f == Filter::ca ? "ca" : "smf";
}

inline Filter parse_filter(std::string_view name)
{
    if (name == "ca") return Filter::ca;
    if (name == "smf") return Filter::smf;
    throw std::invalid_argument("unknown filter '" + std::string(name) + "' (expected ca or smf)");
}

/// How the automaton's step count is chosen for each corrupted copy.
enum class Schedule {
    nominal,   // from the injected density
    estimated, // from estimate_noise_density on the corrupted copy (AUTO)
};

struct BenchmarkOptions {
    std::vector<double> densities{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    int runs = 100;
    std::uint64_t seed_base = 0;
    std::vector<Filter> filters{Filter::ca};
    double salt_fraction = 0.5;
    Schedule schedule = Schedule::nominal;
    std::optional<int> iterations; // overrides the schedule when set
    unsigned workers = 0;
};

struct ReferenceImage {
    std::string name;
    GrayImage image;
};

struct BenchmarkRow {
    std::string image_name;
    double density = 0.0;
    Filter filter = Filter::ca;
    int runs = 0;
    int iterations_used = 0; // largest step count over the runs; 1 for smf
    double mean_psnr_db = 0.0;
    double mean_ssim = 0.0;
    double mean_wall_time_ms = 0.0;
    std::uint64_t seed_base = 0;
};

inline constexpr std::string_view kCsvHeader =
    "image,density,filter,runs,iterations,mean_psnr_db,mean_ssim,mean_wall_time_ms,seed_base";

/// Shortest round-trip decimal for finite values, "inf" for +infinity.
inline std::string format_real(double value)
{
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    char buf[64];
    const auto res = std::to_chars(std::begin(buf), std::end(buf), value);
    return std::string(buf, res.ptr);
}

inline void write_csv(std::ostream& out, std::span<const BenchmarkRow> rows)
{
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.image_name << ',' << format_real(r.density) << ',' << filter_name(r.filter) << ','
            << r.runs << ',' << r.iterations_used << ',' << format_real(r.mean_psnr_db) << ','
            << format_real(r.mean_ssim) << ',' << format_real(r.mean_wall_time_ms) << ','
            << r.seed_base << '\n';
    }
}

/// Reproduces the averaging protocol: for every (image, density) the clean
/// reference is corrupted with seeds seed_base .. seed_base + runs - 1, each
/// filter restores the same corrupted copies, and PSNR/SSIM/time are averaged.
/// Rows are ordered by image, then density, then filter. Only wall time is
/// non-deterministic.
inline std::vector<BenchmarkRow> run_benchmark(
    std::span<const ReferenceImage> references, const BenchmarkOptions& opts,
    const std::function<void(const BenchmarkRow&)>& on_row = {})
{
    if (opts.runs < 1) throw std::invalid_argument("runs must be at least 1");
    if (opts.filters.empty()) throw std::invalid_argument("at least one filter is required");
    if (opts.iterations && *opts.iterations < 1) {
        throw std::invalid_argument("iteration count must be positive");
    }
    for (double d : opts.densities) {
        NoiseSpec{d, opts.salt_fraction, 0}.validate();
    }

    using clock = std::chrono::steady_clock;
    std::vector<BenchmarkRow> rows;
    for (const auto& ref : references) {
        for (double density : opts.densities) {
            std::vector<BenchmarkRow> group;
            for (Filter f : opts.filters) {
                BenchmarkRow row;
                row.image_name = ref.name;
                row.density = density;
                row.filter = f;
                row.runs = opts.runs;
                row.seed_base = opts.seed_base;
                group.push_back(row);
            }
            for (int run = 0; run < opts.runs; ++run) {
                const NoiseSpec spec{density, opts.salt_fraction,
                                     opts.seed_base + static_cast<std::uint64_t>(run)};
                const GrayImage noisy = add_salt_pepper(ref.image, spec);
                for (auto& row : group) {
                    int steps = 1;
                    const auto start = clock::now();
                    GrayImage restored = [&] {
                        if (row.filter == Filter::smf) return median_filter_3x3(noisy, opts.workers);
                        DenoiseConfig cfg;
                        cfg.workers = opts.workers;
                        if (opts.iterations) {
                            cfg.iterations = opts.iterations;
                        } else if (opts.schedule == Schedule::nominal) {
                            cfg.iterations = iterations_for(density);
                        }
                        steps = resolve_iterations(noisy, cfg);
                        cfg.iterations = steps;
                        return denoise(noisy, cfg);
                    }();
                    const auto stop = clock::now();
                    const QualityReport q = evaluate(ref.image, restored);
                    row.iterations_used = std::max(row.iterations_used, steps);
                    row.mean_psnr_db += q.psnr_db;
                    row.mean_ssim += q.ssim;
                    row.mean_wall_time_ms +=
                        std::chrono::duration<double, std::milli>(stop - start).count();
                }
            }
            for (auto& row : group) {
                row.mean_psnr_db /= opts.runs;
                row.mean_ssim /= opts.runs;
                row.mean_wall_time_ms /= opts.runs;
                if (on_row) on_row(row);
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

} // namespace cadenoise
