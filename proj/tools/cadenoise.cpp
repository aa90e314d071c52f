// cadenoise: salt-and-pepper noise injection, cellular-automaton denoising,
// quality metrics and the density-sweep benchmark.
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 data error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cadenoise/cadenoise.hpp"
#include "cadenoise/io.hpp"

namespace fs = std::filesystem;
using namespace cadenoise;

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kData = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Channel c of an RGB image is corrupted with its own stream.
std::uint64_t channel_seed(std::uint64_t seed, std::size_t channel)
{
    return seed + channel * 0x9E3779B97F4A7C15ull;
}

// Like format_real but always shows a decimal point: "1.0", "0.0", "inf".
std::string format_metric(double value)
{
    std::string s = format_real(value);
    if (s.find_first_of(".eni") == std::string::npos) s += ".0";
    return s;
}

void check_output_path(const std::string& path)
{
    try {
        format_for_path(path);
    } catch (const DataError& e) {
        throw UsageError(e.what());
    }
}

struct AddNoiseArgs {
    std::string input, output;
    double density = 0.0;
    double salt_fraction = 0.5;
    std::uint64_t seed = 0;
};

int cmd_add_noise(const AddNoiseArgs& a)
{
    check_output_path(a.output);
    PlanarImage img = read_image(a.input);
    for (std::size_t c = 0; c < img.channels.size(); ++c) {
        const NoiseSpec spec{a.density, a.salt_fraction, channel_seed(a.seed, c)};
        img.channels[c] = add_salt_pepper(img.channels[c], spec);
    }
    write_image(a.output, img);
    return kOk;
}

struct DenoiseArgs {
    std::string input, output;
    std::optional<int> iterations;
    bool automatic = false;
    std::optional<double> noise_level;
    bool grayscale = false;
    unsigned workers = 0;
};

int cmd_denoise(const DenoiseArgs& a)
{
    check_output_path(a.output);
    PlanarImage img = read_image(a.input);
    if (a.grayscale && !img.is_gray()) img = PlanarImage{{to_grayscale(img)}};

    DenoiseConfig cfg;
    cfg.workers = a.workers;
    cfg.iterations = a.iterations;
    cfg.noise_density = a.noise_level;
    if (!cfg.iterations && !cfg.noise_density && !img.is_gray()) {
        // One schedule for all channels, estimated over every sample.
        std::size_t extreme = 0;
        std::size_t total = 0;
        for (const auto& ch : img.channels) {
            extreme += count_extreme_pixels(ch);
            total += ch.size();
        }
        cfg.noise_density = static_cast<double>(extreme) / static_cast<double>(total);
    }
    const int steps = resolve_iterations(img.channels.front(), cfg);
    cfg.iterations = steps;
    for (auto& ch : img.channels) ch = denoise(ch, cfg);
    write_image(a.output, img);
    std::cout << "iterations=" << steps << '\n';
    return kOk;
}

int cmd_metrics(const std::string& reference_path, const std::string& restored_path)
{
    const PlanarImage ref = read_image(reference_path);
    const PlanarImage out = read_image(restored_path);
    if (ref.channels.size() != out.channels.size()) {
        throw DataError("channel count mismatch (" + std::to_string(ref.channels.size()) + " vs " +
                        std::to_string(out.channels.size()) + ")");
    }
    // Colour images: PSNR over the pooled MSE, SSIM averaged per channel.
    double mse = 0.0;
    double s = 0.0;
    for (std::size_t c = 0; c < ref.channels.size(); ++c) {
        mse += mean_squared_error(ref.channels[c], out.channels[c]);
        s += ssim(ref.channels[c], out.channels[c]);
    }
    const double n = static_cast<double>(ref.channels.size());
    mse /= n;
    s /= n;
    const double p = mse == 0.0 ? std::numeric_limits<double>::infinity()
                                : 10.0 * std::log10(255.0 * 255.0 / mse);
    std::cout << "psnr_db=" << format_metric(p) << " ssim=" << format_metric(s) << '\n';
    return kOk;
}

struct BenchmarkArgs {
    std::vector<std::string> references;
    std::vector<double> densities{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    int runs = 100;
    std::uint64_t seed = 0;
    std::vector<std::string> filters{"ca"};
    std::string out = "report.csv";
    std::string schedule = "nominal";
    std::optional<int> iterations;
    double salt_fraction = 0.5;
    unsigned workers = 0;
    bool quiet = false;
};

int cmd_benchmark(const BenchmarkArgs& a)
{
    BenchmarkOptions opts;
    opts.densities = a.densities;
    opts.runs = a.runs;
    opts.seed_base = a.seed;
    opts.salt_fraction = a.salt_fraction;
    opts.iterations = a.iterations;
    opts.workers = a.workers;
    opts.schedule = a.schedule == "auto" ? Schedule::estimated : Schedule::nominal;
    opts.filters.clear();
    for (const auto& f : a.filters) {
        try {
            opts.filters.push_back(parse_filter(f));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }

    std::vector<ReferenceImage> refs;
    for (const auto& path : a.references) {
        PlanarImage img = read_image(path);
        if (!img.is_gray()) {
            std::cerr << "note: converting colour reference '" << path << "' to grayscale\n";
        }
        refs.push_back({fs::path(path).stem().string(), to_grayscale(img)});
    }

    const fs::path out_path(a.out);
    fs::path tmp_path = out_path;
    tmp_path += ".partial";
    std::ofstream csv(tmp_path, std::ios::trunc);
    if (!csv) throw IoError("cannot open '" + tmp_path.string() + "' for writing");

    try {
        const auto rows = run_benchmark(refs, opts, [&](const BenchmarkRow& row) {
            if (!a.quiet) {
                std::cerr << row.image_name << " density=" << format_real(row.density)
                          << " filter=" << filter_name(row.filter)
                          << " psnr_db=" << format_real(row.mean_psnr_db)
                          << " ssim=" << format_real(row.mean_ssim) << '\n';
            }
        });
        write_csv(csv, rows);
        csv.close();
        if (!csv) throw IoError("error writing '" + tmp_path.string() + "'");
        fs::rename(tmp_path, out_path);
    } catch (...) {
        std::error_code ignored;
        fs::remove(tmp_path, ignored);
        throw;
    }

    nlohmann::json meta;
    meta["generator"] = std::string(kNoiseGenerator);
    meta["seed_base"] = a.seed;
    meta["runs"] = a.runs;
    meta["salt_fraction"] = a.salt_fraction;
    meta["densities"] = a.densities;
    meta["filters"] = a.filters;
    meta["schedule"] = a.iterations ? "fixed" : a.schedule;
    if (a.iterations) meta["iterations"] = *a.iterations;
    meta["references"] = a.references;
    fs::path meta_path = out_path;
    meta_path += ".meta.json";
    std::ofstream meta_out(meta_path, std::ios::trunc);
    meta_out << meta.dump(2) << '\n';
    if (!meta_out) throw IoError("error writing '" + meta_path.string() + "'");
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cellular-automaton salt-and-pepper denoising toolkit"};
    app.require_subcommand(1);

    AddNoiseArgs noise_args;
    auto* add_noise = app.add_subcommand("add-noise", "Corrupt an image with salt-and-pepper noise");
    add_noise->add_option("input", noise_args.input, "Input image (PGM or PNG)")->required();
    add_noise->add_option("output", noise_args.output, "Output image (.pgm or .png)")->required();
    add_noise->add_option("--density", noise_args.density, "Fraction of corrupted pixels")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    add_noise->add_option("--salt-fraction", noise_args.salt_fraction,
                          "Share of corrupted pixels set to 255")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    add_noise->add_option("--seed", noise_args.seed, "Random seed")->capture_default_str();

    DenoiseArgs denoise_args;
    auto* den = app.add_subcommand("denoise", "Remove salt-and-pepper noise with the automaton");
    den->add_option("input", denoise_args.input, "Noisy image (PGM or PNG)")->required();
    den->add_option("output", denoise_args.output, "Restored image (.pgm or .png)")->required();
    auto* iter_opt = den->add_option("--iterations", denoise_args.iterations, "Fixed number of steps")
                         ->check(CLI::PositiveNumber);
    auto* auto_opt = den->add_flag("--auto", denoise_args.automatic,
                                   "Derive the step count from the noise level (default)");
    iter_opt->excludes(auto_opt);
    den->add_option("--noise-level", denoise_args.noise_level,
                    "Noise density in [0,1] used instead of the estimate")
        ->check(CLI::Range(0.0, 1.0))
        ->excludes(iter_opt);
    den->add_flag("--grayscale", denoise_args.grayscale, "Convert colour input to grayscale first");
    den->add_option("--workers", denoise_args.workers, "Threads per step (0 = all)");

    std::string metrics_ref, metrics_out;
    auto* met = app.add_subcommand("metrics", "Print PSNR and SSIM of a restored image");
    met->add_option("reference", metrics_ref, "Clean reference image")->required();
    met->add_option("restored", metrics_out, "Restored image")->required();

    BenchmarkArgs bench_args;
    auto* bench = app.add_subcommand("benchmark", "Density sweep averaged over seeded runs");
    bench->add_option("references", bench_args.references, "Clean reference images")->required();
    bench->add_option("--densities", bench_args.densities, "Comma-separated noise densities")
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0));
    bench->add_option("--runs", bench_args.runs, "Runs per combination")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench->add_option("--seed", bench_args.seed, "Seed of the first run")->capture_default_str();
    bench->add_option("--filters", bench_args.filters, "Comma-separated filters: ca, smf")
        ->delimiter(',');
    bench->add_option("--out", bench_args.out, "CSV report path")->capture_default_str();
    bench->add_option("--schedule", bench_args.schedule,
                      "Step count source: nominal (injected density) or auto (estimate)")
        ->check(CLI::IsMember({"nominal", "auto"}))
        ->capture_default_str();
    bench->add_option("--iterations", bench_args.iterations, "Fixed number of steps")
        ->check(CLI::PositiveNumber);
    bench->add_option("--salt-fraction", bench_args.salt_fraction)->check(CLI::Range(0.0, 1.0));
    bench->add_option("--workers", bench_args.workers, "Threads per step (0 = all)");
    bench->add_flag("--quiet", bench_args.quiet, "Suppress per-row progress");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (add_noise->parsed()) return cmd_add_noise(noise_args);
        if (den->parsed()) return cmd_denoise(denoise_args);
        if (met->parsed()) return cmd_metrics(metrics_ref, metrics_out);
        if (bench->parsed()) return cmd_benchmark(bench_args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    }
    return kUsage;
}
