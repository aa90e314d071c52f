#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cadenoise/metrics.hpp"
#include "oracles.hpp"

using namespace cadenoise;

namespace {

GrayImage random_pair_partner(std::mt19937_64& gen, const GrayImage& a)
{
    GrayImage b = a;
    for (auto& v : b.pixels()) {
        const int d = static_cast<int>(gen() % 61) - 30;
        v = static_cast<Intensity>(std::clamp(int(v) + d, 0, 255));
    }
    return b;
}

} // namespace

TEST(Psnr, IdenticalIsInfinite)
{
    const GrayImage img(8, 8, 33);
    EXPECT_TRUE(std::isinf(psnr(img, img)));
    EXPECT_TRUE(evaluate(img, img).psnr_is_infinite());
}

TEST(Psnr, MaximalErrorIsZeroDb)
{
    EXPECT_DOUBLE_EQ(psnr(GrayImage(5, 5, 0), GrayImage(5, 5, 255)), 0.0);
}

TEST(Psnr, SinglePixelOffByOne)
{
    const GrayImage a(2, 2, {10, 10, 10, 10});
    const GrayImage b(2, 2, {11, 10, 10, 10});
    EXPECT_NEAR(psnr(a, b), 54.15140352195873, 1e-12);
}

TEST(Psnr, DimensionMismatchThrows)
{
    EXPECT_THROW(psnr(GrayImage(2, 2), GrayImage(2, 3)), DataError);
    EXPECT_THROW(ssim(GrayImage(12, 12), GrayImage(13, 12)), DataError);
}

TEST(Psnr, StrictlyDecreasingInMse)
{
    const GrayImage ref(10, 10, 100);
    double previous = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 100; ++k) {
        GrayImage b = ref;
        for (int m = 0; m < k; ++m) b.pixels()[m] = 101;
        const double p = psnr(ref, b);
        EXPECT_LT(p, previous);
        previous = p;
    }
}

TEST(Ssim, IdenticalIsExactlyOne)
{
    std::mt19937_64 gen(9);
    for (auto [w, h] : {std::pair{64, 64}, {11, 11}, {5, 30}, {1, 1}}) {
        const GrayImage img = oracle::random_image(gen, w, h, 0.2);
        EXPECT_EQ(ssim(img, img), 1.0);
    }
}

TEST(Ssim, BlackVersusWhiteIsNearZero)
{
    // Constant windows: only the luminance term survives, C1 / (255^2 + C1).
    const double expected = 9.999000099990002e-05;
    EXPECT_NEAR(ssim(GrayImage(32, 32, 0), GrayImage(32, 32, 255)), expected, 1e-15);
    EXPECT_NEAR(ssim(GrayImage(4, 4, 0), GrayImage(4, 4, 255)), expected, 1e-15);
}

TEST(Metrics, SymmetricAndBounded)
{
    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 20; ++trial) {
        const GrayImage a = oracle::random_image(gen, 20 + gen() % 30, 20 + gen() % 30, 0.1);
        const GrayImage b = random_pair_partner(gen, a);
        EXPECT_EQ(psnr(a, b), psnr(b, a));
        EXPECT_EQ(ssim(a, b), ssim(b, a));
        EXPECT_GE(ssim(a, b), -1.0);
        EXPECT_LE(ssim(a, b), 1.0);
    }
}

TEST(Metrics, AgreeWithBruteForceOracle)
{
    std::mt19937_64 gen(4);
    for (int trial = 0; trial < 10; ++trial) {
        const GrayImage a = oracle::random_image(gen, 64, 64, 0.1);
        const GrayImage b = trial % 2 ? random_pair_partner(gen, a) : oracle::random_image(gen, 64, 64, 0.3);
        const double p = psnr(a, b);
        const double s = ssim(a, b);
        EXPECT_LE(std::abs(p - oracle::psnr(a, b)), 1e-9 * std::abs(p));
        EXPECT_LE(std::abs(s - oracle::ssim(a, b)), 1e-9 * std::abs(s));
    }
}
