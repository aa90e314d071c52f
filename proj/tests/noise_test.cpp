#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cadenoise/noise.hpp"
#include "oracles.hpp"

using namespace cadenoise;

namespace {

GrayImage gradient(std::size_t w, std::size_t h)
{
    GrayImage img(w, h);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < w; ++j) img(i, j) = static_cast<Intensity>(1 + (i * 7 + j * 3) % 254);
    return img;
}

} // namespace

TEST(AddSaltPepper, ZeroDensityIsIdentity)
{
    const GrayImage img = gradient(37, 23);
    EXPECT_EQ(add_salt_pepper(img, {0.0, 0.5, 99}), img);
}

TEST(AddSaltPepper, FullDensityLeavesOnlyExtremes)
{
    const GrayImage out = add_salt_pepper(gradient(40, 40), {1.0, 0.5, 3});
    for (auto v : out.pixels()) EXPECT_TRUE(v == 0 || v == 255);
}

TEST(AddSaltPepper, SaltFractionSelectsPolarity)
{
    const GrayImage img = gradient(16, 16);
    const GrayImage salt = add_salt_pepper(img, {1.0, 1.0, 1});
    const GrayImage pepper = add_salt_pepper(img, {1.0, 0.0, 1});
    for (auto v : salt.pixels()) EXPECT_EQ(v, 255);
    for (auto v : pepper.pixels()) EXPECT_EQ(v, 0);
}

TEST(AddSaltPepper, CorruptedCountMatchesBinomial)
{
    const GrayImage img = gradient(256, 256);
    const GrayImage out = add_salt_pepper(img, {0.3, 0.5, 2024});
    std::size_t changed = 0;
    for (std::size_t k = 0; k < img.size(); ++k) changed += img.pixels()[k] != out.pixels()[k];
    // mean 0.3 * 65536 = 19660.8, sd = sqrt(65536 * 0.3 * 0.7) = 117.3
    const double sd = std::sqrt(65536 * 0.3 * 0.7);
    EXPECT_NEAR(static_cast<double>(changed), 19660.8, 4 * sd);
}

TEST(AddSaltPepper, DeterministicAndSeedSensitive)
{
    const GrayImage img = gradient(64, 48);
    const NoiseSpec spec{0.4, 0.5, 77};
    EXPECT_EQ(add_salt_pepper(img, spec), add_salt_pepper(img, spec));
    EXPECT_NE(add_salt_pepper(img, spec), add_salt_pepper(img, {0.4, 0.5, 78}));
}

TEST(AddSaltPepper, OnlyTouchedPixelsChangeAndBecomeExtreme)
{
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 100; ++trial) {
        const GrayImage img = oracle::random_image(gen, 1 + gen() % 30, 1 + gen() % 30, 0.2);
        const double d = (gen() % 101) / 100.0;
        const GrayImage out = add_salt_pepper(img, {d, 0.5, gen()});
        for (std::size_t k = 0; k < img.size(); ++k) {
            if (img.pixels()[k] != out.pixels()[k]) {
                EXPECT_TRUE(out.pixels()[k] == 0 || out.pixels()[k] == 255);
            }
        }
    }
}

TEST(AddSaltPepper, RejectsInvalidSpec)
{
    const GrayImage img(4, 4, 100);
    EXPECT_THROW(add_salt_pepper(img, {1.1, 0.5, 0}), std::invalid_argument);
    EXPECT_THROW(add_salt_pepper(img, {-0.1, 0.5, 0}), std::invalid_argument);
    EXPECT_THROW(add_salt_pepper(img, {0.5, 1.5, 0}), std::invalid_argument);
}

TEST(EstimateNoiseDensity, CountsExtremes)
{
    EXPECT_EQ(estimate_noise_density(gradient(20, 20)), 0.0);
    EXPECT_EQ(estimate_noise_density(GrayImage(5, 5, 0)), 1.0);
    EXPECT_EQ(estimate_noise_density(GrayImage(2, 2, {0, 100, 255, 100})), 0.5);
}

TEST(IterationsFor, Examples)
{
    EXPECT_EQ(iterations_for(0.0), 1);
    EXPECT_EQ(iterations_for(0.9), 10);
    EXPECT_EQ(iterations_for(0.35), 4);
    EXPECT_EQ(iterations_for(1.0), 11);
}

TEST(IterationsFor, TenthsLandOnTheirOwnStep)
{
    for (int n = 0; n <= 10; ++n) EXPECT_EQ(iterations_for(n / 10.0), n + 1) << n;
    EXPECT_EQ(iterations_for(0.7), 8);
    EXPECT_EQ(iterations_for(0.29), 3);
}

TEST(IterationsFor, MonotoneAndBounded)
{
    int previous = 0;
    for (int k = 0; k <= 10000; ++k) {
        const int n = iterations_for(k / 10000.0);
        EXPECT_GE(n, previous);
        EXPECT_GE(n, 1);
        EXPECT_LE(n, 11);
        previous = n;
    }
    EXPECT_THROW(iterations_for(1.5), std::invalid_argument);
}
