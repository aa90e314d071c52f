#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "cadenoise/baseline.hpp"
#include "oracles.hpp"

using namespace cadenoise;

TEST(MedianFilter, ConstantInterior)
{
    EXPECT_EQ(median_filter_3x3(GrayImage(5, 5, 80))(2, 2), 80);
}

TEST(MedianFilter, FifthOrderStatistic)
{
    const GrayImage img(3, 3, {0, 255, 0, 255, 0, 255, 0, 255, 0});
    EXPECT_EQ(median_filter_3x3(img)(1, 1), 0);
}

TEST(MedianFilter, IncludesCentre)
{
    const GrayImage img(3, 3, {10, 20, 30, 40, 50, 60, 70, 80, 90});
    const GrayImage out = median_filter_3x3(img);
    EXPECT_EQ(out(1, 1), 50);
    // Corner window: five boundary zeros plus {10, 20, 40, 50} -> median 0.
    EXPECT_EQ(out(0, 0), 0);
}

TEST(MedianFilter, OutputComesFromWindowAndIsWorkerIndependent)
{
    std::mt19937_64 gen(8);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t w = 1 + gen() % 25, h = 1 + gen() % 25;
        const GrayImage img = oracle::random_image(gen, w, h, 0.4);
        const GrayImage out = median_filter_3x3(img, 1);
        EXPECT_EQ(median_filter_3x3(img, 4), out);
        const auto p = oracle::padded(img);
        for (std::size_t i = 0; i < h; ++i) {
            for (std::size_t j = 0; j < w; ++j) {
                std::vector<int> win;
                for (int di = 0; di < 3; ++di)
                    for (int dj = 0; dj < 3; ++dj) win.push_back(p[i + di][j + dj]);
                std::sort(win.begin(), win.end());
                ASSERT_EQ(out(i, j), win[4]);
            }
        }
    }
}
