#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "cadenoise/io.hpp"
#include "oracles.hpp"

using namespace cadenoise;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "cadenoise_io_test";
    fs::create_directories(dir);
    return dir / name;
}

std::vector<unsigned char> bytes_of(const std::string& s)
{
    return {s.begin(), s.end()};
}

} // namespace

TEST(Pgm, DecodesHeaderWithComments)
{
    auto bytes = bytes_of("P5\n# a comment\n3 2\n# another\n255\n");
    for (unsigned char v : {1, 2, 3, 4, 5, 255}) bytes.push_back(v);
    const GrayImage img = decode_pgm(bytes);
    EXPECT_EQ(img.width(), 3u);
    EXPECT_EQ(img.height(), 2u);
    EXPECT_EQ(img(1, 2), 255);
}

TEST(Pgm, PayloadRoundTripIsByteExact)
{
    std::mt19937_64 gen(1);
    const GrayImage img = oracle::random_image(gen, 17, 9, 0.5);
    const auto encoded = encode_pgm(img);
    EXPECT_EQ(decode_pgm(encoded), img);
    EXPECT_EQ(encode_pgm(decode_pgm(encoded)), encoded);
}

TEST(Pgm, RejectsMalformedInput)
{
    EXPECT_THROW(decode_pgm(bytes_of("P2\n1 1\n255\n")), DataError);
    EXPECT_THROW(decode_pgm(bytes_of("P5\n2 2\n65535\n")), DataError);
    EXPECT_THROW(decode_pgm(bytes_of("P5\n2 2\n255\n\x01\x02")), DataError);
    EXPECT_THROW(decode_pgm(bytes_of("P5\nx 2\n255\n")), DataError);
    EXPECT_THROW(decode_pgm(bytes_of("P5\n0 2\n255\n")), DataError);
}

TEST(Png, GrayAndRgbRoundTrip)
{
    std::mt19937_64 gen(2);
    const GrayImage g = oracle::random_image(gen, 13, 7, 0.3);
    const PlanarImage gray{{g}};
    const fs::path p1 = temp_file("gray.png");
    write_image(p1, gray);
    const PlanarImage back = read_image(p1);
    ASSERT_TRUE(back.is_gray());
    EXPECT_EQ(back.channels[0], g);

    const PlanarImage rgb{{g, oracle::random_image(gen, 13, 7, 0.3), oracle::random_image(gen, 13, 7, 0.3)}};
    const fs::path p2 = temp_file("rgb.png");
    write_image(p2, rgb);
    const PlanarImage back_rgb = read_image(p2);
    ASSERT_EQ(back_rgb.channels.size(), 3u);
    for (int c = 0; c < 3; ++c) EXPECT_EQ(back_rgb.channels[c], rgb.channels[c]);
}

TEST(ReadImage, ErrorsAreClassified)
{
    EXPECT_THROW(read_image(temp_file("does-not-exist.pgm")), IoError);

    const fs::path jpg = temp_file("fake.jpg");
    std::ofstream(jpg, std::ios::binary) << "\xff\xd8\xff\xe0 not really";
    EXPECT_THROW(read_image(jpg), DataError);

    const fs::path junk = temp_file("junk.bin");
    std::ofstream(junk, std::ios::binary) << "hello";
    EXPECT_THROW(read_image(junk), DataError);

    EXPECT_THROW(write_image(temp_file("out.bmp"), PlanarImage{{GrayImage(2, 2)}}), DataError);
    EXPECT_THROW(write_image(temp_file("out.pgm"), PlanarImage{{GrayImage(2, 2), GrayImage(2, 2), GrayImage(2, 2)}}),
                 DataError);
}

TEST(ToGrayscale, Rec601Luma)
{
    const PlanarImage rgb{{GrayImage(1, 1, {255}), GrayImage(1, 1, {0}), GrayImage(1, 1, {0})}};
    EXPECT_EQ(to_grayscale(rgb)(0, 0), 76); // 0.299 * 255 = 76.2
    const PlanarImage white{{GrayImage(1, 1, {255}), GrayImage(1, 1, {255}), GrayImage(1, 1, {255})}};
    EXPECT_EQ(to_grayscale(white)(0, 0), 255);
}
