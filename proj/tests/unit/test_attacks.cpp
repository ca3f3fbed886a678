#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace cdmawm;

TEST(Attacks, JpegOnMidGrayIsNearlyLossless)
{
    const RasterImage gray(64, 48, 128);
    for (int q : {1, 10, 50, 75, 100}) {
        const RasterImage out = jpeg_attack(gray, q);
        ASSERT_TRUE(out.same_size(gray));
        for (std::size_t c = 0; c < RasterImage::kChannels; ++c)
            for (auto s : out.channel(c))
                ASSERT_LE(std::abs(int(s) - 128), 1) << "Q=" << q;
    }
}

TEST(Attacks, JpegErrorShrinksWithQuality)
{
    for (const auto& name : testkit::fixture_names()) {
        const RasterImage& img = testkit::fixture(name);
        EXPECT_GE(mse(img, jpeg_attack(img, 10)), mse(img, jpeg_attack(img, 75))) << name;
    }
}

TEST(Attacks, JpegKeepsMarkAtModerateQuality)
{
    const RasterImage& host = testkit::fixture("astronaut");
    const WatermarkImage mark = text_mark();
    const WatermarkKey key(123456789);
    const RasterImage marked = embed(host, mark, key, {1.0, 1.0}).image;
    ExtractReport r = extract(jpeg_attack(marked, 50), key, 15, 64);
    r.score_against(mark);
    EXPECT_GE(*r.nc, 0.95);
}

TEST(Attacks, JpegRejectsBadQuality)
{
    const RasterImage img(16, 16, 0);
    EXPECT_THROW(jpeg_attack(img, 0), Error);
    EXPECT_THROW(jpeg_attack(img, 101), Error);
    EXPECT_NE(jpeg_codec_description().find("OpenCV"), std::string::npos);
}

TEST(Attacks, GaussianZeroVarianceIsIdentity)
{
    const RasterImage& img = testkit::fixture("ihc");
    EXPECT_EQ(gaussian_attack(img, 0.0, 3), img);
}

TEST(Attacks, GaussianSampleVarianceMatches)
{
    const RasterImage gray(512, 512, 128);
    const double v = 0.01;
    const RasterImage out = gaussian_attack(gray, v, 17);
    double sum = 0.0, sq = 0.0;
    std::size_t n = 0;
    for (std::size_t c = 0; c < RasterImage::kChannels; ++c)
        for (auto s : out.channel(c)) {
            const double d = (double(s) - 128.0) / 255.0;
            sum += d;
            sq += d * d;
            ++n;
        }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    EXPECT_NEAR(var, v, 0.05 * v);
    EXPECT_NEAR(mean, 0.0, 1e-3);
}

TEST(Attacks, GaussianIsSeeded)
{
    const RasterImage& img = testkit::fixture("gravel");
    EXPECT_EQ(gaussian_attack(img, 0.005, 1), gaussian_attack(img, 0.005, 1));
    EXPECT_NE(gaussian_attack(img, 0.005, 1), gaussian_attack(img, 0.005, 2));
    EXPECT_THROW(gaussian_attack(img, -0.1, 1), Error);
}

TEST(Attacks, SaltPepperZeroDensityIsIdentity)
{
    const RasterImage& img = testkit::fixture("astronaut");
    EXPECT_EQ(salt_pepper_attack(img, 0.0, 5), img);
}

TEST(Attacks, SaltPepperFullDensitySaturatesEverything)
{
    const RasterImage& img = testkit::fixture("astronaut");
    const RasterImage out = salt_pepper_attack(img, 1.0, 5);
    std::size_t white = 0;
    for (std::size_t i = 0; i < out.pixel_count(); ++i) {
        const auto r = out.channel(0)[i], g = out.channel(1)[i], b = out.channel(2)[i];
        ASSERT_TRUE(r == 0 || r == 255);
        ASSERT_TRUE(r == g && g == b);
        white += r == 255;
    }
    EXPECT_NEAR(double(white) / out.pixel_count(), 0.5, 0.01);
}

TEST(Attacks, SaltPepperCountWithinBinomialBound)
{
    const RasterImage gray(512, 512, 128);
    const double d = 0.1;
    const RasterImage out = salt_pepper_attack(gray, d, 9);
    std::size_t changed = 0;
    for (std::size_t i = 0; i < out.pixel_count(); ++i)
        changed += out.channel(0)[i] != 128;
    const double n = 512.0 * 512.0;
    EXPECT_NEAR(double(changed), d * n, 3.0 * std::sqrt(n * d * (1.0 - d)));
}

TEST(Attacks, SaltPepperIsSeededAndValidated)
{
    const RasterImage& img = testkit::fixture("ihc");
    EXPECT_EQ(salt_pepper_attack(img, 0.25, 4), salt_pepper_attack(img, 0.25, 4));
    EXPECT_NE(salt_pepper_attack(img, 0.25, 4), salt_pepper_attack(img, 0.25, 5));
    EXPECT_THROW(salt_pepper_attack(img, 1.5, 1), Error);
    EXPECT_THROW(salt_pepper_attack(img, -0.01, 1), Error);
}

TEST(Attacks, DispatchPreservesDimensions)
{
    std::mt19937_64 rng(3);
    const RasterImage img = testkit::random_image(48, 32, rng);
    for (const AttackSpec& spec :
         {AttackSpec{JpegAttack{30}}, AttackSpec{GaussianAttack{0.01, 2}}, AttackSpec{SaltPepperAttack{0.2, 2}}}) {
        const RasterImage out = apply_attack(img, spec);
        EXPECT_TRUE(out.same_size(img)) << attack_name(spec);
    }
    EXPECT_EQ(attack_name(JpegAttack{}), "jpeg");
    EXPECT_EQ(attack_name(GaussianAttack{}), "gaussian");
    EXPECT_EQ(attack_name(SaltPepperAttack{}), "salt_pepper");
}
