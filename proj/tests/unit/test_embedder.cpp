#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace cdmawm;

namespace {

Plane pattern_plane(const PnPattern& p, double scale = 1.0)
{
    Plane out(p.rows(), p.cols());
    for (std::size_t i = 0; i < out.size(); ++i)
        out.values()[i] = scale * p.values()[i];
    return out;
}

int max_pixel_deviation(const RasterImage& a, const RasterImage& b)
{
    int worst = 0;
    for (std::size_t c = 0; c < RasterImage::kChannels; ++c)
        for (std::size_t i = 0; i < a.pixel_count(); ++i)
            worst = std::max(worst, std::abs(int(a.channel(c)[i]) - int(b.channel(c)[i])));
    return worst;
}

} // namespace

TEST(Embedder, QuantizeRoundsMagnitudeAndKeepsSign)
{
    Plane m(1, 1);
    m(0, 0) = -3.7;
    const QuantizedSubband q = quantize_abs(m, 1.0);
    EXPECT_EQ(q.magnitude(0, 0), 4.0);
    EXPECT_EQ(q.sign(0, 0), -1);
    EXPECT_EQ(q.signed_values()(0, 0), -4.0);
}

TEST(Embedder, QuantizeZeroHasPositiveSign)
{
    for (double step : {0.5, 1.0, 7.0}) {
        const QuantizedSubband q = quantize_abs(Plane(1, 1, 0.0), step);
        EXPECT_EQ(q.magnitude(0, 0), 0.0);
        EXPECT_EQ(q.sign(0, 0), 1);
    }
}

TEST(Embedder, QuantizeRoundsHalfAwayFromZero)
{
    Plane m(1, 4);
    m(0, 0) = 2.49;
    m(0, 1) = 2.51;
    m(0, 2) = 2.5;
    m(0, 3) = -0.5;
    const QuantizedSubband q = quantize_abs(m, 1.0);
    EXPECT_EQ(q.magnitude(0, 0), 2.0);
    EXPECT_EQ(q.magnitude(0, 1), 3.0);
    EXPECT_EQ(q.magnitude(0, 2), 3.0);
    EXPECT_EQ(q.magnitude(0, 3), 1.0);
    EXPECT_EQ(quantize_abs(Plane(1, 1, 5.1), 2.0).magnitude(0, 0), 6.0);
    EXPECT_THROW(quantize_abs(m, 0.0), Error);
}

TEST(Embedder, OnesLeaveSubbandUnchanged)
{
    std::mt19937_64 rng(1);
    const Plane sb = testkit::random_plane(16, 16, rng);
    const BitSequence ones(std::vector<std::uint8_t>(4, 1));
    EXPECT_EQ(embed_subband(sb, ones, WatermarkKey(7), 1.5), sb);
}

TEST(Embedder, SingleZeroBitAddsScaledPattern)
{
    const WatermarkKey key(7);
    const BitSequence bits(std::vector<std::uint8_t>{0});
    const Plane out = embed_subband(Plane(16, 16), bits, key, 1.25);
    EXPECT_EQ(out, pattern_plane(pn_pattern(key, 0, 16, 16, 1), 1.25));
}

TEST(Embedder, TwoZeroBitsSuperpose)
{
    const WatermarkKey key(99);
    const std::size_t rows = 64, cols = 64;
    const BitSequence bits(std::vector<std::uint8_t>{0, 0});
    const Plane out = embed_subband(Plane(rows, cols), bits, key, 1.0);
    const PnPattern p0 = pn_pattern(key, 0, rows, cols, 2);
    const PnPattern p1 = pn_pattern(key, 1, rows, cols, 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        ASSERT_EQ(out.values()[i], double(p0.values()[i] + p1.values()[i]));

    const Plane single = pattern_plane(p0);
    const Plane reference = pattern_plane(p0);
    const double rho_single = pearson(single.values(), reference.values());
    const double rho_pair = pearson(out.values(), reference.values());
    EXPECT_NEAR(rho_single, 1.0, 1e-12);
    EXPECT_NEAR(rho_pair / rho_single, 1.0 / std::sqrt(2.0), 0.03);
}

TEST(Embedder, SpreadSignalRejectsLengthMismatch)
{
    const PatternSchedule schedule(WatermarkKey(1), 4, 8, 8);
    EXPECT_THROW(spread_signal(BitSequence(std::vector<std::uint8_t>(3, 0)), schedule, 1.0), Error);
}

TEST(Embedder, VanishingGainEqualsQuantizationOnly)
{
    const RasterImage& host = testkit::fixture("astronaut");
    const WatermarkImage mark = text_mark();

    YuvImage yuv = rgb_to_yuv(host);
    SubbandSet sb = dwt2_level1(yuv.y);
    sb.hl = quantize_abs(sb.hl, 1.0).signed_values();
    sb.lh = quantize_abs(sb.lh, 1.0).signed_values();
    yuv.y = idwt2(sb);
    const RasterImage quantized_only = yuv_to_rgb(yuv);

    const RasterImage marked = embed(host, mark, WatermarkKey(123456789), {1e-12, 1.0}).image;
    EXPECT_LE(max_pixel_deviation(marked, quantized_only), 1);

    const RasterImage nearly_identity = embed(host, mark, WatermarkKey(123456789), {1e-12, 1e-9}).image;
    EXPECT_LE(max_pixel_deviation(nearly_identity, host), 1);
}

TEST(Embedder, IsDeterministic)
{
    const RasterImage& host = testkit::fixture("gravel");
    const WatermarkImage mark = text_mark();
    const auto a = embed(host, mark, WatermarkKey(5), {1.0, 1.0}).image;
    const auto b = embed(host, mark, WatermarkKey(5), {1.0, 1.0}).image;
    EXPECT_EQ(a, b);
    EXPECT_NE(a, embed(host, mark, WatermarkKey(6), {1.0, 1.0}).image);
}

TEST(Embedder, CapacityGuard)
{
    EXPECT_EQ(capacity(256, 256), 1024u);
    EXPECT_GE(capacity(256, 256), 960u);

    std::mt19937_64 rng(4);
    const RasterImage small = testkit::random_image(64, 64, rng); // 32x32 subbands, 16 bits
    try {
        embed(small, text_mark(), WatermarkKey(1), {});
        FAIL() << "expected WatermarkTooLarge";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::WatermarkTooLarge);
    }
    EXPECT_NO_THROW(embed(small, WatermarkImage(4, 4), WatermarkKey(1), {}));
}

TEST(Embedder, RejectsOddHost)
{
    std::mt19937_64 rng(4);
    try {
        embed(testkit::random_image(64, 63, rng), WatermarkImage(2, 2), WatermarkKey(1), {});
        FAIL() << "expected OddDimensions";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::OddDimensions);
    }
}

TEST(Embedder, ParameterValidation)
{
    EXPECT_THROW((EmbedParams{0.0, 1.0}.validate()), Error);
    EXPECT_THROW((EmbedParams{-1.0, 1.0}.validate()), Error);
    EXPECT_THROW((EmbedParams{1.0, 0.0}.validate()), Error);
    EXPECT_THROW((EmbedParams{std::nan(""), 1.0}.validate()), Error);
    EXPECT_NO_THROW((EmbedParams{0.5, 2.0}.validate()));
}

TEST(Embedder, DescriptorRoundTrip)
{
    const EmbedDescriptor d{WatermarkKey(123), {1.5, 2.0}, 15, 64};
    const nlohmann::json j = d.to_json();
    EXPECT_EQ(j.at("wavelet"), "cdf97");
    EXPECT_EQ(j.at("subbands"), nlohmann::json({"HL", "LH"}));
    const EmbedDescriptor back = EmbedDescriptor::from_json(j);
    EXPECT_EQ(back.key, d.key);
    EXPECT_EQ(back.params.gain, 1.5);
    EXPECT_EQ(back.params.quant_step, 2.0);
    EXPECT_EQ(back.mark_rows, 15u);
    EXPECT_EQ(back.mark_cols, 64u);
}

TEST(Embedder, OnlyDetailSubbandsChange)
{
    std::mt19937_64 rng(8);
    const Plane y = testkit::random_plane(64, 64, rng, 0.0, 255.0);
    const SubbandSet before = dwt2_level1(y);
    const SubbandSet after = dwt2_level1(embed_luma(y, WatermarkImage(4, 4), WatermarkKey(3), {1.0, 1.0}));
    for (std::size_t i = 0; i < before.ll.size(); ++i) {
        ASSERT_NEAR(after.ll.values()[i], before.ll.values()[i], 1e-9);
        ASSERT_NEAR(after.hh.values()[i], before.hh.values()[i], 1e-9);
    }
}
