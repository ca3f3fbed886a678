#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace cdmawm;

namespace {

std::vector<std::uint8_t> stream_prefix(WatermarkKey key, std::size_t n)
{
    std::vector<std::uint8_t> out(n);
    Keystream(key).read_bits(0, out);
    return out;
}

double pattern_correlation(const PnPattern& a, const PnPattern& b)
{
    std::vector<double> x(a.values().begin(), a.values().end());
    std::vector<double> y(b.values().begin(), b.values().end());
    return pearson(x, y);
}

} // namespace

TEST(Codec, ImageToBitsIsRowMajor)
{
    const WatermarkImage w(2, 2, {1, 0, 0, 1});
    EXPECT_EQ(image_to_bits(w).to_string(), "1001");
    const WatermarkImage zeros(15, 64);
    const BitSequence bits = image_to_bits(zeros);
    EXPECT_EQ(bits.size(), 960u);
    EXPECT_EQ(bits.to_string(), std::string(960, '0'));
}

TEST(Codec, BitsToImageRestoresShape)
{
    const WatermarkImage w = bits_to_image(BitSequence::from_string("1001"), 2, 2);
    EXPECT_EQ(w.at(0, 0), 1);
    EXPECT_EQ(w.at(0, 1), 0);
    EXPECT_EQ(w.at(1, 0), 0);
    EXPECT_EQ(w.at(1, 1), 1);
    EXPECT_EQ(bits_to_image(BitSequence(std::vector<std::uint8_t>(960, 0)), 15, 64), WatermarkImage(15, 64));
}

TEST(Codec, BitsToImageRejectsWrongLength)
{
    try {
        bits_to_image(BitSequence(std::vector<std::uint8_t>(959, 0)), 15, 64);
        FAIL() << "expected LengthMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::LengthMismatch);
    }
}

TEST(Codec, BitSequenceValidation)
{
    EXPECT_THROW(BitSequence(std::vector<std::uint8_t>{}), Error);
    EXPECT_THROW(BitSequence(std::vector<std::uint8_t>{0, 2}), Error);
    EXPECT_THROW(BitSequence::from_string("01x"), Error);
    EXPECT_EQ(BitSequence::from_string("0110").to_string(), "0110");
}

TEST(Codec, KeyRange)
{
    EXPECT_NO_THROW(WatermarkKey(999'999'999));
    try {
        WatermarkKey(1'000'000'000);
        FAIL() << "expected KeyOutOfRange";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::KeyOutOfRange);
    }
    EXPECT_EQ(WatermarkKey::parse("123456789").value(), 123456789u);
    EXPECT_EQ(WatermarkKey::parse("000000042").value(), 42u);
    EXPECT_THROW(WatermarkKey::parse("1000000000"), Error);
    EXPECT_THROW(WatermarkKey::parse("12a"), Error);
    EXPECT_THROW(WatermarkKey::parse("-5"), Error);
    EXPECT_THROW(WatermarkKey::parse(""), Error);
}

TEST(Codec, KeystreamIsDeterministic)
{
    EXPECT_EQ(stream_prefix(WatermarkKey(123456789), 4096), stream_prefix(WatermarkKey(123456789), 4096));
}

TEST(Codec, KeystreamMatchesSequentialGenerator)
{
    const WatermarkKey key(987654321);
    SplitMix64 gen{key.value()};
    const Keystream stream(key);
    for (std::uint64_t j = 0; j < 100; ++j)
        ASSERT_EQ(stream.word(j), gen());

    // Random access at unaligned offsets agrees with the bitwise definition.
    std::vector<std::uint8_t> chunk(200);
    stream.read_bits(77, chunk);
    for (std::size_t i = 0; i < chunk.size(); ++i)
        EXPECT_EQ(chunk[i], stream.bit(77 + i) ? 1 : 0);
}

TEST(Codec, NeighbouringKeysDecorrelate)
{
    const auto a = stream_prefix(WatermarkKey(123456789), 10000);
    const auto b = stream_prefix(WatermarkKey(123456788), 10000);
    std::size_t diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        diff += a[i] != b[i];
    EXPECT_GE(diff, 4000u);
}

TEST(Codec, EncryptingZerosYieldsKeystream)
{
    const WatermarkKey key(55555);
    const BitSequence zeros(std::vector<std::uint8_t>(960, 0));
    const BitSequence w1 = encrypt_watermark(zeros, key);
    EXPECT_EQ(w1, PatternSchedule(key, 960, 256, 256).encryption_sequence());
}

TEST(Codec, EncryptionIsInvolution)
{
    std::mt19937_64 rng(1000);
    std::uniform_int_distribution<std::uint64_t> keys(0, WatermarkKey::kMax);
    std::uniform_int_distribution<std::size_t> lengths(1, 2000);
    for (int trial = 0; trial < 1000; ++trial) {
        const BitSequence w = testkit::random_bits(lengths(rng), rng);
        const WatermarkKey key(keys(rng));
        ASSERT_EQ(encrypt_watermark(encrypt_watermark(w, key), key), w);
    }
}

TEST(Codec, DifferentKeysGiveUnrelatedCiphertexts)
{
    std::mt19937_64 rng(200);
    std::uniform_int_distribution<std::uint64_t> keys(0, WatermarkKey::kMax);
    const std::size_t n = 960;
    const double tolerance = 3.0 * std::sqrt(static_cast<double>(n));
    for (int trial = 0; trial < 100; ++trial) {
        const BitSequence w = testkit::random_bits(n, rng);
        const WatermarkKey k1(keys(rng)), k2(keys(rng));
        const auto d = hamming(encrypt_watermark(w, k1).bits(), encrypt_watermark(w, k2).bits());
        EXPECT_NEAR(static_cast<double>(d), n / 2.0, tolerance);
    }
}

TEST(Codec, PatternIsDeterministicAndBalanced)
{
    const WatermarkKey key(424242);
    const PnPattern a = pn_pattern(key, 3, 256, 256, 960);
    EXPECT_EQ(a, pn_pattern(key, 3, 256, 256, 960));
    double sum = 0.0;
    for (auto v : a.values()) {
        ASSERT_TRUE(v == 1 || v == -1);
        sum += v;
    }
    const double mean = sum / static_cast<double>(a.size());
    EXPECT_GE(mean, -0.02);
    EXPECT_LE(mean, 0.02);
}

TEST(Codec, PatternsAreNearlyOrthogonal)
{
    const PatternSchedule schedule(WatermarkKey(123456789), 960, 256, 256);
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<std::size_t> index(0, 959);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t i = index(rng);
        std::size_t j = index(rng);
        if (j == i)
            j = (i + 1) % 960;
        EXPECT_LT(std::abs(pattern_correlation(schedule.pattern(i), schedule.pattern(j))), 0.02);
    }
}

TEST(Codec, PatternsFollowEncryptionBitsInStream)
{
    const WatermarkKey key(31337);
    const std::size_t n = 12, rows = 8, cols = 8;
    const PatternSchedule schedule(key, n, rows, cols);
    const Keystream stream(key);
    const PnPattern p = schedule.pattern(5);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            EXPECT_EQ(p.at(r, c), stream.bit(n + 5 * rows * cols + r * cols + c) ? 1 : -1);
    EXPECT_THROW(schedule.pattern(n), Error);
}
