#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace cdmawm {

// Nine-decimal-digit owner key. It is the only secret: it seeds the stream
// that both encrypts the mark and generates the spreading patterns.
class WatermarkKey {
public:
    static constexpr std::uint64_t kMax = 999'999'999;

    explicit WatermarkKey(std::uint64_t value) : value_(value)
    {
        if (value > kMax)
            throw Error(ErrorKind::KeyOutOfRange,
                        std::to_string(value) + " exceeds " + std::to_string(kMax));
    }

    // Accepts 1 to 9 decimal digits (leading zeros allowed).
    static WatermarkKey parse(std::string_view text)
    {
        if (text.empty() || text.size() > 9)
            throw Error(ErrorKind::KeyOutOfRange, "key must have 1 to 9 decimal digits");
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw Error(ErrorKind::InvalidArgument, "key is not a decimal number: " + std::string(text));
        return WatermarkKey(v);
    }

    std::uint64_t value() const noexcept { return value_; }
    friend bool operator==(const WatermarkKey&, const WatermarkKey&) = default;

private:
    std::uint64_t value_;
};

// Ordered run of 0/1 values.
class BitSequence {
public:
    BitSequence() = default;
    explicit BitSequence(std::vector<std::uint8_t> bits) : bits_(std::move(bits))
    {
        if (bits_.empty())
            throw Error(ErrorKind::InvalidArgument, "bit sequence must be non-empty");
        for (auto b : bits_)
            if (b > 1)
                throw Error(ErrorKind::InvalidArgument, "bit values must be 0 or 1");
    }

    std::size_t size() const noexcept { return bits_.size(); }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    std::string to_string() const
    {
        std::string s(bits_.size(), '0');
        for (std::size_t i = 0; i < bits_.size(); ++i)
            s[i] = bits_[i] ? '1' : '0';
        return s;
    }

    static BitSequence from_string(std::string_view s)
    {
        std::vector<std::uint8_t> bits;
        bits.reserve(s.size());
        for (char ch : s) {
            if (ch != '0' && ch != '1')
                throw Error(ErrorKind::InvalidArgument, "bit string may only contain 0 and 1");
            bits.push_back(static_cast<std::uint8_t>(ch - '0'));
        }
        return BitSequence(std::move(bits));
    }

    friend bool operator==(const BitSequence&, const BitSequence&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

// Binary mark image, row-major. Default shape is 15x64 (960 bits).
class WatermarkImage {
public:
    static constexpr std::size_t kDefaultRows = 15;
    static constexpr std::size_t kDefaultCols = 64;

    WatermarkImage() = default;
    WatermarkImage(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> bits)
        : rows_(rows), cols_(cols), bits_(std::move(bits))
    {
        if (rows == 0 || cols == 0)
            throw Error(ErrorKind::InvalidArgument, "watermark shape must be positive");
        if (bits_.size() != rows * cols)
            throw Error(ErrorKind::LengthMismatch, "watermark data does not match its shape");
        for (auto b : bits_)
            if (b > 1)
                throw Error(ErrorKind::InvalidArgument, "watermark entries must be 0 or 1");
    }
    WatermarkImage(std::size_t rows, std::size_t cols)
        : WatermarkImage(rows, cols, std::vector<std::uint8_t>(rows * cols, 0))
    {
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return bits_.size(); }
    std::uint8_t at(std::size_t r, std::size_t c) const { return bits_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, bool v) { bits_[r * cols_ + c] = v ? 1 : 0; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    friend bool operator==(const WatermarkImage&, const WatermarkImage&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> bits_;
};

inline BitSequence image_to_bits(const WatermarkImage& w)
{
    return BitSequence(std::vector<std::uint8_t>(w.bits().begin(), w.bits().end()));
}

inline WatermarkImage bits_to_image(const BitSequence& b, std::size_t rows, std::size_t cols)
{
    if (b.size() != rows * cols)
        throw Error(ErrorKind::LengthMismatch, std::to_string(b.size()) + " bits cannot fill a " +
                                                   std::to_string(rows) + "x" + std::to_string(cols) +
                                                   " mark");
    return WatermarkImage(rows, cols, std::vector<std::uint8_t>(b.bits().begin(), b.bits().end()));
}

// SplitMix64 (Steele, Lea & Flood). Output j is mix(seed + (j + 1) * gamma),
// so any word of the stream can be computed without generating its prefix.
struct SplitMix64 {
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state;

    constexpr std::uint64_t operator()() noexcept
    {
        state += kGamma;
        return mix(state);
    }
};

// The keyed bit stream. Bit t is bit (t % 64), least significant first, of
// word t / 64. Words are SplitMix64 outputs seeded with the raw key value.
class Keystream {
public:
    explicit Keystream(WatermarkKey key) : seed_(key.value()) {}

    std::uint64_t word(std::uint64_t index) const noexcept
    {
        return SplitMix64::mix(seed_ + (index + 1) * SplitMix64::kGamma);
    }

    bool bit(std::uint64_t t) const noexcept { return (word(t / 64) >> (t % 64)) & 1U; }

    // Writes bits [offset, offset + out.size()) as 0/1 bytes.
    void read_bits(std::uint64_t offset, std::span<std::uint8_t> out) const
    {
        std::size_t i = 0;
        std::uint64_t t = offset;
        while (i < out.size()) {
            const std::uint64_t w = word(t / 64);
            for (unsigned b = static_cast<unsigned>(t % 64); b < 64 && i < out.size(); ++b, ++i, ++t)
                out[i] = static_cast<std::uint8_t>((w >> b) & 1U);
        }
    }

private:
    std::uint64_t seed_;
};

// {-1,+1} spreading pattern for one watermark bit.
class PnPattern {
public:
    PnPattern(std::size_t rows, std::size_t cols, std::vector<std::int8_t> values)
        : rows_(rows), cols_(cols), values_(std::move(values))
    {
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::int8_t at(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
    std::span<const std::int8_t> values() const noexcept { return values_; }

    friend bool operator==(const PnPattern&, const PnPattern&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::int8_t> values_;
};

// Fixed consumption order of the keystream for an n-bit mark embedded in
// rows x cols subbands: bits [0, n) are the encryption sequence R, then
// pattern i occupies bits [n + i*rows*cols, n + (i+1)*rows*cols) in row-major
// order (stream bit 1 -> +1, 0 -> -1). Every position is computed directly,
// so patterns can be generated in any order or in parallel.
class PatternSchedule {
public:
    PatternSchedule(WatermarkKey key, std::size_t sequence_length, std::size_t rows, std::size_t cols)
        : stream_(key), n_(sequence_length), rows_(rows), cols_(cols)
    {
        if (sequence_length == 0 || rows == 0 || cols == 0)
            throw Error(ErrorKind::InvalidArgument, "pattern schedule needs a positive length and shape");
    }

    std::size_t sequence_length() const noexcept { return n_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    BitSequence encryption_sequence() const
    {
        std::vector<std::uint8_t> r(n_);
        stream_.read_bits(0, r);
        return BitSequence(std::move(r));
    }

    // Pattern entries as 0/1 (1 means +1); cheaper than PnPattern for bulk use.
    void pattern_bits(std::size_t bit_index, std::span<std::uint8_t> out) const
    {
        check_index(bit_index);
        stream_.read_bits(n_ + static_cast<std::uint64_t>(bit_index) * rows_ * cols_, out);
    }

    PnPattern pattern(std::size_t bit_index) const
    {
        std::vector<std::uint8_t> raw(rows_ * cols_);
        pattern_bits(bit_index, raw);
        std::vector<std::int8_t> values(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i)
            values[i] = raw[i] ? 1 : -1;
        return PnPattern(rows_, cols_, std::move(values));
    }

private:
    void check_index(std::size_t i) const
    {
        if (i >= n_)
            throw Error(ErrorKind::InvalidArgument,
                        "bit index " + std::to_string(i) + " outside sequence of " + std::to_string(n_));
    }

    Keystream stream_;
    std::size_t n_;
    std::size_t rows_;
    std::size_t cols_;
};

inline PnPattern pn_pattern(WatermarkKey key, std::size_t bit_index, std::size_t rows, std::size_t cols,
                            std::size_t sequence_length)
{
    return PatternSchedule(key, sequence_length, rows, cols).pattern(bit_index);
}

// W1 = W xor R. Applying it twice with the same key restores W.
inline BitSequence encrypt_watermark(const BitSequence& w, WatermarkKey key)
{
    std::vector<std::uint8_t> r(w.size());
    Keystream(key).read_bits(0, r);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] ^= w[i];
    return BitSequence(std::move(r));
}

} // namespace cdmawm
