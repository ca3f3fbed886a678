#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "codec.hpp"
#include "color.hpp"
#include "errors.hpp"
#include "image.hpp"
#include "plane.hpp"
#include "wavelet.hpp"

namespace cdmawm {

struct EmbedParams {
    double gain = 1.0;
    double quant_step = 1.0;

    void validate() const
    {
        if (!(gain > 0.0) || !std::isfinite(gain))
            throw Error(ErrorKind::InvalidArgument, "gain must be a positive number");
        if (!(quant_step > 0.0) || !std::isfinite(quant_step))
            throw Error(ErrorKind::InvalidArgument, "quantization step must be a positive number");
    }
};

class SignMatrix {
public:
    SignMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), values_(rows * cols, 1) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::int8_t& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
    std::int8_t operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
    std::span<const std::int8_t> values() const noexcept { return values_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::int8_t> values_;
};

struct QuantizedSubband {
    Plane magnitude;
    SignMatrix sign;

    // sign * magnitude
    Plane signed_values() const
    {
        Plane out(magnitude.rows(), magnitude.cols());
        auto m = magnitude.values();
        auto s = sign.values();
        auto o = out.values();
        for (std::size_t i = 0; i < o.size(); ++i)
            o[i] = s[i] * m[i];
        return out;
    }
};

// sign = +1 for m >= 0, else -1; magnitude = q * round(|m| / q), rounding
// half away from zero.
inline QuantizedSubband quantize_abs(const Plane& m, double q)
{
    if (!(q > 0.0))
        throw Error(ErrorKind::InvalidArgument, "quantization step must be positive");
    QuantizedSubband out{Plane(m.rows(), m.cols()), SignMatrix(m.rows(), m.cols())};
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const double v = m(r, c);
            out.sign(r, c) = v >= 0.0 ? 1 : -1;
            out.magnitude(r, c) = q * std::round(std::abs(v) / q);
        }
    return out;
}

// gain * sum of PN_i over the bits equal to 0. One pattern per bit, shared by
// every subband that carries the mark.
inline Plane spread_signal(const BitSequence& bits, const PatternSchedule& schedule, double gain)
{
    if (bits.size() != schedule.sequence_length())
        throw Error(ErrorKind::LengthMismatch, "bit count does not match the pattern schedule");
    Plane out(schedule.rows(), schedule.cols());
    auto o = out.values();
    std::vector<std::uint8_t> pattern(o.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != 0)
            continue;
        schedule.pattern_bits(i, pattern);
        for (std::size_t j = 0; j < o.size(); ++j)
            o[j] += gain * (2.0 * pattern[j] - 1.0);
    }
    return out;
}

// sb + gain * sum_{i : bits[i] == 0} PN_i. Bits equal to 1 add nothing.
inline Plane embed_subband(const Plane& sb, const BitSequence& bits, WatermarkKey key, double gain)
{
    if (sb.empty())
        throw Error(ErrorKind::InvalidArgument, "empty subband");
    const Plane spread = spread_signal(bits, PatternSchedule(key, bits.size(), sb.rows(), sb.cols()), gain);
    Plane out = sb;
    auto o = out.values();
    auto s = spread.values();
    for (std::size_t i = 0; i < o.size(); ++i)
        o[i] += s[i];
    return out;
}

// Largest mark a subband of this shape accepts: one bit per 64 coefficients.
inline constexpr std::size_t kCoefficientsPerBit = 64;

inline std::size_t capacity(std::size_t subband_rows, std::size_t subband_cols)
{
    return subband_rows * subband_cols / kCoefficientsPerBit;
}

struct EmbedDescriptor {
    WatermarkKey key{0};
    EmbedParams params;
    std::size_t mark_rows = WatermarkImage::kDefaultRows;
    std::size_t mark_cols = WatermarkImage::kDefaultCols;

    nlohmann::json to_json() const
    {
        return {
            {"key", key.value()},
            {"gain", params.gain},
            {"quant_step", params.quant_step},
            {"wavelet", "cdf97"},
            {"subbands", {"HL", "LH"}},
            {"generator", "splitmix64"},
            {"mark_shape", {mark_rows, mark_cols}},
        };
    }

    static EmbedDescriptor from_json(const nlohmann::json& j)
    {
        EmbedDescriptor d;
        d.key = WatermarkKey(j.at("key").get<std::uint64_t>());
        d.params.gain = j.at("gain").get<double>();
        d.params.quant_step = j.value("quant_step", 1.0);
        if (j.contains("mark_shape")) {
            d.mark_rows = j.at("mark_shape").at(0).get<std::size_t>();
            d.mark_cols = j.at("mark_shape").at(1).get<std::size_t>();
        }
        d.params.validate();
        return d;
    }
};

// Luma-domain core of the embedder. The plane stays real-valued; rounding to
// 8 bits happens only in the final color conversion.
//
// HL and LH are split into quantized magnitudes and sign matrices, the signs
// are put back, and the spreading signal is added on top. Adding after the
// signs are restored keeps the mark linear in the coefficients, so the
// extractor can correlate against sign-restored values and additive noise
// stays additive instead of folding around zero.
inline Plane embed_luma(const Plane& y, const WatermarkImage& w, WatermarkKey key, const EmbedParams& p)
{
    p.validate();
    const BitSequence encrypted = encrypt_watermark(image_to_bits(w), key);

    SubbandSet sb = dwt2_level1(y);
    const std::size_t limit = capacity(sb.rows(), sb.cols());
    if (encrypted.size() > limit)
        throw Error(ErrorKind::WatermarkTooLarge, std::to_string(encrypted.size()) +
                                                      " bits exceed the capacity of " +
                                                      std::to_string(limit));

    const Plane spread =
        spread_signal(encrypted, PatternSchedule(key, encrypted.size(), sb.rows(), sb.cols()), p.gain);

    for (Plane* band : {&sb.hl, &sb.lh}) {
        Plane marked = quantize_abs(*band, p.quant_step).signed_values();
        auto m = marked.values();
        auto s = spread.values();
        for (std::size_t i = 0; i < m.size(); ++i)
            m[i] += s[i];
        *band = std::move(marked);
    }
    return idwt2(sb);
}

struct EmbedResult {
    RasterImage image;
    EmbedDescriptor descriptor;
};

inline EmbedResult embed(const RasterImage& host, const WatermarkImage& w, WatermarkKey key,
                         const EmbedParams& p)
{
    YuvImage yuv = rgb_to_yuv(host);
    yuv.y = embed_luma(yuv.y, w, key, p);
    return {yuv_to_rgb(yuv), EmbedDescriptor{key, p, w.rows(), w.cols()}};
}

} // namespace cdmawm
