#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "codec.hpp"
#include "color.hpp"
#include "embedder.hpp"
#include "image.hpp"
#include "metrics.hpp"
#include "plane.hpp"
#include "wavelet.hpp"

namespace cdmawm {

// Correlates +-1 patterns against one subband. The subband is centered once;
// each pattern then costs a single pass over its bits.
class SubbandCorrelator {
public:
    explicit SubbandCorrelator(const Plane& band) : centered_(band.values().begin(), band.values().end())
    {
        double mean = 0.0;
        for (double v : centered_)
            mean += v;
        mean /= static_cast<double>(centered_.size());
        for (double& v : centered_) {
            v -= mean;
            energy_ += v * v;
            sum_ += v;
        }
    }

    // Pearson correlation between the subband and the pattern whose entries
    // are given as 0/1 (1 meaning +1). Zero when either side is constant.
    double correlate(std::span<const std::uint8_t> pattern) const
    {
        if (pattern.size() != centered_.size())
            throw Error(ErrorKind::ShapeMismatch, "pattern and subband differ in size");
        if (energy_ == 0.0)
            return 0.0;
        double sum_plus = 0.0, ones = 0.0;
        for (std::size_t j = 0; j < centered_.size(); ++j) {
            const double p = pattern[j];
            sum_plus += centered_[j] * p;
            ones += p;
        }
        const double n = static_cast<double>(centered_.size());
        const double mean_p = (2.0 * ones - n) / n;
        const double pattern_energy = n * (1.0 - mean_p * mean_p);
        if (pattern_energy <= 0.0)
            return 0.0;
        // sum (p - mean_p) * x_c = sum p * x_c, since sum x_c = 0
        const double cross = 2.0 * sum_plus - sum_;
        return cross / std::sqrt(pattern_energy * energy_);
    }

private:
    std::vector<double> centered_;
    double energy_ = 0.0;
    double sum_ = 0.0; // zero up to rounding
};

// C_i = (rho(PN_i, hl) + rho(PN_i, lh)) / 2.
inline double bit_correlation(const Plane& hl, const Plane& lh, const PatternSchedule& schedule,
                              std::size_t bit_index)
{
    if (!hl.same_shape(lh) || hl.rows() != schedule.rows() || hl.cols() != schedule.cols())
        throw Error(ErrorKind::ShapeMismatch, "subbands must match the pattern shape");
    std::vector<std::uint8_t> pattern(hl.size());
    schedule.pattern_bits(bit_index, pattern);
    return 0.5 * (SubbandCorrelator(hl).correlate(pattern) + SubbandCorrelator(lh).correlate(pattern));
}

// Mean of the per-bit correlations, kept inside [min, max] so that rounding
// cannot lift it above a set of equal values.
inline double threshold(std::span<const double> correlations)
{
    if (correlations.empty())
        throw Error(ErrorKind::InvalidArgument, "no correlations to threshold");
    double acc = 0.0;
    for (double c : correlations)
        acc += c;
    const auto [lo, hi] = std::minmax_element(correlations.begin(), correlations.end());
    return std::clamp(acc / static_cast<double>(correlations.size()), *lo, *hi);
}

// Bit i is 0 iff C_i > T (strictly).
inline BitSequence decide_bits(std::span<const double> correlations, double t)
{
    std::vector<std::uint8_t> bits(correlations.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        bits[i] = correlations[i] > t ? 0 : 1;
    return BitSequence(std::move(bits));
}

struct ExtractReport {
    BitSequence bits; // decrypted
    std::vector<double> correlations;
    double threshold = 0.0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::optional<std::size_t> error_bits;
    std::optional<double> error_bit_pct;
    std::optional<double> nc;

    WatermarkImage mark() const { return bits_to_image(bits, rows, cols); }

    void score_against(const WatermarkImage& reference)
    {
        const auto ref = reference.bits();
        if (ref.size() != bits.size())
            throw Error(ErrorKind::LengthMismatch, "reference mark has a different size");
        error_bits = hamming(ref, bits.bits());
        error_bit_pct = cdmawm::error_bit_pct(ref, bits.bits());
        nc = cdmawm::nc(ref, bits.bits());
    }

    nlohmann::json to_json() const
    {
        nlohmann::json j = {
            {"shape", {rows, cols}},
            {"bits", bits.to_string()},
            {"threshold", threshold},
            {"correlations", correlations},
        };
        if (error_bits)
            j["error_bits"] = *error_bits;
        if (error_bit_pct)
            j["error_bit_pct"] = *error_bit_pct;
        if (nc)
            j["nc"] = *nc;
        return j;
    }
};

// Blind extraction: needs only the image, the key, the mark shape and the
// quantization step. HL and LH magnitudes are quantized with the embedder's
// step and the observed signs re-attached before correlating.
inline ExtractReport extract(const RasterImage& img, WatermarkKey key, std::size_t rows, std::size_t cols,
                             const EmbedParams& p = {})
{
    if (!(p.quant_step > 0.0))
        throw Error(ErrorKind::InvalidArgument, "quantization step must be positive");
    if (rows == 0 || cols == 0)
        throw Error(ErrorKind::InvalidArgument, "mark shape must be positive");

    const SubbandSet sb = dwt2_level1(luma(img));
    const std::size_t n = rows * cols;
    const PatternSchedule schedule(key, n, sb.rows(), sb.cols());

    const SubbandCorrelator hl(quantize_abs(sb.hl, p.quant_step).signed_values());
    const SubbandCorrelator lh(quantize_abs(sb.lh, p.quant_step).signed_values());

    ExtractReport report;
    report.rows = rows;
    report.cols = cols;
    report.correlations.resize(n);
    std::vector<std::uint8_t> pattern(sb.rows() * sb.cols());
    for (std::size_t i = 0; i < n; ++i) {
        schedule.pattern_bits(i, pattern);
        report.correlations[i] = 0.5 * (hl.correlate(pattern) + lh.correlate(pattern));
    }
    report.threshold = threshold(report.correlations);
    const BitSequence encrypted = decide_bits(report.correlations, report.threshold);
    report.bits = encrypt_watermark(encrypted, key);
    return report;
}

} // namespace cdmawm
