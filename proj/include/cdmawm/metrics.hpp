#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "color.hpp"
#include "errors.hpp"
#include "image.hpp"
#include "wavelet.hpp"

namespace cdmawm {

// Pearson correlation. Returns 0 when either input has zero variance.
inline double pearson(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw Error(ErrorKind::LengthMismatch, "correlation inputs differ in length");
    if (a.empty())
        return 0.0;
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(a.size());
    mb /= static_cast<double>(b.size());
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0)
        return 0.0;
    return sab / std::sqrt(saa * sbb);
}

// Host/watermarked similarity measured in the wavelet domain: the level-1
// subbands of both Y planes are centered per subband and pooled into one
// Pearson coefficient. Per-subband centering keeps the measure exactly -1 for
// an inverted image, since inversion only shifts LL by a constant.
inline double wavelet_correlation(const RasterImage& x, const RasterImage& x2)
{
    require_same_size(x, x2);
    const Plane ya = luma(x), yb = luma(x2);
    auto is_flat = [](const Plane& p) {
        const auto v = p.values();
        return std::all_of(v.begin(), v.end(), [&](double s) { return s == v.front(); });
    };
    if (is_flat(ya) || is_flat(yb))
        return ya == yb ? 1.0 : 0.0;

    const SubbandSet a = dwt2_level1(ya);
    const SubbandSet b = dwt2_level1(yb);

    double sab = 0.0, saa = 0.0, sbb = 0.0;
    bool identical = true;
    for (auto [pa, pb] : {std::pair{&a.ll, &b.ll}, std::pair{&a.lh, &b.lh}, std::pair{&a.hl, &b.hl},
                          std::pair{&a.hh, &b.hh}}) {
        auto va = pa->values(), vb = pb->values();
        double ma = 0.0, mb = 0.0;
        for (std::size_t i = 0; i < va.size(); ++i) {
            ma += va[i];
            mb += vb[i];
            identical = identical && va[i] == vb[i];
        }
        ma /= static_cast<double>(va.size());
        mb /= static_cast<double>(vb.size());
        for (std::size_t i = 0; i < va.size(); ++i) {
            const double da = va[i] - ma, db = vb[i] - mb;
            sab += da * db;
            saa += da * da;
            sbb += db * db;
        }
    }
    if (saa == 0.0 || sbb == 0.0)
        return identical ? 1.0 : 0.0;
    return sab / std::sqrt(saa * sbb);
}

inline double mse(std::span<const std::uint8_t> h, std::span<const std::uint8_t> h2)
{
    if (h.size() != h2.size())
        throw Error(ErrorKind::DimensionMismatch, "sample counts differ");
    if (h.empty())
        throw Error(ErrorKind::DimensionMismatch, "no samples");
    double acc = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double d = static_cast<double>(h[i]) - static_cast<double>(h2[i]);
        acc += d * d;
    }
    return acc / static_cast<double>(h.size());
}

// Mean over all pixels and all three channels.
inline double mse(const RasterImage& h, const RasterImage& h2)
{
    require_same_size(h, h2);
    double acc = 0.0;
    for (std::size_t c = 0; c < RasterImage::kChannels; ++c)
        acc += mse(h.channel(c), h2.channel(c));
    return acc / RasterImage::kChannels;
}

inline constexpr double kPeak = 255.0;

// +infinity when the error is zero.
inline double psnr_from_mse(double mse_value)
{
    if (mse_value == 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(kPeak * kPeak / mse_value);
}

inline double psnr(const RasterImage& h, const RasterImage& h2) { return psnr_from_mse(mse(h, h2)); }

// NC = sum(w * w') / sum(w^2). Exact recovery scores 1.
inline double nc(std::span<const std::uint8_t> w, std::span<const std::uint8_t> w2)
{
    if (w.size() != w2.size())
        throw Error(ErrorKind::LengthMismatch, "marks differ in length");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        num += static_cast<double>(w[i]) * w2[i];
        den += static_cast<double>(w[i]) * w[i];
    }
    if (den == 0.0)
        throw Error(ErrorKind::AllZeroReference, "reference mark has no set bits");
    return num / den;
}

inline std::size_t hamming(std::span<const std::uint8_t> w, std::span<const std::uint8_t> w2)
{
    if (w.size() != w2.size())
        throw Error(ErrorKind::LengthMismatch, "marks differ in length");
    std::size_t d = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        d += (w[i] != w2[i]) ? 1 : 0;
    return d;
}

inline double error_bit_pct(std::span<const std::uint8_t> w, std::span<const std::uint8_t> w2)
{
    const std::size_t d = hamming(w, w2);
    if (w.empty())
        throw Error(ErrorKind::LengthMismatch, "empty marks");
    return 100.0 * static_cast<double>(d) / static_cast<double>(w.size());
}

struct QualityReport {
    double corr = 0.0;
    double mse = 0.0;
    double psnr = 0.0;
    double nc = 0.0;
    double error_bit_pct = 0.0;
};

// Image-side fields only; nc and error_bit_pct need the marks.
inline QualityReport image_quality(const RasterImage& host, const RasterImage& marked)
{
    QualityReport q;
    q.corr = wavelet_correlation(host, marked);
    q.mse = mse(host, marked);
    q.psnr = psnr_from_mse(q.mse);
    return q;
}

} // namespace cdmawm
