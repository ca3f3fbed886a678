#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

#include "image.hpp"

namespace cdmawm {

using Matrix3 = std::array<std::array<double, 3>, 3>;

// Analog YUV (BT.601 luma weights, U/V scaled for composite video).
inline constexpr Matrix3 kRgbToYuv = {{
    {0.299, 0.587, 0.114},
    {-0.147, -0.289, 0.436},
    {0.615, -0.515, -0.100},
}};

// The rounded inverse usually printed next to kRgbToYuv. It is only accurate
// to about 3 decimals, so conversion uses kYuvToRgb below; this table is kept
// for reference and tests.
inline constexpr Matrix3 kYuvToRgbRounded = {{
    {1.000, 0.000, 1.140},
    {1.000, -0.395, -0.581},
    {1.000, 2.032, 0.000},
}};

constexpr Matrix3 invert(const Matrix3& m)
{
    const double c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    const double c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
    const double c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    const double det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
    const double inv = 1.0 / det;
    return {{
        {c00 * inv, (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * inv,
         (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * inv},
        {c01 * inv, (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * inv,
         (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * inv},
        {c02 * inv, (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * inv,
         (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * inv},
    }};
}

// Exact inverse of kRgbToYuv, evaluated at compile time.
inline constexpr Matrix3 kYuvToRgb = invert(kRgbToYuv);

constexpr std::array<double, 3> apply(const Matrix3& m, double a, double b, double c)
{
    return {m[0][0] * a + m[0][1] * b + m[0][2] * c,
            m[1][0] * a + m[1][1] * b + m[1][2] * c,
            m[2][0] * a + m[2][1] * b + m[2][2] * c};
}

// Round half away from zero, then clamp to the 8-bit range.
inline std::uint8_t to_u8(double v)
{
    return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

inline std::array<double, 3> rgb_to_yuv(double r, double g, double b)
{
    return apply(kRgbToYuv, r, g, b);
}

inline std::array<std::uint8_t, 3> yuv_to_rgb(double y, double u, double v)
{
    const auto rgb = apply(kYuvToRgb, y, u, v);
    return {to_u8(rgb[0]), to_u8(rgb[1]), to_u8(rgb[2])};
}

inline YuvImage rgb_to_yuv(const RasterImage& img)
{
    const std::size_t h = img.height(), w = img.width();
    YuvImage out{Plane(h, w), Plane(h, w), Plane(h, w)};
    auto r = img.channel(0), g = img.channel(1), b = img.channel(2);
    auto y = out.y.values(), u = out.u.values(), v = out.v.values();
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const auto p = rgb_to_yuv(r[i], g[i], b[i]);
        y[i] = p[0];
        u[i] = p[1];
        v[i] = p[2];
    }
    return out;
}

inline RasterImage yuv_to_rgb(const YuvImage& yuv)
{
    if (!yuv.y.same_shape(yuv.u) || !yuv.y.same_shape(yuv.v))
        throw Error(ErrorKind::ShapeMismatch, "Y, U and V planes differ in size");
    RasterImage out(yuv.width(), yuv.height());
    auto y = yuv.y.values(), u = yuv.u.values(), v = yuv.v.values();
    auto r = out.channel(0), g = out.channel(1), b = out.channel(2);
    for (std::size_t i = 0; i < out.pixel_count(); ++i) {
        const auto p = yuv_to_rgb(y[i], u[i], v[i]);
        r[i] = p[0];
        g[i] = p[1];
        b[i] = p[2];
    }
    return out;
}

// Y plane only; the extractor and the metrics never need chroma.
inline Plane luma(const RasterImage& img)
{
    Plane y(img.height(), img.width());
    auto r = img.channel(0), g = img.channel(1), b = img.channel(2);
    auto out = y.values();
    for (std::size_t i = 0; i < img.pixel_count(); ++i)
        out[i] = kRgbToYuv[0][0] * r[i] + kRgbToYuv[0][1] * g[i] + kRgbToYuv[0][2] * b[i];
    return y;
}

} // namespace cdmawm
