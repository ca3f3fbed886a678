#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>
#include <vector>

#include "codec.hpp"
#include "color.hpp"
#include "errors.hpp"
#include "image.hpp"

namespace cdmawm {

namespace detail {

// 5x7 glyphs, one 5-bit row per entry, most significant bit on the left.
inline const std::array<std::uint8_t, 7>* glyph(char ch)
{
    static const std::array<std::uint8_t, 7> space{};
    static const std::array<std::array<std::uint8_t, 7>, 26> letters{{
        {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}, {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E},
        {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E}, {0x1E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1E},
        {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}, {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10},
        {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F}, {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11},
        {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}, {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C},
        {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11}, {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F},
        {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11}, {0x11, 0x11, 0x19, 0x15, 0x13, 0x11, 0x11},
        {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}, {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10},
        {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D}, {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11},
        {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E}, {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04},
        {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}, {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04},
        {0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A}, {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11},
        {0x11, 0x11, 0x11, 0x0A, 0x04, 0x04, 0x04}, {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F},
    }};
    static const std::array<std::array<std::uint8_t, 7>, 10> digits{{
        {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}, {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E},
        {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}, {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E},
        {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}, {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E},
        {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}, {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08},
        {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}, {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C},
    }};
    if (ch >= 'a' && ch <= 'z')
        ch = static_cast<char>(ch - 'a' + 'A');
    if (ch >= 'A' && ch <= 'Z')
        return &letters[ch - 'A'];
    if (ch >= '0' && ch <= '9')
        return &digits[ch - '0'];
    if (ch == ' ')
        return &space;
    return nullptr;
}

} // namespace detail

// Renders `text` (A-Z, 0-9, space) as set bits on a cleared mark, glyphs
// scaled by `scale` and centered. The default is the 15x64 test mark.
inline WatermarkImage text_mark(std::string_view text = "WMARK",
                                std::size_t rows = WatermarkImage::kDefaultRows,
                                std::size_t cols = WatermarkImage::kDefaultCols, std::size_t scale = 2)
{
    if (text.empty() || scale == 0)
        throw Error(ErrorKind::InvalidArgument, "text mark needs text and a positive scale");
    const std::size_t glyph_w = 5 * scale, glyph_h = 7 * scale, gap = scale;
    const std::size_t width = text.size() * glyph_w + (text.size() - 1) * gap;
    if (width > cols || glyph_h > rows)
        throw Error(ErrorKind::InvalidArgument, "text does not fit the mark");

    WatermarkImage mark(rows, cols);
    const std::size_t top = (rows - glyph_h) / 2, left = (cols - width) / 2;
    for (std::size_t k = 0; k < text.size(); ++k) {
        const auto* g = detail::glyph(text[k]);
        if (!g)
            throw Error(ErrorKind::InvalidArgument, std::string("unsupported glyph '") + text[k] + "'");
        const std::size_t x0 = left + k * (glyph_w + gap);
        for (std::size_t gy = 0; gy < 7; ++gy)
            for (std::size_t gx = 0; gx < 5; ++gx) {
                if (!(((*g)[gy] >> (4 - gx)) & 1U))
                    continue;
                for (std::size_t dy = 0; dy < scale; ++dy)
                    for (std::size_t dx = 0; dx < scale; ++dx)
                        mark.set(top + gy * scale + dy, x0 + gx * scale + dx, true);
            }
    }
    return mark;
}

// Deterministic stand-in for natural photographs when no fixture files are
// available. Per channel it sums
//   - a smooth background of six low-frequency cosines,
//   - a dozen hard-edged ellipses with random colors (edges),
//   - four octaves of bilinear value noise (texture, 1/f-like falloff),
//   - fine grain with a standard deviation of 3 gray levels,
// then rounds and clamps. Everything is drawn from mt19937_64(seed).
inline RasterImage synthetic_host(std::size_t width, std::size_t height, std::uint64_t seed)
{
    if (width == 0 || height == 0)
        throw Error(ErrorKind::InvalidArgument, "synthetic host needs a positive size");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> grain(0.0, 3.0);
    constexpr double two_pi = 2.0 * std::numbers::pi;

    std::vector<std::array<double, 3>> acc(width * height, {0.0, 0.0, 0.0});
    const std::array<double, 3> base{90 + 60 * unit(rng), 90 + 60 * unit(rng), 90 + 60 * unit(rng)};

    for (int k = 0; k < 6; ++k) {
        const double fx = (0.5 + 3.5 * unit(rng)) / static_cast<double>(width);
        const double fy = (0.5 + 3.5 * unit(rng)) / static_cast<double>(height);
        const double phase = two_pi * unit(rng);
        const std::array<double, 3> amp{20 * unit(rng), 20 * unit(rng), 20 * unit(rng)};
        for (std::size_t y = 0; y < height; ++y)
            for (std::size_t x = 0; x < width; ++x) {
                const double v = std::cos(two_pi * (fx * x + fy * y) + phase);
                for (int c = 0; c < 3; ++c)
                    acc[y * width + x][c] += amp[c] * v;
            }
    }

    for (int k = 0; k < 12; ++k) {
        const double cx = unit(rng) * width, cy = unit(rng) * height;
        const double rx = (0.04 + 0.18 * unit(rng)) * width, ry = (0.04 + 0.18 * unit(rng)) * height;
        const std::array<double, 3> shift{80 * unit(rng) - 40, 80 * unit(rng) - 40, 80 * unit(rng) - 40};
        for (std::size_t y = 0; y < height; ++y)
            for (std::size_t x = 0; x < width; ++x) {
                const double dx = (x - cx) / rx, dy = (y - cy) / ry;
                if (dx * dx + dy * dy <= 1.0)
                    for (int c = 0; c < 3; ++c)
                        acc[y * width + x][c] += shift[c];
            }
    }

    for (int octave = 0; octave < 4; ++octave) {
        const std::size_t cell = std::size_t{64} >> octave;
        const std::size_t gw = width / cell + 2, gh = height / cell + 2;
        const double amp = 24.0 / (1 << octave);
        std::vector<std::array<double, 3>> grid(gw * gh);
        for (auto& g : grid)
            for (auto& v : g)
                v = amp * (2.0 * unit(rng) - 1.0);
        for (std::size_t y = 0; y < height; ++y)
            for (std::size_t x = 0; x < width; ++x) {
                const std::size_t gx = x / cell, gy = y / cell;
                const double tx = static_cast<double>(x % cell) / cell, ty = static_cast<double>(y % cell) / cell;
                for (int c = 0; c < 3; ++c) {
                    const double top = grid[gy * gw + gx][c] * (1 - tx) + grid[gy * gw + gx + 1][c] * tx;
                    const double bottom =
                        grid[(gy + 1) * gw + gx][c] * (1 - tx) + grid[(gy + 1) * gw + gx + 1][c] * tx;
                    acc[y * width + x][c] += top * (1 - ty) + bottom * ty;
                }
            }
    }

    RasterImage img(width, height);
    for (std::size_t i = 0; i < width * height; ++i)
        for (std::size_t c = 0; c < 3; ++c)
            img.channel(c)[i] = to_u8(base[c] + acc[i][c] + grain(rng));
    return img;
}

} // namespace cdmawm
