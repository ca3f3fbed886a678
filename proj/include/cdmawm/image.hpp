#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "plane.hpp"

namespace cdmawm {

// 8-bit, three-plane RGB raster. Planes are stored separately (R, G, B), each
// row-major. The sample type enforces the [0,255] range.
class RasterImage {
public:
    static constexpr std::size_t kChannels = 3;

    RasterImage() = default;
    RasterImage(std::size_t width, std::size_t height, std::uint8_t fill = 0)
        : width_(width), height_(height)
    {
        if (width == 0 || height == 0)
            throw Error(ErrorKind::InvalidArgument, "image dimensions must be positive");
        for (auto& p : planes_)
            p.assign(width * height, fill);
    }

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return width_ * height_; }
    bool empty() const noexcept { return pixel_count() == 0; }

    std::uint8_t& at(std::size_t channel, std::size_t row, std::size_t col)
    {
        return planes_[channel][row * width_ + col];
    }
    std::uint8_t at(std::size_t channel, std::size_t row, std::size_t col) const
    {
        return planes_[channel][row * width_ + col];
    }

    std::span<std::uint8_t> channel(std::size_t c) noexcept { return planes_[c]; }
    std::span<const std::uint8_t> channel(std::size_t c) const noexcept { return planes_[c]; }

    bool same_size(const RasterImage& other) const noexcept
    {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const RasterImage&, const RasterImage&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::array<std::vector<std::uint8_t>, kChannels> planes_;
};

// Real-valued luminance/chrominance planes, all height x width.
struct YuvImage {
    Plane y;
    Plane u;
    Plane v;

    std::size_t width() const noexcept { return y.cols(); }
    std::size_t height() const noexcept { return y.rows(); }
};

inline void require_same_size(const RasterImage& a, const RasterImage& b)
{
    if (!a.same_size(b))
        throw Error(ErrorKind::DimensionMismatch,
                    std::to_string(a.width()) + "x" + std::to_string(a.height()) + " vs " +
                        std::to_string(b.width()) + "x" + std::to_string(b.height()));
}

} // namespace cdmawm
