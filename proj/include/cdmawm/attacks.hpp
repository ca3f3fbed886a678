#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/core/version.hpp>
#include <opencv2/imgcodecs.hpp>

#include "color.hpp"
#include "errors.hpp"
#include "image.hpp"
#include "io.hpp"

namespace cdmawm {

struct JpegAttack {
    int quality = 75; // 1..100, IJG scaling of the baseline tables
};

// Zero-mean noise; variance is on the [0,1] intensity scale, so 0.01 is
// "1%" and has a standard deviation of 25.5 gray levels.
struct GaussianAttack {
    double variance = 0.01;
    std::uint64_t seed = 1;
};

// A `density` fraction of pixel positions becomes black or white (50/50).
struct SaltPepperAttack {
    double density = 0.05;
    std::uint64_t seed = 1;
};

using AttackSpec = std::variant<JpegAttack, GaussianAttack, SaltPepperAttack>;

inline std::string jpeg_codec_description()
{
    return std::string("OpenCV ") + CV_VERSION + " imencode/.jpg (libjpeg baseline, IJG quality scaling)";
}

inline RasterImage jpeg_attack(const RasterImage& img, int quality)
{
    if (quality < 1 || quality > 100)
        throw Error(ErrorKind::InvalidArgument, "JPEG quality must be in 1..100");
    std::vector<std::uint8_t> buffer;
    cv::Mat decoded;
    try {
        if (!cv::imencode(".jpg", to_mat(img), buffer, {cv::IMWRITE_JPEG_QUALITY, quality}))
            throw Error(ErrorKind::CodecFailure, "JPEG encoder rejected the image");
        decoded = cv::imdecode(buffer, cv::IMREAD_COLOR);
    } catch (const cv::Exception& e) {
        throw Error(ErrorKind::CodecFailure, e.what());
    }
    if (decoded.empty())
        throw Error(ErrorKind::CodecFailure, "JPEG decoder returned no image");
    RasterImage out = from_mat(decoded);
    if (!out.same_size(img))
        throw Error(ErrorKind::CodecFailure, "JPEG round trip changed the image size");
    return out;
}

inline RasterImage gaussian_attack(const RasterImage& img, double variance, std::uint64_t seed)
{
    if (!(variance >= 0.0) || !std::isfinite(variance))
        throw Error(ErrorKind::InvalidArgument, "noise variance must be non-negative");
    if (variance == 0.0)
        return img;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, std::sqrt(variance));
    RasterImage out = img;
    for (std::size_t c = 0; c < RasterImage::kChannels; ++c)
        for (auto& s : out.channel(c))
            s = to_u8(static_cast<double>(s) + 255.0 * noise(rng));
    return out;
}

inline RasterImage salt_pepper_attack(const RasterImage& img, double density, std::uint64_t seed)
{
    if (!(density >= 0.0 && density <= 1.0))
        throw Error(ErrorKind::InvalidArgument, "salt & pepper density must be in [0,1]");
    const std::size_t total = img.pixel_count();
    const auto count = static_cast<std::size_t>(std::llround(density * static_cast<double>(total)));
    if (count == 0)
        return img;

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> all(total), chosen;
    std::iota(all.begin(), all.end(), std::size_t{0});
    chosen.reserve(count);
    std::sample(all.begin(), all.end(), std::back_inserter(chosen), count, rng);

    std::bernoulli_distribution salt(0.5);
    RasterImage out = img;
    for (std::size_t pos : chosen) {
        const std::uint8_t v = salt(rng) ? 255 : 0;
        for (std::size_t c = 0; c < RasterImage::kChannels; ++c)
            out.channel(c)[pos] = v;
    }
    return out;
}

inline RasterImage apply_attack(const RasterImage& img, const AttackSpec& spec)
{
    return std::visit(
        [&](const auto& a) -> RasterImage {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, JpegAttack>)
                return jpeg_attack(img, a.quality);
            else if constexpr (std::is_same_v<T, GaussianAttack>)
                return gaussian_attack(img, a.variance, a.seed);
            else
                return salt_pepper_attack(img, a.density, a.seed);
        },
        spec);
}

inline std::string attack_name(const AttackSpec& spec)
{
    switch (spec.index()) {
    case 0: return "jpeg";
    case 1: return "gaussian";
    default: return "salt_pepper";
    }
}

} // namespace cdmawm
