#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <string>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "codec.hpp"
#include "errors.hpp"
#include "image.hpp"

namespace cdmawm {

// OpenCV stores color as interleaved BGR.
inline cv::Mat to_mat(const RasterImage& img)
{
    cv::Mat mat(static_cast<int>(img.height()), static_cast<int>(img.width()), CV_8UC3);
    for (std::size_t r = 0; r < img.height(); ++r) {
        auto* row = mat.ptr<cv::Vec3b>(static_cast<int>(r));
        for (std::size_t c = 0; c < img.width(); ++c)
            row[c] = cv::Vec3b(img.at(2, r, c), img.at(1, r, c), img.at(0, r, c));
    }
    return mat;
}

inline RasterImage from_mat(const cv::Mat& mat)
{
    cv::Mat bgr;
    if (mat.type() == CV_8UC3)
        bgr = mat;
    else if (mat.type() == CV_8UC1)
        cv::merge(std::vector<cv::Mat>{mat, mat, mat}, bgr);
    else
        throw Error(ErrorKind::InvalidArgument, "only 8-bit gray or BGR images are supported");

    RasterImage img(static_cast<std::size_t>(bgr.cols), static_cast<std::size_t>(bgr.rows));
    for (std::size_t r = 0; r < img.height(); ++r) {
        const auto* row = bgr.ptr<cv::Vec3b>(static_cast<int>(r));
        for (std::size_t c = 0; c < img.width(); ++c) {
            img.at(0, r, c) = row[c][2];
            img.at(1, r, c) = row[c][1];
            img.at(2, r, c) = row[c][0];
        }
    }
    return img;
}

inline bool is_lossy_extension(const std::filesystem::path& path)
{
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return ext == ".jpg" || ext == ".jpeg" || ext == ".jpe" || ext == ".jp2" || ext == ".webp";
}

inline RasterImage read_image(const std::filesystem::path& path)
{
    const cv::Mat mat = cv::imread(path.string(), cv::IMREAD_COLOR);
    if (mat.empty())
        throw Error(ErrorKind::IoFailure, "cannot read image " + path.string());
    return from_mat(mat);
}

// Artifacts are always written losslessly so a later extraction sees exactly
// the samples that were produced; lossy extensions are refused.
inline void write_image(const std::filesystem::path& path, const RasterImage& img)
{
    if (is_lossy_extension(path))
        throw Error(ErrorKind::InvalidArgument,
                    "refusing lossy format for " + path.string() + "; use png, bmp, ppm or tiff");
    bool ok = false;
    try {
        ok = cv::imwrite(path.string(), to_mat(img));
    } catch (const cv::Exception& e) {
        throw Error(ErrorKind::IoFailure, "cannot write " + path.string() + ": " + e.what());
    }
    if (!ok)
        throw Error(ErrorKind::IoFailure, "cannot write " + path.string());
}

// Any gray level >= 128 reads as bit 1.
inline WatermarkImage read_watermark(const std::filesystem::path& path)
{
    const cv::Mat mat = cv::imread(path.string(), cv::IMREAD_GRAYSCALE);
    if (mat.empty())
        throw Error(ErrorKind::IoFailure, "cannot read watermark " + path.string());
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(mat.rows) * mat.cols);
    for (int r = 0; r < mat.rows; ++r)
        for (int c = 0; c < mat.cols; ++c)
            bits[static_cast<std::size_t>(r) * mat.cols + c] = mat.at<std::uint8_t>(r, c) >= 128 ? 1 : 0;
    return WatermarkImage(static_cast<std::size_t>(mat.rows), static_cast<std::size_t>(mat.cols),
                          std::move(bits));
}

inline void write_watermark(const std::filesystem::path& path, const WatermarkImage& w)
{
    if (is_lossy_extension(path))
        throw Error(ErrorKind::InvalidArgument, "refusing lossy format for " + path.string());
    cv::Mat mat(static_cast<int>(w.rows()), static_cast<int>(w.cols()), CV_8UC1);
    for (std::size_t r = 0; r < w.rows(); ++r)
        for (std::size_t c = 0; c < w.cols(); ++c)
            mat.at<std::uint8_t>(static_cast<int>(r), static_cast<int>(c)) = w.at(r, c) ? 255 : 0;
    bool ok = false;
    try {
        ok = cv::imwrite(path.string(), mat);
    } catch (const cv::Exception& e) {
        throw Error(ErrorKind::IoFailure, "cannot write " + path.string() + ": " + e.what());
    }
    if (!ok)
        throw Error(ErrorKind::IoFailure, "cannot write " + path.string());
}

} // namespace cdmawm
