#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "cdmawm.hpp"

namespace cdmawm::testkit {

inline const std::vector<std::string>& fixture_names()
{
    static const std::vector<std::string> names{"astronaut", "ihc", "gravel"};
    return names;
}

inline std::filesystem::path fixture_path(const std::string& name)
{
    return std::filesystem::path(CDMAWM_TEST_DATA_DIR) / (name + ".png");
}

// Decoded once per process.
inline const RasterImage& fixture(const std::string& name)
{
    static std::mutex guard;
    static std::map<std::string, RasterImage> cache;
    std::lock_guard lock(guard);
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, read_image(fixture_path(name))).first;
    return it->second;
}

inline Plane random_plane(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double lo = -128.0,
                          double hi = 128.0)
{
    std::uniform_real_distribution<double> dist(lo, hi);
    Plane p(rows, cols);
    for (double& v : p.values())
        v = dist(rng);
    return p;
}

inline RasterImage random_image(std::size_t width, std::size_t height, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> dist(0, 255);
    RasterImage img(width, height);
    for (std::size_t c = 0; c < RasterImage::kChannels; ++c)
        for (auto& s : img.channel(c))
            s = static_cast<std::uint8_t>(dist(rng));
    return img;
}

inline BitSequence random_bits(std::size_t n, std::mt19937_64& rng)
{
    std::bernoulli_distribution coin(0.5);
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits)
        b = coin(rng) ? 1 : 0;
    return BitSequence(std::move(bits));
}

// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("cdmawm-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

} // namespace cdmawm::testkit
