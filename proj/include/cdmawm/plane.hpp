#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace cdmawm {

// Dense row-major matrix of doubles. Used for luma planes, subbands and
// anything else that lives in the real-valued domain.
class Plane {
public:
    Plane() = default;
    Plane(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), values_(rows * cols, fill)
    {
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    double& operator()(std::size_t r, std::size_t c)
    {
        assert(r < rows_ && c < cols_);
        return values_[r * cols_ + c];
    }
    double operator()(std::size_t r, std::size_t c) const
    {
        assert(r < rows_ && c < cols_);
        return values_[r * cols_ + c];
    }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }

    bool same_shape(const Plane& other) const noexcept
    {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    friend bool operator==(const Plane&, const Plane&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

} // namespace cdmawm
