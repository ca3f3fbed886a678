#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "plane.hpp"

namespace cdmawm {

// Odd-length, symmetric, centered taps for a two-channel biorthogonal bank.
struct FilterBank {
    std::vector<double> analysis_lowpass;
    std::vector<double> analysis_highpass;
    std::vector<double> synthesis_lowpass;
    std::vector<double> synthesis_highpass;

    std::size_t longest() const
    {
        return std::max({analysis_lowpass.size(), analysis_highpass.size(),
                         synthesis_lowpass.size(), synthesis_highpass.size()});
    }

    // CDF 9/7, normalized so the analysis lowpass has DC gain sqrt(2) and the
    // analysis highpass has Nyquist gain sqrt(2). Synthesis filters are the
    // quadrature mirrors: g0[n] = (-1)^n h1[n], g1[n] = (-1)^n h0[n].
    static FilterBank cdf97()
    {
        // Unit-DC-gain lowpass and Nyquist-gain-2 highpass (JPEG 2000 form),
        // listed from the center tap outwards.
        constexpr double lo[] = {0.6029490182363579, 0.2668641184428723, -0.07822326652898785,
                                 -0.01686411844287495, 0.02674875741080976};
        constexpr double hi[] = {1.115087052456994, -0.5912717631142470, -0.05754352622849957,
                                 0.09127176311424948};
        const double s = std::sqrt(2.0);

        auto mirror = [](const double* half, std::size_t n, double scale) {
            std::vector<double> taps(2 * n - 1);
            for (std::size_t i = 0; i < n; ++i)
                taps[n - 1 + i] = taps[n - 1 - i] = half[i] * scale;
            return taps;
        };
        auto modulate = [](std::vector<double> taps) {
            const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(taps.size() / 2);
            for (std::ptrdiff_t j = -half; j <= half; ++j)
                if (j % 2 != 0)
                    taps[j + half] = -taps[j + half];
            return taps;
        };

        FilterBank fb;
        fb.analysis_lowpass = mirror(lo, 5, s);
        fb.analysis_highpass = mirror(hi, 4, 1.0 / s);
        fb.synthesis_lowpass = modulate(fb.analysis_highpass);
        fb.synthesis_highpass = modulate(fb.analysis_lowpass);
        return fb;
    }
};

// One-level decomposition. The first letter names the horizontal filter
// (along rows), the second the vertical one (along columns):
//   hl = highpass across columns, lowpass down rows  (vertical edges)
//   lh = lowpass across columns, highpass down rows  (horizontal edges)
struct SubbandSet {
    Plane ll;
    Plane lh;
    Plane hl;
    Plane hh;

    std::size_t rows() const noexcept { return ll.rows(); }
    std::size_t cols() const noexcept { return ll.cols(); }
};

inline constexpr std::size_t kMinPlaneExtent = 8;

namespace detail {

// Whole-point symmetric extension: ... x1 x0 x1 ... x[n-2] x[n-1] x[n-2] ...
inline std::ptrdiff_t reflect(std::ptrdiff_t i, std::ptrdiff_t n)
{
    if (n == 1)
        return 0;
    const std::ptrdiff_t period = 2 * (n - 1);
    i %= period;
    if (i < 0)
        i += period;
    return i < n ? i : period - i;
}

inline double filter_at(const std::vector<double>& taps, const double* x, std::ptrdiff_t n,
                        std::ptrdiff_t pos)
{
    const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(taps.size() / 2);
    double acc = 0.0;
    for (std::ptrdiff_t j = -half; j <= half; ++j)
        acc += taps[j + half] * x[reflect(pos - j, n)];
    return acc;
}

// Lowpass outputs sit on even samples, highpass outputs on odd samples.
inline void analyze_line(const std::vector<double>& in, std::vector<double>& lo,
                         std::vector<double>& hi, const FilterBank& fb)
{
    const auto n = static_cast<std::ptrdiff_t>(in.size());
    for (std::ptrdiff_t k = 0; k < n / 2; ++k) {
        lo[k] = filter_at(fb.analysis_lowpass, in.data(), n, 2 * k);
        hi[k] = filter_at(fb.analysis_highpass, in.data(), n, 2 * k + 1);
    }
}

inline void synthesize_line(const std::vector<double>& lo, const std::vector<double>& hi,
                            std::vector<double>& out, const FilterBank& fb)
{
    const auto n = static_cast<std::ptrdiff_t>(out.size());
    std::vector<double> up_lo(n, 0.0), up_hi(n, 0.0);
    for (std::ptrdiff_t k = 0; k < n / 2; ++k) {
        up_lo[2 * k] = lo[k];
        up_hi[2 * k + 1] = hi[k];
    }
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[i] = filter_at(fb.synthesis_lowpass, up_lo.data(), n, i) +
                 filter_at(fb.synthesis_highpass, up_hi.data(), n, i);
}

// Filters every column of `src` into two half-height planes.
inline void analyze_columns(const Plane& src, Plane& lo, Plane& hi, const FilterBank& fb)
{
    const std::size_t rows = src.rows(), cols = src.cols();
    lo = Plane(rows / 2, cols);
    hi = Plane(rows / 2, cols);
    std::vector<double> line(rows), l(rows / 2), h(rows / 2);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r)
            line[r] = src(r, c);
        analyze_line(line, l, h, fb);
        for (std::size_t r = 0; r < rows / 2; ++r) {
            lo(r, c) = l[r];
            hi(r, c) = h[r];
        }
    }
}

inline Plane synthesize_columns(const Plane& lo, const Plane& hi, const FilterBank& fb)
{
    const std::size_t half = lo.rows(), cols = lo.cols();
    Plane out(2 * half, cols);
    std::vector<double> l(half), h(half), line(2 * half);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < half; ++r) {
            l[r] = lo(r, c);
            h[r] = hi(r, c);
        }
        synthesize_line(l, h, line, fb);
        for (std::size_t r = 0; r < 2 * half; ++r)
            out(r, c) = line[r];
    }
    return out;
}

} // namespace detail

inline SubbandSet dwt2_level1(const Plane& plane, const FilterBank& fb = FilterBank::cdf97())
{
    const std::size_t rows = plane.rows(), cols = plane.cols();
    if (rows % 2 != 0 || cols % 2 != 0)
        throw Error(ErrorKind::OddDimensions,
                    "plane is " + std::to_string(cols) + "x" + std::to_string(rows) +
                        "; both dimensions must be even");
    if (rows < kMinPlaneExtent || cols < kMinPlaneExtent)
        throw Error(ErrorKind::PlaneTooSmall, "each dimension must be at least " +
                                                  std::to_string(kMinPlaneExtent));

    // Rows first: L and H are rows x cols/2.
    Plane low(rows, cols / 2), high(rows, cols / 2);
    std::vector<double> line(cols), l(cols / 2), h(cols / 2);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c)
            line[c] = plane(r, c);
        detail::analyze_line(line, l, h, fb);
        for (std::size_t c = 0; c < cols / 2; ++c) {
            low(r, c) = l[c];
            high(r, c) = h[c];
        }
    }

    SubbandSet sb;
    detail::analyze_columns(low, sb.ll, sb.lh, fb);
    detail::analyze_columns(high, sb.hl, sb.hh, fb);
    return sb;
}

inline Plane idwt2(const SubbandSet& sb, const FilterBank& fb = FilterBank::cdf97())
{
    if (!sb.ll.same_shape(sb.lh) || !sb.ll.same_shape(sb.hl) || !sb.ll.same_shape(sb.hh))
        throw Error(ErrorKind::ShapeMismatch, "subbands must share one shape");
    if (sb.ll.empty())
        throw Error(ErrorKind::ShapeMismatch, "empty subband set");

    const Plane low = detail::synthesize_columns(sb.ll, sb.lh, fb);
    const Plane high = detail::synthesize_columns(sb.hl, sb.hh, fb);

    const std::size_t rows = low.rows(), half = low.cols();
    Plane out(rows, 2 * half);
    std::vector<double> l(half), h(half), line(2 * half);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < half; ++c) {
            l[c] = low(r, c);
            h[c] = high(r, c);
        }
        detail::synthesize_line(l, h, line, fb);
        for (std::size_t c = 0; c < 2 * half; ++c)
            out(r, c) = line[c];
    }
    return out;
}

} // namespace cdmawm
