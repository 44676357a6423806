/*
Copyright 2026 The fusesgm Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef FUSESGM_DETAIL_DISPARITY_MASK_HPP
#define FUSESGM_DETAIL_DISPARITY_MASK_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fusesgm/image.hpp"
#include "fusesgm/parallel.hpp"

namespace fusesgm::detail {

// Per-pixel bitset over integer disparities occurring in the
// (2*radius+1)^2 window around the pixel, window truncated at the borders.
// Built separably: a row OR pass followed by a column OR pass.
class WindowDisparityMask {
public:
    WindowDisparityMask(const SparseDisparityMap& map, int radius, int dmax)
        : width_(map.width()), height_(map.height()),
          words_((dmax + 63) / 64)
    {
        if (radius < 0)
            throw std::invalid_argument("WindowDisparityMask: radius must be >= 0");

        const std::size_t stride = static_cast<std::size_t>(width_) * words_;
        std::vector<std::uint64_t> point(stride * height_, 0);
        for (int y = 0; y < height_; ++y) {
            for (int x = 0; x < width_; ++x) {
                const SparseValue v = map.at(x, y);
                if (!v.valid())
                    continue;
                const int d = v.get();
                if (d >= dmax)
                    throw std::invalid_argument("WindowDisparityMask: disparity out of [0, dmax)");
                point[y * stride + static_cast<std::size_t>(x) * words_ + d / 64] |= 1ull << (d % 64);
            }
        }

        std::vector<std::uint64_t> rows(stride * height_, 0);
#pragma omp parallel for schedule(static) num_threads(worker_count())
        for (int y = 0; y < height_; ++y) {
            const std::uint64_t* in = point.data() + y * stride;
            std::uint64_t* out = rows.data() + y * stride;
            for (int x = 0; x < width_; ++x) {
                const int x0 = std::max(0, x - radius);
                const int x1 = std::min(width_ - 1, x + radius);
                std::uint64_t* dst = out + static_cast<std::size_t>(x) * words_;
                for (int sx = x0; sx <= x1; ++sx) {
                    const std::uint64_t* src = in + static_cast<std::size_t>(sx) * words_;
                    for (int i = 0; i < words_; ++i)
                        dst[i] |= src[i];
                }
            }
        }

        masks_.assign(stride * height_, 0);
#pragma omp parallel for schedule(static) num_threads(worker_count())
        for (int y = 0; y < height_; ++y) {
            const int y0 = std::max(0, y - radius);
            const int y1 = std::min(height_ - 1, y + radius);
            std::uint64_t* dst = masks_.data() + y * stride;
            for (int sy = y0; sy <= y1; ++sy) {
                const std::uint64_t* src = rows.data() + sy * stride;
                for (std::size_t i = 0; i < stride; ++i)
                    dst[i] |= src[i];
            }
        }
    }

    int words() const { return words_; }

    const std::uint64_t* at(int x, int y) const
    {
        return masks_.data() + (static_cast<std::size_t>(y) * width_ + x) * words_;
    }

    /// True when some disparity in [lo, hi] occurs in the window at (x, y).
    bool any_in_range(int x, int y, int lo, int hi) const
    {
        if (lo > hi)
            return false;
        const std::uint64_t* m = at(x, y);
        for (int d = lo; d <= hi; ++d)
            if (m[d / 64] & (1ull << (d % 64)))
                return true;
        return false;
    }

private:
    int width_;
    int height_;
    int words_;
    std::vector<std::uint64_t> masks_;
};

}  // namespace fusesgm::detail

#endif  // FUSESGM_DETAIL_DISPARITY_MASK_HPP
