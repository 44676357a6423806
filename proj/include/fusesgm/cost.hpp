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

#ifndef FUSESGM_COST_HPP
#define FUSESGM_COST_HPP

#include <cstdint>
#include <vector>

#include "fusesgm/image.hpp"

namespace fusesgm {

// Fixed-point multiplier applied to matching costs so the fractional alpha
// blend survives the integer pipeline. Smoothness penalties must be scaled
// by the same factor before aggregation.
constexpr int kCostScale = 16;

// Upper bound enforced on any per-cell cost, in scaled units.
constexpr int kCostCapBase = 4095;

/// Census bit-strings; bit i set iff the i-th window neighbor (row-major,
/// center excluded) is darker than the center.
struct CensusImage {
    int width = 0;
    int height = 0;
    int window_w = 0;
    int window_h = 0;
    std::vector<std::uint64_t> codes;

    std::uint64_t at(int x, int y) const { return codes[static_cast<std::size_t>(y) * width + x]; }

    /// Largest possible Hamming distance between two codes.
    int max_distance() const { return window_w * window_h - 1; }
};

/// Per-pixel, per-disparity cost grid, d contiguous per pixel.
class CostVolume {
public:
    CostVolume(int width, int height, int dmax, std::uint16_t fill = 0)
        : width_(width), height_(height), dmax_(dmax),
          costs_(static_cast<std::size_t>(width) * height * dmax, fill)
    {
        if (width < 1 || height < 1 || dmax < 1)
            throw std::invalid_argument("CostVolume: dimensions and dmax must be >= 1");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    int dmax() const { return dmax_; }

    std::uint16_t at(int x, int y, int d) const { return costs_[cell_index(x, y) + d]; }
    std::uint16_t& at(int x, int y, int d) { return costs_[cell_index(x, y) + d]; }

    const std::uint16_t* cell(int x, int y) const { return costs_.data() + cell_index(x, y); }
    std::uint16_t* cell(int x, int y) { return costs_.data() + cell_index(x, y); }

    const std::vector<std::uint16_t>& data() const { return costs_; }
    std::vector<std::uint16_t>& data() { return costs_; }

    bool operator==(const CostVolume&) const = default;

private:
    std::size_t cell_index(int x, int y) const
    {
        return (static_cast<std::size_t>(y) * width_ + x) * dmax_;
    }

    int width_;
    int height_;
    int dmax_;
    std::vector<std::uint16_t> costs_;
};

/// Census transform with edge-replicated sampling at the borders.
/// Window sides must be odd and the area at most 64.
CensusImage census_transform(const GrayImage& img, int window_w = 9, int window_h = 7);

/// Raw Hamming matching cost H(p, d) between census images. Cells with
/// p.x - d < 0 get the maximum census distance.
CostVolume stereo_cost(const CensusImage& base, const CensusImage& match, int dmax);

/// Multiplies every cell by the fixed-point scale, capped at kCostCapBase * scale.
CostVolume scale_costs(const CostVolume& vol, int scale = kCostScale);

/// Joint stereo + discrete disparity-matching cost. At pixels with a valid
/// prior dbar: round(((1-alpha)*H + alpha*penalty(|d - dbar|)) * scale) with
/// penalty 0 / Q1 / Q2 for difference 0 / 1 / >1. Pixels without a prior
/// keep H * scale.
CostVolume ddc_fuse(const CostVolume& stereo, const SparseDisparityMap& prior,
                    const FusionParams& params, int scale = kCostScale);

}  // namespace fusesgm

#endif  // FUSESGM_COST_HPP
