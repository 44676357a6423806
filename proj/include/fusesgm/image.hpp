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

#ifndef FUSESGM_IMAGE_HPP
#define FUSESGM_IMAGE_HPP

#include <cassert>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fusesgm {

/// Single-channel 8-bit rectified camera image, row-major.
class GrayImage {
public:
    GrayImage(int width, int height, std::uint8_t fill = 0)
        : width_(width), height_(height)
    {
        if (width < 1 || height < 1)
            throw std::invalid_argument("GrayImage: dimensions must be >= 1");
        data_.assign(static_cast<std::size_t>(width) * height, fill);
    }

    int width() const { return width_; }
    int height() const { return height_; }

    std::uint8_t at(int x, int y) const { return data_[idx(x, y)]; }
    std::uint8_t& at(int x, int y) { return data_[idx(x, y)]; }

    const std::uint8_t* row(int y) const { return data_.data() + static_cast<std::size_t>(y) * width_; }
    std::uint8_t* row(int y) { return data_.data() + static_cast<std::size_t>(y) * width_; }

    const std::vector<std::uint8_t>& data() const { return data_; }
    std::vector<std::uint8_t>& data() { return data_; }

    bool operator==(const GrayImage&) const = default;

private:
    std::size_t idx(int x, int y) const
    {
        assert(x >= 0 && x < width_ && y >= 0 && y < height_);
        return static_cast<std::size_t>(y) * width_ + x;
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> data_;
};

/// Integer disparity or invalid. The invalid state is a tag of the type, not
/// a disparity value; callers must branch on valid() before reading it.
class SparseValue {
public:
    constexpr SparseValue() = default;  // invalid

    static constexpr SparseValue of(int disparity)
    {
        assert(disparity >= 0);
        SparseValue v;
        v.raw_ = disparity;
        return v;
    }

    constexpr bool valid() const { return raw_ >= 0; }

    constexpr int get() const
    {
        assert(valid());
        return raw_;
    }

    constexpr bool operator==(const SparseValue&) const = default;

private:
    std::int32_t raw_ = -1;
};

/// Subpixel disparity in 1/256 pixel steps (KITTI fixed-point), or invalid.
class DenseValue {
public:
    static constexpr int kScale = 256;

    constexpr DenseValue() = default;  // invalid

    static constexpr DenseValue from_fixed(std::int32_t fixed)
    {
        assert(fixed >= 0);
        DenseValue v;
        v.fixed_ = fixed;
        return v;
    }

    constexpr bool valid() const { return fixed_ >= 0; }

    constexpr std::int32_t fixed() const
    {
        assert(valid());
        return fixed_;
    }

    double pixels() const { return static_cast<double>(fixed()) / kScale; }

    constexpr bool operator==(const DenseValue&) const = default;

private:
    std::int32_t fixed_ = -1;
};

/// Per-pixel integer disparity prior, geometrically aligned with the base image.
class SparseDisparityMap {
public:
    SparseDisparityMap(int width, int height)
        : width_(width), height_(height)
    {
        if (width < 1 || height < 1)
            throw std::invalid_argument("SparseDisparityMap: dimensions must be >= 1");
        values_.assign(static_cast<std::size_t>(width) * height, SparseValue());
    }

    int width() const { return width_; }
    int height() const { return height_; }

    SparseValue at(int x, int y) const { return values_[idx(x, y)]; }
    void set(int x, int y, SparseValue v) { values_[idx(x, y)] = v; }

    const std::vector<SparseValue>& values() const { return values_; }

    std::int64_t valid_count() const
    {
        std::int64_t n = 0;
        for (const auto& v : values_)
            if (v.valid()) ++n;
        return n;
    }

    bool operator==(const SparseDisparityMap&) const = default;

private:
    std::size_t idx(int x, int y) const
    {
        assert(x >= 0 && x < width_ && y >= 0 && y < height_);
        return static_cast<std::size_t>(y) * width_ + x;
    }

    int width_;
    int height_;
    std::vector<SparseValue> values_;
};

/// Per-pixel subpixel disparity estimate at 1/256 pixel resolution.
class DenseDisparityMap {
public:
    DenseDisparityMap(int width, int height)
        : width_(width), height_(height)
    {
        if (width < 1 || height < 1)
            throw std::invalid_argument("DenseDisparityMap: dimensions must be >= 1");
        values_.assign(static_cast<std::size_t>(width) * height, DenseValue());
    }

    int width() const { return width_; }
    int height() const { return height_; }

    DenseValue at(int x, int y) const { return values_[idx(x, y)]; }
    void set(int x, int y, DenseValue v) { values_[idx(x, y)] = v; }

    const std::vector<DenseValue>& values() const { return values_; }

    std::int64_t valid_count() const
    {
        std::int64_t n = 0;
        for (const auto& v : values_)
            if (v.valid()) ++n;
        return n;
    }

    bool operator==(const DenseDisparityMap&) const = default;

private:
    std::size_t idx(int x, int y) const
    {
        assert(x >= 0 && x < width_ && y >= 0 && y < height_);
        return static_cast<std::size_t>(y) * width_ + x;
    }

    int width_;
    int height_;
    std::vector<DenseValue> values_;
};

/// All pipeline tunables. Defaults follow the evaluation setup.
struct FusionParams {
    int t_s = 2;         // semidensification cost threshold (census bits)
    int r_s = 6;         // semidensification window radius
    int p1 = 10;         // small smoothness penalty
    int p2 = 120;        // large smoothness penalty
    int q1 = 5;          // small disparity-matching penalty
    int q2 = 160;        // large disparity-matching penalty
    double alpha = 0.7;  // stereo / disparity-matching blend
    int t_c = 2;         // consistency threshold (pixels)
    int r_c = 20;        // consistency window radius
    int dmax = 128;      // disparity search range [0, dmax)
    int census_w = 9;    // census window width
    int census_h = 7;    // census window height

    void validate() const
    {
        if (p1 <= 0 || p1 > p2)
            throw std::invalid_argument("FusionParams: need 0 < P_1 <= P_2");
        if (q1 > q2)
            throw std::invalid_argument("FusionParams: need Q_1 <= Q_2");
        if (alpha < 0.0 || alpha > 1.0)
            throw std::invalid_argument("FusionParams: need 0 <= alpha <= 1");
        if (dmax <= 0 || dmax % 8 != 0)
            throw std::invalid_argument("FusionParams: dmax must be a positive multiple of 8");
        if (t_s < 0 || r_s < 0 || t_c < 0 || r_c < 0)
            throw std::invalid_argument("FusionParams: thresholds and radii must be >= 0");
        if (census_w < 1 || census_h < 1 || census_w % 2 == 0 || census_h % 2 == 0)
            throw std::invalid_argument("FusionParams: census window sides must be odd and >= 1");
        if (census_w * census_h > 64)
            throw std::invalid_argument("FusionParams: census window area must be <= 64");
    }
};

/// Rounds to nearest, halves toward +infinity.
inline std::int64_t round_half_up(double x) { return static_cast<std::int64_t>(std::floor(x + 0.5)); }

}  // namespace fusesgm

#endif  // FUSESGM_IMAGE_HPP
