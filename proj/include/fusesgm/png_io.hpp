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

#ifndef FUSESGM_PNG_IO_HPP
#define FUSESGM_PNG_IO_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "fusesgm/image.hpp"

namespace fusesgm {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// What to do with decoded disparities at or above dmax.
enum class RangePolicy { kMarkInvalid, kClamp };

/// Reads an 8/16-bit grayscale or RGB(A) PNG as 8-bit gray. RGB collapses by
/// integer BT.601 luma (rounded half-up); 16-bit samples keep the high byte.
GrayImage read_gray_png(const std::string& path);

/// Writes an 8-bit grayscale PNG.
void write_gray_png(const GrayImage& img, const std::string& path);

// 16-bit disparity PNGs, KITTI convention: stored = disparity * 256,
// stored 0 = no measurement.

/// Loads a 16-bit disparity PNG truncated to integer disparities. When dmax
/// is given, out-of-range values follow the policy (default: invalid).
SparseDisparityMap read_sparse_disparity_png(const std::string& path,
                                             std::optional<int> dmax = std::nullopt,
                                             RangePolicy policy = RangePolicy::kMarkInvalid);

/// Loads a 16-bit disparity PNG at full 1/256 resolution.
DenseDisparityMap read_dense_disparity_png(const std::string& path);

/// Writes a disparity map as 16-bit PNG; the exact inverse of
/// read_dense_disparity_png for every representable value.
void write_disparity_png(const DenseDisparityMap& map, const std::string& path);

/// Writes an integer disparity map with the same 16-bit encoding.
void write_disparity_png(const SparseDisparityMap& map, const std::string& path);

}  // namespace fusesgm

#endif  // FUSESGM_PNG_IO_HPP
