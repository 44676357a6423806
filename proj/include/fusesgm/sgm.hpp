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

#ifndef FUSESGM_SGM_HPP
#define FUSESGM_SGM_HPP

#include <cstdint>
#include <vector>

#include "fusesgm/cost.hpp"
#include "fusesgm/image.hpp"

namespace fusesgm {

// Aggregation path directions, named by the direction of traversal.
namespace paths {
constexpr std::uint8_t kE = 1 << 0;
constexpr std::uint8_t kW = 1 << 1;
constexpr std::uint8_t kS = 1 << 2;
constexpr std::uint8_t kN = 1 << 3;
constexpr std::uint8_t kSE = 1 << 4;
constexpr std::uint8_t kSW = 1 << 5;
constexpr std::uint8_t kNE = 1 << 6;
constexpr std::uint8_t kNW = 1 << 7;
constexpr std::uint8_t kAll = 0xff;
}  // namespace paths

/// Per-(pixel, disparity) path-cost sums.
struct AggregatedVolume {
    int width = 0;
    int height = 0;
    int dmax = 0;
    std::vector<std::uint32_t> sums;

    AggregatedVolume() = default;
    AggregatedVolume(int w, int h, int d)
        : width(w), height(h), dmax(d),
          sums(static_cast<std::size_t>(w) * h * d, 0) {}

    std::uint32_t at(int x, int y, int d) const { return sums[cell_index(x, y) + d]; }

    const std::uint32_t* cell(int x, int y) const { return sums.data() + cell_index(x, y); }

    std::size_t cell_index(int x, int y) const
    {
        return (static_cast<std::size_t>(y) * width + x) * dmax;
    }
};

/// Path-wise cost propagation summed over the requested path set.
/// Penalties p1 and p2 must be in the same units as the volume's costs.
/// Paths start at border pixels with the start cost equal to the matching
/// cost; every later step follows the normalized recursion
///   L(p,d) = min(L(p-r,d), L(p-r,d-1)+p1, L(p-r,d+1)+p1, min_k L(p-r,k)+p2)
///            + C(p,d) - min_k L(p-r,k).
AggregatedVolume aggregate(const CostVolume& volume, int p1, int p2,
                           std::uint8_t path_set = paths::kAll);

/// Winner-take-all disparity per pixel, ties toward the smaller index.
/// With subpixel enabled, a parabola through the winner and its neighbors
/// refines the result; the offset is clamped to [-0.5, +0.5] and skipped at
/// the range boundaries or under zero curvature.
DenseDisparityMap select_winner(const AggregatedVolume& agg, bool subpixel = true);

/// Disparity of the matching view read from the same aggregated volume:
/// d'(q) = argmin_d sums(q.x + d, q.y, d), integer only, smaller-d ties.
DenseDisparityMap winner_from_match_view(const AggregatedVolume& agg);

}  // namespace fusesgm

#endif  // FUSESGM_SGM_HPP
