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

#include "fusesgm/sgm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fusesgm/parallel.hpp"

namespace fusesgm {

namespace {

struct Dir {
    std::uint8_t bit;
    int dx;
    int dy;
};

constexpr Dir kDirs[8] = {
    {paths::kE, 1, 0},   {paths::kW, -1, 0}, {paths::kS, 0, 1},   {paths::kN, 0, -1},
    {paths::kSE, 1, 1},  {paths::kSW, -1, 1}, {paths::kNE, 1, -1}, {paths::kNW, -1, -1},
};

// One step of the recursion at one pixel. Returns the new running minimum.
std::uint32_t sweep_cell(const std::uint16_t* __restrict c, std::uint32_t* __restrict s,
                         const std::uint32_t* __restrict prev, std::uint32_t* __restrict cur,
                         int dmax, std::uint32_t p1, std::uint32_t cap, std::uint32_t prev_min)
{
    std::uint32_t new_min;
    if (dmax == 1) {
        cur[0] = std::min(prev[0], cap) + c[0] - prev_min;
        s[0] += cur[0];
        new_min = cur[0];
    } else {
        cur[0] = std::min({prev[0], prev[1] + p1, cap}) + c[0] - prev_min;
        s[0] += cur[0];
        new_min = cur[0];
        for (int d = 1; d < dmax - 1; ++d) {
            std::uint32_t best = std::min(prev[d], prev[d - 1] + p1);
            best = std::min(best, prev[d + 1] + p1);
            best = std::min(best, cap);
            const std::uint32_t v = best + c[d] - prev_min;
            cur[d] = v;
            s[d] += v;
            new_min = std::min(new_min, v);
        }
        const std::uint32_t v =
            std::min({prev[dmax - 1], prev[dmax - 2] + p1, cap}) + c[dmax - 1] - prev_min;
        cur[dmax - 1] = v;
        s[dmax - 1] += v;
        new_min = std::min(new_min, v);
    }
    return new_min;
}

// One scanline of the path recursion, accumulating into the shared sums.
// Scanlines of the same direction touch disjoint pixels.
void sweep_scanline(const CostVolume& vol, std::uint32_t p1, std::uint32_t p2,
                    int x0, int y0, int dx, int dy,
                    std::uint32_t* sums, std::uint32_t* prev, std::uint32_t* cur)
{
    const int w = vol.width();
    const int h = vol.height();
    const int dmax = vol.dmax();
    const std::ptrdiff_t step = (static_cast<std::ptrdiff_t>(dy) * w + dx) * dmax;

    int x = x0;
    int y = y0;
    const std::uint16_t* c = vol.cell(x, y);
    std::uint32_t* s = sums + (static_cast<std::size_t>(y) * w + x) * dmax;

    // Path start: no predecessor, cost only.
    std::uint32_t prev_min = std::numeric_limits<std::uint32_t>::max();
    for (int d = 0; d < dmax; ++d) {
        prev[d] = c[d];
        s[d] += c[d];
        prev_min = std::min(prev_min, prev[d]);
    }

    for (x += dx, y += dy; x >= 0 && x < w && y >= 0 && y < h; x += dx, y += dy) {
        c += step;
        s += step;
        prev_min = sweep_cell(c, s, prev, cur, dmax, p1, prev_min + p2, prev_min);
        std::swap(prev, cur);
    }
}

}  // namespace

AggregatedVolume aggregate(const CostVolume& volume, int p1, int p2, std::uint8_t path_set)
{
    if (p1 <= 0 || p1 > p2)
        throw std::invalid_argument("aggregate: need 0 < p1 <= p2");
    // normalized path values stay <= cost cap + p2; 8 paths must fit 32 bits
    if (p2 > (1 << 26))
        throw std::invalid_argument("aggregate: p2 too large for 32-bit accumulation");
    if (path_set == 0)
        throw std::invalid_argument("aggregate: empty path set");

    const int w = volume.width();
    const int h = volume.height();
    const int dmax = volume.dmax();

    AggregatedVolume agg(w, h, dmax);

    for (const Dir& dir : kDirs) {
        if (!(path_set & dir.bit))
            continue;

        // Starts are the border pixels with no predecessor along the path.
        std::vector<std::pair<int, int>> starts;
        if (dir.dx != 0) {
            const int x = dir.dx > 0 ? 0 : w - 1;
            for (int y = 0; y < h; ++y)
                starts.emplace_back(x, y);
        }
        if (dir.dy != 0) {
            const int y = dir.dy > 0 ? 0 : h - 1;
            for (int x = 0; x < w; ++x) {
                const int px = x - dir.dx;
                if (dir.dx == 0 || (px >= 0 && px < w))  // rest came with the column
                    starts.emplace_back(x, y);
            }
        }

        const int n = static_cast<int>(starts.size());
#pragma omp parallel num_threads(worker_count())
        {
            std::vector<std::uint32_t> prev(dmax), cur(dmax);
#pragma omp for schedule(static)
            for (int i = 0; i < n; ++i)
                sweep_scanline(volume, static_cast<std::uint32_t>(p1), static_cast<std::uint32_t>(p2),
                               starts[i].first, starts[i].second, dir.dx, dir.dy,
                               agg.sums.data(), prev.data(), cur.data());
        }
    }
    return agg;
}

DenseDisparityMap select_winner(const AggregatedVolume& agg, bool subpixel)
{
    const int w = agg.width;
    const int h = agg.height;
    const int dmax = agg.dmax;
    DenseDisparityMap out(w, h);

#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::uint32_t* s = agg.cell(x, y);
            int best = 0;
            for (int d = 1; d < dmax; ++d)
                if (s[d] < s[best])
                    best = d;

            std::int32_t fixed = best * DenseValue::kScale;
            if (subpixel && best > 0 && best < dmax - 1) {
                const double a = s[best - 1];
                const double b = s[best];
                const double c = s[best + 1];
                const double curvature = a - 2.0 * b + c;
                if (curvature > 0.0) {
                    const double offset = std::clamp((a - c) / (2.0 * curvature), -0.5, 0.5);
                    fixed += static_cast<std::int32_t>(round_half_up(offset * DenseValue::kScale));
                }
            }
            out.set(x, y, DenseValue::from_fixed(fixed));
        }
    }
    return out;
}

DenseDisparityMap winner_from_match_view(const AggregatedVolume& agg)
{
    const int w = agg.width;
    const int h = agg.height;
    const int dmax = agg.dmax;
    DenseDisparityMap out(w, h);

#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            // The base pixel matching (x, y) at disparity d sits at x + d.
            int best = 0;
            std::uint32_t best_cost = agg.at(x, y, 0);
            const int dlim = std::min(dmax, w - x);
            for (int d = 1; d < dlim; ++d) {
                const std::uint32_t cost = agg.at(x + d, y, d);
                if (cost < best_cost) {
                    best_cost = cost;
                    best = d;
                }
            }
            out.set(x, y, DenseValue::from_fixed(best * DenseValue::kScale));
        }
    }
    return out;
}

}  // namespace fusesgm
