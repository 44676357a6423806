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

#include "fusesgm/cost.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "fusesgm/parallel.hpp"

namespace fusesgm {

CensusImage census_transform(const GrayImage& img, int window_w, int window_h)
{
    if (window_w < 1 || window_h < 1 || window_w % 2 == 0 || window_h % 2 == 0)
        throw std::invalid_argument("census_transform: window sides must be odd and >= 1");
    if (window_w * window_h > 64)
        throw std::invalid_argument("census_transform: window area must be <= 64");
    if (window_w > img.width() || window_h > img.height())
        throw std::invalid_argument("census_transform: window larger than image");

    CensusImage out;
    out.width = img.width();
    out.height = img.height();
    out.window_w = window_w;
    out.window_h = window_h;
    out.codes.resize(static_cast<std::size_t>(out.width) * out.height);

    const int rx = window_w / 2;
    const int ry = window_h / 2;
    const int w = img.width();
    const int h = img.height();

#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (int y = 0; y < h; ++y) {
        std::uint64_t* code_row = out.codes.data() + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            const std::uint8_t center = img.at(x, y);
            std::uint64_t code = 0;
            for (int dy = -ry; dy <= ry; ++dy) {
                const int sy = std::clamp(y + dy, 0, h - 1);
                const std::uint8_t* src = img.row(sy);
                for (int dx = -rx; dx <= rx; ++dx) {
                    if (dx == 0 && dy == 0)
                        continue;
                    const int sx = std::clamp(x + dx, 0, w - 1);
                    code = (code << 1) | (src[sx] < center ? 1u : 0u);
                }
            }
            code_row[x] = code;
        }
    }
    return out;
}

CostVolume stereo_cost(const CensusImage& base, const CensusImage& match, int dmax)
{
    if (base.width != match.width || base.height != match.height)
        throw std::invalid_argument("stereo_cost: census images must have equal dimensions");
    if (dmax < 1)
        throw std::invalid_argument("stereo_cost: dmax must be >= 1");

    CostVolume vol(base.width, base.height, dmax);
    const std::uint16_t out_of_range = static_cast<std::uint16_t>(base.max_distance());
    const int w = base.width;
    const int h = base.height;

#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (int y = 0; y < h; ++y) {
        const std::uint64_t* brow = base.codes.data() + static_cast<std::size_t>(y) * w;
        const std::uint64_t* mrow = match.codes.data() + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            std::uint16_t* cell = vol.cell(x, y);
            const std::uint64_t code = brow[x];
            const int in_range = std::min(dmax, x + 1);
            for (int d = 0; d < in_range; ++d)
                cell[d] = static_cast<std::uint16_t>(std::popcount(code ^ mrow[x - d]));
            for (int d = in_range; d < dmax; ++d)
                cell[d] = out_of_range;
        }
    }
    return vol;
}

CostVolume scale_costs(const CostVolume& vol, int scale)
{
    CostVolume out(vol.width(), vol.height(), vol.dmax());
    const std::uint32_t cap = static_cast<std::uint32_t>(kCostCapBase) * scale;
    const std::uint16_t* src = vol.data().data();
    std::uint16_t* dst = out.data().data();
    const std::size_t n = vol.data().size();
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = static_cast<std::uint16_t>(std::min<std::uint32_t>(src[i] * scale, cap));
    return out;
}

CostVolume ddc_fuse(const CostVolume& stereo, const SparseDisparityMap& prior,
                    const FusionParams& params, int scale)
{
    if (stereo.width() != prior.width() || stereo.height() != prior.height())
        throw std::invalid_argument("ddc_fuse: volume and prior dimensions disagree");
    if (params.q1 > params.q2)
        throw std::invalid_argument("ddc_fuse: need Q_1 <= Q_2");

    const int w = stereo.width();
    const int h = stereo.height();
    const int dmax = stereo.dmax();
    const double alpha = params.alpha;
    const double stereo_w = (1.0 - alpha) * scale;
    // Penalty term per |d - dbar| class, premultiplied by alpha and the scale.
    const double pen_eq = 0.0;
    const double pen_near = alpha * params.q1 * scale;
    const double pen_far = alpha * params.q2 * scale;
    const std::uint32_t cap = static_cast<std::uint32_t>(kCostCapBase) * scale;

    CostVolume out(w, h, dmax);

#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::uint16_t* src = stereo.cell(x, y);
            std::uint16_t* dst = out.cell(x, y);
            const SparseValue prior_v = prior.at(x, y);
            if (!prior_v.valid()) {
                for (int d = 0; d < dmax; ++d)
                    dst[d] = static_cast<std::uint16_t>(
                        std::min<std::uint32_t>(static_cast<std::uint32_t>(src[d]) * scale, cap));
                continue;
            }
            const int dbar = prior_v.get();
            for (int d = 0; d < dmax; ++d) {
                const int diff = d > dbar ? d - dbar : dbar - d;
                const double pen = diff == 0 ? pen_eq : (diff == 1 ? pen_near : pen_far);
                const auto fused = static_cast<std::uint32_t>(
                    std::floor(stereo_w * src[d] + pen + 0.5));
                dst[d] = static_cast<std::uint16_t>(std::min(fused, cap));
            }
        }
    }
    return out;
}

}  // namespace fusesgm
