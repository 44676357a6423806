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

#include "fusesgm/consistency.hpp"

#include <algorithm>
#include <cstdlib>

#include "detail/disparity_mask.hpp"
#include "fusesgm/parallel.hpp"

namespace fusesgm {

DenseDisparityMap consistency_check(const DenseDisparityMap& dstar,
                                    const DenseDisparityMap& dprime,
                                    const SparseDisparityMap& sparse,
                                    const FusionParams& params, CheckMode mode)
{
    const int w = dstar.width();
    const int h = dstar.height();
    if (dprime.width() != w || dprime.height() != h || sparse.width() != w || sparse.height() != h)
        throw std::invalid_argument("consistency_check: input dimensions disagree");
    if (params.t_c < 0 || params.r_c < 0)
        throw std::invalid_argument("consistency_check: T_c and r_c must be >= 0");

    const bool use_stereo = mode != CheckMode::kCameraLidar;
    const bool use_lidar = mode != CheckMode::kStereo;
    const int scale = DenseValue::kScale;
    const int tc_fixed = params.t_c * scale;

    const detail::WindowDisparityMask mask(sparse, params.r_c, params.dmax);

    DenseDisparityMap out(w, h);

#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const DenseValue est = dstar.at(x, y);
            if (!est.valid())
                continue;
            const std::int32_t fixed = est.fixed();

            bool keep = false;
            if (use_stereo) {
                const int qx = x - static_cast<int>((fixed + scale / 2) / scale);
                if (qx >= 0) {
                    const DenseValue other = dprime.at(qx, y);
                    if (other.valid() && std::abs(fixed - other.fixed()) <= scale)
                        keep = true;
                }
            }
            if (!keep && use_lidar) {
                // Integer disparities within T_c of the subpixel estimate.
                const std::int32_t a = fixed - tc_fixed;
                const int lo = a <= 0 ? 0 : (a + scale - 1) / scale;
                const int hi = std::min(params.dmax - 1, (fixed + tc_fixed) / scale);
                keep = mask.any_in_range(x, y, lo, hi);
            }
            if (keep)
                out.set(x, y, est);
        }
    }
    return out;
}

}  // namespace fusesgm
