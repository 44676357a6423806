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

#include "fusesgm/semidensify.hpp"

#include <bit>

#include "detail/disparity_mask.hpp"
#include "fusesgm/parallel.hpp"

namespace fusesgm {

SparseDisparityMap semidensify(const CensusImage& base, const CensusImage& match,
                               const SparseDisparityMap& sparse, const FusionParams& params)
{
    if (base.width != match.width || base.height != match.height ||
        base.width != sparse.width() || base.height != sparse.height())
        throw std::invalid_argument("semidensify: input dimensions disagree");
    if (params.r_s < 0 || params.t_s < 0)
        throw std::invalid_argument("semidensify: r_s and T_s must be >= 0");

    // No Hamming cost can be < 0, so the window branch can never fire.
    if (params.t_s == 0)
        return sparse;

    const detail::WindowDisparityMask mask(sparse, params.r_s, params.dmax);
    const int w = base.width;
    const int h = base.height;
    const int words = mask.words();
    const int max_dist = base.max_distance();

    SparseDisparityMap out(w, h);

#pragma omp parallel for schedule(static) num_threads(worker_count())
    for (int y = 0; y < h; ++y) {
        const std::uint64_t* bcodes = base.codes.data() + static_cast<std::size_t>(y) * w;
        const std::uint64_t* mcodes = match.codes.data() + static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            const std::uint64_t* m = mask.at(x, y);
            int best_cost = max_dist + 1;
            int best_d = -1;
            // Ascending disparity order; strict improvement keeps ties at
            // the smaller value.
            for (int word = 0; word < words; ++word) {
                std::uint64_t bits = m[word];
                while (bits) {
                    const int d = word * 64 + std::countr_zero(bits);
                    bits &= bits - 1;
                    const int cost = d <= x
                        ? std::popcount(bcodes[x] ^ mcodes[x - d])
                        : max_dist;
                    if (cost < best_cost) {
                        best_cost = cost;
                        best_d = d;
                    }
                }
            }
            if (best_cost < params.t_s)
                out.set(x, y, SparseValue::of(best_d));
            else
                out.set(x, y, sparse.at(x, y));
        }
    }
    return out;
}

}  // namespace fusesgm
